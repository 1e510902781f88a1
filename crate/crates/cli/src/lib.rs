//! Command-line front end for `subtsp`.
//!
//! Exit codes: 0 success, 2 bad arguments or unusable input, 3 a verification
//! suite found a violation, 1 anything else.

pub mod bench;
pub mod cli;
pub mod config;
pub mod record;
pub mod runs;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{CommandFactory, FromArgMatches};

use subtsp::exact::{exact_max_matching, exact_mst, exact_tsp, mst_tree, MAX_TSP_N};
use subtsp::gen::{gen_coi_graph, gen_multipass_family, gen_onepass_family, gen_random_metric, OnePassParams, TspGadget};
use subtsp::metric::{metric_from_graph, parse_instance, validate_metric, write_graph, write_metric, Instance};
use subtsp::tree::NONE;
use subtsp::verify::{run_suite, suite_names, Fault, VerifyConfig};
use subtsp::{Metric, RootedTree};

use cli::{BenchArgs, Cli, Command, GenArgs, GenKind, Global, OracleArgs, QueryMstArgs, VerifyArgs};
use record::{write_csv, RunRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// A problem with the arguments or the input files.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn exit_code(e: &anyhow::Error) -> i32 {
    use subtsp::Error as E;
    if e.downcast_ref::<Usage>().is_some() {
        return EXIT_USAGE;
    }
    match e.downcast_ref::<E>() {
        Some(
            E::BadParameters(_)
            | E::Parse { .. }
            | E::TooLarge { .. }
            | E::PromiseViolated(_)
            | E::PreconditionUnmet(_)
            | E::NotAnMst(..)
            | E::DisconnectedGraph(..)
            | E::OutOfRange(_),
        ) => EXIT_USAGE,
        _ => EXIT_ERROR,
    }
}

/// Sets each config entry as the default of the flag with that long name.
fn with_defaults(mut cmd: clap::Command, entries: &[(String, String)]) -> Result<clap::Command> {
    for (key, value) in entries {
        let value: &'static str = Box::leak(value.clone().into_boxed_str());
        let matches = |a: &clap::Arg| a.get_long() == Some(key.as_str()) || a.get_id().as_str() == key;
        let mut hit = false;
        let top = cmd.get_arguments().find(|a| matches(a)).map(|a| a.get_id().clone());
        if let Some(id) = top {
            cmd = cmd.mut_arg(id, |a| a.default_value(value));
            hit = true;
        }
        let subs: Vec<(String, clap::Id)> = cmd
            .get_subcommands()
            .filter_map(|s| s.get_arguments().find(|a| matches(a)).map(|a| (s.get_name().to_string(), a.get_id().clone())))
            .collect();
        for (sub, id) in subs {
            cmd = cmd.mut_subcommand(sub, |s| s.mut_arg(id, |a| a.default_value(value)));
            hit = true;
        }
        if !hit {
            bail!(usage(format!("config key {key:?} matches no flag")));
        }
    }
    Ok(cmd)
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let parsed = (|| -> Result<std::result::Result<Cli, clap::Error>> {
        let mut cmd = Cli::command();
        if let Some(path) = config::config_path(args) {
            let entries = config::load(&path).map_err(|e| usage(format!("{e:#}")))?;
            cmd = with_defaults(cmd, &entries)?;
        }
        Ok(cmd.try_get_matches_from(args).and_then(|m| Cli::from_arg_matches(&m)))
    })();
    let cli = match parsed {
        Ok(Ok(cli)) => cli,
        Ok(Err(e)) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return exit_code(&e);
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen(a) => gen(a, g, stdout, stderr),
        Command::Oracle(a) => oracle(a, g, stdout),
        Command::RunStreamMst(a) => {
            let (name, inst) = read_instance(a.input.input.as_deref())?;
            let r = runs::stream_mst(&name, &inst, a.alpha, a.c_boost, g.seed.unwrap_or(0))?;
            emit_rows(g, &[r], stdout)
        }
        Command::RunStreamTsp(a) => {
            let (name, inst) = read_instance(a.input.as_deref())?;
            let r = runs::stream_tsp(&name, &inst, g.seed.unwrap_or(0))?;
            emit_rows(g, &[r], stdout)
        }
        Command::RunQueryG1(a) => {
            let (name, inst) = read_instance(a.input.as_deref())?;
            let r = runs::query_g1(&name, &inst.to_metric()?, g.profile.parse()?, g.seed.unwrap_or(0))?;
            emit_rows(g, &[r], stdout)
        }
        Command::RunQueryMst(a) => query_mst(a, g, stdout),
        Command::Bench(a) => bench(a, g, stdout),
        Command::Verify(a) => verify(a, g, stdout),
    }
}

fn output<'a>(g: &Global, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>> {
    Ok(match &g.out {
        Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(stdout),
    })
}

fn emit_rows(g: &Global, rows: &[RunRecord], stdout: &mut dyn Write) -> Result<i32> {
    write_csv(output(g, stdout)?, rows)?;
    Ok(EXIT_OK)
}

fn read_instance(path: Option<&Path>) -> Result<(String, Instance)> {
    let path = path.ok_or_else(|| usage("--input is required"))?;
    let text = fs::read_to_string(path).map_err(|e| usage(format!("reading {}: {e}", path.display())))?;
    let name = path.file_stem().map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned());
    Ok((name, parse_instance(&text)?))
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("--{flag} is required for --kind {kind}")))
}

fn parse_matrix(text: &str) -> Result<Vec<Vec<bool>>> {
    text.split('/')
        .map(|row| {
            row.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(usage(format!("--x rows hold only 0 and 1, got {c:?}"))),
                })
                .collect()
        })
        .collect()
}

fn describe_metric(m: &Metric) -> String {
    let v = validate_metric(m);
    match v.first() {
        None => format!("validate_metric: ok (n = {})", m.n()),
        Some(first) => format!("validate_metric: {} violations, first {first:?}", v.len()),
    }
}

fn gen(a: &GenArgs, g: &Global, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let kind = a.kind.ok_or_else(|| usage("--kind is required"))?;
    let seed = g.seed.unwrap_or(0);
    let (text, echo) = match kind {
        GenKind::Random => {
            let n = need(a.n, "n", "random")?;
            let m = gen_random_metric(n, seed, a.style.parse()?)?;
            (write_metric(&m), describe_metric(&m))
        }
        GenKind::Onepass => {
            let (n, k, r) = (need(a.n, "n", "onepass")?, need(a.k, "k", "onepass")?, need(a.r, "r", "onepass")?);
            let big_l = need(a.big_l, "big-l", "onepass")?;
            if k == 0 || r == 0 || n <= k * r || (n - k * r) % (2 * r * k) != 0 {
                bail!(usage(format!("(n − kr)/(2rk) must be a positive integer for n = {n}, k = {k}, r = {r}")));
            }
            let p = (n - k * r) / (2 * r * k);
            let m = gen_onepass_family(OnePassParams { k, r, p, big_l }, a.which.parse()?)?;
            (write_metric(&m), describe_metric(&m))
        }
        GenKind::Multipass => {
            let group = need(a.group, "group", "multipass")?;
            let m = need(a.m, "m", "multipass")?;
            let m = gen_multipass_family(group, m, need(a.big_m, "big-m", "multipass")?, a.which.parse()?)?;
            (write_metric(&m), describe_metric(&m))
        }
        GenKind::Gadget => {
            let x = parse_matrix(&need(a.x.clone(), "x", "gadget")?)?;
            let r = need(a.r, "r", "gadget")?;
            let n = (2 + 2 * x.len() * r) as i64;
            let gadget = TspGadget::new(x, a.istar, a.jstar, r, a.big_l.unwrap_or(n * n))?;
            let gr = gadget.graph();
            (write_graph(&gr), describe_metric(&metric_from_graph(&gr)?))
        }
        GenKind::Coi => {
            let gr = gen_coi_graph(need(a.group, "group", "coi")?, need(a.m, "m", "coi")?, a.which.parse()?);
            let echo = format!("components: {}", gr.component_count());
            (write_graph(&gr), echo)
        }
    };
    output(g, stdout)?.write_all(text.as_bytes())?;
    writeln!(stderr, "{echo}")?;
    Ok(EXIT_OK)
}

fn oracle(a: &OracleArgs, g: &Global, stdout: &mut dyn Write) -> Result<i32> {
    let (_, inst) = read_instance(a.input.input.as_deref())?;
    let m = inst.to_metric()?;
    let n = m.n();
    let mut lines = vec![
        format!("n={n}"),
        format!("kind={}", if matches!(inst, Instance::Graph(_)) { "graph" } else { "metric" }),
        format!("violations={}", validate_metric(&m).len()),
        format!("diameter={}", m.diameter()),
        format!("mst={}", exact_mst(&m).value),
    ];
    lines.push(if n <= MAX_TSP_N {
        format!("tsp={}", exact_tsp(&m)?.value)
    } else {
        format!("tsp=skipped (n > {MAX_TSP_N})")
    });
    let unit = m.unit_graph();
    let pairs: Vec<(usize, usize)> = unit.edges.iter().map(|&(u, v, _)| (u, v)).collect();
    lines.push(format!("g1_connected={}", unit.is_connected()));
    lines.push(format!("g1_matching={}", exact_max_matching(n, &pairs).value));
    for p in &a.pairs {
        let (u, v) = p
            .split_once(',')
            .and_then(|(u, v)| Some((u.trim().parse::<usize>().ok()?, v.trim().parse::<usize>().ok()?)))
            .ok_or_else(|| usage(format!("--pair expects `u,v`, got {p:?}")))?;
        if u >= n || v >= n {
            bail!(usage(format!("pair ({u},{v}) out of range for n = {n}")));
        }
        lines.push(format!("dist({u},{v})={}", m.dist(u, v)));
    }
    let mut w = output(g, stdout)?;
    for l in lines {
        writeln!(w, "{l}")?;
    }
    Ok(EXIT_OK)
}

/// Reads `child parent weight` lines; the vertex without a line is the root.
pub fn parse_tree(text: &str, n: usize) -> Result<RootedTree> {
    let mut parent = vec![NONE; n];
    let mut pw = vec![0; n];
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let nums: Option<Vec<i64>> = f.iter().map(|t| t.parse().ok()).collect();
        let Some(&[c, p, w]) = nums.as_deref() else {
            bail!(usage(format!("tree line {}: expected `child parent weight`", i + 1)));
        };
        if c < 0 || p < 0 || c as usize >= n || p as usize >= n {
            bail!(usage(format!("tree line {}: vertex out of range for n = {n}", i + 1)));
        }
        if parent[c as usize] != NONE {
            bail!(usage(format!("tree line {}: vertex {c} has two parents", i + 1)));
        }
        parent[c as usize] = p as usize;
        pw[c as usize] = w;
    }
    let roots: Vec<usize> = (0..n).filter(|&v| parent[v] == NONE).collect();
    let [root] = roots[..] else {
        bail!(usage(format!("tree must leave exactly one vertex without a parent, found {}", roots.len())));
    };
    Ok(RootedTree::from_parents(root, parent, pw)?)
}

fn query_mst(a: &QueryMstArgs, g: &Global, stdout: &mut dyn Write) -> Result<i32> {
    let (name, inst) = read_instance(a.input.input.as_deref())?;
    let m = inst.to_metric()?;
    let tree = if a.mst == "derive" {
        mst_tree(&m, 0)
    } else {
        let path = PathBuf::from(&a.mst);
        let text = fs::read_to_string(&path).map_err(|e| usage(format!("reading {}: {e}", path.display())))?;
        let t = parse_tree(&text, m.n())?;
        if let Some(v) = (0..m.n()).find(|&v| t.parent(v).is_some_and(|p| m.dist(v, p) != t.weight(v))) {
            bail!(usage(format!("tree weight of vertex {v} differs from the metric distance to its parent")));
        }
        t
    };
    let r = runs::query_mst(&name, &m, &tree, g.profile.parse()?, g.seed.unwrap_or(0))?;
    emit_rows(g, &[r], stdout)
}

/// `a..b` or a single seed `a`.
pub fn parse_seeds(s: &str) -> Result<std::ops::Range<u64>> {
    let bad = || usage(format!("--seeds expects `a..b` or a single seed, got {s:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b < a {
                return Err(bad());
            }
            Ok(a..b)
        }
        None => {
            let a: u64 = s.trim().parse().map_err(|_| bad())?;
            Ok(a..a + 1)
        }
    }
}

fn bench(a: &BenchArgs, g: &Global, stdout: &mut dyn Write) -> Result<i32> {
    let suite = a.suite.as_deref().ok_or_else(|| usage(format!("--suite is required; one of {:?}", bench::SUITES)))?;
    if !bench::SUITES.contains(&suite) {
        bail!(usage(format!("unknown suite {suite:?}; expected one of {:?}", bench::SUITES)));
    }
    let opts = bench::BenchOptions {
        seeds: parse_seeds(&a.seeds)?,
        n: a.n,
        g1_profile: g.profile.parse()?,
        mst_profile: g.profile.parse()?,
    };
    let rows = bench::run(suite, &opts)?;
    emit_rows(g, &rows, stdout)
}

fn verify(a: &VerifyArgs, g: &Global, stdout: &mut dyn Write) -> Result<i32> {
    let mut cfg = if a.level == "full" { VerifyConfig::full() } else { VerifyConfig::fast() };
    if let Some(n) = a.max_n {
        if !(4..=subtsp::exact::MAX_TSP_N).contains(&n) {
            bail!(usage(format!("--max-n must lie in 4..={MAX_TSP_N}")));
        }
        cfg.max_n = n;
    }
    if let Some(s) = g.seed {
        cfg.seeds = s..s + 1;
    }
    if a.inject_fault.is_some() {
        cfg.fault = Some(Fault::FlipAdvSign);
    }
    let known = suite_names();
    for s in a.suite.iter().chain(&a.skip) {
        if !known.contains(&s.as_str()) {
            bail!(usage(format!("unknown suite {s:?}; known: {known:?}")));
        }
    }
    let chosen: Vec<&str> = known
        .iter()
        .copied()
        .filter(|s| a.suite.is_empty() || a.suite.iter().any(|x| x == s))
        .filter(|s| !a.skip.iter().any(|x| x == s))
        .collect();
    let mut w = output(g, stdout)?;
    let mut violations = 0;
    for name in &chosen {
        let r = run_suite(name, &cfg).ok_or_else(|| anyhow!("suite {name} vanished"))?;
        writeln!(w, "{:<30} passed {:>4}  skipped {:>4}  failed {:>4}", r.suite, r.passed, r.skipped, r.failures.len())?;
        for f in &r.failures {
            writeln!(w, "  seed {}: {}", f.seed, f.detail)?;
            writeln!(w, "    reproduce: {}", f.reproducer(cfg.max_n))?;
        }
        violations += r.failures.len();
    }
    if violations == 0 {
        writeln!(w, "verify {}: ok, {} suites", a.level, chosen.len())?;
        Ok(EXIT_OK)
    } else {
        writeln!(w, "verify {}: {violations} violations", a.level)?;
        Ok(EXIT_VERIFY)
    }
}
