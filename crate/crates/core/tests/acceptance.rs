//! Acceptance run: one verdict line per criterion, detail lines indented.

use std::time::{Duration, Instant};

use rand::Rng as _;

use subtsp::exact::{exact_max_matching, exact_mst, exact_tsp, mst_tree, CoverOptions};
use subtsp::gen::{
    gen_graphic, gen_onepass_family, gen_random_metric, random_connected_graph, tour_cost, OnePassParams, Style,
    TspGadget, Which,
};
use subtsp::metric::metric_from_graph;
use subtsp::query_g1::{
    bfs, estimate_tsp_g1, local, matching_size_estimate, proper_tour_cost, G1Config, MatchingOptions,
};
use subtsp::query_mst::{build_ctree_forest, estimate_tsp_with_mst, light_peel, zeta, MstQueryConfig, Skeleton};
use subtsp::rng::rng_for;
use subtsp::stream::{run_onepass_mst_estimate, run_twopass_tsp, Order, StreamSession, ALPHA_TWOPASS, BETA_TWOPASS};
use subtsp::verify::{random_pairs, run_suite, subset_identity, VerifyConfig};
use subtsp::{CountingOracle, Metric};

struct Verdict {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Verdict {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Verdict { pass, summary: summary.into(), details: vec![] }
    }

    fn with(mut self, details: Vec<String>) -> Self {
        self.details = details;
        self
    }
}

fn within(limit: Duration, start: Instant, v: Verdict) -> Verdict {
    let took = start.elapsed();
    if took < limit {
        v
    } else {
        Verdict { pass: false, summary: format!("{} (took {took:.1?}, limit {limit:?})", v.summary), ..v }
    }
}

fn c1_two_pass() -> Verdict {
    let start = Instant::now();
    let mut bad = vec![];
    let mut worst: f64 = 0.0;
    for seed in 0..200u64 {
        let n = 4 + seed as usize % 10;
        let mut rng = rng_for(seed, "acceptance/twopass");
        let extra = rng.gen_range(0..=n * (n - 1) / 2);
        let g = random_connected_graph(n, extra, 20, &mut rng);
        let m = metric_from_graph(&g).expect("connected");
        let mut s = StreamSession::graph(&g, Order::Shuffled(seed));
        let r = run_twopass_tsp(&mut s, ALPHA_TWOPASS, BETA_TWOPASS).expect("two-pass run");
        let tsp = exact_tsp(&m).expect("n <= 13").value as f64;
        worst = worst.max(r.value / tsp);
        if !(tsp <= r.value && r.value <= 1.96 * tsp) {
            bad.push(format!("seed {seed}: n {n}, value {}, exact {tsp}", r.value));
        }
    }
    let v = Verdict::new(bad.is_empty(), format!("{} of 200 outside [TSP, 1.96·TSP], worst ratio {worst:.3}", bad.len()));
    within(Duration::from_secs(120), start, v.with(bad))
}

fn c2_subset_identity() -> Verdict {
    let start = Instant::now();
    let styles = [Style::EuclideanRounded, Style::WeightedClosure, Style::Graphic];
    let mut bad = vec![];
    let mut sizes = 0;
    for seed in 0..100u64 {
        let n = 6 + seed as usize % 7;
        let m = gen_random_metric(n, seed, styles[seed as usize % 3]).expect("metric");
        let t = mst_tree(&m, 0);
        let e_star = random_pairs(&t, &m, 1 + seed as usize % 12, seed);
        sizes += e_star.len();
        if let Err(msg) = subset_identity(&t, &e_star) {
            bad.push(format!("seed {seed}: {msg}"));
        }
    }
    let v = Verdict::new(bad.is_empty(), format!("{} of 100 mismatched, mean |E*| {:.1}", bad.len(), sizes as f64 / 100.0));
    within(Duration::from_secs(60), start, v.with(bad))
}

fn c3_structural_suites() -> Verdict {
    let cfg = VerifyConfig { max_n: 12, seeds: 0..100, ..VerifyConfig::fast() };
    let suites = [
        "cover_advantage lower bound",
        "cover_advantage",
        "single_edge_adv",
        "walk cost upper bound",
        "tsp bounds by walkcost",
        "naive bounds",
        "G_1_matching_TSP_lower_bound",
        "degree_1 vertices",
    ];
    let mut details = vec![];
    let mut violations = 0;
    let mut skipped = 0;
    for name in suites {
        let r = run_suite(name, &cfg).expect("known suite");
        violations += r.failures.len();
        skipped += r.skipped;
        details.push(format!("{name}: {} held, {} skipped, {} violated", r.passed, r.skipped, r.failures.len()));
        for f in &r.failures {
            details.push(format!("  seed {}: {}  [{}]", f.seed, f.detail, f.reproducer(cfg.max_n)));
        }
    }
    Verdict::new(
        violations == 0,
        format!("{violations} violations over {} suites x 100 seeds ({skipped} seeds without an exact advantage)", suites.len()),
    )
    .with(details)
}

fn c4_onepass_mst() -> Verdict {
    let start = Instant::now();
    let n = 512;
    let log_n = (n as f64).log2();
    let mut details = vec![];
    let mut pass = true;
    let metrics: Vec<(Metric, i64)> = (0..50u64)
        .map(|seed| {
            let m = gen_random_metric(n, seed, Style::EuclideanRounded).expect("metric");
            let mst = exact_mst(&m).value;
            (m, mst)
        })
        .collect();
    for alpha in [2.0, 4.0, 8.0, 16.0] {
        let (mut above, mut capped, mut small) = (0, 0, 0);
        let mut worst = 0.0f64;
        let word_cap = 64.0 * ((n as f64 / alpha).ceil() + 1.0) * log_n;
        for (seed, (m, mst)) in metrics.iter().enumerate() {
            let mut s = StreamSession::metric(m, Order::Shuffled(seed as u64));
            let r = run_onepass_mst_estimate(&mut s, alpha, seed as u64, 100.0).expect("one-pass run");
            let mst = *mst as f64;
            above += (r.value >= mst) as usize;
            capped += (r.value <= 400.0 * alpha * log_n * mst) as usize;
            small += (r.peak_words as f64 <= word_cap) as usize;
            worst = worst.max(r.value / mst);
        }
        let ok = above * 100 >= 95 * 50 && capped == 50 && small == 50;
        pass &= ok;
        details.push(format!(
            "alpha {alpha}: value >= MST {above}/50, under cap {capped}/50, words under {word_cap:.0} {small}/50, max value/MST {worst:.2}"
        ));
    }
    let v = Verdict::new(pass, "n = 512 Euclidean, 50 seeds per alpha").with(details);
    within(Duration::from_secs(300), start, v)
}

fn c5_closed_forms() -> Verdict {
    let mut samples: [Vec<String>; 5] = Default::default();
    let (mut y_bad, mut n_bad, mut n_alt, mut grid) = (0, 0, 0, 0);
    for k in 2..=3 {
        for r in 1..=3 {
            for p in 1..=2 {
                let base = OnePassParams { k, r, p, big_l: 0 };
                let n = base.n() as i64;
                for big_l in [n + 1, 2 * n + 3] {
                    let params = OnePassParams { big_l, ..base };
                    grid += 1;
                    let (k, r) = (k as i64, r as i64);
                    let y = exact_mst(&gen_onepass_family(params, Which::Y).expect("family")).value;
                    let want_y = (n - 1) + (big_l - 1) * (k + 1);
                    let no = exact_mst(&gen_onepass_family(params, Which::N).expect("family")).value;
                    let want_n = (n - 1) + (big_l - 1) * ((k - 1) * r + 1);
                    if y != want_y {
                        y_bad += 1;
                        samples[0].push(format!("Y k {k} r {r} p {p} L {big_l}: MST {y}, formula {want_y}"));
                    }
                    n_alt += (no == (n - 1) + (big_l - 1) * (k * r + 1)) as usize;
                    if no != want_n {
                        n_bad += 1;
                        samples[1].push(format!("N k {k} r {r} p {p} L {big_l}: MST {no}, formula {want_n}"));
                    }
                }
            }
        }
    }
    let (mut mst_bad, mut zero_bad, mut zero_below, mut one_bad, mut gadgets) = (0, 0, 0, 0, 0);
    let (mut one_tsp_over, mut ones) = (0, 0);
    for p in 1..=3usize {
        for r in 1..=3usize {
            let n = 2 + 2 * p * r;
            if n > 14 {
                continue;
            }
            let big_l = (n * n) as i64;
            for istar in 0..p {
                for jstar in 0..p {
                    for mask in 0..1u32 << (p * p) {
                        let x: Vec<Vec<bool>> =
                            (0..p).map(|i| (0..p).map(|j| mask >> (i * p + j) & 1 == 1).collect()).collect();
                        let g = TspGadget::new(x.clone(), istar, jstar, r, big_l).expect("gadget");
                        let m = metric_from_graph(&g.graph()).expect("connected");
                        gadgets += 1;
                        let (ni, ri) = (n as i64, r as i64);
                        let want_mst = (ni + 2 * ri - 2) + (2 * ri + 1) * big_l;
                        let mst = exact_mst(&m).value;
                        let tag = format!("p {p} r {r} i* {istar} j* {jstar} X {mask:0w$b}", w = p * p);
                        if mst != want_mst {
                            mst_bad += 1;
                            samples[2].push(format!("gadget {tag}: MST {mst}, formula {want_mst}"));
                        }
                        if x[istar][jstar] {
                            let cost = tour_cost(&m, &g.witness_tour());
                            let cap = 2 * ni - 6 + (2 * ri + 2) * big_l;
                            ones += 1;
                            one_tsp_over += (exact_tsp(&m).expect("n <= 14").value > cap) as usize;
                            if cost > cap {
                                one_bad += 1;
                                samples[4].push(format!("gadget {tag}: witness tour {cost} > {cap}"));
                            }
                        } else {
                            let tsp = exact_tsp(&m).expect("n <= 14").value;
                            if tsp != 2 * want_mst {
                                zero_bad += 1;
                                zero_below += (tsp < 2 * want_mst) as usize;
                                samples[3].push(format!("gadget {tag}: TSP {tsp}, 2·formula {}", 2 * want_mst));
                            }
                        }
                    }
                }
            }
        }
    }
    let pass = y_bad + n_bad + mst_bad + zero_bad + one_bad == 0;
    let summary = format!(
        "one-pass grid {grid}: Y off {y_bad}, N off {n_bad}; gadgets {gadgets}: MST off {mst_bad}, X=0 TSP off {zero_bad} ({zero_below} below), X=1 witness over {one_bad}"
    );
    let mut details = vec![
        format!("N family: MST equals (n−1)+(L−1)(kr+1) on {n_alt} of {grid}"),
        format!("X=1 gadgets: exact TSP above 2n−6+(2r+2)L on {one_tsp_over} of {ones}"),
    ];
    for list in samples {
        let more = list.len().saturating_sub(3);
        details.extend(list.into_iter().take(3));
        if more > 0 {
            details.push(format!("... {more} more like the above"));
        }
    }
    Verdict::new(pass, summary).with(details)
}

/// `log(q_hi/q_lo) / log(n_hi/n_lo)` over the end points of `sizes`.
fn slope(sizes: &[usize], q: &[f64]) -> f64 {
    let k = sizes.len() - 1;
    (q[k] / q[0]).ln() / (sizes[k] as f64 / sizes[0] as f64).ln()
}

const SLOPE_CAP: f64 = 1.8;

fn c6_meters() -> Verdict {
    let mut details = vec![];
    let mut pass = true;
    let mut rng = rng_for(6, "acceptance/meters");

    let mut over = 0;
    for call in 0..1000u64 {
        let n = rng.gen_range(20..200);
        let m = gen_graphic(n, rng.gen_range(0..n), call);
        let (v, s) = (rng.gen_range(0..n), rng.gen_range(1..20.min(n.div_ceil(2))));
        let mut o = CountingOracle::new(&m);
        let q = local(v, s, &mut o).expect("local").queries;
        over += (q > (2 * s * n + s * s) as u64) as usize;
    }
    pass &= over == 0;
    details.push(format!("local: {over}/1000 over 2sn+s²"));

    let mut over = 0;
    for call in 0..1000u64 {
        let n = rng.gen_range(20..200);
        let m = gen_graphic(n, rng.gen_range(0..n), call);
        let (v, h, q, alpha) = (rng.gen_range(0..n), rng.gen_range(1..8), rng.gen_range(n as u64..3000u64), rng.gen_range(1.0..4.0));
        let mut o = CountingOracle::new(&m);
        let got = bfs(v, h, q, alpha, &mut o).expect("bfs").queries;
        over += (got as f64 > q as f64 + alpha * alpha * (h * h) as f64) as usize;
    }
    pass &= over == 0;
    details.push(format!("bfs: {over}/1000 over q+α²h²"));

    let (mut over, mut calls, mut seed) = (0, 0, 0u64);
    while calls < 1000 {
        seed += 1;
        let n = rng.gen_range(20..80);
        let m = gen_random_metric(n, seed, Style::WeightedClosure).expect("metric");
        let t = mst_tree(&m, 0);
        let c = rng.gen_range(1..5);
        let f = build_ctree_forest(&t, &light_peel(&t, rng.gen_range(3..8)), c);
        if f.len() < 2 {
            continue;
        }
        let sk = Skeleton::new(&t, &f).expect("skeleton");
        let i = rng.gen_range(0..f.len());
        let j = (i + rng.gen_range(1..f.len())) % f.len();
        let mut o = CountingOracle::new(&m);
        let z = zeta(&sk, i, j, &mut o, CoverOptions::default()).expect("zeta");
        over += (z.queries > (16 * c * c) as u64) as usize;
        calls += 1;
    }
    pass &= over == 0;
    details.push(format!("zeta: {over}/1000 over 16c²"));

    let mut over = 0;
    for call in 0..1000u64 {
        let n = rng.gen_range(15..100);
        let m = gen_random_metric(n, call, Style::WeightedClosure).expect("metric");
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let parts = rng.gen_range(1..=14usize.min(n));
        let mut cuts: Vec<usize> = (1..n).collect();
        for i in 0..parts - 1 {
            let j = rng.gen_range(i..cuts.len());
            cuts.swap(i, j);
        }
        let mut cuts: Vec<usize> = cuts[..parts - 1].to_vec();
        cuts.sort_unstable();
        cuts.insert(0, 0);
        cuts.push(n);
        let paths: Vec<Vec<usize>> = cuts.windows(2).map(|w| order[w[0]..w[1]].to_vec()).collect();
        let mut o = CountingOracle::new(&m);
        let q = proper_tour_cost(&paths, &mut o).expect("proper tour").queries;
        over += (q > (n + 4 * parts * parts) as u64) as usize;
    }
    pass &= over == 0;
    details.push(format!("proper_tour: {over}/1000 over n+4|Q|²"));

    let sizes = [100, 400, 900];
    let seeds = 0..2u64;
    let mut g1 = vec![];
    let mut mst = vec![];
    for &n in &sizes {
        let (mut a, mut b) = (0.0, 0.0);
        for seed in seeds.clone() {
            let m = gen_graphic(n, n / 2, seed);
            let mut o = CountingOracle::new(&m);
            a += estimate_tsp_g1(&mut o, &G1Config::scaling(n, seed)).expect("g1 run").distinct_queries as f64;
            let m = gen_random_metric(n, seed, Style::EuclideanRounded).expect("metric");
            let t = mst_tree(&m, 0);
            let mut o = CountingOracle::new(&m);
            b += estimate_tsp_with_mst(&mut o, &t, &MstQueryConfig::scaling(n, seed)).expect("mst run").distinct_queries
                as f64;
        }
        let k = seeds.end as f64;
        g1.push(a / k);
        mst.push(b / k);
    }
    for (name, q) in [("query-g1", &g1), ("query-mst", &mst)] {
        let s = slope(&sizes, q);
        let ratios: Vec<String> = sizes.iter().zip(q).map(|(&n, q)| format!("{:.2}", q / (n as f64).powf(1.5))).collect();
        pass &= s <= SLOPE_CAP;
        details.push(format!("{name}: distinct/n^1.5 at {sizes:?} = [{}], slope {s:.2} (cap {SLOPE_CAP})", ratios.join(", ")));
    }
    Verdict::new(pass, "meters on 1000 calls each plus scaling slopes").with(details)
}

fn c7_desk_sandwich() -> Verdict {
    let mut details = vec![];
    let mut bad = 0;
    for seed in 0..100u64 {
        let n = 5 + seed as usize % 10;
        let m = gen_graphic(n, seed as usize % n, seed);
        let tsp = exact_tsp(&m).expect("n <= 14").value as f64;
        let mut o = CountingOracle::new(&m);
        let e = estimate_tsp_g1(&mut o, &G1Config::desk(n, seed)).expect("g1 run");
        if !(tsp <= e.value && e.value <= 2.0 * tsp) {
            bad += 1;
            details.push(format!("query-g1 seed {seed}: value {} via {}, exact {tsp}", e.value, e.branch));
        }
    }
    let styles = [Style::EuclideanRounded, Style::WeightedClosure, Style::Graphic];
    for seed in 0..100u64 {
        let n = 5 + seed as usize % 10;
        let m = gen_random_metric(n, seed, styles[seed as usize % 3]).expect("metric");
        let t = mst_tree(&m, 0);
        let tsp = exact_tsp(&m).expect("n <= 14").value as f64;
        let mut o = CountingOracle::new(&m);
        let e = estimate_tsp_with_mst(&mut o, &t, &MstQueryConfig::desk(n, seed)).expect("mst run");
        if !(tsp <= e.value && e.value <= 2.0 * tsp) {
            bad += 1;
            details.push(format!("query-mst seed {seed}: value {} via {}, exact {tsp}", e.value, e.branch));
        }
    }
    Verdict::new(bad == 0, format!("{bad} of 200 outside [TSP, 2·TSP]")).with(details)
}

fn c8_matching() -> Verdict {
    let (n, eps) = (1000, 0.05);
    let (mut held, mut over_budget) = (0, 0);
    let mut details = vec![];
    for seed in 0..100u64 {
        let m = gen_graphic(n, n / 2 + seed as usize * 5, seed);
        let unit: Vec<(usize, usize)> = m.unit_graph().edges.iter().map(|&(a, b, _)| (a, b)).collect();
        let mm = exact_max_matching(n, &unit).value as f64;
        let subset: Vec<usize> = (0..n).collect();
        let mut o = CountingOracle::new(&m);
        let opts = MatchingOptions { seed, ..MatchingOptions::default() };
        let e = matching_size_estimate(&subset, eps, &mut o, &opts).expect("matching");
        let ok = e.value <= mm && mm <= 2.0 * e.value + eps * n as f64;
        held += ok as usize;
        if e.budget_hit || e.queries > e.budget {
            over_budget += 1;
        }
        if !ok {
            details.push(format!("seed {seed}: estimate {}, MM {mm}", e.value));
        }
    }
    Verdict::new(
        held * 100 >= 95 * 100 && over_budget == 0,
        format!("sandwich held on {held}/100 seeds, budget exceeded on {over_budget}"),
    )
    .with(details)
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("two-pass TSP sandwich", c1_two_pass),
        ("cover-advantage expectation identity", c2_subset_identity),
        ("structural inequalities with exact oracles", c3_structural_suites),
        ("one-pass MST estimator", c4_onepass_mst),
        ("lower-bound family closed forms", c5_closed_forms),
        ("query meters and scaling", c6_meters),
        ("desk query algorithms against Held-Karp", c7_desk_sandwich),
        ("matching size estimator", c8_matching),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        failed += !v.pass as usize;
        println!("{tag} {} {name}: {} [{:.1?}]", i + 1, v.summary, start.elapsed());
        for d in &v.details {
            println!("    {d}");
        }
    }
    println!("acceptance: {} of {} criteria met", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
