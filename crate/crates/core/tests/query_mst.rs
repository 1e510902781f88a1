use rand::Rng as _;

use subtsp::cover::{advantage, Restriction};
use subtsp::exact::{exact_max_weight_matching, exact_mst, exact_mwc, exact_tsp, mst_tree, CoverOptions, MAX_MWC_VERTICES};
use subtsp::gen::{gen_random_metric, random_tree_edges, Style};
use subtsp::metric::metric_from_graph;
use subtsp::query_mst::*;
use subtsp::rng::rng_for;
use subtsp::estimate::Estimate;
use subtsp::{CountingOracle, Error, Metric, RootedTree, WeightedGraph};

fn random_tree(n: usize, seed: u64) -> RootedTree {
    let mut rng = rng_for(seed, "tree");
    let e: Vec<_> = random_tree_edges(n, &mut rng).into_iter().map(|(a, b)| (a, b, rng.gen_range(1..=9))).collect();
    RootedTree::from_edges(n, 0, &e).unwrap()
}

/// Shortest-path closure of `tree` plus `extra` chords, each no lighter than
/// the heaviest tree edge it spans, so `tree` stays a minimum spanning tree.
fn with_chords(tree: &RootedTree, extra: usize, slack: i64, seed: u64) -> Metric {
    let n = tree.n();
    let mut rng = rng_for(seed, "chords");
    let mut edges = tree.edge_list();
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && !edges.iter().any(|&(x, y, _)| (x, y) == (a, b) || (x, y) == (b, a)) {
            let top = tree.path_edges(a, b).iter().map(|&e| tree.weight(e)).max().unwrap();
            edges.push((a, b, top + rng.gen_range(0..=slack)));
        }
    }
    let m = metric_from_graph(&WeightedGraph::new(n, edges).unwrap()).unwrap();
    assert_eq!(exact_mst(&m).value, tree.total_weight());
    m
}

/// A star of arms of length 1 or 2 hanging from vertex 0, each arm one c-tree.
fn arms(k: usize, chords: usize, seed: u64) -> (Metric, RootedTree, CTreeForest) {
    let mut rng = rng_for(seed, "arms");
    let mut e = vec![];
    let mut sets = vec![];
    let mut next = 1;
    for _ in 0..k {
        let len = rng.gen_range(1..=2);
        let mut set = vec![];
        let mut prev = 0;
        for _ in 0..len {
            e.push((prev, next, rng.gen_range(1..=9)));
            set.push(next);
            prev = next;
            next += 1;
        }
        sets.push(set);
    }
    let t = RootedTree::from_edges(next, 0, &e).unwrap();
    let m = with_chords(&t, chords, 2, seed);
    let f = CTreeForest::from_edge_sets(&t, sets, 1).unwrap();
    (m, t, f)
}

/// A forest from the peel of a small random metric's MST, when its skeleton fits `exact_mwc`.
fn peeled(n: usize, seed: u64) -> Option<(Metric, RootedTree, CTreeForest)> {
    let style = [Style::EuclideanRounded, Style::WeightedClosure, Style::Graphic][seed as usize % 3];
    let m = gen_random_metric(n, seed, style).unwrap();
    let t = mst_tree(&m, 0);
    let p = light_peel(&t, 2 + seed as usize % 3);
    let f = build_ctree_forest(&t, &p, 1 + seed as usize % 2);
    let size = 1 + f.trees.iter().map(|x| x.edges.len()).sum::<usize>();
    (!f.is_empty() && size <= MAX_MWC_VERTICES).then_some((m, t, f))
}

fn instances(max_n: usize) -> impl Iterator<Item = (u64, Metric, RootedTree, CTreeForest)> {
    (0..120u64).filter_map(move |seed| {
        if seed % 2 == 0 {
            let (m, t, f) = arms(2 + seed as usize % 5, seed as usize % 9, seed);
            (m.n() <= max_n).then_some((seed, m, t, f))
        } else {
            peeled(6 + seed as usize % (max_n - 5), seed).map(|(m, t, f)| (seed, m, t, f))
        }
    })
}

fn mwc(sk: &Skeleton, m: &Metric) -> i64 {
    exact_mwc(&sk.table(|a, b| m.dist(a, b)), sk.size(), 0).unwrap().value
}

/// `Σ adv*(F_i)` with every vertex of the metric as a candidate endpoint.
fn sum_special_adv(t: &RootedTree, f: &CTreeForest, m: &Metric) -> i64 {
    let mut o = CountingOracle::new(m);
    f.trees
        .iter()
        .map(|x| advantage(t, &x.edges, Restriction::SpecialEndpoint, &mut o, CoverOptions::default()).unwrap().value)
        .sum()
}

fn exact_zetas(sk: &Skeleton, m: &Metric) -> Vec<Vec<i64>> {
    let k = sk.weights.len();
    let mut o = CountingOracle::new(m);
    let mut z = vec![vec![0; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let v = zeta(sk, i, j, &mut o, CoverOptions::default()).unwrap();
            assert!(v.exact);
            z[i][j] = v.value;
            z[j][i] = v.value;
        }
    }
    z
}

fn mm_l(sk: &Skeleton, z: &[Vec<i64>], gap: f64) -> i64 {
    let w = &sk.weights;
    let mut edges = vec![];
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if in_l(z[i][j], w[i], w[j], gap) {
                edges.push((i, j, w[i] + w[j]));
            }
        }
    }
    exact_max_weight_matching(w.len(), &edges).unwrap().value
}

#[test]
fn segments_partition_random_trees() {
    for seed in 0..60u64 {
        let n = 2 + (seed as usize * 37) % 499;
        let t = random_tree(n, seed);
        for ell in [1, 2, 3, (n as f64).sqrt().ceil() as usize, 10] {
            let p = light_peel(&t, ell);
            assert!(p.top_leaves(&t) * ell <= n);
            let s = partition_segments(&t, &p);
            let mut hits = vec![0; n];
            for (i, seg) in s.segments.iter().enumerate() {
                assert!(t.edge_set_is_connected(seg), "seed {seed} ell {ell}: segment {i} is not a subtree");
                assert_eq!(s.vertex_counts[i], t.edge_set_vertices(seg).len());
                assert!(s.vertex_counts[i] <= 12 * ell + 2, "seed {seed} ell {ell}: {} vertices", s.vertex_counts[i]);
                seg.iter().for_each(|&e| hits[e] += 1);
                if let SegmentKind::Chunk { path, n_ell } = &s.kinds[i] {
                    assert!(path.len() == 1 || *n_ell <= 11 * ell);
                }
            }
            assert!((0..n).all(|v| hits[v] == usize::from(v != t.root())), "seed {seed} ell {ell}");
            assert!(s.len() <= 4 * n / ell + 2, "seed {seed} ell {ell}: {} segments", s.len());
        }
    }
}

/// Heaviest union of at most `k` downward paths from `parent(u)`, `u` ranging over `lights`.
fn brute_union(t: &RootedTree, lights: &[usize], k: usize) -> i64 {
    let leaves: Vec<(usize, usize)> = lights
        .iter()
        .flat_map(|&u| t.subtree_vertices(u).into_iter().filter(|&x| t.children(x).is_empty()).map(move |x| (u, x)))
        .collect();
    let mut best = 0;
    let mut pick = vec![];
    fn go(t: &RootedTree, leaves: &[(usize, usize)], k: usize, from: usize, pick: &mut Vec<usize>, best: &mut i64) {
        let mut edges: Vec<usize> = pick
            .iter()
            .flat_map(|&i| {
                let (u, x) = leaves[i];
                t.path_edges(t.parent(u).unwrap(), x)
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        *best = (*best).max(t.edge_set_weight(&edges));
        if pick.len() == k {
            return;
        }
        for i in from..leaves.len() {
            pick.push(i);
            go(t, leaves, k, i + 1, pick, best);
            pick.pop();
        }
    }
    go(t, &leaves, k, 0, &mut pick, &mut best);
    best
}

#[test]
fn k_extension_matches_brute_force() {
    for seed in 0..80u64 {
        let n = 8 + seed as usize % 17;
        let t = random_tree(n, seed);
        let ell = 2 + seed as usize % 7;
        let p = light_peel(&t, ell);
        for k in 0..=4 {
            let x = max_k_extension(&t, &p, k);
            assert_eq!(x.weight, brute_union(&t, &p.light, k), "seed {seed} ell {ell} k {k}");
            assert_eq!(x.weight, t.edge_set_weight(&x.edges));
            assert!(x.paths.len() <= k);
        }
    }
}

#[test]
fn ctree_forest_matches_per_subtree_brute_force() {
    for seed in 0..80u64 {
        let n = 8 + seed as usize % 17;
        let t = random_tree(n, seed);
        let p = light_peel(&t, 2 + seed as usize % 7);
        for c in 1..=3 {
            let f = build_ctree_forest(&t, &p, c);
            assert!(f.is_independent(&t));
            let want: i64 = p.light.iter().map(|&u| brute_union(&t, &[u], c)).sum();
            assert_eq!(f.weight(), want, "seed {seed} c {c}");
            let again = CTreeForest::from_edge_sets(&t, f.edge_sets(), c).unwrap();
            assert_eq!(again.weight(), f.weight());
        }
    }
}

/// Heaviest independent family of `c`-trees using only edges below the peel.
fn brute_global_forest(t: &RootedTree, p: &LightPeel, c: usize) -> i64 {
    let below: Vec<usize> = (0..t.n()).filter(|&v| !p.in_top[v]).collect();
    let mut cands: Vec<Vec<usize>> = vec![];
    for mask in 1u32..1 << below.len() {
        let set: Vec<usize> = (0..below.len()).filter(|&i| mask >> i & 1 == 1).map(|i| below[i]).collect();
        if CTreeForest::from_edge_sets(t, vec![set.clone()], c).is_ok() {
            cands.push(set);
        }
    }
    let w: Vec<i64> = cands.iter().map(|s| t.edge_set_weight(s)).collect();
    let m = cands.len();
    let ok = |a: usize, b: usize| CTreeForest::from_edge_sets(t, vec![cands[a].clone(), cands[b].clone()], c).is_ok();
    let compat: Vec<Vec<bool>> = (0..m).map(|a| (0..m).map(|b| a != b && ok(a, b)).collect()).collect();
    fn go(i: usize, chosen: &mut Vec<usize>, acc: i64, w: &[i64], compat: &[Vec<bool>], best: &mut i64) {
        *best = (*best).max(acc);
        for j in i..w.len() {
            if chosen.iter().all(|&x| compat[x][j]) {
                chosen.push(j);
                go(j + 1, chosen, acc + w[j], w, compat, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    go(0, &mut vec![], 0, &w, &compat, &mut best);
    best
}

#[test]
fn per_subtree_forest_against_global_optimum() {
    let (mut equal, mut total) = (0, 0);
    for seed in 0..60u64 {
        let n = 6 + seed as usize % 5;
        let t = random_tree(n, seed);
        let p = light_peel(&t, 2 + seed as usize % 4);
        if p.light.is_empty() {
            continue;
        }
        for c in 1..=2 {
            let got = build_ctree_forest(&t, &p, c).weight();
            let best = brute_global_forest(&t, &p, c);
            assert!(got <= best);
            total += 1;
            equal += usize::from(got == best);
        }
    }
    println!("per-subtree forest is globally optimal on {equal}/{total} cases");
}

#[test]
fn zeta_single_edges_follow_the_pair_formula() {
    for seed in 0..40u64 {
        let mut rng = rng_for(seed, "single");
        let k = 3 + seed as usize % 4;
        let e: Vec<_> = (1..=k).map(|v| (0, v, rng.gen_range(1..=9))).collect();
        let t = RootedTree::from_edges(k + 1, 0, &e).unwrap();
        let m = with_chords(&t, 2 * k, 4, seed);
        let f = CTreeForest::from_edge_sets(&t, (1..=k).map(|v| vec![v]).collect(), 1).unwrap();
        let sk = Skeleton::new(&t, &f).unwrap();
        let mut o = CountingOracle::new(&m);
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (i + 1, j + 1);
                let want = (t.weight(a) + t.weight(b) - m.dist(a, b)).max(0);
                assert_eq!(zeta(&sk, i, j, &mut o, CoverOptions::default()).unwrap().value, want);
            }
        }
    }
}

#[test]
fn zeta_query_meter() {
    let mut calls = 0;
    for seed in 0..200u64 {
        let n = 20 + seed as usize % 60;
        let m = gen_random_metric(n, seed, Style::WeightedClosure).unwrap();
        let t = mst_tree(&m, 0);
        let c = 1 + seed as usize % 4;
        let f = build_ctree_forest(&t, &light_peel(&t, 3 + seed as usize % 5), c);
        if f.len() < 2 {
            continue;
        }
        let sk = Skeleton::new(&t, &f).unwrap();
        let (i, j) = (seed as usize % f.len(), (seed as usize / 3 + 1) % f.len());
        if i == j {
            continue;
        }
        let mut o = CountingOracle::new(&m);
        let z = zeta(&sk, i, j, &mut o, CoverOptions::default()).unwrap();
        assert!(z.queries <= (16 * c * c) as u64, "seed {seed}: {} queries, c = {c}", z.queries);
        calls += 1;
    }
    assert!(calls >= 50);
}

#[test]
fn skeleton_tree_is_an_mst_of_w_prime() {
    for (seed, m, t, f) in instances(16) {
        let sk = Skeleton::new(&t, &f).unwrap();
        let s = sk.size();
        let w = sk.table(|a, b| m.dist(a, b));
        let sm = Metric::from_fn(s, |a, b| w[a * s + b]);
        assert_eq!(exact_mst(&sm).value, sk.mst(), "seed {seed}");
        assert_eq!(sk.tree.total_weight(), sk.mst());
    }
}

#[test]
fn weighted_matching_estimate_bounds() {
    let gap = 0.1;
    let (mut upper_ok, mut total) = (0, 0);
    for (seed, m, t, f) in instances(16) {
        let sk = Skeleton::new(&t, &f).unwrap();
        let z = exact_zetas(&sk, &m);
        let mm = mm_l(&sk, &z, gap) as f64;
        let mut o = CountingOracle::new(&m);
        let opts = MmOptions { samples: None, seed, cover: CoverOptions::default() };
        let x = weighted_mm_estimate(&sk, gap, 0.1, &mut o, &mut ZetaCache::new(), &opts).unwrap();
        assert!(x.value <= mm + 1e-9, "seed {seed}: X = {} above MM(L) = {mm}", x.value);
        let adv = sum_special_adv(&t, &f, &m) as f64;
        let log_n = (m.n() as f64).log2();
        let rhs = 16.0 * (1.0 / gap).log2() / gap.powi(2) * x.value
            + 2.0 / gap.powi(3) * adv
            + sk.mst() as f64 / log_n.powi(8);
        total += 1;
        upper_ok += usize::from(mm <= rhs + 1e-9);
    }
    println!("upper inequality held on {upper_ok}/{total}");
    assert!(total >= 50);
    assert!(upper_ok * 100 >= total * 95);
}

#[test]
fn single_l_edge_matching() {
    // Two unit arms whose tips are one apart: ζ = 1 + 1 − 1.
    let t = RootedTree::from_edges(3, 0, &[(0, 1, 1), (0, 2, 1)]).unwrap();
    let m = Metric::from_fn(3, |u, v| if u == v { 0 } else { 1 });
    let f = CTreeForest::from_edge_sets(&t, vec![vec![1], vec![2]], 1).unwrap();
    let sk = Skeleton::new(&t, &f).unwrap();
    let z = exact_zetas(&sk, &m);
    assert_eq!(z[0][1], 1);
    assert_eq!(mm_l(&sk, &z, 0.1), 2);
    let mut o = CountingOracle::new(&m);
    let opts = MmOptions { samples: None, seed: 0, cover: CoverOptions::default() };
    let x = weighted_mm_estimate(&sk, 0.1, 0.1, &mut o, &mut ZetaCache::new(), &opts).unwrap();
    assert!(x.value > 0.0 && x.value <= 2.0);
}

#[test]
fn walk_cost_claims() {
    let mut checked = 0;
    for gap in [0.1, 0.5] {
        for (seed, m, t, f) in instances(16) {
            let sk = Skeleton::new(&t, &f).unwrap();
            let z = exact_zetas(&sk, &m);
            let mm = mm_l(&sk, &z, gap) as f64;
            let w = mwc(&sk, &m) as f64;
            let mst = sk.mst() as f64;
            let adv = sum_special_adv(&t, &f, &m) as f64;
            let c = f.c as f64;
            assert!(w <= 2.0 * mst - gap / 2.0 * mm + 1e-9, "seed {seed} gap {gap}: MWC {w}, MST' {mst}, MM {mm}");
            let low = (2.0 - 3.0 * c * gap) * mst - 3.0 * c * mm - 4.0 * c * adv;
            assert!(w >= low - 1e-9, "seed {seed} gap {gap}: MWC {w} below {low}");
            checked += 1;
        }
    }
    assert!(checked >= 100);
}

#[test]
fn tsp_brackets_walk_cost() {
    let mut checked = 0;
    for (seed, m, t, f) in instances(12) {
        let sk = Skeleton::new(&t, &f).unwrap();
        let w = mwc(&sk, &m);
        let tsp = exact_tsp(&m).unwrap().value;
        let adv = sum_special_adv(&t, &f, &m);
        let outside = t.total_weight() - f.weight();
        assert!(tsp >= w - 2 * adv, "seed {seed}: TSP {tsp}, MWC {w}, adv {adv}");
        assert!(tsp <= w + 2 * outside, "seed {seed}: TSP {tsp}, MWC {w}, outside {outside}");
        checked += 1;
    }
    assert!(checked >= 50);
}

#[test]
fn spider_walk_examples() {
    // Tips at tree distance: no walk beats doubling.
    let (m, t, f) = arms(5, 0, 3);
    let sk = Skeleton::new(&t, &f).unwrap();
    assert_eq!(mwc(&sk, &m), 2 * sk.mst());
    let p = MstQueryConfig::desk(m.n(), 3).spider_params("s");
    let r = spider_walk_report(&t, &f, &p, &mut CountingOracle::new(&m)).unwrap();
    assert_eq!(r.walk, Walk::Long);

    // Unit edges paired by unit chords: the walk costs 1.5·MST(w').
    let k = 6;
    let e: Vec<_> = (1..=k).map(|v| (0, v, 1)).collect();
    let t = RootedTree::from_edges(k + 1, 0, &e).unwrap();
    let mut g = t.edge_list();
    g.extend((0..k / 2).map(|i| (2 * i + 1, 2 * i + 2, 1)));
    let m = metric_from_graph(&WeightedGraph::new(k + 1, g).unwrap()).unwrap();
    let f = CTreeForest::from_edge_sets(&t, (1..=k).map(|v| vec![v]).collect(), 1).unwrap();
    let sk = Skeleton::new(&t, &f).unwrap();
    assert_eq!(2 * mwc(&sk, &m), 3 * sk.mst());
    let p = MstQueryConfig::desk(m.n(), 3).spider_params("s");
    let r = spider_walk_report(&t, &f, &p, &mut CountingOracle::new(&m)).unwrap();
    assert_eq!(r.walk, Walk::Short);
}

#[test]
fn spider_walk_is_consistent_with_exact_walk() {
    let (mut short, mut long) = (0, 0);
    for (seed, m, t, f) in instances(16) {
        let sk = Skeleton::new(&t, &f).unwrap();
        let w = mwc(&sk, &m) as f64;
        let mst = sk.mst() as f64;
        let p = MstQueryConfig::desk(m.n(), seed).spider_params("s");
        let r = spider_walk_report(&t, &f, &p, &mut CountingOracle::new(&m)).unwrap();
        let eps = p.eps;
        match r.walk {
            Walk::Short => {
                short += 1;
                let cap = (2.0 - eps.powi(4) / (2.0 * (1.0 / eps).log2())) * mst;
                assert!(w <= cap + 1e-9, "seed {seed}: short walk reported, MWC {w} > {cap}");
            }
            Walk::Long => {
                long += 1;
                assert!(w >= (2.0 - p.c0 * f.c as f64 * eps) * mst - 1e-9);
            }
        }
    }
    println!("spider: {short} short, {long} long");
    assert!(short > 0 && long > 0);
}

#[test]
fn reorganize_branches_against_exact_tsp() {
    let mut seen = std::collections::BTreeMap::new();
    for seed in 0..150u64 {
        let (m, t, f) = arms(2 + seed as usize % 5, seed as usize % 7, seed);
        if m.n() > 13 {
            continue;
        }
        let cfg = MstQueryConfig::desk(m.n(), seed);
        let mut o = CountingOracle::new(&m);
        let e = reorganize_estimate(&t, &f, cfg.eps, &cfg.spider_params("r"), &mut o).unwrap();
        let tsp = exact_tsp(&m).unwrap().value as f64;
        let mst = t.total_weight() as f64;
        assert!(tsp <= e.value + 1e-9, "seed {seed}: {e} below TSP {tsp}");
        assert!(e.value <= 2.0 * tsp + 1e-9);
        if e.branch == "reorganize_long" {
            assert!(tsp >= (1.0 + cfg.eps) * mst - 1e-9, "seed {seed}: long branch with TSP {tsp}, MST {mst}");
        }
        *seen.entry(e.branch.clone()).or_insert(0) += 1;
    }
    println!("reorganize branches: {seen:?}");
    assert_eq!(seen.len(), 3, "{seen:?}");
}

#[test]
fn reorganize_needs_a_heavy_forest() {
    let (m, t, _) = arms(4, 0, 1);
    let f = CTreeForest::from_edge_sets(&t, vec![t.all_edges()[..1].to_vec()], 1).unwrap();
    let cfg = MstQueryConfig::desk(m.n(), 1);
    let r = reorganize_estimate(&t, &f, cfg.eps, &cfg.spider_params("r"), &mut CountingOracle::new(&m));
    assert!(matches!(r, Err(Error::PreconditionUnmet(_))));
}

#[test]
fn mixed_desk_sandwich() {
    let mut branches = std::collections::BTreeMap::new();
    for seed in 0..100u64 {
        let n = 5 + seed as usize % 10;
        let m = if seed % 4 == 3 {
            with_chords(&random_tree(n, seed), n, 3, seed)
        } else {
            gen_random_metric(n, seed, [Style::EuclideanRounded, Style::WeightedClosure, Style::Graphic][seed as usize % 3])
                .unwrap()
        };
        let t = mst_tree(&m, 0);
        let mut o = CountingOracle::new(&m);
        let e = estimate_tsp_with_mst(&mut o, &t, &MstQueryConfig::desk(n, seed)).unwrap();
        let tsp = exact_tsp(&m).unwrap().value as f64;
        assert!(tsp <= e.value + 1e-9 && e.value <= 2.0 * tsp + 1e-9, "seed {seed}: {e}, TSP {tsp}");
        if e.value < 2.0 * t.total_weight() as f64 {
            assert!(e.value >= tsp);
        }
        *branches.entry(e.branch).or_insert(0) += 1;
    }
    println!("branches: {branches:?}");
}

#[test]
fn step_query_meters() {
    for seed in 0..20u64 {
        let n = 60 + 10 * seed as usize;
        let m = gen_random_metric(n, seed, Style::EuclideanRounded).unwrap();
        let t = mst_tree(&m, 0);
        let cfg = MstQueryConfig::scaling(n, seed);
        let p = light_peel(&t, cfg.ell);
        let special = t.special_vertices(&p.top_edges).len().max(1);
        let mut o = CountingOracle::new(&m);
        let e = estimate_tsp_with_mst(&mut o, &t, &cfg).unwrap();
        for (step, q) in &e.breakdown {
            if step == "step1" {
                assert!(*q <= (n * special) as u64, "seed {seed}: step 1 used {q}");
            }
        }
        assert!(e.distinct_queries <= (n * (n - 1) / 2) as u64);
    }
}

/// A spine `0..s` of unit edges; spine vertex `i` holds a hub with `leaves`
/// leaves of weight `w`. Chords of weight `w` join leaf pairs `(a, b)` of the
/// same hub, for `(a, b)` in `pairs`.
fn brooms(s: usize, leaves: usize, w: i64, pairs: &[(usize, usize)]) -> (Metric, RootedTree) {
    let n = s * (leaves + 2);
    let hub = |i: usize| s + i * (leaves + 1);
    let mut e: Vec<_> = (1..s).map(|i| (i - 1, i, 1)).collect();
    for i in 0..s {
        e.push((i, hub(i), 1));
        e.extend((1..=leaves).map(|j| (hub(i), hub(i) + j, w)));
    }
    let t = RootedTree::from_edges(n, 0, &e).unwrap();
    let mut g = t.edge_list();
    for i in 0..s {
        g.extend(pairs.iter().map(|&(a, b)| (hub(i) + a, hub(i) + b, w)));
    }
    (metric_from_graph(&WeightedGraph::new(n, g).unwrap()).unwrap(), t)
}

fn branch_of(m: &Metric, t: &RootedTree, ell: usize) -> Estimate {
    let mut cfg = MstQueryConfig::desk(m.n(), 7);
    cfg.ell = ell;
    estimate_tsp_with_mst(&mut CountingOracle::new(m), t, &cfg).unwrap()
}

#[test]
fn every_step_is_reachable() {
    // A bare path: T' carries nearly all the weight.
    let e: Vec<_> = (1..40).map(|i| (i - 1, i, 1)).collect();
    let t = RootedTree::from_edges(40, 0, &e).unwrap();
    let m = Metric::from_fn(40, |u, v| t.path_weight(u, v));
    assert_eq!(branch_of(&m, &t, 2).branch, "step1_top");

    // Bushy hubs: the 4-leaf forest holds about a third of the weight.
    let (m, t) = brooms(10, 12, 20, &[]);
    let e = branch_of(&m, &t, 13);
    assert_eq!(e.branch, "step5");
    assert_eq!(e.value, 2.0 * t.total_weight() as f64);

    // Fewer hubs: the k-extension reaches every leaf.
    let (m, t) = brooms(4, 12, 20, &[]);
    assert_eq!(branch_of(&m, &t, 13).branch, "step4_top");

    // Chords among forest leaves show up in the spider walk.
    let (m, t) = brooms(10, 12, 20, &[(1, 2), (3, 4)]);
    assert_eq!(branch_of(&m, &t, 13).branch, "step2_spider");

    // Chords among leaves left out of the forest only show up in segments.
    let (m, t) = brooms(10, 12, 20, &[(9, 10), (11, 12)]);
    assert_eq!(branch_of(&m, &t, 13).branch, "step3_segments");
}
