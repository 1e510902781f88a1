use petgraph::algo::bridges::bridges;
use petgraph::graph::{NodeIndex, UnGraph};
use petgraph::visit::EdgeRef;

use subtsp::gen::gen_graphic;
use subtsp::query_g1::{local, Status};
use subtsp::{CountingOracle, Metric};

/// Largest vertex set containing `v` cut off by a single bridge with at most `s` vertices.
fn offline_light(m: &Metric, v: usize, s: usize) -> Option<Vec<usize>> {
    let n = m.n();
    let mut g = UnGraph::<(), ()>::new_undirected();
    for _ in 0..n {
        g.add_node(());
    }
    for a in 0..n {
        for b in a + 1..n {
            if m.dist(a, b) == 1 {
                g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
            }
        }
    }
    let mut best: Option<Vec<usize>> = None;
    for e in bridges(&g).collect::<Vec<_>>() {
        let (x, y) = (e.source().index(), e.target().index());
        let mut seen = vec![false; n];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(NodeIndex::new(u)).map(|w| w.index()) {
                if (u == x && w == y) || (u == y && w == x) || seen[w] {
                    continue;
                }
                seen[w] = true;
                stack.push(w);
            }
        }
        let side: Vec<usize> = (0..n).filter(|&u| seen[u]).collect();
        if side.len() <= s && best.as_ref().is_none_or(|b| b.len() < side.len()) {
            best = Some(side);
        }
    }
    best
}

#[test]
fn local_agrees_with_bridge_analysis() {
    let mut status_agree = 0;
    let mut set_agree = 0;
    let total = 100;
    for seed in 0..total {
        let n = 30 + (seed as usize * 7) % 50;
        let m = gen_graphic(n, (seed as usize * 13) % (n / 2), seed);
        let s = ((n as f64).sqrt().ceil() as usize).min((n - 1) / 2);
        let v = (seed as usize * 31) % n;
        let mut o = CountingOracle::new(&m);
        let r = local(v, s, &mut o).unwrap();
        let want = offline_light(&m, v, s);
        if (r.status == Status::Success) == want.is_some() {
            status_agree += 1;
        }
        if r.status == Status::Success && Some(&r.vertices) == want.as_ref() || r.status == Status::Fail && want.is_none() {
            set_agree += 1;
        }
        if r.status == Status::Success {
            // Soundness: every success is a genuine light subgraph containing v.
            assert!(r.vertices.contains(&v) && r.vertices.len() <= s);
        }
        assert!(r.queries <= (2 * s * n + s * s) as u64);
    }
    println!("status agreement {status_agree}/{total}, subgraph agreement {set_agree}/{total}");
    assert_eq!(status_agree, total);
    assert_eq!(set_agree, total);
}
