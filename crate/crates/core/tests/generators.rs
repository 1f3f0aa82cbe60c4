use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use updag_core::drawing::verify_drawing;
use updag_core::generators::*;
use updag_core::layouts::draw_fan;
use updag_core::outerplanar::is_outerplanar;
use updag_core::planarity::is_planar;
use updag_core::upward::oracle_upward_planar;
use updag_core::Dag;

fn by_label(g: &Dag, l: &str) -> usize {
    (0..g.vertex_count()).find(|&v| g.label(v) == l).unwrap()
}

/// Series and parallel reductions on the underlying multigraph; a connected
/// graph is series-parallel (no K4 minor) iff this ends with one edge or less.
fn reduces_to_an_edge(g: &Dag) -> bool {
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(u, v) in g.edges() {
        *mult.entry((u.min(v), u.max(v))).or_default() += 1;
    }
    // parallel reductions are implicit: multiplicities are dropped
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(u, v) in mult.keys() {
        adj.entry(u).or_default().insert(v);
        adj.entry(v).or_default().insert(u);
    }
    loop {
        let Some((&v, _)) = adj.iter().find(|(_, nb)| nb.len() <= 2) else { break };
        if adj.len() <= 2 {
            break;
        }
        let nb: Vec<usize> = adj.remove(&v).unwrap().into_iter().collect();
        for &w in &nb {
            adj.get_mut(&w).unwrap().remove(&v);
        }
        if let [a, b] = nb[..] {
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
    }
    adj.len() <= 2
}

#[test]
fn base_graphs_are_certified() {
    let fan7 = gen_base("fan7").unwrap();
    assert_eq!(oracle_upward_planar(&fan7, 10), Ok(false));
    let d = draw_fan(&fan7, by_label(&fan7, "c")).unwrap();
    assert!(verify_drawing(&d, 2).unwrap().0);

    let g0 = gen_base("g0").unwrap();
    assert_eq!(oracle_upward_planar(&g0, 10), Ok(false));
    assert!(g0.is_bipartite() && is_outerplanar(&g0));
    for cyc in [["1", "2", "6", "5"], ["3", "4", "8", "7"]] {
        for i in 0..4 {
            let (u, v) = (by_label(&g0, cyc[i]), by_label(&g0, cyc[(i + 1) % 4]));
            assert!(g0.adjacent(u, v), "{} {}", cyc[i], cyc[(i + 1) % 4]);
        }
    }
}

#[test]
fn g0_is_the_only_kind_of_ladder_orientation_that_fails() {
    // every other acyclic orientation of the ladder is upward planar
    let g0 = gen_base("g0").unwrap();
    let und: Vec<(usize, usize)> = g0.edges().to_vec();
    let mut failing = Vec::new();
    for mask in 0..1u32 << und.len() {
        let e: Vec<(usize, usize)> =
            und.iter().enumerate().map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a) } else { (a, b) }).collect();
        let g = Dag::from_edges(8, &e);
        if g.is_acyclic() && oracle_upward_planar(&g, 10) == Ok(false) {
            failing.push(mask);
        }
    }
    // G0 itself and its reversal
    assert_eq!(failing, vec![0, (1 << und.len()) - 1]);
}

#[test]
fn g_ell_counts() {
    // n = 8 * 3^l and max degree 2l + 3, for l <= 4
    let expected = [(8, 3), (24, 5), (72, 7), (216, 9), (648, 11)];
    for (l, &(n, d)) in expected.iter().enumerate() {
        let g = gen_g_ell(l as u32).unwrap();
        assert_eq!((g.vertex_count(), g.max_degree()), (n, d));
        assert!(g.is_acyclic() && g.is_bipartite());
        if l <= 2 {
            assert!(is_outerplanar(&g));
        }
    }
}

/// Vertex and edge counts summed group by group.
fn pathwidth2_counts(k: usize) -> (usize, usize) {
    let groups = [(4, 2), (2 * (3 * k + 1), 2), (6 * k + 1, 2), (2 * (4 * k + 1), 2)];
    // the core's 2 edges are a -> b1, a -> b2; every other group vertex has degree 2
    let n = groups.iter().map(|g| g.0).sum();
    let m = 2 + groups[1..].iter().map(|g| g.0 * g.1).sum::<usize>();
    (n, m)
}

#[test]
fn pathwidth2_counts_and_shape() {
    let frozen = [(29, 52), (49, 92), (69, 132), (89, 172)];
    for k in 1..=4 {
        let g = gen_pathwidth2(k).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), pathwidth2_counts(k));
        assert_eq!((g.vertex_count(), g.edge_count()), frozen[k - 1]);
        assert_eq!(g.vertex_count(), 20 * k + 9);
        assert!(g.is_acyclic() && is_planar(g.vertex_count(), g.edges()));
        let a = by_label(&g, "a");
        let bs = [by_label(&g, "b1"), by_label(&g, "b2")];
        let out_b = g.edges().iter().filter(|&&(u, v)| u == a && bs.contains(&v)).count();
        assert_eq!(out_b, 2);
    }
    // removing c leaves a caterpillar
    let g = gen_pathwidth2(1).unwrap();
    let c = by_label(&g, "c");
    let rest: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != c).collect();
    let t = g.induced(&rest);
    assert!(t.is_connected() && t.edge_count() == t.vertex_count() - 1);
    let spine: Vec<usize> = (0..t.vertex_count()).filter(|&v| t.degree(v) > 1).collect();
    let s = t.induced(&spine);
    assert!(s.is_connected() && (0..s.vertex_count()).all(|v| s.degree(v) <= 2));
}

proptest! {
    #[test]
    fn gadget_counts_match_their_definitions(b in 1usize..6, q in 2usize..7, p in 1usize..8, h in 1usize..4, a in 1usize..6) {
        let par = gen_gadget(GadgetKind::Parallel { b, q }).unwrap();
        prop_assert_eq!((par.dag.vertex_count(), par.dag.edge_count()), (2 + b * (q - 1), b * q));
        let gate = gen_gadget(GadgetKind::Gate { p }).unwrap();
        prop_assert_eq!((gate.dag.vertex_count(), gate.dag.edge_count()), (2 + (p - 1), 1 + 2 * (p - 1)));
        let chain = gen_gadget(GadgetKind::Chain { h, q, a }).unwrap();
        let n = 2 + (2 * h) + 2 * h * (q - 1) + (a - 1);
        let m = 2 * h * (2 * q - 1) + (2 * a - 1);
        prop_assert_eq!((chain.dag.vertex_count(), chain.dag.edge_count()), (n, m));
        for g in [&par, &gate, &chain] {
            prop_assert_eq!(g.dag.sources(), vec![g.s]);
            prop_assert_eq!(g.dag.sinks(), vec![g.t]);
            prop_assert!(g.dag.is_acyclic());
            prop_assert_eq!(g.s, 0);
        }
    }

    #[test]
    fn routed_solutions_verify(b in 2usize..=3, seed in any::<u64>()) {
        // b bins of three elements with a common sum
        let mut x = seed | 1;
        let mut next = |m: u64| { x ^= x << 13; x ^= x >> 7; x ^= x << 17; x % m };
        let w = 6 + next(6);
        let mut bins_v = Vec::new();
        for _ in 0..b {
            let a1 = 1 + next(w - 2);
            let a2 = 1 + next(w - a1 - 1);
            bins_v.push(vec![a1, a2, w - a1 - a2]);
        }
        let mut elems: Vec<u64> = bins_v.concat();
        elems.reverse();
        let inst = ThreePartitionInstance::new(elems).unwrap();
        let r = gen_reduction(&inst, ReductionCase::SeriesParallel).unwrap();
        let bins = bins_from_values(&inst, &bins_v).unwrap();
        let asg = route_solution(&r, &bins).unwrap();
        let rep = verify_assignment(&r, &asg);
        prop_assert!(rep.is_valid(), "{:?}", rep.issues);
        prop_assert!(asg.crossings.iter().all(|c| c.len() == inst.path_length()));
    }
}

/// All partitions of `0..k` into triples.
fn triple_partitions(rest: &[usize]) -> Vec<Vec<[usize; 3]>> {
    if rest.is_empty() {
        return vec![vec![]];
    }
    let first = rest[0];
    let mut out = Vec::new();
    for i in 1..rest.len() {
        for j in i + 1..rest.len() {
            let remain: Vec<usize> = rest.iter().enumerate().filter(|&(x, _)| x != 0 && x != i && x != j).map(|(_, &v)| v).collect();
            for mut p in triple_partitions(&remain) {
                p.insert(0, [first, rest[i], rest[j]]);
                out.push(p);
            }
        }
    }
    out
}

#[test]
fn unsolvable_instance_has_no_verifying_assignment() {
    let inst = ThreePartitionInstance::new(vec![1, 1, 1, 1, 1, 5]).unwrap();
    assert_eq!((inst.b, inst.w), (2, 5));
    let r = gen_reduction(&inst, ReductionCase::SeriesParallel).unwrap();
    let parts = triple_partitions(&[0, 1, 2, 3, 4, 5]);
    assert_eq!(parts.len(), 10);
    for p in &parts {
        // both bin orders, since bin j is tied to path j
        for order in [p.clone(), p.iter().rev().copied().collect()] {
            let a = route_partition(&r, &order).unwrap();
            assert!(!verify_assignment(&r, &a).is_valid());
            assert!(route_solution(&r, &order).is_err());
        }
    }
}

#[test]
fn figure_instance_pipeline() {
    let inst = ThreePartitionInstance::new(vec![1, 1, 1, 2, 2, 2, 2, 3, 4]).unwrap();
    let r = gen_reduction(&inst, ReductionCase::SeriesParallel).unwrap();
    assert_eq!(r.b_paths.len(), 3);
    assert!(r.b_paths.iter().all(|p| p.len() == 48));
    assert_eq!(r.barrier_width, r.g_a.dag.edge_count() + r.g_b.dag.edge_count() + 1);
    let bins = bins_from_values(&inst, &[vec![1, 1, 4], vec![2, 2, 2], vec![1, 2, 3]]).unwrap();
    let a = route_solution(&r, &bins).unwrap();
    assert!(verify_assignment(&r, &a).is_valid());
    let mut crossed = vec![0; r.g_a.dag.edge_count()];
    for list in &a.crossings {
        assert_eq!(list.len(), 48);
        for &(e, _) in list {
            crossed[e] += 1;
        }
    }
    assert!(crossed.iter().all(|&c| c <= 1));
}

#[test]
fn hard_instance_wirings() {
    let inst = ThreePartitionInstance::new(vec![1, 1, 1, 1, 1, 1]).unwrap();
    for case in [ReductionCase::SeriesParallel, ReductionCase::K4Pattern, ReductionCase::TwoSinks] {
        let r = gen_reduction(&inst, case).unwrap();
        let h = &r.hard_instance;
        assert!(h.is_acyclic() && h.is_connected());
        let (ns, nt) = (h.sources().len(), h.sinks().len());
        let sp = reduces_to_an_edge(h);
        match case {
            ReductionCase::SeriesParallel => assert_eq!((ns, nt, sp), (1, 1, true)),
            ReductionCase::K4Pattern => {
                assert_eq!((ns, nt, sp), (1, 1, false));
                // joining source and sink breaks planarity: not upward planar
                let mut e = h.edges().to_vec();
                e.push((h.sources()[0], h.sinks()[0]));
                assert!(is_planar(h.vertex_count(), h.edges()));
                assert!(!is_planar(h.vertex_count(), &e));
            }
            ReductionCase::TwoSinks => assert_eq!((ns, nt, sp), (1, 2, true)),
        }
        let barrier_edges = h.edge_count() - r.g_a.dag.edge_count() - r.g_b.dag.edge_count();
        assert_eq!(barrier_edges, r.barriers.len() * 2 * r.barrier_width);
    }
}
