use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use updag_core::generators::{gen_base, single_source_dags};
use updag_core::outer1p::*;
use updag_core::{blocks, Dag};

/// Random connected single-source DAG: vertex j > 0 gets a parent below it,
/// then `extra` further forward edges are attempted.
fn random_single_source(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Dag {
    let mut e: Vec<(usize, usize)> = (1..n).map(|j| (rng.gen_range(0..j), j)).collect();
    for _ in 0..extra {
        let a = rng.gen_range(0..n - 1);
        let b = rng.gen_range(a + 1..n);
        if !e.contains(&(a, b)) {
            e.push((a, b));
        }
    }
    // shuffle ids so that 0 is not always the source
    let mut ids: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        ids.swap(i, rng.gen_range(0..=i));
    }
    Dag::from_edges(n, &e.iter().map(|&(a, b)| (ids[a], ids[b])).collect::<Vec<_>>())
}

/// Runs both routes; on acceptance the embedding must pass the independent
/// checks, and every block's choice must be consistent.
fn agree(g: &Dag) -> bool {
    let oracle = oracle_o1p(g, O1P_ORACLE_LIMIT).unwrap();
    let out = test_upward_o1p(g).unwrap();
    if let O1pOutcome::Accepted(e) = &out {
        check_o1p_embedding(g, e).unwrap_or_else(|why| panic!("{why}: {:?}", g.edges()));
        for b in blocks(g).unwrap() {
            let mut t = build_spqr(&b.dag).unwrap();
            orient_virtual_edges(&mut t);
            let f: Vec<_> = (0..t.nodes.len()).map(|x| feasible_embeddings(&t, x)).collect();
            let c = consistent_choice(&t, &f).expect("accepted blocks have a choice");
            assert!(choice_is_consistent(&t, &f, &c));
        }
    }
    oracle == out.is_accepted()
}

#[test]
fn agrees_with_oracle_exhaustively_up_to_six() {
    let mut accepted = 0;
    for n in 1..=6 {
        for g in single_source_dags(n).unwrap() {
            assert!(agree(&g), "disagreement on {:?}", g.edges());
            accepted += oracle_o1p(&g, 9).unwrap() as usize;
        }
    }
    // 1 + 1 + 3 + 16 + 142 + 1672, frozen from the first run
    assert_eq!(accepted, 1835);
}

#[test]
fn the_two_oracles_agree() {
    let mut graphs: Vec<Dag> = (1..=5).flat_map(|n| single_source_dags(n).unwrap()).collect();
    graphs.extend(single_source_dags(6).unwrap().into_iter().step_by(7));
    // multi-source inputs too: both oracles accept any DAG
    graphs.push(gen_base("fan7").unwrap());
    graphs.push(gen_base("g0").unwrap());
    for g in &graphs {
        let by_order = oracle_o1p_witness(g, 9).unwrap();
        let by_pairs = oracle_o1p_by_planarization(g, 9).unwrap();
        assert_eq!(by_order.is_some(), by_pairs.is_some(), "{:?}", g.edges());
    }
}

#[test]
fn agrees_with_oracle_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut accepted = 0;
    for _ in 0..400 {
        let n = rng.gen_range(7..=9);
        let extra = rng.gen_range(0..=n + 3);
        let g = random_single_source(&mut rng, n, extra);
        assert!(agree(&g), "disagreement on {:?}", g.edges());
        accepted += test_upward_o1p(&g).unwrap().is_accepted() as usize;
    }
    assert!(accepted > 100 && accepted < 400, "{accepted}");
}

#[test]
fn named_graphs() {
    let tri = Dag::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
    match test_upward_o1p(&tri).unwrap() {
        O1pOutcome::Accepted(e) => assert_eq!(e.crossing_count(), 0),
        r => panic!("{r:?}"),
    }

    // fan7 is outer-1-planar but has two sources, outside the tester's scope
    let fan7 = gen_base("fan7").unwrap();
    assert_eq!(fan7.sources().len(), 2);
    assert!(oracle_o1p(&fan7, 9).unwrap());
    assert!(matches!(test_upward_o1p(&fan7), Err(O1pError::UnsupportedInput(_))));

    // K4 with a single source needs its crossing
    let k4 = Dag::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    match test_upward_o1p(&k4).unwrap() {
        O1pOutcome::Accepted(e) => {
            assert_eq!(e.crossing_count(), 1);
            assert_eq!(e.provenance[0].kind, NodeKind::R);
            check_o1p_embedding(&k4, &e).unwrap();
        }
        r => panic!("{r:?}"),
    }

    // K5 is not outer-1-planar under any orientation
    let k5: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    let k5 = Dag::from_edges(5, &k5);
    assert!(!oracle_o1p(&k5, 9).unwrap());
    assert!(!test_upward_o1p(&k5).unwrap().is_accepted());
}

#[test]
fn five_parallel_paths_fail_the_structure_check() {
    let e: Vec<(usize, usize)> = (1..=5).flat_map(|i| [(0, i), (i, 6)]).collect();
    let g = Dag::from_edges(7, &e);
    let t = build_spqr(&g).unwrap();
    assert!(!check_o1p_structure(&t));
    match test_upward_o1p(&g).unwrap() {
        O1pOutcome::Rejected(r) => assert_eq!(r.stage, Stage::Structure),
        a => panic!("{a:?}"),
    }
    assert!(!oracle_o1p(&g, 9).unwrap());
}

#[test]
fn rejects_unsupported_input() {
    let two_sources = Dag::from_edges(3, &[(0, 2), (1, 2)]);
    assert!(matches!(test_upward_o1p(&two_sources), Err(O1pError::UnsupportedInput(_))));
    let split = Dag::from_edges(4, &[(0, 1), (2, 3)]);
    assert!(matches!(test_upward_o1p(&split), Err(O1pError::UnsupportedInput(_))));
    assert!(test_upward_o1p(&Dag::from_edges(1, &[])).unwrap().is_accepted());
}

fn reachable(g: &Dag, edges: &[usize], s: usize, t: usize) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(x) = stack.pop() {
        if x == t {
            return true;
        }
        for &e in edges {
            let (a, b) = g.edges()[e];
            if a == x && !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    false
}

fn connected_without(n: usize, edges: &[(usize, usize)], gone: &[usize]) -> bool {
    let alive: Vec<usize> = (0..n).filter(|v| !gone.contains(v)).collect();
    let mut seen = vec![false; n];
    let mut stack = vec![alive[0]];
    seen[alive[0]] = true;
    while let Some(x) = stack.pop() {
        for &(a, b) in edges {
            for (p, q) in [(a, b), (b, a)] {
                if p == x && !gone.contains(&q) && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    alive.iter().all(|&v| seen[v])
}

fn check_tree(block: &Dag) {
    let mut t = build_spqr(block).unwrap();
    orient_virtual_edges(&mut t);
    let m = block.edge_count();
    if t.nodes.is_empty() {
        assert_eq!(m, 1);
        return;
    }
    // every real edge in exactly one skeleton
    let mut seen = vec![0; m];
    for node in &t.nodes {
        for e in &node.skeleton.edges {
            if let EdgeKind::Real(r) = e.kind {
                seen[r] += 1;
                let (a, b) = block.edges()[r];
                assert_eq!((e.a.min(e.b), e.a.max(e.b)), (a.min(b), a.max(b)));
            }
        }
    }
    assert!(seen.iter().all(|&c| c == 1), "{seen:?}");
    // a tree, virtual edge copies agree, the two sides partition the edges
    assert_eq!(t.virtual_edges.len() + 1, t.nodes.len());
    for (vid, &[(x, i), (y, j)]) in t.virtual_edges.iter().enumerate() {
        let (e, f) = (&t.nodes[x].skeleton.edges[i], &t.nodes[y].skeleton.edges[j]);
        assert_eq!((e.kind, f.kind), (EdgeKind::Virtual(vid), EdgeKind::Virtual(vid)));
        assert_eq!((e.a.min(e.b), e.a.max(e.b)), (f.a.min(f.b), f.a.max(f.b)));
        let kinds = (t.nodes[x].kind, t.nodes[y].kind);
        assert!(kinds != (NodeKind::S, NodeKind::S) && kinds != (NodeKind::P, NodeKind::P), "{kinds:?}");
        let mut both = t.expansion(x, vid);
        both.extend(t.expansion(y, vid));
        both.sort_unstable();
        assert_eq!(both, (0..m).collect::<Vec<_>>());
        // orientation: a path between the poles inside the expansion
        let exp = t.expansion(x, vid);
        let fwd = reachable(block, &exp, e.a, e.b);
        let bwd = reachable(block, &exp, e.b, e.a);
        assert!(!(fwd && bwd));
        let want = if fwd {
            Direction::Forward
        } else if bwd {
            Direction::Backward
        } else {
            Direction::Undirected
        };
        assert_eq!(e.dir, want);
    }
    for node in &t.nodes {
        let sk = &node.skeleton;
        let pairs: Vec<(usize, usize)> = sk.edges.iter().map(|e| (e.a, e.b)).collect();
        match node.kind {
            NodeKind::S => {
                let l = sk.vertices.len();
                assert!(l >= 3 && sk.edges.len() == l);
                for (i, e) in sk.edges.iter().enumerate() {
                    let (p, q) = (sk.vertices[i], sk.vertices[(i + 1) % l]);
                    assert!((e.a, e.b) == (p, q) || (e.a, e.b) == (q, p));
                }
            }
            NodeKind::P => {
                assert_eq!(sk.vertices.len(), 2);
                assert!(sk.edges.len() >= 3);
            }
            NodeKind::R => {
                // simple and triconnected
                let mut sorted: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
                sorted.sort_unstable();
                sorted.dedup();
                assert_eq!(sorted.len(), pairs.len());
                let local: Vec<usize> = sk.vertices.clone();
                let idx = |v: usize| local.iter().position(|&w| w == v).unwrap();
                let le: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
                let k = local.len();
                assert!(k >= 4);
                for a in 0..k {
                    for b in a + 1..k {
                        assert!(connected_without(k, &le, &[a, b]));
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spqr_trees_are_well_formed(seed in any::<u64>(), n in 3usize..12, extra in 0usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_single_source(&mut rng, n, extra);
        for b in blocks(&g).unwrap() {
            check_tree(&b.dag);
        }
    }

    #[test]
    fn feasible_lists_stay_small(seed in any::<u64>(), n in 3usize..14, extra in 0usize..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_single_source(&mut rng, n, extra);
        for b in blocks(&g).unwrap() {
            let mut t = build_spqr(&b.dag).unwrap();
            orient_virtual_edges(&mut t);
            if !check_o1p_structure(&t) {
                continue;
            }
            for x in 0..t.nodes.len() {
                prop_assert!(feasible_embeddings(&t, x).len() <= MAX_CLASSES);
            }
        }
    }

    #[test]
    fn accepted_embeddings_pass_independent_checks(seed in any::<u64>(), n in 2usize..30, extra in 0usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_single_source(&mut rng, n, extra);
        if let O1pOutcome::Accepted(e) = test_upward_o1p(&g).unwrap() {
            prop_assert_eq!(check_o1p_embedding(&g, &e), Ok(()));
        }
    }
}
