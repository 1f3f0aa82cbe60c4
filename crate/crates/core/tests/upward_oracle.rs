use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use updag_core::drawing::{verify_drawing, Drawing};
use updag_core::geom::{q, Point};
use updag_core::upward::oracle_upward_planar;
use updag_core::Dag;

fn random_dag(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Dag {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                e.push((order[i], order[j]));
            }
        }
    }
    Dag::from_edges(n, &e)
}

/// Random straight-line upward drawings; true if one has no crossing.
fn finds_planar_upward_drawing(g: &Dag, rng: &mut ChaCha8Rng, tries: usize) -> bool {
    let n = g.vertex_count();
    let ins = g.in_adjacency();
    (0..tries).any(|_| {
        // random linear extension
        let mut placed = vec![false; n];
        let mut rank = vec![0i64; n];
        for r in 0..n {
            let ready: Vec<usize> = (0..n).filter(|&v| !placed[v] && ins[v].iter().all(|&u| placed[u])).collect();
            let v = *ready.choose(rng).unwrap();
            placed[v] = true;
            rank[v] = r as i64;
        }
        let pos = (0..n).map(|v| Point::new(q(rng.gen_range(0..2 * n as i64)), q(rank[v]))).collect();
        let d = Drawing::straight_line(g.clone(), pos).unwrap();
        matches!(verify_drawing(&d, 0), Ok((true, _)))
    })
}

#[test]
fn oracle_agrees_with_drawing_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut positive, mut witnessed) = (0, 0);
    for _ in 0..300 {
        let n = rng.gen_range(2..=7);
        let p = rng.gen_range(0.3..0.9);
        let g = random_dag(&mut rng, n, p);
        let up = oracle_upward_planar(&g, 10).unwrap();
        let found = finds_planar_upward_drawing(&g, &mut rng, 400);
        // a drawing is a certificate, so a rejection must never have one
        assert!(!(found && !up), "{:?}", g.edges());
        if up {
            positive += 1;
            witnessed += usize::from(found);
        }
    }
    // the search should certify most accepted graphs
    assert!(witnessed * 10 >= positive * 9, "{witnessed} of {positive}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn deleting_an_edge_keeps_upward_planarity(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=8);
        let g = random_dag(&mut rng, n, 0.5);
        prop_assume!(g.edge_count() > 0);
        if oracle_upward_planar(&g, 10).unwrap() {
            let mut e = g.edges().to_vec();
            e.remove(pick.index(e.len()));
            prop_assert!(oracle_upward_planar(&Dag::from_edges(n, &e), 10).unwrap());
        }
    }
}
