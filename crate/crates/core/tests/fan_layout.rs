use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use updag_core::drawing::compute_crossings;
use updag_core::geom::q;
use updag_core::layouts::{draw_fan, fan_partition};
use updag_core::Dag;

/// Random fan on `n` vertices, acyclic via a random ranking, random labels.
fn random_fan(rng: &mut ChaCha8Rng, n: usize) -> (Dag, usize) {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let mut e = Vec::new();
    let mut add = |a: usize, b: usize| {
        let (a, b) = if rank[a] < rank[b] { (a, b) } else { (b, a) };
        e.push((label[a], label[b]));
    };
    for i in 1..n {
        add(0, i);
        if i + 1 < n {
            add(i, i + 1);
        }
    }
    (Dag::new(n, e).unwrap(), label[0])
}

#[test]
fn random_fans_satisfy_layout_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..300 {
        let n = rng.gen_range(2..=60);
        let (f, c) = random_fan(&mut rng, n);
        let d = draw_fan(&f, c).unwrap_or_else(|e| panic!("round {round}: {e}\n{}", f.to_text()));
        let r = compute_crossings(&d).unwrap();
        let part = fan_partition(&f, c).unwrap();
        let last = n as i64 - 1;
        for (e, &(u, v)) in f.edges().iter().enumerate() {
            if u == c || v == c {
                assert_eq!(r.per_edge_count[e], 0);
            }
            for p in d.route(e) {
                assert!(p.x <= q(last));
            }
        }
        assert_eq!(d.x(c), &q(last));
        assert_eq!(d.x(*part.path.last().unwrap()), &q(last));
        let mut xs: Vec<_> = part.path[..n - 2.min(n - 1)].iter().map(|&v| d.x(v).clone()).collect();
        xs.sort();
        let want: Vec<_> = (1..=xs.len() as i64).map(q).collect();
        assert_eq!(xs, want);
        if part.subpaths.len() > 1 && part.first_is_directed(&f) {
            assert!(r.per_edge_count[part.first_boundary_edge(&f).unwrap()] <= 1);
        }
    }
}
