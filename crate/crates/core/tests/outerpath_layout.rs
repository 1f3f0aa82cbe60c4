mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use updag_core::drawing::verify_drawing;
use updag_core::layouts::draw_outerpath;
use updag_core::outerplanar::outerpath_structure;

#[test]
fn random_outerpaths_are_upward_2_planar() {
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=120);
        let g = common::random_outerpath(&mut rng, n);
        let d = draw_outerpath(&g).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert_eq!(d.dag(), &g);
        let (ok, rep) = verify_drawing(&d, 2).unwrap();
        assert!(ok && rep.is_upward && rep.is_simple && rep.max_per_edge <= 2, "seed {seed}");
    }
}

#[test]
fn augmentation_round_trips() {
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=80);
        let g = common::random_outerpath(&mut rng, n);
        let s = outerpath_structure(&g).unwrap();
        assert!(s.augmented.is_acyclic());
        assert_eq!(s.augmented.edge_count(), 2 * n - 3);
        assert_eq!(&s.augmented.edges()[..g.edge_count()], g.edges());
        assert_eq!(s.augmented.edge_count() - s.added_edges.len(), g.edge_count());
        for v in 0..n {
            assert_eq!(s.fan_assignment[v].is_none(), s.backbone.contains(&v));
        }
    }
}
