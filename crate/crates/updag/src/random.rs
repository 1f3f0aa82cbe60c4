//! Seeded random instances for the CLI and the test suites.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use updag_core::Dag;

/// Environment variable overriding the default seed.
pub const SEED_VAR: &str = "UPDAG_SEED";

/// `UPDAG_SEED` if set and numeric, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random DAG: each pair, in a random order, is an edge with probability `p`.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, p: f64) -> Dag {
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

/// Random connected DAG: a random spanning tree oriented by a random
/// ranking, then each other pair with probability `p`.
pub fn random_connected_dag<R: Rng>(rng: &mut R, n: usize, p: f64) -> Dag {
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let mut pairs = BTreeSet::new();
    for j in 1..n {
        let i = rng.gen_range(0..j);
        pairs.insert((i, j));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !pairs.contains(&(i, j)) && rng.gen_bool(p) {
                pairs.insert((i, j));
            }
        }
    }
    let e: Vec<(usize, usize)> =
        pairs.into_iter().map(|(i, j)| if rank[i] < rank[j] { (i, j) } else { (j, i) }).collect();
    Dag::from_edges(n, &e)
}

/// Random connected single-source DAG: vertex j > 0 gets a parent below it,
/// then `extra` further forward edges are attempted; ids are shuffled.
pub fn random_single_source<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Dag {
    let mut e: Vec<(usize, usize)> = (1..n).map(|j| (rng.gen_range(0..j), j)).collect();
    for _ in 0..extra {
        if n < 2 {
            break;
        }
        let a = rng.gen_range(0..n - 1);
        let b = rng.gen_range(a + 1..n);
        if !e.contains(&(a, b)) {
            e.push((a, b));
        }
    }
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    Dag::from_edges(n, &e.iter().map(|&(a, b)| (ids[a], ids[b])).collect::<Vec<_>>())
}

/// Random directed fan on `n >= 2` vertices and its centre: a path plus a
/// vertex joined to all of it, oriented by a random ranking, ids shuffled.
pub fn random_fan<R: Rng>(rng: &mut R, n: usize) -> (Dag, usize) {
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
    (Dag::from_edges(n, &e), label[0])
}

/// Maximal outerpath grown triangle by triangle: each new vertex is attached
/// to the current edge, which then moves to one of the two new edges.
fn maximal_outerpath_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    let mut e = vec![(0, 1), (1, 2), (0, 2)];
    let (mut a, mut b) = [(0, 1), (1, 2), (0, 2)][rng.gen_range(0..3)];
    for x in 3..n {
        e.push((a, x));
        e.push((b, x));
        if rng.gen_bool(0.5) {
            a = x;
        } else {
            b = x;
        }
    }
    e
}

/// Random outerpath on `n >= 3` vertices: a maximal one with a random subset
/// of chords removed, relabelled and acyclically oriented at random.
pub fn random_outerpath<R: Rng>(rng: &mut R, n: usize) -> Dag {
    let mut e = maximal_outerpath_edges(rng, n);
    let outer = outer_cycle_edges(n, &e);
    let keep = rng.gen_range(0.3..=1.0);
    e.retain(|&(u, v)| outer.contains(&(u.min(v), u.max(v))) || rng.gen_bool(keep));
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let edges: Vec<(usize, usize)> = e
        .into_iter()
        .map(|(u, v)| {
            let (u, v) = (label[u], label[v]);
            if rank[u] < rank[v] {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    Dag::from_edges(n, &edges)
}

/// Edges of a maximal outerplanar graph lying on exactly one triangle.
fn outer_cycle_edges(n: usize, e: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let set: BTreeSet<(usize, usize)> = e.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut adj = vec![BTreeSet::new(); n];
    for &(u, v) in &set {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    set.iter().copied().filter(|&(u, v)| adj[u].intersection(&adj[v]).count() == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let mut r = rng(3);
        for n in 2..30 {
            let (f, c) = random_fan(&mut r, n);
            assert_eq!(f.edge_count(), 2 * n - 3);
            assert_eq!(f.degree(c), n - 1);
            let g = random_single_source(&mut r, n, n);
            assert_eq!(g.sources().len(), 1);
            assert!(g.is_connected() && g.is_acyclic());
            assert!(random_connected_dag(&mut r, n, 0.3).is_connected());
        }
        for n in 3..30 {
            let g = random_outerpath(&mut r, n);
            assert!(g.is_connected() && g.is_acyclic());
            assert!(g.edge_count() >= n);
        }
    }
}
