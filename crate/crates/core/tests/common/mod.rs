#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use updag_core::Dag;

/// Maximal outerpath grown triangle by triangle: each new vertex is attached
/// to the current edge, which then moves to one of the two new edges.
pub fn random_maximal_outerpath_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
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
    let mut e = random_maximal_outerpath_edges(rng, n);
    let mut deg = vec![0usize; n];
    let outer: std::collections::BTreeSet<(usize, usize)> = outer_cycle_edges(n, &e);
    let keep = rng.gen_range(0.3..=1.0);
    e.retain(|&(u, v)| outer.contains(&(u.min(v), u.max(v))) || rng.gen_bool(keep));
    for &(u, v) in &e {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let edges = e
        .into_iter()
        .map(|(u, v)| {
            let (u, v) = (label[u], label[v]);
            if rank[u] < rank[v] {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect::<Vec<_>>();
    Dag::from_edges(n, &edges)
}

/// Edges of a maximal outerplanar graph lying on exactly one triangle.
fn outer_cycle_edges(n: usize, e: &[(usize, usize)]) -> std::collections::BTreeSet<(usize, usize)> {
    let set: std::collections::BTreeSet<(usize, usize)> = e.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut adj = vec![std::collections::BTreeSet::new(); n];
    for &(u, v) in &set {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    set.iter()
        .copied()
        .filter(|&(u, v)| adj[u].intersection(&adj[v]).count() == 1)
        .collect()
}
