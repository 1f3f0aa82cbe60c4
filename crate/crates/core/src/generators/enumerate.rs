//! Enumeration of small single-source DAGs up to isomorphism.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::GeneratorError;
use crate::dag::Dag;

/// Largest vertex count for which canonical codes fit in a `u64`.
pub const ENUMERATE_LIMIT: usize = 8;

/// One representative of every isomorphism class of connected DAGs on `n`
/// vertices with exactly one source, in order of canonical code. Each
/// representative is topologically numbered with the source at 0.
pub fn single_source_dags(n: usize) -> Result<Vec<Dag>, GeneratorError> {
    if n > ENUMERATE_LIMIT {
        return Err(GeneratorError::TooLarge { what: "enumeration".into(), size: n, limit: ENUMERATE_LIMIT });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // every vertex j > 0 picks a non-empty set of predecessors among 0..j
    let mut codes = BTreeSet::new();
    let mut masks = vec![1u32; n];
    masks[0] = 0;
    loop {
        let mut adj = [0u8; ENUMERATE_LIMIT];
        for (j, &m) in masks.iter().enumerate() {
            for i in 0..j {
                if m >> i & 1 == 1 {
                    adj[i] |= 1 << j;
                }
            }
        }
        codes.insert(canonical_code(n, &adj));
        // odometer over masks[1..]
        let mut j = 1;
        while j < n {
            masks[j] += 1;
            if masks[j] < 1 << j {
                break;
            }
            masks[j] = 1;
            j += 1;
        }
        if j == n {
            break;
        }
    }
    Ok(codes.into_iter().map(|c| decode(n, c)).collect())
}

/// Out-neighbour bitsets; entry `i` bit `j` is the edge i -> j.
fn canonical_code(n: usize, adj: &[u8; ENUMERATE_LIMIT]) -> u64 {
    let colors = refine(n, adj);
    // vertices grouped by colour; only orders consistent with the grouping
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colors[v]);
    let mut best = u64::MAX;
    let mut perm = order.clone();
    permute_classes(n, adj, &colors, &mut perm, 0, &mut best);
    best
}

fn refine(n: usize, adj: &[u8; ENUMERATE_LIMIT]) -> Vec<usize> {
    let ins = |v: usize| (0..n).filter(|&u| adj[u] >> v & 1 == 1).count();
    let outs = |v: usize| adj[v].count_ones() as usize;
    let mut colors: Vec<usize> = (0..n).map(|v| ins(v) * 16 + outs(v)).collect();
    let mut classes = 0;
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut o: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colors[w]).collect();
                let mut i: Vec<usize> = (0..n).filter(|&u| adj[u] >> v & 1 == 1).map(|u| colors[u]).collect();
                o.sort_unstable();
                i.sort_unstable();
                (colors[v], o, i)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        colors = sigs.iter().map(|s| uniq.binary_search(s).expect("present")).collect();
        if uniq.len() == classes {
            return colors;
        }
        classes = uniq.len();
    }
}

/// Minimises the code over all orders that permute vertices within colour
/// classes, the classes kept in colour order.
fn permute_classes(
    n: usize,
    adj: &[u8; ENUMERATE_LIMIT],
    colors: &[usize],
    perm: &mut Vec<usize>,
    k: usize,
    best: &mut u64,
) {
    if k == n {
        let mut pos = [0usize; ENUMERATE_LIMIT];
        for (p, &v) in perm.iter().enumerate() {
            pos[v] = p;
        }
        let mut code = 0u64;
        for u in 0..n {
            for w in 0..n {
                if adj[u] >> w & 1 == 1 {
                    code |= 1 << (pos[u] * n + pos[w]);
                }
            }
        }
        *best = (*best).min(code);
        return;
    }
    for i in k..n {
        if colors[perm[i]] != colors[perm[k]] {
            break;
        }
        perm.swap(k, i);
        permute_classes(n, adj, colors, perm, k + 1, best);
        perm.swap(k, i);
    }
}

/// Rebuilds a DAG from its code, renumbered topologically with the source
/// first.
fn decode(n: usize, code: u64) -> Dag {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).map(move |w| (u, w))).filter(|&(u, w)| code >> (u * n + w) & 1 == 1).collect();
    let g = Dag::from_edges(n, &edges);
    let order = crate::dag::linear_extension(&g).expect("acyclic").order;
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let relabeled: Vec<(usize, usize)> = edges.iter().map(|&(u, w)| (rank[u], rank[w])).collect();
    Dag::from_edges(n, &relabeled)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        // n = 3: path, fork, transitive triangle
        let counts: Vec<usize> = (1..=4).map(|n| single_source_dags(n).unwrap().len()).collect();
        assert_eq!(&counts[..3], &[1, 1, 3]);
        for g in single_source_dags(4).unwrap() {
            assert_eq!(g.sources(), vec![0]);
            assert!(g.is_connected());
        }
        assert!(single_source_dags(9).is_err());
    }

    /// Class count by brute force: minimum code over all n! relabelings.
    fn brute_count(n: usize) -> usize {
        let perms = crate::upward::permutations(&(0..n).collect::<Vec<_>>());
        let mut codes = BTreeSet::new();
        for bits in 0u64..1 << (n * (n - 1) / 2) {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|&(k, _)| bits >> k & 1 == 1).map(|(_, &p)| p).collect();
            let g = Dag::from_edges(n, &edges);
            if g.sources().len() != 1 || !g.is_connected() {
                continue;
            }
            let code = perms
                .iter()
                .map(|p| edges.iter().map(|&(u, w)| 1u64 << (p[u] * n + p[w])).sum::<u64>())
                .min()
                .unwrap();
            codes.insert(code);
        }
        codes.len()
    }

    #[test]
    fn matches_brute_force() {
        for n in 2..=5 {
            assert_eq!(single_source_dags(n).unwrap().len(), brute_count(n), "n = {n}");
        }
    }
}
