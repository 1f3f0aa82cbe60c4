//! Exhaustive upward planarity oracle for small DAGs.
//!
//! A DAG is upward planar iff each of its blocks is. A block is upward planar
//! iff some planar embedding is bimodal (incoming and outgoing edges form two
//! contiguous groups around every vertex) and admits a consistent assignment
//! of its sources and sinks to faces: a face with `2m` switch angles receives
//! `m - 1` of them, or `m + 1` if it is the outer face, and each source or
//! sink goes to a face where it has an angle.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::dag::{blocks, Dag};
use crate::embedding::RotationSystem;
use crate::planarity::is_planar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("input contains a directed cycle")]
    CyclicInput,
}

/// Default vertex limit of [`oracle_upward_planar`].
pub const UPWARD_PLANAR_LIMIT: usize = 10;

pub fn oracle_upward_planar(g: &Dag, limit: usize) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    if !g.is_acyclic() {
        return Err(OracleError::CyclicInput);
    }
    if g.edge_count() == 0 {
        return Ok(true);
    }
    // components are independent; blocks are tested one at a time
    let comps = components(g);
    for comp in comps {
        let sub = g.induced(&comp);
        if sub.edge_count() == 0 {
            continue;
        }
        for b in blocks(&sub).expect("connected by construction") {
            if !block_is_upward_planar(&b.dag) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn components(g: &Dag) -> Vec<Vec<usize>> {
    let adj = g.undirected_adjacency();
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &w in &adj[comp[i]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn block_is_upward_planar(b: &Dag) -> bool {
    if b.edge_count() <= 1 {
        return true;
    }
    if !is_planar(b.vertex_count(), b.edges()) {
        return false;
    }
    let choices = bimodal_rotations(b);
    let mut found = false;
    for_each_planar_rotation(&choices, &mut |rot| {
        found = has_upward_assignment(b, rot);
        found
    });
    found
}

/// Candidate cyclic orders at each vertex whose incoming and outgoing
/// neighbours are contiguous, each listed once.
pub fn bimodal_rotations(g: &Dag) -> Vec<Vec<Vec<usize>>> {
    let ins = g.in_adjacency();
    let outs = g.out_adjacency();
    (0..g.vertex_count())
        .map(|v| {
            if ins[v].is_empty() || outs[v].is_empty() {
                let all: Vec<usize> = ins[v].iter().chain(&outs[v]).copied().collect();
                cyclic_orders(&all)
            } else {
                let mut res = Vec::new();
                for a in permutations(&ins[v]) {
                    for b in permutations(&outs[v]) {
                        res.push(a.iter().chain(&b).copied().collect());
                    }
                }
                res
            }
        })
        .collect()
}

/// All cyclic orders of `items`, each starting with the first item.
pub fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    match items.split_first() {
        None => vec![Vec::new()],
        Some((&first, rest)) => permutations(rest)
            .into_iter()
            .map(|p| core::iter::once(first).chain(p).collect())
            .collect(),
    }
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Calls `visit` on every planar rotation system drawn from the per-vertex
/// `choices` until it returns true. Returns whether it did.
pub fn for_each_planar_rotation(
    choices: &[Vec<Vec<usize>>],
    visit: &mut dyn FnMut(&RotationSystem) -> bool,
) -> bool {
    let n = choices.len();
    if choices.iter().any(Vec::is_empty) {
        return false;
    }
    let mut idx = vec![0usize; n];
    loop {
        let rot = RotationSystem::new((0..n).map(|v| choices[v][idx[v]].clone()).collect());
        if rot.is_planar() && visit(&rot) {
            return true;
        }
        // odometer
        let mut v = 0;
        loop {
            if v == n {
                return false;
            }
            idx[v] += 1;
            if idx[v] < choices[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// Whether a planar bimodal embedding of `g` has a consistent assignment of
/// sources and sinks to faces for some choice of outer face.
fn has_upward_assignment(g: &Dag, rot: &RotationSystem) -> bool {
    let faces = rot.faces();
    let ins = g.in_adjacency();
    let outs = g.out_adjacency();
    let switch_vertex: Vec<bool> = (0..g.vertex_count()).map(|v| ins[v].is_empty() || outs[v].is_empty()).collect();
    let mut switches = vec![0usize; faces.len()];
    // faces where each source or sink has an angle
    let mut options: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (fi, f) in faces.iter().enumerate() {
        let k = f.darts.len();
        for i in 0..k {
            let (u, v) = f.darts[i];
            let w = f.darts[(i + 1) % k].1;
            let a_in = g.has_edge(u, v);
            let b_in = g.has_edge(w, v);
            if a_in == b_in {
                switches[fi] += 1;
            }
            if switch_vertex[v] && !options[v].contains(&fi) {
                options[v].push(fi);
            }
        }
    }
    let sv: Vec<usize> = (0..g.vertex_count()).filter(|&v| switch_vertex[v]).collect();
    for outer in 0..faces.len() {
        let mut demand = Vec::with_capacity(faces.len());
        let mut ok = true;
        for (fi, &s) in switches.iter().enumerate() {
            let m = s / 2;
            let d = if fi == outer { m as isize + 1 } else { m as isize - 1 };
            if d < 0 {
                ok = false;
                break;
            }
            demand.push(d as usize);
        }
        if !ok || demand.iter().sum::<usize>() != sv.len() {
            continue;
        }
        let opts: Vec<Vec<usize>> = sv.iter().map(|&v| options[v].clone()).collect();
        if saturating_assignment(&opts, &demand) {
            return true;
        }
    }
    false
}

/// Whether items can each be given one of their options so that option `j`
/// is used exactly `cap[j]` times (the caps summing to the item count).
fn saturating_assignment(opts: &[Vec<usize>], cap: &[usize]) -> bool {
    // augmenting paths on the bipartite item/slot graph
    let mut load: Vec<Vec<usize>> = vec![Vec::new(); cap.len()];
    fn augment(
        i: usize,
        opts: &[Vec<usize>],
        cap: &[usize],
        load: &mut [Vec<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &f in &opts[i] {
            if seen[f] {
                continue;
            }
            seen[f] = true;
            if load[f].len() < cap[f] {
                load[f].push(i);
                return true;
            }
            for k in 0..load[f].len() {
                let j = load[f][k];
                if augment(j, opts, cap, load, seen) {
                    load[f][k] = i;
                    return true;
                }
            }
        }
        false
    }
    for i in 0..opts.len() {
        let mut seen = vec![false; cap.len()];
        if !augment(i, opts, cap, &mut load, &mut seen) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(oracle_upward_planar(&Dag::from_edges(2, &[(0, 1)]), 10), Ok(true));
        let tri = Dag::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(oracle_upward_planar(&tri, 10), Ok(true));
        let c4 = Dag::from_edges(4, &[(0, 1), (2, 1), (2, 3), (0, 3)]);
        assert_eq!(oracle_upward_planar(&c4, 10), Ok(true));
        let big = Dag::from_edges(11, &[]);
        assert_eq!(oracle_upward_planar(&big, 10), Err(OracleError::TooLarge { n: 11, limit: 10 }));
    }

    #[test]
    fn k33_orientation_is_rejected() {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, b));
            }
        }
        assert_eq!(oracle_upward_planar(&Dag::from_edges(6, &e), 10), Ok(false));
    }

    #[test]
    fn k4_is_upward_planar() {
        let k4 = Dag::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(oracle_upward_planar(&k4, 10), Ok(true));
    }
}
