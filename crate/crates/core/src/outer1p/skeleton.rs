//! Feasible embeddings of single skeletons.

use alloc::vec;
use alloc::vec::Vec;

use super::spqr::{has_path, real_crossing_pairs, EdgeKind, NodeKind, SkeletonEdge, SpqrTree};
use crate::dag::find_cycle;
use crate::upward::permutations;

/// Largest number of embedding classes any skeleton can have.
pub const MAX_CLASSES: usize = 12;

/// A real edge moved out of an S-skeleton into the P-node whose virtual edge
/// `vid` crosses with its segment at `pole` off the outer face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub vid: usize,
    pub pole: usize,
    /// Block edge id of the moved edge.
    pub real: usize,
    /// Its endpoint other than `pole`.
    pub far: usize,
}

/// Two crossing virtual edges of a P-skeleton and the real edges that cross
/// after extension: `outer_u` has its segment at the first pole on the outer
/// face and moves its first edge at the second pole; `outer_v` the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PCrossing {
    pub outer_u: usize,
    pub outer_v: usize,
    pub move_u: Move,
    pub move_v: Move,
}

/// One embedding class (up to reflection) of a skeleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkeletonEmbedding {
    /// The unique planar embedding of a cycle.
    Cycle,
    /// K4 with outer cycle `outer` and its two diagonals, both real, crossing.
    K4 { outer: [usize; 4], diagonals: (usize, usize) },
    /// Bond with poles `(u, v)`: edge indices left to right at `u`, and the
    /// crossings of the two leftmost and the two rightmost edges.
    Bond { poles: (usize, usize), order: Vec<usize>, left: Option<PCrossing>, right: Option<PCrossing> },
}

impl SkeletonEmbedding {
    /// Real edges moved in from neighbouring S-skeletons by the extension.
    pub fn moves(&self) -> Vec<Move> {
        match self {
            SkeletonEmbedding::Bond { left, right, .. } => {
                left.iter().chain(right.iter()).flat_map(|c| [c.move_u, c.move_v]).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Crossing pairs of block edges after extension.
    pub fn real_crossings(&self, t: &SpqrTree, node: usize) -> Vec<(usize, usize)> {
        match self {
            SkeletonEmbedding::Cycle => Vec::new(),
            SkeletonEmbedding::K4 { diagonals: (i, j), .. } => {
                let e = &t.nodes[node].skeleton.edges;
                match (e[*i].kind, e[*j].kind) {
                    (EdgeKind::Real(a), EdgeKind::Real(b)) => vec![(a, b)],
                    _ => unreachable!("diagonals are real"),
                }
            }
            SkeletonEmbedding::Bond { left, right, .. } => {
                left.iter().chain(right.iter()).map(|c| (c.move_u.real, c.move_v.real)).collect()
            }
        }
    }
}

/// All embedding classes of the skeleton of `node` satisfying the
/// outer-1-planarity conditions, with acyclic planarization for P- and
/// R-nodes. Requires oriented virtual edges and a passed structure check.
pub fn feasible_embeddings(t: &SpqrTree, node: usize) -> Vec<SkeletonEmbedding> {
    let out = match t.nodes[node].kind {
        NodeKind::S => vec![SkeletonEmbedding::Cycle],
        NodeKind::R => k4_embeddings(t, node),
        NodeKind::P => bond_embeddings(t, node),
    };
    assert!(out.len() <= MAX_CLASSES, "{} embedding classes", out.len());
    out
}

fn k4_embeddings(t: &SpqrTree, node: usize) -> Vec<SkeletonEmbedding> {
    let edges = &t.nodes[node].skeleton.edges;
    let mut out = Vec::new();
    for (i, j) in real_crossing_pairs(edges) {
        let (a, c) = (edges[i].a, edges[i].b);
        let (b, d) = (edges[j].a, edges[j].b);
        // planarization: four sides plus both diagonals through a dummy
        let x = usize::MAX - 1;
        let mut arcs = Vec::new();
        for (k, e) in edges.iter().enumerate() {
            if k == i || k == j {
                let (p, q) = if e.leaves(e.a) { (e.a, e.b) } else { (e.b, e.a) };
                arcs.push((p, x));
                arcs.push((x, q));
            } else {
                push_arc(&mut arcs, e);
            }
        }
        if acyclic(&arcs) {
            out.push(SkeletonEmbedding::K4 { outer: [a, b, c, d], diagonals: (i, j) });
        }
    }
    out
}

fn push_arc(arcs: &mut Vec<(usize, usize)>, e: &SkeletonEdge) {
    if e.leaves(e.a) {
        arcs.push((e.a, e.b));
    } else if e.leaves(e.b) {
        arcs.push((e.b, e.a));
    }
}

fn acyclic(arcs: &[(usize, usize)]) -> bool {
    let mut ids: Vec<usize> = arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
    ids.sort_unstable();
    ids.dedup();
    let pos = |v: usize| ids.binary_search(&v).expect("listed");
    let local: Vec<(usize, usize)> = arcs.iter().map(|&(a, b)| (pos(a), pos(b))).collect();
    find_cycle(ids.len(), &local).is_none()
}

/// First edge at `pole` of the S-skeleton behind virtual edge `vid` of
/// `node`, if that neighbour is an S-node and the edge is real.
pub(crate) fn first_segment(t: &SpqrTree, node: usize, vid: usize, pole: usize) -> Option<Move> {
    let s = t.refn(node, vid);
    if t.nodes[s].kind != NodeKind::S {
        return None;
    }
    let sk = &t.nodes[s].skeleton;
    let l = sk.edges.len();
    let j = sk.edges.iter().position(|e| e.kind == EdgeKind::Virtual(vid))?;
    let k = if sk.vertices[j] == pole { (j + l - 1) % l } else { (j + 1) % l };
    match sk.edges[k].kind {
        EdgeKind::Real(r) => Some(Move { vid, pole, real: r, far: sk.edges[k].other(pole) }),
        EdgeKind::Virtual(_) => None,
    }
}

fn bond_embeddings(t: &SpqrTree, node: usize) -> Vec<SkeletonEmbedding> {
    let sk = &t.nodes[node].skeleton;
    let (u, v) = (sk.vertices[0], sk.vertices[1]);
    let k = sk.edges.len();
    let vid_of = |i: usize| match sk.edges[i].kind {
        EdgeKind::Virtual(id) => Some(id),
        EdgeKind::Real(_) => None,
    };
    // a crossing of edge `a` (outer at u) with `b` (outer at v)
    let crossing = |a: usize, b: usize| -> Option<PCrossing> {
        let move_u = first_segment(t, node, vid_of(a)?, v)?;
        let move_v = first_segment(t, node, vid_of(b)?, u)?;
        Some(PCrossing { outer_u: a, outer_v: b, move_u, move_v })
    };
    let idx: Vec<usize> = (0..k).collect();
    let mut seen: Vec<(Vec<usize>, bool, bool)> = Vec::new();
    let mut out = Vec::new();
    for order in permutations(&idx) {
        for (l, r) in [(false, false), (true, false), (false, true), (true, true)] {
            if l && r && k < 4 {
                continue;
            }
            let mut rev = order.clone();
            rev.reverse();
            let key = (order.clone(), l, r);
            let mirror = (rev, r, l);
            if seen.contains(&key) || seen.contains(&mirror) {
                continue;
            }
            let mut at_v = order.clone();
            if l {
                at_v.swap(0, 1);
            }
            if r {
                at_v.swap(k - 1, k - 2);
            }
            let outer = [order[0], order[k - 1], at_v[0], at_v[k - 1]];
            if (0..k).any(|i| sk.edges[i].is_virtual() && !outer.contains(&i)) {
                continue;
            }
            let left = if l {
                match crossing(order[0], order[1]) {
                    Some(c) => Some(c),
                    None => continue,
                }
            } else {
                None
            };
            let right = if r {
                match crossing(order[k - 1], order[k - 2]) {
                    Some(c) => Some(c),
                    None => continue,
                }
            } else {
                None
            };
            let emb = SkeletonEmbedding::Bond { poles: (u, v), order: order.clone(), left, right };
            if extended_bond_is_acyclic(t, node, &emb) {
                seen.push(key);
                out.push(emb);
            }
        }
    }
    out
}

/// The planarization of the extended bond has no directed cycle. Shortened
/// virtual edges are oriented by their expansions minus the moved edge.
fn extended_bond_is_acyclic(t: &SpqrTree, node: usize, emb: &SkeletonEmbedding) -> bool {
    let SkeletonEmbedding::Bond { poles: (u, v), left, right, .. } = emb else { return true };
    let sk = &t.nodes[node].skeleton;
    let g = &t.block;
    let crossings: Vec<&PCrossing> = left.iter().chain(right.iter()).collect();
    let crossed: Vec<usize> = crossings.iter().flat_map(|c| [c.outer_u, c.outer_v]).collect();
    let mut arcs = Vec::new();
    for (i, e) in sk.edges.iter().enumerate() {
        if !crossed.contains(&i) {
            push_arc(&mut arcs, e);
        }
    }
    let base = g.vertex_count();
    for (ci, c) in crossings.iter().enumerate() {
        let x = base + ci;
        for (m, pole, far_pole) in [(c.move_u, *v, *u), (c.move_v, *u, *v)] {
            // the moved edge runs between `pole` and `m.far` through x
            let (p, q) = g.edges()[m.real];
            arcs.push((p, x));
            arcs.push((x, q));
            // the shortened virtual edge joins `far_pole` and `m.far`
            let exp: Vec<usize> = t.expansion(node, m.vid).into_iter().filter(|&e| e != m.real).collect();
            debug_assert!(m.pole == pole);
            if has_path(g, &exp, far_pole, m.far) {
                arcs.push((far_pole, m.far));
            } else if has_path(g, &exp, m.far, far_pole) {
                arcs.push((m.far, far_pole));
            }
        }
    }
    acyclic(&arcs)
}
