//! Choosing one feasible embedding per skeleton so that no real edge of an
//! S-skeleton is moved into two P-nodes at once.
//!
//! Conflicts only arise between two P-nodes adjacent to the same S-node
//! through virtual edges separated by a single real edge, so a DP over the
//! rooted tree suffices: at each S-node, the virtual edges around the cycle
//! form a cyclic chain of pairwise constraints with the parent's value fixed.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::skeleton::SkeletonEmbedding;
use super::spqr::{EdgeKind, NodeKind, SpqrTree};

/// One virtual edge around an S-cycle: cycle position, id and neighbour.
#[derive(Debug, Clone, Copy)]
struct Slot {
    pos: usize,
    vid: usize,
    node: usize,
}

struct Solver<'a> {
    t: &'a SpqrTree,
    feasible: &'a [Vec<SkeletonEmbedding>],
    parent: Vec<Option<usize>>,
    ok: Vec<Vec<bool>>,
}

impl<'a> Solver<'a> {
    fn slots(&self, s: usize) -> Vec<Slot> {
        let sk = &self.t.nodes[s].skeleton;
        sk.edges
            .iter()
            .enumerate()
            .filter_map(|(pos, e)| match e.kind {
                EdgeKind::Virtual(vid) => Some(Slot { pos, vid, node: self.t.refn(s, vid) }),
                EdgeKind::Real(_) => None,
            })
            .collect()
    }

    /// Whether choices `ca` at slot `a` and `cb` at the next slot `b` around
    /// S-node `s` both move the real edge between them.
    fn conflict(&self, s: usize, a: Slot, ca: usize, b: Slot, cb: usize) -> bool {
        let sk = &self.t.nodes[s].skeleton;
        let l = sk.edges.len();
        if (a.pos + 2) % l != b.pos || sk.edges[(a.pos + 1) % l].is_virtual() {
            return false;
        }
        let pa = sk.vertices[(a.pos + 1) % l];
        let pb = sk.vertices[(a.pos + 2) % l];
        let claims = |node: usize, c: usize, vid: usize, pole: usize| {
            self.feasible[node][c].moves().iter().any(|m| m.vid == vid && m.pole == pole)
        };
        claims(a.node, ca, a.vid, pa) && claims(b.node, cb, b.vid, pb)
    }

    fn domain(&self, s: usize, slot: Slot, fixed: Option<(usize, usize)>) -> Vec<usize> {
        match fixed {
            Some((node, c)) if node == slot.node && Some(node) == self.parent[s] => vec![c],
            _ => (0..self.feasible[slot.node].len()).filter(|&c| self.ok[slot.node][c]).collect(),
        }
    }

    /// A value per slot of S-node `s`, the parent's slot held at `fixed`,
    /// respecting the cyclic constraints.
    fn solve_cycle(&self, s: usize, fixed: Option<(usize, usize)>) -> Option<Vec<usize>> {
        let slots = self.slots(s);
        if slots.is_empty() {
            return Some(Vec::new());
        }
        // start from the parent's slot when there is one
        let start = slots.iter().position(|sl| Some(sl.node) == self.parent[s]).unwrap_or(0);
        let order: Vec<Slot> = (0..slots.len()).map(|i| slots[(start + i) % slots.len()]).collect();
        let domains: Vec<Vec<usize>> = order.iter().map(|&sl| self.domain(s, sl, fixed)).collect();
        for &first in &domains[0] {
            // back[i][j]: index into domains[i - 1] reaching domains[i][j]
            let mut back: Vec<Vec<Option<usize>>> = vec![vec![Some(0)]];
            let mut alive = vec![true];
            let mut cur_vals = vec![first];
            for i in 1..order.len() {
                let mut b = Vec::with_capacity(domains[i].len());
                let mut a = Vec::with_capacity(domains[i].len());
                for &c in &domains[i] {
                    let pred = (0..cur_vals.len())
                        .find(|&p| alive[p] && !self.conflict(s, order[i - 1], cur_vals[p], order[i], c));
                    b.push(pred);
                    a.push(pred.is_some());
                }
                back.push(b);
                alive = a;
                cur_vals = domains[i].clone();
            }
            let last = order.len() - 1;
            let end = (0..cur_vals.len()).find(|&p| {
                alive[p] && (order.len() == 1 || !self.conflict(s, order[last], cur_vals[p], order[0], first))
            });
            if let Some(mut p) = end {
                let mut vals = vec![0; order.len()];
                for i in (1..order.len()).rev() {
                    vals[i] = domains[i][p];
                    p = back[i][p].expect("alive entries have a predecessor");
                }
                vals[0] = first;
                // back to slot order
                let mut res = vec![0; slots.len()];
                for (i, v) in vals.into_iter().enumerate() {
                    res[(start + i) % slots.len()] = v;
                }
                return Some(res);
            }
        }
        None
    }
}

/// One feasible embedding index per node satisfying the move constraints,
/// or `None` when no such selection exists.
pub fn consistent_choice(t: &SpqrTree, feasible: &[Vec<SkeletonEmbedding>]) -> Option<Vec<usize>> {
    let n = t.nodes.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if feasible.iter().any(Vec::is_empty) {
        return None;
    }
    let mut parent = vec![None; n];
    let mut order = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut q = VecDeque::from([0]);
    while let Some(x) = q.pop_front() {
        for (_, y) in t.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                order.push(y);
                q.push_back(y);
            }
        }
    }
    let ok = feasible.iter().map(|f| vec![true; f.len()]).collect();
    let mut sv = Solver { t, feasible, parent, ok };
    let children = |sv: &Solver, x: usize| -> Vec<usize> {
        sv.t.neighbors(x).into_iter().map(|(_, y)| y).filter(|&y| sv.parent[y] == Some(x)).collect()
    };
    for &x in order.iter().rev() {
        if t.nodes[x].kind == NodeKind::S {
            continue;
        }
        let kids = children(&sv, x);
        let mut ok = vec![true; feasible[x].len()];
        for (c, slot) in ok.iter_mut().enumerate() {
            for &y in &kids {
                let fine = if t.nodes[y].kind == NodeKind::S {
                    sv.solve_cycle(y, Some((x, c))).is_some()
                } else {
                    sv.ok[y].iter().any(|&b| b)
                };
                if !fine {
                    *slot = false;
                    break;
                }
            }
        }
        sv.ok[x] = ok;
    }
    // top-down reconstruction
    let mut choice = vec![usize::MAX; n];
    if t.nodes[0].kind == NodeKind::S {
        let vals = sv.solve_cycle(0, None)?;
        choice[0] = 0;
        for (sl, v) in sv.slots(0).into_iter().zip(vals) {
            choice[sl.node] = v;
        }
    } else {
        choice[0] = sv.ok[0].iter().position(|&b| b)?;
    }
    for &x in &order {
        if t.nodes[x].kind == NodeKind::S {
            continue;
        }
        for y in children(&sv, x) {
            if t.nodes[y].kind == NodeKind::S {
                choice[y] = 0;
                let vals = sv.solve_cycle(y, Some((x, choice[x]))).expect("checked bottom-up");
                for (sl, v) in sv.slots(y).into_iter().zip(vals) {
                    if sv.parent[sl.node] == Some(y) {
                        choice[sl.node] = v;
                    }
                }
            } else {
                choice[y] = sv.ok[y].iter().position(|&b| b).expect("checked bottom-up");
            }
        }
    }
    Some(choice)
}

/// Every S-node's real edges are moved into at most one P-node by `choice`.
pub fn choice_is_consistent(t: &SpqrTree, feasible: &[Vec<SkeletonEmbedding>], choice: &[usize]) -> bool {
    let mut claimed: Vec<usize> =
        (0..t.nodes.len()).flat_map(|x| feasible[x][choice[x]].moves()).map(|m| m.real).collect();
    let before = claimed.len();
    claimed.sort_unstable();
    claimed.dedup();
    claimed.len() == before
}
