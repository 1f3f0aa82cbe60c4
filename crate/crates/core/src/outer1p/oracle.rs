//! Exhaustive oracle for upward outer-1-planarity of small DAGs.
//!
//! In a drawing with every vertex on the outer face, an apex in that face
//! joined to all vertices cuts the sphere into a disk with the vertices on its
//! boundary in some cyclic order. Two independent edges then cross an odd
//! number of times iff their endpoints interleave, so with at most one
//! crossing per edge the crossing pairs are exactly the interleaving pairs.
//! Conversely, straight chords on a circle realise any order. The oracle
//! therefore searches cyclic vertex orders for one where every edge
//! interleaves with at most one other and the planarization is acyclic.

use alloc::vec;
use alloc::vec::Vec;

use crate::dag::{find_cycle, Dag};
use crate::planarity::is_planar;
use crate::upward::OracleError;

/// Default vertex limit of [`oracle_o1p`].
pub const O1P_ORACLE_LIMIT: usize = 9;

pub fn oracle_o1p(g: &Dag, limit: usize) -> Result<bool, OracleError> {
    oracle_o1p_witness(g, limit).map(|w| w.is_some())
}

/// A realizable crossing set (pairs of edge indices), if any exists.
pub fn oracle_o1p_witness(g: &Dag, limit: usize) -> Result<Option<Vec<(usize, usize)>>, OracleError> {
    let n = g.vertex_count();
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    if !g.is_acyclic() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut s = Search { g, pos: vec![UNPLACED; n] };
    s.pos[0] = 0;
    Ok(s.run(1, &[]))
}

const UNPLACED: usize = usize::MAX;

struct Search<'a> {
    g: &'a Dag,
    /// Position around the circle; vertex 0 is fixed at 0.
    pos: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, k: usize, crossings: &[(usize, usize)]) -> Option<Vec<(usize, usize)>> {
        let n = self.g.vertex_count();
        if k == n {
            return Some(crossings.to_vec());
        }
        for v in 1..n {
            if self.pos[v] != UNPLACED {
                continue;
            }
            self.pos[v] = k;
            let found = match self.determined_crossings() {
                // placing a vertex never removes a crossing
                Some(c) if c.len() == crossings.len() || self.acyclic(&c) => self.run(k + 1, &c),
                _ => None,
            };
            self.pos[v] = UNPLACED;
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Interleaving pairs already fixed by the placed vertices (unplaced ones
    /// come later, hence outside every placed chord), or `None` if some edge
    /// is crossed twice.
    fn determined_crossings(&self) -> Option<Vec<(usize, usize)>> {
        let edges = self.g.edges();
        let m = edges.len();
        let mut count = vec![0u8; m];
        let mut out = Vec::new();
        for e in 0..m {
            for f in e + 1..m {
                if self.interleave(edges[e], edges[f]) {
                    count[e] += 1;
                    count[f] += 1;
                    if count[e] > 1 || count[f] > 1 {
                        return None;
                    }
                    out.push((e, f));
                }
            }
        }
        Some(out)
    }

    fn interleave(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
        if a == c || a == d || b == c || b == d {
            return false;
        }
        let p = &self.pos;
        let split = |x: usize, y: usize, z: usize, w: usize| {
            let (lo, hi) = (p[x].min(p[y]), p[x].max(p[y]));
            let inside = |t: usize| lo < p[t] && p[t] < hi;
            inside(z) != inside(w)
        };
        if p[a] != UNPLACED && p[b] != UNPLACED {
            split(a, b, c, d)
        } else if p[c] != UNPLACED && p[d] != UNPLACED {
            split(c, d, a, b)
        } else {
            false
        }
    }

    fn acyclic(&self, crossings: &[(usize, usize)]) -> bool {
        let n = self.g.vertex_count();
        let edges = self.g.edges();
        let mut via = vec![None; edges.len()];
        for (i, &(e, f)) in crossings.iter().enumerate() {
            via[e] = Some(n + i);
            via[f] = Some(n + i);
        }
        let mut arcs = Vec::with_capacity(edges.len() + crossings.len() * 2);
        for (e, &(a, b)) in edges.iter().enumerate() {
            match via[e] {
                Some(x) => arcs.extend([(a, x), (x, b)]),
                None => arcs.push((a, b)),
            }
        }
        find_cycle(n + crossings.len(), &arcs).is_none()
    }
}

/// The same decision by a search over crossing-pair sets instead of vertex
/// orders. A set is realizable iff the planarization, with a wheel around
/// every dummy (forcing its rotation to alternate between the two crossing
/// edges) and an apex joined to every original vertex (forcing them onto one
/// face), is planar. Both this and acyclicity survive deleting edges, so
/// partial sets are pruned as soon as either fails. Much slower; kept as a
/// second route for cross-checking.
pub fn oracle_o1p_by_planarization(g: &Dag, limit: usize) -> Result<Option<Vec<(usize, usize)>>, OracleError> {
    let n = g.vertex_count();
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    if !g.is_acyclic() {
        return Ok(None);
    }
    let mut s = PairSearch { g, state: vec![State::Open; g.edge_count()] };
    Ok(if s.run(0) { Some(s.pairs()) } else { None })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Open,
    Plain,
    Crossed(usize),
}

struct PairSearch<'a> {
    g: &'a Dag,
    state: Vec<State>,
}

impl PairSearch<'_> {
    fn pairs(&self) -> Vec<(usize, usize)> {
        self.state
            .iter()
            .enumerate()
            .filter_map(|(e, s)| match *s {
                State::Crossed(f) if e < f => Some((e, f)),
                _ => None,
            })
            .collect()
    }

    fn run(&mut self, e: usize) -> bool {
        let m = self.g.edge_count();
        if e == m {
            return true;
        }
        if self.state[e] != State::Open {
            return self.run(e + 1);
        }
        self.state[e] = State::Plain;
        if self.enough_crossings() && self.feasible() && self.run(e + 1) {
            return true;
        }
        let (a, b) = self.g.edges()[e];
        for f in e + 1..m {
            let (c, d) = self.g.edges()[f];
            if self.state[f] != State::Open || a == c || a == d || b == c || b == d {
                continue;
            }
            self.state[e] = State::Crossed(f);
            self.state[f] = State::Crossed(e);
            if self.feasible() && self.run(e + 1) {
                return true;
            }
            self.state[f] = State::Open;
        }
        self.state[e] = State::Open;
        false
    }

    /// Euler on planarization plus apex: m <= 2n - 3 + c for c crossings.
    fn enough_crossings(&self) -> bool {
        let (n, m) = (self.g.vertex_count(), self.g.edge_count());
        let unplain = self.state.iter().filter(|&&s| s != State::Plain).count();
        n < 3 || m + 3 <= 2 * n + unplain / 2
    }

    /// The decided part is planar with wheels and apex, and acyclic.
    fn feasible(&self) -> bool {
        let n = self.g.vertex_count();
        let apex = n;
        let mut next = n + 1;
        let mut und = Vec::new();
        let mut arcs = Vec::new();
        for v in 0..n {
            und.push((apex, v));
        }
        for (e, s) in self.state.iter().enumerate() {
            let (a, b) = self.g.edges()[e];
            match *s {
                State::Open => {}
                State::Plain => {
                    und.push((a, b));
                    arcs.push((a, b));
                }
                State::Crossed(f) if e < f => {
                    let (c, d) = self.g.edges()[f];
                    let x = next;
                    let [ya, yc, yb, yd] = [x + 1, x + 2, x + 3, x + 4];
                    next += 5;
                    und.extend([(a, ya), (ya, x), (x, yb), (yb, b), (c, yc), (yc, x), (x, yd), (yd, d)]);
                    und.extend([(ya, yc), (yc, yb), (yb, yd), (yd, ya)]);
                    arcs.extend([(a, x), (x, b), (c, x), (x, d)]);
                }
                State::Crossed(_) => {}
            }
        }
        find_cycle(next, &arcs).is_none() && is_planar(next, &und)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let tri = Dag::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(oracle_o1p_witness(&tri, 9), Ok(Some(Vec::new())));
        let k4 = Dag::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        // K4 is not outerplanar: one crossing is needed
        assert_eq!(oracle_o1p_witness(&k4, 9).unwrap().map(|w| w.len()), Some(1));
        let k5: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        assert_eq!(oracle_o1p(&Dag::from_edges(5, &k5), 9), Ok(false));
        assert!(oracle_o1p(&Dag::from_edges(10, &[]), 9).is_err());
        for g in [&tri, &k4] {
            assert_eq!(oracle_o1p_by_planarization(g, 9).unwrap().is_some(), oracle_o1p(g, 9).unwrap());
        }
        assert_eq!(oracle_o1p_by_planarization(&Dag::from_edges(5, &k5), 9), Ok(None));
    }
}
