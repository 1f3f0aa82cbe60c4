//! st-gadgets: parallels, gates and chains.

use alloc::format;
use alloc::vec::Vec;

use super::{Builder, GeneratorError};
use crate::dag::Dag;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    /// `b` directed paths of `q` edges between the poles.
    Parallel { b: usize, q: usize },
    /// An edge between the poles beside a `(p-1, 2)`-parallel.
    Gate { p: usize },
    /// `h` `(q)`-gates, one `(a)`-gate, then `h` `(q)`-gates, in series.
    Chain { h: usize, q: usize, a: usize },
}

/// A single-source single-sink graph with its poles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub dag: Dag,
    pub s: usize,
    pub t: usize,
}

/// Edge ids of one gate: the edge between its poles and its 2-paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateEdges {
    pub direct: usize,
    pub paths: Vec<[usize; 2]>,
}

impl GateEdges {
    /// One edge from each of the gate's internally disjoint pole-to-pole
    /// paths: what a curve must cross to pass through the gate.
    pub fn cut(&self) -> Vec<usize> {
        core::iter::once(self.direct).chain(self.paths.iter().map(|p| p[0])).collect()
    }

    pub fn edges(&self) -> Vec<usize> {
        core::iter::once(self.direct).chain(self.paths.iter().flatten().copied()).collect()
    }
}

pub fn gen_gadget(kind: GadgetKind) -> Result<Gadget, GeneratorError> {
    let positive = match kind {
        GadgetKind::Parallel { b, q } => b > 0 && q > 0,
        GadgetKind::Gate { p } => p > 0,
        GadgetKind::Chain { h, q, a } => h > 0 && q > 0 && a > 0,
    };
    if !positive {
        return Err(GeneratorError::InvalidParameter(format!("{kind:?}: parameters must be positive")));
    }
    if let GadgetKind::Parallel { b, q: 1 } = kind {
        if b > 1 {
            return Err(GeneratorError::InvalidParameter(format!("{kind:?}: parallel edges are not simple")));
        }
    }
    let mut g = Builder::default();
    let s = g.vertex("s");
    let t = g.vertex("t");
    match kind {
        GadgetKind::Parallel { b, q } => {
            add_parallel(&mut g, s, t, b, q, "");
        }
        GadgetKind::Gate { p } => {
            add_gate(&mut g, s, t, p, "");
        }
        GadgetKind::Chain { h, q, a } => {
            add_chain(&mut g, s, t, h, q, a, "");
        }
    }
    let (dag, map) = g.finish(s);
    Ok(Gadget { dag, s: map[s], t: map[t] })
}

/// Adds `b` paths of `q` edges from `s` to `t`; returns their edge ids.
pub(crate) fn add_parallel(g: &mut Builder, s: usize, t: usize, b: usize, q: usize, tag: &str) -> Vec<Vec<usize>> {
    (0..b)
        .map(|i| {
            let mut prev = s;
            let mut path = Vec::with_capacity(q);
            for j in 1..q {
                let x = g.vertex(format!("{tag}p{}_{j}", i + 1));
                path.push(g.edge(prev, x));
                prev = x;
            }
            path.push(g.edge(prev, t));
            path
        })
        .collect()
}

pub(crate) fn add_gate(g: &mut Builder, s: usize, t: usize, p: usize, tag: &str) -> GateEdges {
    let direct = g.edge(s, t);
    let paths = add_parallel(g, s, t, p - 1, 2, tag).into_iter().map(|e| [e[0], e[1]]).collect();
    GateEdges { direct, paths }
}

/// Adds the `2h + 1` gates of a chain from `s` to `t`, in series order.
pub(crate) fn add_chain(
    g: &mut Builder,
    s: usize,
    t: usize,
    h: usize,
    q: usize,
    a: usize,
    tag: &str,
) -> Vec<GateEdges> {
    let k = 2 * h + 1;
    let mut gates = Vec::with_capacity(k);
    let mut prev = s;
    for i in 0..k {
        let next = if i + 1 == k { t } else { g.vertex(format!("{tag}j{}", i + 1)) };
        let p = if i == h { a } else { q };
        gates.push(add_gate(g, prev, next, p, &format!("{tag}g{}", i + 1)));
        prev = next;
    }
    gates
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(k: GadgetKind) -> (usize, usize) {
        let g = gen_gadget(k).unwrap();
        assert_eq!(g.dag.sources(), vec![g.s]);
        assert_eq!(g.dag.sinks(), vec![g.t]);
        (g.dag.vertex_count(), g.dag.edge_count())
    }

    #[test]
    fn gadget_counts() {
        assert_eq!(counts(GadgetKind::Parallel { b: 4, q: 3 }), (10, 12));
        assert_eq!(counts(GadgetKind::Gate { p: 4 }), (5, 7));
        assert_eq!(counts(GadgetKind::Chain { h: 2, q: 5, a: 3 }), (24, 41));
        assert_eq!(counts(GadgetKind::Gate { p: 1 }), (2, 1));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gen_gadget(GadgetKind::Gate { p: 0 }).is_err());
        assert!(gen_gadget(GadgetKind::Chain { h: 0, q: 2, a: 1 }).is_err());
        assert!(gen_gadget(GadgetKind::Parallel { b: 2, q: 1 }).is_err());
    }
}
