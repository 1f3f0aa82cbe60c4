//! Named graphs and families: the non-upward-planar base graphs, the
//! outerplanar family `G_l`, the pathwidth-2 family, st-gadgets and the
//! 3-Partition reduction.
//!
//! Every generated graph is numbered canonically: breadth-first from a
//! designated vertex, neighbours visited in edge construction order. Edges
//! keep their construction order. Vertices carry descriptive labels.

mod enumerate;
mod gadgets;
mod reduction;

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::dag::Dag;

pub use enumerate::{single_source_dags, ENUMERATE_LIMIT};
pub use gadgets::{gen_gadget, Gadget, GadgetKind, GateEdges};
pub use reduction::{
    bins_from_values, gen_reduction, route_partition, route_solution, verify_assignment, AssignmentReport,
    CrossingAssignment, ReductionCase, ReductionGraphs, ThreePartitionInstance,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("{what} would have {size} vertices, above the limit {limit}")]
    TooLarge { what: String, size: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid 3-Partition instance: {0}")]
    InvalidInstance(String),
    #[error("not a solution: {0}")]
    NotASolution(String),
    #[error("unknown base graph {0:?}")]
    UnknownBase(String),
}

/// Largest vertex count any family generator produces.
pub const MAX_GENERATED_VERTICES: usize = 1 << 20;

/// Accumulates labelled vertices and edges in construction order.
#[derive(Debug, Default, Clone)]
pub(crate) struct Builder {
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    pub fn vertex(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    pub fn edge(&mut self, u: usize, v: usize) -> usize {
        self.edges.push((u, v));
        self.edges.len() - 1
    }

    /// Copies `g` in, returning the new id of each of its vertices.
    pub fn absorb(&mut self, g: &Dag, prefix: &str) -> Vec<usize> {
        let map: Vec<usize> =
            (0..g.vertex_count()).map(|v| self.vertex(format!("{prefix}{}", g.label(v)))).collect();
        for &(u, v) in g.edges() {
            self.edge(map[u], map[v]);
        }
        map
    }

    /// Canonical numbering from `root`; returns the graph and the new id of
    /// every builder vertex.
    pub fn finish(self, root: usize) -> (Dag, Vec<usize>) {
        let n = self.labels.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut new_id = vec![usize::MAX; n];
        let mut next = 0;
        let starts = core::iter::once(root).chain(0..n);
        for s in starts {
            if n == 0 || new_id[s] != usize::MAX {
                continue;
            }
            new_id[s] = next;
            next += 1;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if new_id[w] == usize::MAX {
                        new_id[w] = next;
                        next += 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut labels = vec![String::new(); n];
        for (v, l) in self.labels.into_iter().enumerate() {
            labels[new_id[v]] = l;
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (new_id[u], new_id[v])).collect();
        let dag = Dag::new(n, edges).expect("generators build simple graphs").with_labels(labels);
        (dag, new_id)
    }
}

/// The two named base graphs: `"g0"`, a bipartite outerplanar 8-vertex DAG
/// (a 2x4 ladder) that is not upward planar, and `"fan7"`, a 7-vertex fan
/// that is upward 1-planar but not upward planar.
pub fn gen_base(name: &str) -> Result<Dag, GeneratorError> {
    match name {
        "g0" => Ok(g0_with_cycle().0),
        "fan7" => Ok(fan7()),
        _ => Err(GeneratorError::UnknownBase(name.to_string())),
    }
}

/// Edges of the ladder, by vertex name 1..8: the outer cycle
/// 1 2 3 4 8 7 6 5, then the inner edges 2-6 and 3-7.
const G0_EDGES: [(usize, usize); 10] =
    [(1, 2), (2, 3), (3, 4), (8, 4), (8, 7), (7, 6), (6, 5), (1, 5), (2, 6), (7, 3)];
const G0_OUTER: [usize; 8] = [1, 2, 3, 4, 8, 7, 6, 5];

/// `G0` and its outer cycle in canonical ids.
fn g0_with_cycle() -> (Dag, Vec<usize>) {
    let mut b = Builder::default();
    let ids: Vec<usize> = (1..=8).map(|i| b.vertex(i.to_string())).collect();
    for (u, v) in G0_EDGES {
        b.edge(ids[u - 1], ids[v - 1]);
    }
    let (g, map) = b.finish(ids[0]);
    let cycle = G0_OUTER.iter().map(|&i| map[ids[i - 1]]).collect();
    (g, cycle)
}

fn fan7() -> Dag {
    let mut b = Builder::default();
    let c = b.vertex("c");
    let v: Vec<usize> = (1..=6).map(|i| b.vertex(format!("v{i}"))).collect();
    // path v1 -> v2 <- v3 <- v4 <- v5 -> v6
    for (x, y) in [(1, 2), (3, 2), (4, 3), (5, 4), (5, 6)] {
        b.edge(v[x - 1], v[y - 1]);
    }
    // triangles at v1v2, v3v4 and v5v6 straddle the centre
    for (x, into_c) in [(1, true), (2, false), (3, false), (4, true), (5, true), (6, false)] {
        if into_c {
            b.edge(v[x - 1], c);
        } else {
            b.edge(c, v[x - 1]);
        }
    }
    b.finish(v[0]).0
}

/// `G0` after `l` rounds of attaching a 3-edge path, directed like the edge,
/// along every outer edge.
pub fn gen_g_ell(l: u32) -> Result<Dag, GeneratorError> {
    let size = 3usize.checked_pow(l).and_then(|p| p.checked_mul(8));
    match size {
        Some(s) if s <= MAX_GENERATED_VERTICES => {}
        _ => {
            return Err(GeneratorError::TooLarge {
                what: format!("G_{l}"),
                size: size.unwrap_or(usize::MAX),
                limit: MAX_GENERATED_VERTICES,
            })
        }
    }
    let (g0, cycle0) = g0_with_cycle();
    let mut b = Builder::default();
    let ids = b.absorb(&g0, "");
    let mut cycle: Vec<usize> = cycle0.iter().map(|&v| ids[v]).collect();
    let mut dir: BTreeSet<(usize, usize)> = g0.edges().iter().map(|&(u, v)| (ids[u], ids[v])).collect();
    for round in 1..=l {
        let k = cycle.len();
        let mut next = Vec::with_capacity(3 * k);
        for i in 0..k {
            let (u, v) = (cycle[i], cycle[(i + 1) % k]);
            let x = b.vertex(format!("r{round}_{i}a"));
            let y = b.vertex(format!("r{round}_{i}b"));
            let forward = dir.contains(&(u, v));
            let path = if forward { [(u, x), (x, y), (y, v)] } else { [(v, y), (y, x), (x, u)] };
            for (p, q) in path {
                b.edge(p, q);
                dir.insert((p, q));
            }
            next.extend([u, x, y]);
        }
        cycle = next;
    }
    Ok(b.finish(ids[0]).0)
}

/// The pathwidth-2 graph with vertices `a, b1, b2, c`, `3k+1` through-vertices
/// at each `b_i`, `6k+1` sources below `a` and `4k+1` sinks above each `b_i`.
pub fn gen_pathwidth2(k: usize) -> Result<Dag, GeneratorError> {
    if k == 0 {
        return Err(GeneratorError::InvalidParameter("k must be positive".into()));
    }
    let size = k.checked_mul(20).and_then(|x| x.checked_add(9));
    if size.is_none_or(|s| s > MAX_GENERATED_VERTICES) {
        return Err(GeneratorError::TooLarge {
            what: format!("pathwidth2({k})"),
            size: size.unwrap_or(usize::MAX),
            limit: MAX_GENERATED_VERTICES,
        });
    }
    let mut g = Builder::default();
    let a = g.vertex("a");
    let bs = [g.vertex("b1"), g.vertex("b2")];
    let c = g.vertex("c");
    for &bi in &bs {
        g.edge(a, bi);
    }
    for (i, &bi) in bs.iter().enumerate() {
        for j in 1..=3 * k + 1 {
            let d = g.vertex(format!("d{}_{j}", i + 1));
            g.edge(bi, d);
            g.edge(d, c);
        }
    }
    for j in 1..=6 * k + 1 {
        let s = g.vertex(format!("s{j}"));
        g.edge(s, a);
        g.edge(s, c);
    }
    for (i, &bi) in bs.iter().enumerate() {
        for j in 1..=4 * k + 1 {
            let t = g.vertex(format!("t{}_{j}", i + 1));
            g.edge(bi, t);
            g.edge(c, t);
        }
    }
    Ok(g.finish(a).0)
}
