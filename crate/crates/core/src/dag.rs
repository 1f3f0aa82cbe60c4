//! Simple directed graphs on dense vertex indices, the DAG text format,
//! and the structural queries the layouts and testers build on.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt::Write as _;

use thiserror::Error;

/// Errors raised while constructing or querying a [`Dag`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DagError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph contains a directed cycle {0:?}")]
    CyclicGraph(Vec<usize>),
    #[error("underlying graph is disconnected")]
    DisconnectedGraph,
}

/// What went wrong on a particular line of a DAG file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed edge line: {0}")]
    MalformedEdge(String),
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] DagError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// A simple digraph with vertices `0..n`. Acyclicity is not enforced here;
/// operations that need it check it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl Dag {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, DagError> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(DagError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(DagError::SelfLoop(u));
            }
            if !seen.insert((u, v)) {
                return Err(DagError::DuplicateEdge(u, v));
            }
        }
        Ok(Dag { n, edges, labels: None })
    }

    /// Builds a graph from edges known to be valid; panics otherwise.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        Dag::new(n, edges.to_vec()).expect("invalid edge list")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// Index of the edge `u -> v`, if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.iter().position(|&e| e == (u, v))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    /// True when `u -> v` or `v -> u` is an edge.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    pub fn out_adjacency(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            out[u].push(v);
        }
        out
    }

    pub fn in_adjacency(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            inc[v].push(u);
        }
        inc
    }

    /// Neighbors in the underlying undirected graph, sorted.
    pub fn undirected_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn sources(&self) -> Vec<usize> {
        let inc = self.in_adjacency();
        (0..self.n).filter(|&v| inc[v].is_empty()).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let out = self.out_adjacency();
        (0..self.n).filter(|&v| out[v].is_empty()).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.undirected_adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let adj = self.undirected_adjacency();
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_acyclic(&self) -> bool {
        find_cycle(self.n, &self.edges).is_none()
    }

    /// Edges sorted lexicographically.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// The subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Dag {
        let index: BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((*index.get(&u)?, *index.get(&v)?)))
            .collect();
        Dag { n: vertices.len(), edges, labels: None }
    }

    /// Serializes to the DAG text format: header `n m`, then edges sorted
    /// lexicographically. Labels, when present, ride along as `#@label` comments.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(labels) = &self.labels {
            for (i, l) in labels.iter().enumerate() {
                let _ = writeln!(s, "#@label {} {}", i, l);
            }
        }
        let _ = writeln!(s, "{} {}", self.n, self.edges.len());
        for (u, v) in self.sorted_edges() {
            let _ = writeln!(s, "{} {}", u, v);
        }
        s
    }
}

/// Parses the DAG text format: optional `#` comment lines, a header `n m`,
/// then `m` lines `u v` (0-based, directed `u -> v`).
pub fn parse_dag(text: &str) -> Result<Dag, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    let mut labels: BTreeMap<usize, String> = BTreeMap::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("#@label ") {
            if let Some((i, l)) = rest.split_once(' ') {
                if let Ok(i) = i.parse::<usize>() {
                    labels.insert(i, l.to_string());
                }
            }
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |kind| ParseError { line: line_no, kind };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let nums: Option<Vec<usize>> = fields.iter().map(|f| f.parse().ok()).collect();
        match header {
            None => {
                let nums = nums
                    .filter(|v| v.len() == 2)
                    .ok_or_else(|| err(ParseErrorKind::MalformedHeader(line.to_string())))?;
                header = Some((nums[0], nums[1]));
            }
            Some((n, m)) => {
                let nums = nums
                    .filter(|v| v.len() == 2)
                    .ok_or_else(|| err(ParseErrorKind::MalformedEdge(line.to_string())))?;
                let (u, v) = (nums[0], nums[1]);
                for w in [u, v] {
                    if w >= n {
                        return Err(err(DagError::VertexOutOfRange { vertex: w, n }.into()));
                    }
                }
                if u == v {
                    return Err(err(DagError::SelfLoop(u).into()));
                }
                if !seen.insert((u, v)) {
                    return Err(err(DagError::DuplicateEdge(u, v).into()));
                }
                if edges.len() == m {
                    return Err(err(ParseErrorKind::EdgeCountMismatch {
                        expected: m,
                        found: m + 1,
                    }));
                }
                edges.push((u, v));
            }
        }
    }
    let (n, m) = header.ok_or(ParseError { line: last_line.max(1), kind: ParseErrorKind::MissingHeader })?;
    if edges.len() != m {
        return Err(ParseError {
            line: last_line,
            kind: ParseErrorKind::EdgeCountMismatch { expected: m, found: edges.len() },
        });
    }
    let dag = Dag { n, edges, labels: None };
    if labels.is_empty() {
        Ok(dag)
    } else {
        let all = (0..n)
            .map(|i| labels.get(&i).cloned().unwrap_or_else(|| format!("{}", i)))
            .collect();
        Ok(dag.with_labels(all))
    }
}

/// A topological order together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearExtension {
    pub order: Vec<usize>,
    pub rank: Vec<usize>,
}

impl LinearExtension {
    pub fn respects(&self, g: &Dag) -> bool {
        g.edges().iter().all(|&(u, v)| self.rank[u] < self.rank[v])
    }
}

/// Kahn's algorithm, always taking the smallest available vertex.
pub fn linear_extension(g: &Dag) -> Result<LinearExtension, DagError> {
    let n = g.vertex_count();
    let out = g.out_adjacency();
    let mut indeg = vec![0usize; n];
    for &(_, v) in g.edges() {
        indeg[v] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    if order.len() < n {
        let cycle = find_cycle(n, g.edges()).expect("Kahn stalled without a cycle");
        return Err(DagError::CyclicGraph(cycle));
    }
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    Ok(LinearExtension { order, rank })
}

/// Finds a directed cycle, returned as a closed walk starting and ending at
/// its smallest vertex, e.g. `[0, 1, 0]`.
pub fn find_cycle(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut out = vec![Vec::new(); n];
    for &(u, v) in edges {
        out[u].push(v);
    }
    for a in &mut out {
        a.sort_unstable();
    }
    // 0 = new, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < out[v].len() {
                let w = out[v][*i];
                *i += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cyc = vec![v];
                        let mut x = v;
                        while x != w {
                            x = parent[x];
                            cyc.push(x);
                        }
                        cyc.reverse();
                        let start = (0..cyc.len()).min_by_key(|&i| cyc[i]).unwrap();
                        cyc.rotate_left(start);
                        let first = cyc[0];
                        cyc.push(first);
                        return Some(cyc);
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// A biconnected component together with its vertex map into the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub dag: Dag,
    /// `vertices[i]` is the parent-graph vertex of local vertex `i`.
    pub vertices: Vec<usize>,
    /// Indices into the parent's edge list, in local edge order.
    pub edge_ids: Vec<usize>,
}

/// Biconnected components of the underlying undirected graph.
pub fn blocks(g: &Dag) -> Result<Vec<Block>, DagError> {
    if !g.is_connected() {
        return Err(DagError::DisconnectedGraph);
    }
    Ok(block_edge_partition(g)
        .into_iter()
        .map(|ids| {
            let mut verts: Vec<usize> =
                ids.iter().flat_map(|&e| [g.edges()[e].0, g.edges()[e].1]).collect();
            verts.sort_unstable();
            verts.dedup();
            let index: BTreeMap<usize, usize> =
                verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let edges = ids.iter().map(|&e| (index[&g.edges()[e].0], index[&g.edges()[e].1])).collect();
            Block { dag: Dag { n: verts.len(), edges, labels: None }, vertices: verts, edge_ids: ids }
        })
        .collect())
}

/// Partition of edge indices into biconnected components (iterative Hopcroft–Tarjan),
/// each sorted, components ordered by their smallest edge index.
pub fn block_edge_partition(g: &Dag) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut comps = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent edge, next adjacency index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let (w, e) = adj[v][*i];
                *i += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            comp.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
    }
    comps.sort();
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_path() {
        let g = parse_dag("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_self_loop_with_line_number() {
        let e = parse_dag("2 1\n0 0").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, ParseErrorKind::Graph(DagError::SelfLoop(0)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_dag("# only a comment\n").unwrap_err().kind, ParseErrorKind::MissingHeader));
        assert!(matches!(parse_dag("x 1\n").unwrap_err().kind, ParseErrorKind::MalformedHeader(_)));
        let e = parse_dag("2 1\n0 5").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Graph(DagError::VertexOutOfRange { vertex: 5, n: 2 }));
        let e = parse_dag("3 2\n0 1\n# c\n0 1").unwrap_err();
        assert_eq!((e.line, e.kind), (4, ParseErrorKind::Graph(DagError::DuplicateEdge(0, 1))));
        assert!(matches!(
            parse_dag("3 2\n0 1").unwrap_err().kind,
            ParseErrorKind::EdgeCountMismatch { expected: 2, found: 1 }
        ));
    }

    #[test]
    fn serialization_sorts_and_round_trips() {
        let g = Dag::from_edges(4, &[(2, 3), (0, 2), (0, 1)]);
        let text = g.to_text();
        assert_eq!(text, "4 3\n0 1\n0 2\n2 3\n");
        let h = parse_dag(&text).unwrap();
        assert_eq!(h.to_text(), text);
        let labelled = g.with_labels(vec!["s".into(), "a".into(), "b".into(), "t".into()]);
        let back = parse_dag(&labelled.to_text()).unwrap();
        assert_eq!(back.labels().unwrap()[3], "t");
    }

    #[test]
    fn linear_extension_of_path_is_forced() {
        let g = Dag::from_edges(3, &[(1, 2), (0, 1)]);
        assert_eq!(linear_extension(&g).unwrap().order, vec![0, 1, 2]);
    }

    #[test]
    fn two_cycle_reports_witness() {
        let g = Dag::from_edges(2, &[(0, 1), (1, 0)]);
        assert_eq!(linear_extension(&g).unwrap_err(), DagError::CyclicGraph(vec![0, 1, 0]));
    }

    #[test]
    fn blocks_of_small_graphs() {
        let tri = Dag::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(blocks(&tri).unwrap().len(), 1);
        let bowtie = Dag::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]);
        let b = blocks(&bowtie).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|blk| blk.vertices.contains(&0)));
        let path = Dag::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(blocks(&path).unwrap().len(), 3);
        let disc = Dag::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(blocks(&disc).unwrap_err(), DagError::DisconnectedGraph);
    }
}
