//! SPQR trees of biconnected blocks, built by splitting at separation pairs
//! until only bonds, triangles and triconnected pieces remain, then merging
//! adjacent bonds and adjacent polygons.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dag::Dag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    S,
    P,
    R,
}

/// Direction of a skeleton edge relative to its stored endpoints `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
    Undirected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// Index into the block's edge list.
    Real(usize),
    /// Id of the tree edge; the same id appears in exactly two skeletons.
    Virtual(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonEdge {
    pub a: usize,
    pub b: usize,
    pub kind: EdgeKind,
    pub dir: Direction,
}

impl SkeletonEdge {
    pub fn is_virtual(&self) -> bool {
        matches!(self.kind, EdgeKind::Virtual(_))
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.a {
            self.b
        } else {
            self.a
        }
    }

    /// True when the edge is directed from `x` to its other endpoint.
    pub fn leaves(&self, x: usize) -> bool {
        match self.dir {
            Direction::Forward => x == self.a,
            Direction::Backward => x == self.b,
            Direction::Undirected => false,
        }
    }
}

/// Skeleton over block vertex ids. For S-nodes `vertices` is the cycle order
/// and `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub vertices: Vec<usize>,
    pub edges: Vec<SkeletonEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpqrNode {
    pub kind: NodeKind,
    pub skeleton: Skeleton,
}

/// SPQR tree of a block. A block that is a single edge has no nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpqrTree {
    pub block: Dag,
    pub nodes: Vec<SpqrNode>,
    /// `(node, edge index)` of both copies of each virtual edge.
    pub virtual_edges: Vec<[(usize, usize); 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpqrError {
    NotBiconnected,
}

type RawEdge = (usize, usize, EdgeKind);

pub fn build_spqr(block: &Dag) -> Result<SpqrTree, SpqrError> {
    let n = block.vertex_count();
    let m = block.edge_count();
    if n == 2 && m == 1 {
        return Ok(SpqrTree { block: block.clone(), nodes: Vec::new(), virtual_edges: Vec::new() });
    }
    if n < 3 || !is_biconnected(block) {
        return Err(SpqrError::NotBiconnected);
    }
    let all: Vec<RawEdge> =
        block.edges().iter().enumerate().map(|(i, &(u, v))| (u, v, EdgeKind::Real(i))).collect();
    let mut stack = vec![all];
    let mut pieces: Vec<Vec<RawEdge>> = Vec::new();
    let mut next_vid = 0;
    while let Some(c) = stack.pop() {
        match find_split(&c) {
            Some((side, a, b)) => {
                let vk = EdgeKind::Virtual(next_vid);
                next_vid += 1;
                let inside: BTreeSet<usize> = side.into_iter().collect();
                let mut one = vec![(a, b, vk)];
                let mut two = vec![(a, b, vk)];
                for (i, &e) in c.iter().enumerate() {
                    if inside.contains(&i) {
                        one.push(e);
                    } else {
                        two.push(e);
                    }
                }
                stack.push(two);
                stack.push(one);
            }
            None => pieces.push(c),
        }
    }
    Ok(assemble(block, merge(pieces, next_vid)))
}

fn is_biconnected(g: &Dag) -> bool {
    g.is_connected() && crate::dag::block_edge_partition(g).len() == 1
}

fn piece_vertices(c: &[RawEdge]) -> Vec<usize> {
    let mut v: Vec<usize> = c.iter().flat_map(|&(a, b, _)| [a, b]).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn classify(c: &[RawEdge]) -> NodeKind {
    let verts = piece_vertices(c);
    if verts.len() == 2 {
        return NodeKind::P;
    }
    let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b, _) in c {
        *deg.entry(a).or_default() += 1;
        *deg.entry(b).or_default() += 1;
    }
    if verts.len() == c.len() && deg.values().all(|&d| d == 2) {
        NodeKind::S
    } else {
        NodeKind::R
    }
}

/// One side of a split of the multigraph `c` and its separation pair.
fn find_split(c: &[RawEdge]) -> Option<(Vec<usize>, usize, usize)> {
    if c.len() <= 3 {
        return None;
    }
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, &(a, b, _)) in c.iter().enumerate() {
        groups.entry((a.min(b), a.max(b))).or_default().push(i);
    }
    for (&(a, b), g) in &groups {
        if g.len() >= 2 {
            if c.len() - g.len() >= 2 {
                return Some((g.clone(), a, b));
            }
            if g.len() == c.len() {
                return Some((g[..2].to_vec(), a, b));
            }
        }
    }
    let verts = piece_vertices(c);
    let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = verts.len();
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, &(a, b, _)) in c.iter().enumerate() {
        inc[index[&a]].push(i);
        inc[index[&b]].push(i);
    }
    for w in 0..k {
        if let [e1, e2] = inc[w][..] {
            let x = other_end(c[e1], verts[w]);
            let y = other_end(c[e2], verts[w]);
            return Some((vec![e1, e2], x, y));
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &(a, b, _) in c {
        adj[index[&a]].push(index[&b]);
        adj[index[&b]].push(index[&a]);
    }
    for a in 0..k {
        if let Some(&b) = articulation_points(&adj, a).first() {
            let class = separation_class(c, &index, a, b);
            return Some((class, verts[a], verts[b]));
        }
    }
    None
}

fn other_end(e: RawEdge, x: usize) -> usize {
    if e.0 == x {
        e.1
    } else {
        e.0
    }
}

/// Edges of one separation class of `{a, b}` that has at least two edges.
fn separation_class(c: &[RawEdge], index: &BTreeMap<usize, usize>, a: usize, b: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..c.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let mut first_at: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &(u, v, _)) in c.iter().enumerate() {
        for w in [index[&u], index[&v]] {
            if w == a || w == b {
                continue;
            }
            match first_at.get(&w) {
                Some(&j) => {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
                None => {
                    first_at.insert(w, i);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..c.len() {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    classes.into_values().find(|cl| cl.len() >= 2).expect("a separation pair has a class with two edges")
}

/// Cut vertices of the graph with vertex `skip` removed.
fn articulation_points(adj: &[Vec<usize>], skip: usize) -> Vec<usize> {
    let k = adj.len();
    let Some(root) = (0..k).find(|&v| v != skip) else { return Vec::new() };
    let mut disc = vec![usize::MAX; k];
    let mut low = vec![0; k];
    let mut cut = vec![false; k];
    let mut time = 0;
    disc[root] = 0;
    time += 1;
    let mut root_children = 0;
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
    while let Some(&mut (v, parent, ref mut i)) = stack.last_mut() {
        if *i < adj[v].len() {
            let w = adj[v][*i];
            *i += 1;
            if w == skip || w == parent {
                continue;
            }
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                if v == root {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if parent != root && low[v] >= disc[parent] {
                    cut[parent] = true;
                }
            }
        }
    }
    if root_children > 1 {
        cut[root] = true;
    }
    (0..k).filter(|&v| cut[v]).collect()
}

/// Merges bonds sharing a virtual edge and polygons sharing a virtual edge.
fn merge(pieces: Vec<Vec<RawEdge>>, vids: usize) -> Vec<(NodeKind, Vec<RawEdge>)> {
    let kinds: Vec<NodeKind> = pieces.iter().map(|p| classify(p)).collect();
    let mut holders = vec![Vec::new(); vids];
    for (i, p) in pieces.iter().enumerate() {
        for &(_, _, k) in p {
            if let EdgeKind::Virtual(id) = k {
                holders[id].push(i);
            }
        }
    }
    let mut parent: Vec<usize> = (0..pieces.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut internal = vec![false; vids];
    for (id, h) in holders.iter().enumerate() {
        let (x, y) = (h[0], h[1]);
        if kinds[x] == kinds[y] && kinds[x] != NodeKind::R {
            internal[id] = true;
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx] = ry;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..pieces.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut order: Vec<Vec<usize>> = groups.into_values().collect();
    order.sort_by_key(|g| g[0]);
    order
        .into_iter()
        .map(|g| {
            let edges: Vec<RawEdge> = g
                .iter()
                .flat_map(|&i| pieces[i].iter().copied())
                .filter(|&(_, _, k)| !matches!(k, EdgeKind::Virtual(id) if internal[id]))
                .collect();
            (kinds[g[0]], edges)
        })
        .collect()
}

/// Numbers the surviving virtual edges and lays out S-skeletons as cycles.
fn assemble(block: &Dag, merged: Vec<(NodeKind, Vec<RawEdge>)>) -> SpqrTree {
    let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
    let mut nodes = Vec::with_capacity(merged.len());
    let mut virtual_edges: Vec<[(usize, usize); 2]> = Vec::new();
    for (ni, (kind, raw)) in merged.into_iter().enumerate() {
        let raw = if kind == NodeKind::S { cycle_order(&raw) } else { raw };
        let mut edges = Vec::with_capacity(raw.len());
        for (ei, (a, b, k)) in raw.into_iter().enumerate() {
            let kind = match k {
                EdgeKind::Real(e) => EdgeKind::Real(e),
                EdgeKind::Virtual(id) => {
                    let next = renumber.len();
                    let new = *renumber.entry(id).or_insert(next);
                    if new == virtual_edges.len() {
                        virtual_edges.push([(ni, ei), (usize::MAX, usize::MAX)]);
                    } else {
                        virtual_edges[new][1] = (ni, ei);
                    }
                    EdgeKind::Virtual(new)
                }
            };
            let dir = match kind {
                EdgeKind::Real(e) if block.edges()[e] == (a, b) => Direction::Forward,
                EdgeKind::Real(_) => Direction::Backward,
                EdgeKind::Virtual(_) => Direction::Undirected,
            };
            edges.push(SkeletonEdge { a, b, kind, dir });
        }
        let vertices = if kind == NodeKind::S {
            edges.iter().map(|e| e.a).collect()
        } else {
            let mut v: Vec<usize> = edges.iter().flat_map(|e| [e.a, e.b]).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        nodes.push(SpqrNode { kind, skeleton: Skeleton { vertices, edges } });
    }
    SpqrTree { block: block.clone(), nodes, virtual_edges }
}

/// Reorders the edges of a cycle so that consecutive edges share a vertex,
/// with each edge listed as `(a, b)` along the walk. Real edges keep their
/// orientation in the `dir` field, so the endpoints may be swapped here.
fn cycle_order(raw: &[RawEdge]) -> Vec<RawEdge> {
    let mut used = vec![false; raw.len()];
    let mut out = Vec::with_capacity(raw.len());
    let start = raw[0].0;
    let mut cur = start;
    for _ in 0..raw.len() {
        let i = (0..raw.len())
            .find(|&i| !used[i] && (raw[i].0 == cur || raw[i].1 == cur))
            .expect("polygon is a cycle");
        used[i] = true;
        let (a, b, k) = raw[i];
        let next = if a == cur { b } else { a };
        out.push((cur, next, k));
        cur = next;
    }
    out
}

impl SpqrTree {
    /// The node on the other side of virtual edge `vid` from `node`.
    pub fn refn(&self, node: usize, vid: usize) -> usize {
        let [x, y] = self.virtual_edges[vid];
        if x.0 == node {
            y.0
        } else {
            x.0
        }
    }

    /// `(virtual id, neighbour)` for every tree edge at `node`.
    pub fn neighbors(&self, node: usize) -> Vec<(usize, usize)> {
        self.nodes[node]
            .skeleton
            .edges
            .iter()
            .filter_map(|e| match e.kind {
                EdgeKind::Virtual(id) => Some((id, self.refn(node, id))),
                EdgeKind::Real(_) => None,
            })
            .collect()
    }

    /// Real edges of the expansion graph of virtual edge `vid` as seen from
    /// `node`: every real edge in the subtree behind it.
    pub fn expansion(&self, node: usize, vid: usize) -> Vec<usize> {
        let start = self.refn(node, vid);
        let mut seen = BTreeSet::from([node, start]);
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            for e in &self.nodes[x].skeleton.edges {
                match e.kind {
                    EdgeKind::Real(r) => out.push(r),
                    EdgeKind::Virtual(id) => {
                        let y = self.refn(x, id);
                        if seen.insert(y) {
                            stack.push(y);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Tags every virtual edge with the direction of a directed path between its
/// poles in its expansion graph, or undirected when there is none.
pub fn orient_virtual_edges(t: &mut SpqrTree) {
    let g = t.block.clone();
    for node in 0..t.nodes.len() {
        for i in 0..t.nodes[node].skeleton.edges.len() {
            let e = &t.nodes[node].skeleton.edges[i];
            let EdgeKind::Virtual(id) = e.kind else { continue };
            let (a, b) = (e.a, e.b);
            let exp = t.expansion(node, id);
            let dir = if has_path(&g, &exp, a, b) {
                Direction::Forward
            } else if has_path(&g, &exp, b, a) {
                Direction::Backward
            } else {
                Direction::Undirected
            };
            t.nodes[node].skeleton.edges[i].dir = dir;
        }
    }
}

/// Directed reachability from `s` to `t` using only the listed edges.
pub(crate) fn has_path(g: &Dag, edges: &[usize], s: usize, t: usize) -> bool {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &e in edges {
        let (u, v) = g.edges()[e];
        out.entry(u).or_default().push(v);
    }
    let mut seen = BTreeSet::from([s]);
    let mut stack = vec![s];
    while let Some(x) = stack.pop() {
        if x == t {
            return true;
        }
        for &y in out.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    false
}

/// Why the tree rules out outer-1-planarity: an R-node that is not a K4 with
/// two non-adjacent real edges, or a P-node with more than four virtual or
/// more than one real edge.
pub fn structure_violation(t: &SpqrTree) -> Option<String> {
    for (i, node) in t.nodes.iter().enumerate() {
        let edges = &node.skeleton.edges;
        match node.kind {
            NodeKind::R => {
                if node.skeleton.vertices.len() != 4 || edges.len() != 6 {
                    return Some(format!(
                        "R-node {i} has {} vertices and {} edges, not a K4",
                        node.skeleton.vertices.len(),
                        edges.len()
                    ));
                }
                if real_crossing_pairs(edges).is_empty() {
                    return Some(format!("R-node {i} has no two non-adjacent real edges"));
                }
            }
            NodeKind::P => {
                let virt = edges.iter().filter(|e| e.is_virtual()).count();
                let real = edges.len() - virt;
                if virt > 4 || real > 1 {
                    return Some(format!("P-node {i} has {virt} virtual and {real} real edges"));
                }
            }
            NodeKind::S => {}
        }
    }
    None
}

pub fn check_o1p_structure(t: &SpqrTree) -> bool {
    structure_violation(t).is_none()
}

/// Pairs of non-adjacent real edges, by edge index, of a K4 skeleton.
pub(crate) fn real_crossing_pairs(edges: &[SkeletonEdge]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (e, f) = (&edges[i], &edges[j]);
            let disjoint = e.a != f.a && e.a != f.b && e.b != f.a && e.b != f.b;
            if disjoint && !e.is_virtual() && !f.is_virtual() {
                out.push((i, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(t: &SpqrTree) -> Vec<NodeKind> {
        let mut k: Vec<NodeKind> = t.nodes.iter().map(|n| n.kind).collect();
        k.sort();
        k
    }

    #[test]
    fn cycle_is_one_s_node() {
        let c5 = Dag::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let t = build_spqr(&c5).unwrap();
        assert_eq!(kinds(&t), vec![NodeKind::S]);
        assert_eq!(t.nodes[0].skeleton.vertices.len(), 5);
    }

    #[test]
    fn k4_is_one_r_node() {
        let k4 = Dag::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let t = build_spqr(&k4).unwrap();
        assert_eq!(kinds(&t), vec![NodeKind::R]);
        assert!(check_o1p_structure(&t));
    }

    #[test]
    fn two_paths_and_an_edge() {
        let g = Dag::from_edges(4, &[(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)]);
        let t = build_spqr(&g).unwrap();
        assert_eq!(kinds(&t), vec![NodeKind::S, NodeKind::S, NodeKind::P]);
        let p = t.nodes.iter().position(|n| n.kind == NodeKind::P).unwrap();
        let e = &t.nodes[p].skeleton.edges;
        assert_eq!(e.iter().filter(|e| e.is_virtual()).count(), 2);
        assert_eq!(e.len(), 3);
        for (_, y) in t.neighbors(p) {
            assert_eq!(t.nodes[y].kind, NodeKind::S);
        }
    }

    #[test]
    fn orientation() {
        // 0 -> 1 -> 3 and 2 <- 0, 2 <- 3 meet at poles 0 and 3
        let g = Dag::from_edges(4, &[(0, 1), (1, 3), (0, 2), (3, 2), (0, 3)]);
        let mut t = build_spqr(&g).unwrap();
        orient_virtual_edges(&mut t);
        let p = t.nodes.iter().position(|n| n.kind == NodeKind::P).unwrap();
        let mut dirs: Vec<bool> = t.nodes[p]
            .skeleton
            .edges
            .iter()
            .filter(|e| e.is_virtual())
            .map(|e| e.dir == Direction::Undirected)
            .collect();
        dirs.sort();
        assert_eq!(dirs, vec![false, true]);
        let directed = t.nodes[p].skeleton.edges.iter().find(|e| e.is_virtual() && e.dir != Direction::Undirected).unwrap();
        assert!(directed.leaves(0));
    }

    #[test]
    fn rejects_non_biconnected() {
        let g = Dag::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(build_spqr(&g), Err(SpqrError::NotBiconnected));
    }
}
