//! Planarity testing with embedding by incremental path addition
//! (Demoucron, Malgrange and Pertuiset), run per biconnected component.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::dag::{block_edge_partition, Dag};
use crate::embedding::RotationSystem;

/// A planar rotation system of the undirected simple graph, or `None` if
/// the graph is not planar. Duplicate and reversed edges are merged.
pub fn planar_embedding(n: usize, edges: &[(usize, usize)]) -> Option<RotationSystem> {
    let set: BTreeSet<(usize, usize)> =
        edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).filter(|&(u, v)| u != v).collect();
    let list: Vec<(usize, usize)> = set.into_iter().collect();
    let m = list.len();
    if m > 3 * n.max(3) - 6 {
        return None;
    }
    let g = Dag::new(n, list.clone()).expect("normalized edge list");
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for comp in block_edge_partition(&g) {
        let be: Vec<(usize, usize)> = comp.iter().map(|&e| list[e]).collect();
        let rot = embed_block(&be)?;
        for (v, r) in rot {
            rotation[v].extend(r);
        }
    }
    Some(RotationSystem::new(rotation))
}

pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    planar_embedding(n, edges).is_some()
}

/// Embeds a biconnected graph given by its edges; returns the rotation of
/// each of its vertices.
fn embed_block(edges: &[(usize, usize)]) -> Option<BTreeMap<usize, Vec<usize>>> {
    if edges.len() == 1 {
        let (u, v) = edges[0];
        return Some([(u, vec![v]), (v, vec![u])].into_iter().collect());
    }
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let idx: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    if edges.len() > 3 * n - 6 {
        return None;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[idx[&u]].push(idx[&v]);
        adj[idx[&v]].push(idx[&u]);
    }
    let local = Dmp::new(adj).run()?;
    Some(
        local
            .into_iter()
            .enumerate()
            .map(|(v, r)| (verts[v], r.into_iter().map(|w| verts[w]).collect()))
            .collect(),
    )
}

struct Fragment {
    attachments: Vec<usize>,
    /// Inner vertices (empty for a single chord).
    inner: Vec<usize>,
}

struct Dmp {
    adj: Vec<Vec<usize>>,
    in_h: Vec<bool>,
    embedded: BTreeSet<(usize, usize)>,
    /// Faces as cyclic vertex sequences, each dart having its face on the left.
    faces: Vec<Vec<usize>>,
}

impl Dmp {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        Dmp { adj, in_h: vec![false; n], embedded: BTreeSet::new(), faces: Vec::new() }
    }

    fn key(u: usize, v: usize) -> (usize, usize) {
        (u.min(v), u.max(v))
    }

    fn initial_cycle(&self) -> Vec<usize> {
        // DFS from 0 until a back edge closes a cycle
        let n = self.adj.len();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![usize::MAX; n];
        depth[0] = 0;
        let mut stack = vec![(0usize, 0usize)];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i == self.adj[v].len() {
                stack.pop();
                continue;
            }
            let w = self.adj[v][*i];
            *i += 1;
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push((w, 0));
            } else if w != parent[v] && depth[w] < depth[v] {
                let mut cyc = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cyc.push(x);
                }
                return cyc;
            }
        }
        unreachable!("biconnected block without a cycle")
    }

    fn fragments(&self) -> Vec<Fragment> {
        let n = self.adj.len();
        let mut out = Vec::new();
        for u in 0..n {
            if !self.in_h[u] {
                continue;
            }
            for &v in &self.adj[u] {
                if u < v && self.in_h[v] && !self.embedded.contains(&(u, v)) {
                    out.push(Fragment { attachments: vec![u, v], inner: Vec::new() });
                }
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if self.in_h[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut inner = vec![s];
            let mut att = BTreeSet::new();
            let mut i = 0;
            while i < inner.len() {
                let v = inner[i];
                i += 1;
                for &w in &self.adj[v] {
                    if self.in_h[w] {
                        att.insert(w);
                    } else if !seen[w] {
                        seen[w] = true;
                        inner.push(w);
                    }
                }
            }
            out.push(Fragment { attachments: att.into_iter().collect(), inner });
        }
        out
    }

    /// Path through the fragment joining two distinct attachments.
    fn path(&self, f: &Fragment) -> Vec<usize> {
        if f.inner.is_empty() {
            return f.attachments.clone();
        }
        let a = f.attachments[0];
        let inner: BTreeSet<usize> = f.inner.iter().copied().collect();
        let start = *self.adj[a].iter().find(|w| inner.contains(w)).expect("attachment edge");
        let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
        prev.insert(start, a);
        let mut queue = vec![start];
        let mut i = 0;
        while i < queue.len() {
            let v = queue[i];
            i += 1;
            if let Some(&b) = self.adj[v].iter().find(|&&w| self.in_h[w] && w != a) {
                let mut p = vec![b, v];
                let mut x = v;
                while x != start {
                    x = prev[&x];
                    p.push(x);
                }
                p.push(a);
                p.reverse();
                return p;
            }
            for &w in &self.adj[v] {
                if inner.contains(&w) && !prev.contains_key(&w) {
                    prev.insert(w, v);
                    queue.push(w);
                }
            }
        }
        unreachable!("fragment with a single attachment in a biconnected block")
    }

    fn add_path(&mut self, face: usize, p: &[usize]) {
        let f = core::mem::take(&mut self.faces[face]);
        let (a, b) = (p[0], p[p.len() - 1]);
        let ia = f.iter().position(|&x| x == a).unwrap();
        let ib = f.iter().position(|&x| x == b).unwrap();
        let walk = |from: usize, to: usize| -> Vec<usize> {
            let mut out = Vec::new();
            let mut i = from;
            loop {
                out.push(f[i]);
                if i == to {
                    break;
                }
                i = (i + 1) % f.len();
            }
            out
        };
        let inner = &p[1..p.len() - 1];
        let mut f1 = walk(ia, ib);
        f1.extend(inner.iter().rev());
        let mut f2 = walk(ib, ia);
        f2.extend(inner.iter());
        self.faces[face] = f1;
        self.faces.push(f2);
        for w in p.windows(2) {
            self.embedded.insert(Self::key(w[0], w[1]));
        }
        for &v in p {
            self.in_h[v] = true;
        }
    }

    fn run(mut self) -> Option<Vec<Vec<usize>>> {
        let n = self.adj.len();
        let cyc = self.initial_cycle();
        for i in 0..cyc.len() {
            self.embedded.insert(Self::key(cyc[i], cyc[(i + 1) % cyc.len()]));
            self.in_h[cyc[i]] = true;
        }
        let mut rev = cyc.clone();
        rev.reverse();
        self.faces = vec![cyc, rev];
        loop {
            let frags = self.fragments();
            if frags.is_empty() {
                break;
            }
            let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); n];
            for (fi, f) in self.faces.iter().enumerate() {
                for &v in f {
                    faces_of[v].push(fi);
                }
            }
            let mut choice: Option<(usize, usize)> = None;
            for (i, fr) in frags.iter().enumerate() {
                let seed = fr.attachments.iter().min_by_key(|&&a| faces_of[a].len()).unwrap();
                let ok: Vec<usize> = faces_of[*seed]
                    .iter()
                    .copied()
                    .filter(|&fi| fr.attachments.iter().all(|a| faces_of[*a].contains(&fi)))
                    .collect();
                match ok.len() {
                    0 => return None,
                    1 => {
                        choice = Some((i, ok[0]));
                        break;
                    }
                    _ => {
                        if choice.is_none() {
                            choice = Some((i, ok[0]));
                        }
                    }
                }
            }
            let (i, face) = choice.unwrap();
            let p = self.path(&frags[i]);
            self.add_path(face, &p);
        }
        // dart (u, v) followed by (v, w) on a face: w precedes u around v
        let mut succ: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
        for f in &self.faces {
            let k = f.len();
            for i in 0..k {
                let (u, v, w) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
                succ[v].insert(w, u);
            }
        }
        let mut rot = vec![Vec::new(); n];
        for v in 0..n {
            let first = self.adj[v][0];
            let mut x = first;
            loop {
                rot[v].push(x);
                x = succ[v][&x];
                if x == first {
                    break;
                }
            }
        }
        Some(rot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        e
    }

    #[test]
    fn small_complete_graphs() {
        let k4 = planar_embedding(4, &complete(4)).unwrap();
        assert!(k4.is_planar());
        assert!(!is_planar(5, &complete(5)));
    }

    #[test]
    fn k33_is_not_planar() {
        let mut e = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                e.push((u, v));
            }
        }
        assert!(!is_planar(6, &e));
        e.pop();
        let r = planar_embedding(6, &e).unwrap();
        assert!(r.is_planar());
    }

    #[test]
    fn trees_and_cut_vertices() {
        let e = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)];
        let r = planar_embedding(7, &e).unwrap();
        assert!(r.is_planar());
        assert_eq!(r.rotation[2].len(), 4);
        assert!(r.rotation[6].is_empty());
    }

    #[test]
    fn petersen_is_not_planar() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        assert!(!is_planar(10, &e));
    }
}
