//! Outerplanar recognition, maximal augmentation and the backbone/fan
//! decomposition of outerpaths.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::dag::{linear_extension, Dag};
use crate::embedding::RotationSystem;
use crate::planarity::planar_embedding;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OuterpathError {
    #[error("underlying graph is not an outerpath")]
    NotAnOuterpath,
    #[error("input contains a directed cycle")]
    CyclicInput,
}

/// Cyclic order of the vertices along the outer face of an outerplanar
/// embedding of the underlying graph, or `None` if it is not outerplanar.
pub fn outer_order(g: &Dag) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    edges.extend((0..n).map(|v| (v, n)));
    let rot = planar_embedding(n + 1, &edges)?;
    Some(rot.rotation[n].clone())
}

pub fn is_outerplanar(g: &Dag) -> bool {
    outer_order(g).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterpathStructure {
    /// Vertices of degree at least four in the maximal outerpath, in path order.
    pub backbone: Vec<usize>,
    /// Backbone vertex each non-backbone vertex is assigned to.
    pub fan_assignment: Vec<Option<usize>>,
    /// Directed edges added to make the outerpath maximal.
    pub added_edges: Vec<(usize, usize)>,
    /// Counterclockwise Hamiltonian cycle of the maximal outerpath.
    pub hamiltonian_outer_cycle: Vec<usize>,
    /// Input plus added edges.
    pub augmented: Dag,
    /// Inner faces of the maximal outerpath along its dual path.
    pub triangles: Vec<[usize; 3]>,
}

impl OuterpathStructure {
    /// Path of the vertices assigned to backbone vertex `c`, ordered along
    /// the outer cycle.
    pub fn fan_path(&self, c: usize) -> Vec<usize> {
        let cyc = &self.hamiltonian_outer_cycle;
        let k = cyc.len();
        let mine = |v: usize| self.fan_assignment[v] == Some(c);
        // start right after a vertex not in the fan
        let start = (0..k).find(|&i| !mine(cyc[i]) && mine(cyc[(i + 1) % k]));
        match start {
            None => cyc.iter().copied().filter(|&v| mine(v)).collect(),
            Some(s) => (1..=k).map(|d| cyc[(s + d) % k]).take_while(|&v| mine(v)).collect(),
        }
    }
}

fn rotation_for_cycle(n: usize, cyc: &[usize], edges: &[(usize, usize)]) -> RotationSystem {
    let mut pos = vec![0usize; n];
    for (i, &v) in cyc.iter().enumerate() {
        pos[v] = i;
    }
    let mut rot = vec![Vec::new(); n];
    for &(u, v) in edges {
        rot[u].push(v);
        rot[v].push(u);
    }
    for (v, r) in rot.iter_mut().enumerate() {
        r.sort_by_key(|&w| (pos[w] + n - pos[v]) % n);
    }
    RotationSystem::new(rot)
}

/// Orders triangles along their dual path (adjacent when sharing two
/// vertices), starting from the end whose sorted vertex list is smaller.
fn dual_path_order(faces: &[Vec<usize>]) -> Option<Vec<[usize; 3]>> {
    let tris: Vec<[usize; 3]> = faces.iter().map(|f| [f[0], f[1], f[2]]).collect();
    let k = tris.len();
    let shared = |a: &[usize; 3], b: &[usize; 3]| a.iter().filter(|v| b.contains(v)).count() == 2;
    let nb: Vec<Vec<usize>> =
        (0..k).map(|i| (0..k).filter(|&j| j != i && shared(&tris[i], &tris[j])).collect()).collect();
    if nb.iter().any(|x| x.len() > 2) {
        return None;
    }
    let key = |i: usize| {
        let mut t = tris[i];
        t.sort_unstable();
        t
    };
    let start = (0..k).filter(|&i| nb[i].len() <= 1).min_by_key(|&i| key(i))?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = nb[cur].iter().find(|&&j| j != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    if order.len() != k {
        return None;
    }
    Some(order.into_iter().map(|i| tris[i]).collect())
}

pub fn outerpath_structure(g: &Dag) -> Result<OuterpathStructure, OuterpathError> {
    let n = g.vertex_count();
    if n < 3 || !g.is_connected() {
        return Err(OuterpathError::NotAnOuterpath);
    }
    let ext = linear_extension(g).map_err(|_| OuterpathError::CyclicInput)?;
    let cyc = outer_order(g).ok_or(OuterpathError::NotAnOuterpath)?;
    let mut und: BTreeSet<(usize, usize)> =
        g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut added: Vec<(usize, usize)> = Vec::new();
    let mut add = |u: usize, v: usize, und: &mut BTreeSet<(usize, usize)>| {
        if und.insert((u.min(v), u.max(v))) {
            added.push(if ext.rank[u] < ext.rank[v] { (u, v) } else { (v, u) });
        }
    };
    for i in 0..n {
        add(cyc[i], cyc[(i + 1) % n], &mut und);
    }
    let cycle_edge = |u: usize, v: usize| {
        let pu = cyc.iter().position(|&x| x == u).unwrap();
        cyc[(pu + 1) % n] == v || cyc[(pu + n - 1) % n] == v
    };

    // inner faces of the polygon with its chords
    let list: Vec<(usize, usize)> = und.iter().copied().collect();
    let rot = rotation_for_cycle(n, &cyc, &list);
    let outer_dart = (cyc[1], cyc[0]);
    let faces: Vec<Vec<usize>> = rot
        .faces()
        .into_iter()
        .filter(|f| !f.darts.contains(&outer_dart))
        .map(|f| f.vertices())
        .collect();
    let chord = |u: usize, v: usize| !cycle_edge(u, v);
    for f in &faces {
        let k = f.len();
        let chords: Vec<usize> = (0..k).filter(|&i| chord(f[i], f[(i + 1) % k])).collect();
        if chords.len() > 2 {
            return Err(OuterpathError::NotAnOuterpath);
        }
        if k == 3 {
            continue;
        }
        let a = chords.first().copied().unwrap_or(0);
        let b = chords.get(1).copied().unwrap_or((a + k / 2) % k);
        // strip between the chain a+1..=b and the chain a, a-1, .., b+1
        let side_a: Vec<usize> = (1..).map(|d| (a + d) % k).take_while(|&i| i != (b + 1) % k).map(|i| f[i]).collect();
        let side_b: Vec<usize> = (0..).map(|d| (a + k - d) % k).take_while(|&i| i != b).map(|i| f[i]).collect();
        let (mut i, mut j) = (0usize, 0usize);
        let mut turn_a = true;
        while i + 1 < side_a.len() || j + 1 < side_b.len() {
            let adv_a = j + 1 == side_b.len() || (turn_a && i + 1 < side_a.len());
            if adv_a {
                i += 1;
            } else {
                j += 1;
            }
            if i + 1 < side_a.len() || j + 1 < side_b.len() {
                add(side_a[i], side_b[j], &mut und);
            }
            turn_a = !turn_a;
        }
    }

    let mut all: Vec<(usize, usize)> = g.edges().to_vec();
    all.extend(added.iter().copied());
    let augmented = Dag::new(n, all).expect("augmentation keeps the graph simple");
    let list: Vec<(usize, usize)> = und.iter().copied().collect();
    let rot = rotation_for_cycle(n, &cyc, &list);
    let tri_faces: Vec<Vec<usize>> = rot
        .faces()
        .into_iter()
        .filter(|f| !f.darts.contains(&outer_dart))
        .map(|f| f.vertices())
        .collect();
    for f in &tri_faces {
        let chords = (0..3).filter(|&i| chord(f[i], f[(i + 1) % 3])).count();
        if f.len() != 3 || chords > 2 {
            return Err(OuterpathError::NotAnOuterpath);
        }
    }

    let triangles = dual_path_order(&tri_faces).ok_or(OuterpathError::NotAnOuterpath)?;
    let deg = augmented.degrees();
    let adj = augmented.undirected_adjacency();
    let mut backbone: Vec<usize> = Vec::new();
    for t in &triangles {
        for &v in t {
            if deg[v] >= 4 && !backbone.contains(&v) {
                backbone.push(v);
            }
        }
    }
    if backbone.is_empty() {
        let best = (0..n).max_by_key(|&v| (deg[v], core::cmp::Reverse(v))).unwrap();
        backbone.push(best);
    }
    let is_bb = |v: usize| backbone.contains(&v);
    if backbone.windows(2).any(|w| !adj[w[0]].contains(&w[1])) {
        return Err(OuterpathError::NotAnOuterpath);
    }

    let mut fan_assignment = vec![None; n];
    for v in 0..n {
        if is_bb(v) {
            continue;
        }
        let inner = adj[v].iter().copied().find(|&w| !cycle_edge(v, w) && is_bb(w));
        let target = inner.or_else(|| adj[v].iter().copied().find(|&w| is_bb(w)));
        fan_assignment[v] = Some(target.ok_or(OuterpathError::NotAnOuterpath)?);
    }
    let s = OuterpathStructure {
        backbone,
        fan_assignment,
        added_edges: added,
        hamiltonian_outer_cycle: cyc,
        augmented,
        triangles,
    };
    for &c in &s.backbone {
        let p = s.fan_path(c);
        let count = s.fan_assignment.iter().filter(|&&a| a == Some(c)).count();
        if p.len() != count || p.iter().any(|&v| !adj[c].contains(&v)) {
            return Err(OuterpathError::NotAnOuterpath);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_fan_has_one_backbone_vertex() {
        // centre 0, path 1..=5
        let mut e = vec![];
        for i in 1..=5 {
            e.push((0, i));
        }
        for i in 1..5 {
            e.push((i, i + 1));
        }
        let g = Dag::from_edges(6, &e);
        let s = outerpath_structure(&g).unwrap();
        assert_eq!(s.backbone, vec![0]);
        assert!(s.added_edges.is_empty());
        assert!((1..=5).all(|v| s.fan_assignment[v] == Some(0)));
        assert_eq!(s.fan_path(0).len(), 5);
    }

    #[test]
    fn k4_is_not_an_outerpath() {
        let g = Dag::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(outerpath_structure(&g), Err(OuterpathError::NotAnOuterpath));
    }

    #[test]
    fn hexagon_is_triangulated_acyclically() {
        let g = Dag::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
        let s = outerpath_structure(&g).unwrap();
        assert_eq!(s.added_edges.len(), 3);
        assert!(s.augmented.is_acyclic());
        assert_eq!(s.augmented.edge_count(), 2 * 6 - 3);
    }

    #[test]
    fn tree_is_augmented() {
        let g = Dag::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]);
        let s = outerpath_structure(&g).unwrap();
        assert_eq!(s.augmented.edge_count(), 7);
    }
}
