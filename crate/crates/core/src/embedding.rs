//! Combinatorial embeddings given as rotation systems.
//!
//! `rotation[v]` lists the neighbors of `v` in counterclockwise order. A dart
//! `(u, v)` bounds the face on its left; the successor of `(u, v)` along that
//! face is `(v, w)` where `w` precedes `u` in the rotation of `v`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    pub rotation: Vec<Vec<usize>>,
}

/// A face as the cyclic sequence of darts bounding it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<(usize, usize)>,
}

impl Face {
    pub fn vertices(&self) -> Vec<usize> {
        self.darts.iter().map(|&(u, _)| u).collect()
    }
}

impl RotationSystem {
    pub fn new(rotation: Vec<Vec<usize>>) -> Self {
        RotationSystem { rotation }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn position(&self, v: usize, w: usize) -> usize {
        self.rotation[v].iter().position(|&x| x == w).expect("dart not in rotation")
    }

    /// Next dart along the face to the left of `(u, v)`.
    pub fn next_dart(&self, u: usize, v: usize) -> (usize, usize) {
        let rot = &self.rotation[v];
        let i = self.position(v, u);
        let w = rot[(i + rot.len() - 1) % rot.len()];
        (v, w)
    }

    pub fn face_of(&self, u: usize, v: usize) -> Face {
        let mut darts = vec![(u, v)];
        let mut d = self.next_dart(u, v);
        while d != (u, v) {
            darts.push(d);
            d = self.next_dart(d.0, d.1);
        }
        Face { darts }
    }

    /// All faces, in order of first discovery scanning darts by vertex.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen: BTreeMap<(usize, usize), ()> = BTreeMap::new();
        let mut faces = Vec::new();
        for u in 0..self.rotation.len() {
            for &v in &self.rotation[u] {
                if seen.contains_key(&(u, v)) {
                    continue;
                }
                let f = self.face_of(u, v);
                for &d in &f.darts {
                    seen.insert(d, ());
                }
                faces.push(f);
            }
        }
        faces
    }

    /// Euler's formula per connected component: the rotation system is planar
    /// iff `V - E + F = 2C`, an isolated vertex contributing one face.
    pub fn is_planar(&self) -> bool {
        let n = self.vertex_count();
        let e = self.edge_count();
        let f = self.faces().len();
        let c = self.components();
        let isolated = (0..n).filter(|&v| self.rotation[v].is_empty()).count();
        (n as isize) - (e as isize) + (f as isize) + (isolated as isize) == 2 * c as isize
    }

    pub fn components(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut c = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            c += 1;
            seen[s] = true;
            let mut st = vec![s];
            while let Some(v) = st.pop() {
                for &w in &self.rotation[v] {
                    if !seen[w] {
                        seen[w] = true;
                        st.push(w);
                    }
                }
            }
        }
        c
    }

    /// Mirror image: every rotation reversed.
    pub fn mirrored(&self) -> Self {
        RotationSystem {
            rotation: self
                .rotation
                .iter()
                .map(|r| {
                    let mut r = r.clone();
                    r.reverse();
                    r
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_two_faces() {
        let r = RotationSystem::new(vec![vec![1, 2], vec![2, 0], vec![0, 1]]);
        assert_eq!(r.faces().len(), 2);
        assert!(r.is_planar());
    }

    #[test]
    fn k4_rotations() {
        // planar embedding of K4 with 3 in the middle of triangle 0,1,2 (ccw)
        let planar = RotationSystem::new(vec![
            vec![1, 3, 2],
            vec![2, 3, 0],
            vec![0, 3, 1],
            vec![0, 1, 2],
        ]);
        assert!(planar.is_planar());
        assert_eq!(planar.faces().len(), 4);
        let bad = RotationSystem::new(vec![
            vec![1, 2, 3],
            vec![2, 3, 0],
            vec![0, 3, 1],
            vec![0, 1, 2],
        ]);
        assert!(!bad.is_planar());
    }
}
