//! Planarization: every crossing replaced by a dummy vertex of degree four.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::dag::{find_cycle, Dag, DagError};
use crate::drawing::{analyze_drawing, Drawing, DrawingError, NodeKind, NonSimple};
use crate::embedding::RotationSystem;

/// Rotation system of a planarization together with a dart whose left face
/// is the outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    pub rotation: RotationSystem,
    pub outer_dart: Option<(usize, usize)>,
}

impl PlanarEmbedding {
    pub fn outer_face(&self) -> Vec<usize> {
        match self.outer_dart {
            Some((u, v)) => self.rotation.face_of(u, v).vertices(),
            None => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarizedGraph {
    /// Original vertices `0..n` followed by dummies `n..`.
    pub dag_star: Dag,
    pub original: Dag,
    /// Edges of the original graph crossing at dummy `n + i`.
    pub crossing_origin: Vec<(usize, usize)>,
    /// Original edge carried by each edge of `dag_star`.
    pub fragment_origin: Vec<usize>,
    pub embedding: Option<PlanarEmbedding>,
}

impl PlanarizedGraph {
    /// Splits edges at the given crossings. `order[e]` lists the crossings
    /// (indices into `pairs`) along edge `e` from tail to head; edges not in
    /// `order` keep the order in which they appear in `pairs`.
    pub fn from_crossings(
        dag: &Dag,
        pairs: &[(usize, usize)],
        order: Option<&[Vec<usize>]>,
    ) -> Result<Self, DagError> {
        let n = dag.vertex_count();
        let m = dag.edge_count();
        let along: Vec<Vec<usize>> = match order {
            Some(o) => o.to_vec(),
            None => {
                let mut a = vec![Vec::new(); m];
                for (i, &(e, f)) in pairs.iter().enumerate() {
                    a[e].push(i);
                    a[f].push(i);
                }
                a
            }
        };
        let mut edges = Vec::new();
        let mut fragment_origin = Vec::new();
        for (e, &(u, v)) in dag.edges().iter().enumerate() {
            let mut prev = u;
            for &c in &along[e] {
                edges.push((prev, n + c));
                fragment_origin.push(e);
                prev = n + c;
            }
            edges.push((prev, v));
            fragment_origin.push(e);
        }
        let dag_star = Dag::new(n + pairs.len(), edges)?;
        Ok(PlanarizedGraph {
            dag_star,
            original: dag.clone(),
            crossing_origin: pairs.to_vec(),
            fragment_origin,
            embedding: None,
        })
    }

    pub fn with_embedding(mut self, embedding: PlanarEmbedding) -> Self {
        self.embedding = Some(embedding);
        self
    }

    pub fn original_vertex_count(&self) -> usize {
        self.original.vertex_count()
    }

    pub fn dummy_vertices(&self) -> core::ops::Range<usize> {
        let n = self.original.vertex_count();
        n..n + self.crossing_origin.len()
    }

    pub fn is_dummy(&self, v: usize) -> bool {
        v >= self.original.vertex_count()
    }

    pub fn is_acyclic(&self) -> bool {
        self.directed_cycle().is_none()
    }

    /// A directed cycle of `dag_star`, if any, as a closed vertex walk.
    pub fn directed_cycle(&self) -> Option<Vec<usize>> {
        find_cycle(self.dag_star.vertex_count(), self.dag_star.edges())
    }

    /// Rebuilds the original edge list by following fragments through
    /// dummies; `None` if the fragments do not chain up.
    pub fn contract(&self) -> Option<Dag> {
        let n = self.original.vertex_count();
        let m = self.original.edge_count();
        let mut out_frag: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, &(u, _)) in self.dag_star.edges().iter().enumerate() {
            if out_frag.insert((u, self.fragment_origin[i]), i).is_some() {
                return None;
            }
        }
        let mut edges = Vec::with_capacity(m);
        for e in 0..m {
            let start = (0..n).find(|&u| out_frag.contains_key(&(u, e)))?;
            let mut cur = start;
            let mut steps = 0;
            while let Some(&i) = out_frag.get(&(cur, e)) {
                cur = self.dag_star.edges()[i].1;
                steps += 1;
                if cur < n || steps > self.crossing_origin.len() + 1 {
                    break;
                }
            }
            if cur >= n {
                return None;
            }
            edges.push((start, cur));
        }
        Dag::new(n, edges).ok()
    }

    /// Every dummy has in- and out-degree two, its in-fragments come from the
    /// two crossing edges, and (with an embedding) its rotation alternates
    /// between the fragments of those edges.
    pub fn dummies_are_well_formed(&self) -> bool {
        let edges = self.dag_star.edges();
        let mut origin: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            origin.insert((u, v), self.fragment_origin[i]);
            origin.insert((v, u), self.fragment_origin[i]);
        }
        let outs = self.dag_star.out_adjacency();
        let ins = self.dag_star.in_adjacency();
        for (i, &(a, b)) in self.crossing_origin.iter().enumerate() {
            let x = self.original.vertex_count() + i;
            if outs[x].len() != 2 || ins[x].len() != 2 {
                return false;
            }
            let mut incoming: Vec<usize> = ins[x].iter().map(|&w| origin[&(w, x)]).collect();
            incoming.sort_unstable();
            if incoming != [a.min(b), a.max(b)] {
                return false;
            }
            if let Some(emb) = &self.embedding {
                let r = &emb.rotation.rotation[x];
                if r.len() != 4 {
                    return false;
                }
                let o: Vec<usize> = r.iter().map(|&w| origin[&(x, w)]).collect();
                if o[0] != o[2] || o[1] != o[3] || o[0] == o[1] {
                    return false;
                }
            }
        }
        true
    }
}

/// Planarization of a simple drawing with the rotation read off the geometry.
pub fn planarize(d: &Drawing) -> Result<PlanarizedGraph, DrawingError> {
    let (report, arr) = analyze_drawing(d)?;
    if !report.is_simple {
        let edges = d.dag().edges();
        let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for c in &report.crossings {
            *count.entry((c.edge_a, c.edge_b)).or_default() += 1;
        }
        let bad = count
            .into_iter()
            .find(|&((a, b), k)| {
                let (e, f) = (edges[a], edges[b]);
                k + usize::from(e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1) > 1
            })
            .map(|(p, _)| p)
            .expect("non-simple report without offending pair");
        return Err(NonSimple::MultipleContacts(bad.0, bad.1).into());
    }
    let n = d.dag().vertex_count();
    let pairs: Vec<(usize, usize)> = report.crossings.iter().map(|c| (c.edge_a, c.edge_b)).collect();
    let id = |node: usize| match arr.kind[node] {
        NodeKind::Vertex(v) => Some(v),
        NodeKind::Crossing(c) => Some(n + c),
        NodeKind::Bend => None,
    };
    let order: Vec<Vec<usize>> = arr
        .edge_nodes
        .iter()
        .map(|nodes| {
            nodes
                .iter()
                .filter_map(|&x| match arr.kind[x] {
                    NodeKind::Crossing(c) => Some(c),
                    _ => None,
                })
                .collect()
        })
        .collect();
    let p = PlanarizedGraph::from_crossings(d.dag(), &pairs, Some(&order))
        .expect("simple drawing yields a simple planarization");

    // next non-bend node reached from `a` by leaving towards `b`
    let follow = |a: usize, b: usize| -> usize {
        let (mut prev, mut cur) = (a, b);
        while id(cur).is_none() {
            let r = &arr.rotation.rotation[cur];
            let next = if r[0] == prev { r[1] } else { r[0] };
            prev = cur;
            cur = next;
        }
        id(cur).unwrap()
    };
    let total = p.dag_star.vertex_count();
    let mut rotation = vec![Vec::new(); total];
    for node in 0..arr.points.len() {
        if let Some(v) = id(node) {
            rotation[v] = arr.rotation.rotation[node].iter().map(|&b| follow(node, b)).collect();
        }
    }
    let outer_dart = arr
        .components()
        .into_iter()
        .filter(|c| !c.enclosed)
        .find_map(|c| c.dart)
        .map(|(u, v)| {
            let face = arr.rotation.face_of(u, v);
            let &(a, b) = face.darts.iter().find(|&&(a, _)| id(a).is_some()).expect("face with a vertex");
            (id(a).unwrap(), follow(a, b))
        });
    Ok(p.with_embedding(PlanarEmbedding { rotation: RotationSystem::new(rotation), outer_dart }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn pts(c: &[(i64, i64)]) -> Vec<Point> {
        c.iter().map(|&(x, y)| Point::int(x, y)).collect()
    }

    #[test]
    fn crossing_free_is_identity() {
        let g = Dag::from_edges(3, &[(0, 1), (1, 2)]);
        let d = Drawing::straight_line(g.clone(), pts(&[(0, 0), (1, 1), (0, 2)])).unwrap();
        let p = planarize(&d).unwrap();
        assert_eq!(p.dag_star, g);
        assert!(p.is_acyclic());
        assert_eq!(p.contract().unwrap(), g);
    }

    #[test]
    fn single_crossing_splits_both_edges() {
        let g = Dag::from_edges(4, &[(0, 1), (2, 3)]);
        let d = Drawing::straight_line(g.clone(), pts(&[(0, 0), (2, 2), (2, 0), (0, 2)])).unwrap();
        let p = planarize(&d).unwrap();
        let mut e = p.dag_star.edges().to_vec();
        e.sort();
        assert_eq!(e, vec![(0, 4), (2, 4), (4, 1), (4, 3)]);
        assert!(p.dummies_are_well_formed());
        assert_eq!(p.contract().unwrap(), g);
        let emb = p.embedding.as_ref().unwrap();
        assert_eq!(emb.rotation.rotation[4], vec![1, 3, 0, 2]);
        let mut outer = emb.outer_face();
        outer.sort();
        assert_eq!(outer, vec![0, 1, 2, 3, 4, 4, 4, 4]);
    }

    #[test]
    fn doubly_crossed_edge_becomes_three_path() {
        // edge 0 vertical, crossed by edges 1 and 2
        let g = Dag::from_edges(6, &[(0, 1), (2, 3), (4, 5)]);
        let d = Drawing::straight_line(
            g.clone(),
            pts(&[(0, 0), (0, 4), (-1, 0), (1, 2), (1, 3), (-1, 4)]),
        )
        .unwrap();
        let p = planarize(&d).unwrap();
        assert_eq!(p.crossing_origin.len(), 2);
        let path = p.dag_star.edges()[..3].to_vec();
        assert_eq!(path, vec![(0, 6), (6, 7), (7, 1)]);
        assert!(p.dummies_are_well_formed());
        assert_eq!(p.contract().unwrap(), g);
    }

    #[test]
    fn cyclic_planarization_has_witness() {
        // 0->1 and 2->3 cross at x; 3->0 and 1->2 close the cycle x->1->2->x
        let g = Dag::from_edges(4, &[(0, 1), (2, 3), (1, 2)]);
        let p = PlanarizedGraph::from_crossings(&g, &[(0, 1)], None).unwrap();
        let c = p.directed_cycle().unwrap();
        assert_eq!(c.first(), c.last());
        assert!(!p.is_acyclic());
    }
}
