//! Upward 2-planar drawings of directed acyclic fans.
//!
//! The central vertex sits at `(n-1, 0)`. The path `v1..v_{n-1}` is cut into
//! maximal runs whose spokes all point towards or all away from the centre;
//! runs towards the centre go below everything drawn so far, the others above.
//! Edges joining consecutive runs leave to the left of the drawing.

use alloc::vec;
use alloc::vec::Vec;

use super::engine::{place_fan, Canvas, FanPlan};
use super::{check_output, LayoutError};
use crate::dag::Dag;
use crate::drawing::Drawing;
use crate::geom::{q, Point};

/// Ordered cut of the fan's path into maximal runs with uniformly
/// directed spokes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanPartition {
    pub center: usize,
    /// The path `v1..v_{n-1}` of non-central vertices.
    pub path: Vec<usize>,
    pub subpaths: Vec<Vec<usize>>,
    /// Per subpath: spokes point towards the centre.
    pub toward: Vec<bool>,
}

impl FanPartition {
    /// Index of the edge joining the first two subpaths, if there are two.
    pub fn first_boundary_edge(&self, f: &Dag) -> Option<usize> {
        if self.subpaths.len() < 2 {
            return None;
        }
        let a = *self.subpaths[0].last().unwrap();
        let b = self.subpaths[1][0];
        f.edge_index(a, b).or_else(|| f.edge_index(b, a))
    }

    /// True if the first subpath is a directed path (in either direction).
    pub fn first_is_directed(&self, f: &Dag) -> bool {
        let p = &self.subpaths[0];
        let fw = p.windows(2).all(|w| f.has_edge(w[0], w[1]));
        let bw = p.windows(2).all(|w| f.has_edge(w[1], w[0]));
        fw || bw
    }
}

/// The path of non-central vertices, starting at its smaller end.
pub fn fan_path(f: &Dag, c: usize) -> Result<Vec<usize>, LayoutError> {
    let n = f.vertex_count();
    if c >= n || n < 2 || f.edge_count() != 2 * n - 3 {
        return Err(LayoutError::NotAFan);
    }
    let adj = f.undirected_adjacency();
    if adj[c].len() != n - 1 {
        return Err(LayoutError::NotAFan);
    }
    let rest: Vec<Vec<usize>> =
        adj.iter().map(|a| a.iter().copied().filter(|&w| w != c).collect()).collect();
    let ends: Vec<usize> = (0..n).filter(|&v| v != c && rest[v].len() <= 1).collect();
    if n == 2 {
        return Ok(ends);
    }
    if ends.len() != 2 || (0..n).any(|v| v != c && rest[v].len() > 2) {
        return Err(LayoutError::NotAFan);
    }
    let mut path = vec![ends[0]];
    let mut prev = usize::MAX;
    let mut cur = ends[0];
    while let Some(&next) = rest[cur].iter().find(|&&w| w != prev) {
        if path.len() >= n - 1 {
            return Err(LayoutError::NotAFan);
        }
        path.push(next);
        prev = cur;
        cur = next;
    }
    if path.len() != n - 1 {
        return Err(LayoutError::NotAFan);
    }
    Ok(path)
}

pub fn fan_partition(f: &Dag, c: usize) -> Result<FanPartition, LayoutError> {
    let path = fan_path(f, c)?;
    if !f.is_acyclic() {
        return Err(LayoutError::CyclicInput);
    }
    Ok(partition_path(f, c, path))
}

pub(crate) fn partition_path(f: &Dag, c: usize, path: Vec<usize>) -> FanPartition {
    let mut subpaths: Vec<Vec<usize>> = Vec::new();
    let mut toward: Vec<bool> = Vec::new();
    for &v in &path {
        let t = f.has_edge(v, c);
        if toward.last() == Some(&t) {
            subpaths.last_mut().unwrap().push(v);
        } else {
            subpaths.push(vec![v]);
            toward.push(t);
        }
    }
    FanPartition { center: c, path, subpaths, toward }
}

/// Upward 2-planar drawing of a directed acyclic fan with centre `c`.
pub fn draw_fan(f: &Dag, c: usize) -> Result<Drawing, LayoutError> {
    let part = fan_partition(f, c)?;
    let mut last = None;
    for shrink in [1u32, 3, 7] {
        match check_output(fan_layout(f, &part, shrink), 2) {
            Ok(d) => return Ok(d),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

pub(crate) fn fan_layout(f: &Dag, part: &FanPartition, shrink: u32) -> Drawing {
    let m = part.path.len() as i64;
    let mut cv = Canvas::new(f);
    cv.place(part.center, q(m), q(0));
    let origin = Point::new(q(0), q(0));
    let plan = FanPlan {
        center: part.center,
        path: &part.path,
        xs: (1..=m).map(q).collect(),
        prefix: 0,
        straight_first_boundary: false,
        anchor_first: origin.clone(),
        anchor_rest: origin,
    };
    place_fan(&mut cv, &plan);
    cv.finish(shrink)
}
