//! Straight-line drawings from a bandwidth labeling: x from the label,
//! y from a linear extension.

use alloc::vec;
use alloc::vec::Vec;

use super::{check_output, LayoutError};
use crate::dag::{linear_extension, Dag};
use crate::drawing::Drawing;
use crate::geom::{q, Point};

/// Distinct labels `1..=n` for the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandwidthLabeling {
    pub label: Vec<usize>,
    /// Largest label difference over the edges (0 without edges).
    pub width: usize,
}

impl BandwidthLabeling {
    /// Labeling of `g` with the given labels; fails unless they are a
    /// bijection onto `1..=n`.
    pub fn new(g: &Dag, label: Vec<usize>) -> Result<Self, LayoutError> {
        let n = g.vertex_count();
        let mut seen = vec![false; n + 1];
        if label.len() != n {
            return Err(LayoutError::InvalidLabeling);
        }
        for &l in &label {
            if l == 0 || l > n || seen[l] {
                return Err(LayoutError::InvalidLabeling);
            }
            seen[l] = true;
        }
        let width = width_of(g, &label);
        Ok(BandwidthLabeling { label, width })
    }

    pub fn is_valid_for(&self, g: &Dag) -> bool {
        BandwidthLabeling::new(g, self.label.clone()).is_ok_and(|l| l.width == self.width)
    }
}

fn width_of(g: &Dag, label: &[usize]) -> usize {
    g.edges().iter().map(|&(u, v)| label[u].abs_diff(label[v])).max().unwrap_or(0)
}

/// Labeling of minimum width by branch and bound, for graphs with at most
/// `limit` vertices.
pub fn exact_bandwidth(g: &Dag, limit: usize) -> Result<BandwidthLabeling, LayoutError> {
    let n = g.vertex_count();
    if n > limit {
        return Err(LayoutError::TooLarge { n, limit });
    }
    if g.edge_count() == 0 {
        return BandwidthLabeling::new(g, (1..=n).collect());
    }
    let adj = g.undirected_adjacency();
    let max_deg = adj.iter().map(Vec::len).max().unwrap_or(0);
    let mut k = max_deg.div_ceil(2).max(1);
    loop {
        let mut label = vec![0usize; n];
        if place(&adj, k, 1, &mut label) {
            return BandwidthLabeling::new(g, label);
        }
        k += 1;
    }
}

/// Assigns label `pos` and onwards; `label[v] == 0` marks unlabeled vertices.
fn place(adj: &[Vec<usize>], k: usize, pos: usize, label: &mut [usize]) -> bool {
    let n = label.len();
    if pos > n {
        return true;
    }
    // an unlabeled vertex whose labeled neighbour is `k` behind must go now
    let mut forced = None;
    for v in (0..n).filter(|&v| label[v] == 0) {
        let oldest = adj[v].iter().filter(|&&w| label[w] != 0).map(|&w| label[w]).min();
        if let Some(o) = oldest {
            if o + k < pos {
                return false;
            }
            if o + k == pos {
                if forced.is_some() {
                    return false;
                }
                forced = Some(v);
            }
        }
    }
    let candidates: Vec<usize> = match forced {
        Some(v) => vec![v],
        None => (0..n).filter(|&v| label[v] == 0).collect(),
    };
    for v in candidates {
        label[v] = pos;
        if place(adj, k, pos + 1, label) {
            return true;
        }
        label[v] = 0;
    }
    false
}

/// Crossing bound guaranteed for a labeling of the given width.
pub fn bandwidth_crossing_bound(g: &Dag, width: usize) -> usize {
    let max_deg = g.degrees().into_iter().max().unwrap_or(0);
    max_deg * width.saturating_sub(2)
}

/// Vertex `v` at `(label(v) + v/(2n^2), rank(v))` with straight edges. If
/// that puts a vertex on an edge or exceeds the bound, the offsets
/// `±v^j/(2n^(j+1))` for j = 1, 2, 3 are tried in turn; if the bound still fails, further linear extensions
/// (at most [`EXTENSION_TRIES`]) are tried the same way.
pub fn draw_bandwidth(g: &Dag, lab: &BandwidthLabeling) -> Result<Drawing, LayoutError> {
    if !lab.is_valid_for(g) {
        return Err(LayoutError::InvalidLabeling);
    }
    let ext = linear_extension(g).map_err(|_| LayoutError::CyclicInput)?;
    let bound = bandwidth_crossing_bound(g, lab.width);
    let mut last = None;
    let mut ranks = vec![ext.rank];
    let mut tried = 0;
    while let Some(rank) = ranks.pop() {
        for j in [1i32, 2, 3, -1, -2, -3] {
            match check_output(layout(g, lab, &rank, j), bound) {
                Ok(d) => return Ok(d),
                Err(e) => last = Some(e),
            }
        }
        tried += 1;
        if tried == 1 {
            ranks = other_extensions(g, EXTENSION_TRIES);
        }
    }
    Err(last.unwrap())
}

/// Cap on the linear extensions tried by [`draw_bandwidth`].
pub const EXTENSION_TRIES: usize = 256;

/// Negative `j` mirrors the offsets.
fn layout(g: &Dag, lab: &BandwidthLabeling, rank: &[usize], j: i32) -> Drawing {
    let n = q(g.vertex_count().max(1) as i64);
    let sign = if j < 0 { q(-1) } else { q(1) };
    let j = j.unsigned_abs();
    let delta = sign / (q(2) * num_traits::pow(n, j as usize + 1));
    let pos: Vec<Point> = (0..g.vertex_count())
        .map(|v| {
            let off = num_traits::pow(q(v as i64), j as usize) * &delta;
            Point::new(q(lab.label[v] as i64) + off, q(rank[v] as i64 + 1))
        })
        .collect();
    Drawing::straight_line(g.clone(), pos).expect("one point per vertex")
}

/// Up to `cap` linear extensions as rank vectors, in reverse lexicographic
/// order of their vertex sequences (so popping yields the smallest first).
fn other_extensions(g: &Dag, cap: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let ins = g.in_adjacency();
    let mut indeg: Vec<usize> = ins.iter().map(Vec::len).collect();
    let out = g.out_adjacency();
    let mut order = Vec::with_capacity(n);
    let mut found = Vec::new();
    fn walk(
        out: &[Vec<usize>],
        indeg: &mut [usize],
        order: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        let n = indeg.len();
        if found.len() >= cap {
            return;
        }
        if order.len() == n {
            let mut rank = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                rank[v] = i;
            }
            found.push(rank);
            return;
        }
        for v in 0..n {
            if indeg[v] != 0 || order.contains(&v) {
                continue;
            }
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
            }
            walk(out, indeg, order, found, cap);
            for &w in &out[v] {
                indeg[w] += 1;
            }
            order.pop();
        }
    }
    walk(&out, &mut indeg, &mut order, &mut found, cap);
    found.reverse();
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bandwidths() {
        let path = Dag::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(exact_bandwidth(&path, 12).unwrap().width, 1);
        let k4 = Dag::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(exact_bandwidth(&k4, 12).unwrap().width, 3);
        let c4 = Dag::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(exact_bandwidth(&c4, 12).unwrap().width, 2);
        assert_eq!(exact_bandwidth(&c4, 3).unwrap_err(), LayoutError::TooLarge { n: 4, limit: 3 });
    }

    #[test]
    fn labels_must_be_a_bijection() {
        let g = Dag::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(BandwidthLabeling::new(&g, vec![1, 1, 2]), Err(LayoutError::InvalidLabeling));
        assert_eq!(BandwidthLabeling::new(&g, vec![1, 2, 4]), Err(LayoutError::InvalidLabeling));
        let lab = BandwidthLabeling::new(&g, vec![1, 3, 2]).unwrap();
        assert_eq!(lab.width, 2);
    }

    #[test]
    fn directed_path_is_drawn_without_crossings() {
        let g = Dag::from_edges(3, &[(0, 1), (1, 2)]);
        let lab = exact_bandwidth(&g, 12).unwrap();
        let d = draw_bandwidth(&g, &lab).unwrap();
        assert_eq!(crate::drawing::compute_crossings(&d).unwrap().crossing_count(), 0);
    }

    #[test]
    fn k4_respects_its_bound() {
        let k4 = Dag::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let lab = exact_bandwidth(&k4, 12).unwrap();
        let d = draw_bandwidth(&k4, &lab).unwrap();
        let r = crate::drawing::compute_crossings(&d).unwrap();
        assert!(r.is_upward && r.max_per_edge <= 3);
    }
}
