//! Polyline drawings with exact rational coordinates, crossing computation,
//! and the upward / k-planar / outer checks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use num_traits::One;
use thiserror::Error;

use crate::dag::Dag;
use crate::embedding::RotationSystem;
use crate::geom::{
    angle_cmp, on_segment, point_at, segment_hit, to_int_grid, to_q_points, Coord, Point, SegHit,
    ToQ, P2, Q,
};

/// Ways a drawing can fail to be a simple drawing in the sense used here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NonSimple {
    #[error("vertices {0} and {1} share a point")]
    CoincidentVertices(usize, usize),
    #[error("edge {edge} has a zero-length segment")]
    DegenerateSegment { edge: usize },
    #[error("edge {edge} passes through vertex {vertex}")]
    RouteThroughVertex { edge: usize, vertex: usize },
    #[error("edge {edge} intersects itself")]
    SelfIntersection { edge: usize },
    #[error("edges {0} and {1} overlap along a segment")]
    Overlap(usize, usize),
    #[error("edges {0} and {1} share more than one point")]
    MultipleContacts(usize, usize),
    #[error("edges {edges:?} meet in a common interior point {point:?}")]
    TriplePoint { edges: Vec<usize>, point: Point },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error("expected {expected} {what}, got {got}")]
    LengthMismatch { what: &'static str, expected: usize, got: usize },
    #[error("non-simple drawing: {0}")]
    NonSimple(#[from] NonSimple),
}

/// Vertex positions plus per-edge bend points; edge endpoints are implied by
/// the positions of their end vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    dag: Dag,
    position: Vec<Point>,
    bends: Vec<Vec<Point>>,
}

impl Drawing {
    pub fn new(dag: Dag, position: Vec<Point>, bends: Vec<Vec<Point>>) -> Result<Self, DrawingError> {
        if position.len() != dag.vertex_count() {
            return Err(DrawingError::LengthMismatch {
                what: "vertex positions",
                expected: dag.vertex_count(),
                got: position.len(),
            });
        }
        if bends.len() != dag.edge_count() {
            return Err(DrawingError::LengthMismatch {
                what: "edge routes",
                expected: dag.edge_count(),
                got: bends.len(),
            });
        }
        Ok(Drawing { dag, position, bends })
    }

    pub fn straight_line(dag: Dag, position: Vec<Point>) -> Result<Self, DrawingError> {
        let m = dag.edge_count();
        Drawing::new(dag, position, vec![Vec::new(); m])
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn position(&self, v: usize) -> &Point {
        &self.position[v]
    }

    pub fn positions(&self) -> &[Point] {
        &self.position
    }

    pub fn x(&self, v: usize) -> &Q {
        &self.position[v].x
    }

    pub fn y(&self, v: usize) -> &Q {
        &self.position[v].y
    }

    pub fn bends(&self, e: usize) -> &[Point] {
        &self.bends[e]
    }

    /// Full polyline of edge `e`, tail first.
    pub fn route(&self, e: usize) -> Vec<Point> {
        let (u, v) = self.dag.edges()[e];
        let mut r = Vec::with_capacity(self.bends[e].len() + 2);
        r.push(self.position[u].clone());
        r.extend(self.bends[e].iter().cloned());
        r.push(self.position[v].clone());
        r
    }

    /// Applies `(x, y) -> (x * sx + dx, y * sy + dy)` to every point.
    pub fn transformed(&self, sx: &Q, dx: &Q, sy: &Q, dy: &Q) -> Drawing {
        let f = |p: &Point| Point::new(&p.x * sx + dx, &p.y * sy + dy);
        Drawing {
            dag: self.dag.clone(),
            position: self.position.iter().map(f).collect(),
            bends: self.bends.iter().map(|b| b.iter().map(f).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Crossing {
    pub edge_a: usize,
    pub edge_b: usize,
    pub point: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingReport {
    /// Sorted by `(edge_a, edge_b, point)` with `edge_a < edge_b`.
    pub crossings: Vec<Crossing>,
    pub per_edge_count: Vec<usize>,
    pub max_per_edge: usize,
    pub is_upward: bool,
    /// No two edges share more than one point (a common end vertex counts).
    pub is_simple: bool,
    pub outer_vertices: Vec<usize>,
}

impl CrossingReport {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }
}

/// Planar arrangement induced by a drawing: vertex points, bend points and
/// crossing points joined by the uncrossed pieces of the edges.
#[derive(Debug, Clone)]
pub(crate) struct Arrangement {
    pub points: Vec<Point>,
    pub kind: Vec<NodeKind>,
    /// Counterclockwise neighbor order at each node.
    pub rotation: RotationSystem,
    /// Per original edge, the node sequence from tail to head.
    pub edge_nodes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub(crate) struct ComponentBoundary {
    pub dart: Option<(usize, usize)>,
    pub low: usize,
    pub walk: Vec<usize>,
    pub enclosed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum NodeKind {
    Vertex(usize),
    Bend,
    /// Index into the sorted crossing list.
    Crossing(usize),
}

struct Seg {
    edge: usize,
    index: usize,
    last: bool,
    a: usize,
    b: usize,
}

struct Analysis {
    crossings: Vec<Crossing>,
    /// Crossing points found on each segment (global segment index).
    seg_points: Vec<Vec<Point>>,
}

fn collect_points(d: &Drawing) -> (Vec<Point>, Vec<Seg>) {
    let mut pts: Vec<Point> = d.position.clone();
    let mut segs = Vec::new();
    for (e, &(u, v)) in d.dag.edges().iter().enumerate() {
        let mut chain = vec![u];
        for b in &d.bends[e] {
            chain.push(pts.len());
            pts.push(b.clone());
        }
        chain.push(v);
        let k = chain.len() - 1;
        for i in 0..k {
            segs.push(Seg { edge: e, index: i, last: i + 1 == k, a: chain[i], b: chain[i + 1] });
        }
    }
    (pts, segs)
}

fn analyze<T: Coord + ToQ>(d: &Drawing, pts: &[P2<T>], scale: &Q, segs: &[Seg]) -> Result<Analysis, NonSimple> {
    let n = d.dag.vertex_count();
    let edges = d.dag.edges();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| pts[i].cmp(&pts[j]));
    for w in order.windows(2) {
        if pts[w[0]] == pts[w[1]] {
            return Err(NonSimple::CoincidentVertices(w[0].min(w[1]), w[0].max(w[1])));
        }
    }

    for s in segs {
        if pts[s.a] == pts[s.b] {
            return Err(NonSimple::DegenerateSegment { edge: s.edge });
        }
    }

    // vertices touching segments: sweep over x with vertices sorted by x
    let mut vx: Vec<usize> = (0..n).collect();
    vx.sort_by(|&i, &j| pts[i].x.cmp(&pts[j].x));
    for s in segs {
        let (a, b) = (&pts[s.a], &pts[s.b]);
        let (lo, hi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
        let start = vx.partition_point(|&w| &pts[w].x < lo);
        for &w in &vx[start..] {
            if &pts[w].x > hi {
                break;
            }
            if !on_segment(a, b, &pts[w]) {
                continue;
            }
            let (tail, head) = edges[s.edge];
            let ok = (w == s.a && s.index == 0 && w == tail) || (w == s.b && s.last && w == head);
            if !ok {
                return Err(NonSimple::RouteThroughVertex { edge: s.edge, vertex: w });
            }
        }
    }

    // self intersections
    let mut first_seg = vec![usize::MAX; edges.len()];
    for (i, s) in segs.iter().enumerate() {
        if first_seg[s.edge] == usize::MAX {
            first_seg[s.edge] = i;
        }
    }
    for e in 0..edges.len() {
        let k = d.bends[e].len() + 1;
        let base = first_seg[e];
        for i in 0..k {
            for j in i + 1..k {
                let (s, t) = (&segs[base + i], &segs[base + j]);
                let hit = segment_hit(&pts[s.a], &pts[s.b], &pts[t.a], &pts[t.b]);
                let bad = match hit {
                    SegHit::None => false,
                    SegHit::Overlap => true,
                    SegHit::Point(_) => j != i + 1,
                };
                if bad {
                    return Err(NonSimple::SelfIntersection { edge: e });
                }
            }
        }
    }

    // crossings between distinct edges: sweep by x-interval
    let mut by_x: Vec<usize> = (0..segs.len()).collect();
    let minx = |i: usize| core::cmp::min(&pts[segs[i].a].x, &pts[segs[i].b].x).clone();
    let maxx = |i: usize| core::cmp::max(&pts[segs[i].a].x, &pts[segs[i].b].x).clone();
    by_x.sort_by_key(|&i| minx(i));
    let mut active: Vec<(T, usize)> = Vec::new();
    let mut found: BTreeSet<(usize, usize, Point)> = BTreeSet::new();
    let mut seg_points: Vec<Vec<Point>> = vec![Vec::new(); segs.len()];
    for &i in &by_x {
        let lo = minx(i);
        active.retain(|(hi, _)| *hi >= lo);
        let s = &segs[i];
        let (sy_lo, sy_hi) = minmax(&pts[s.a].y, &pts[s.b].y);
        for &(_, j) in &active {
            let t = &segs[j];
            if t.edge == s.edge {
                continue;
            }
            let (ty_lo, ty_hi) = minmax(&pts[t.a].y, &pts[t.b].y);
            if ty_hi < sy_lo || sy_hi < ty_lo {
                continue;
            }
            match segment_hit(&pts[s.a], &pts[s.b], &pts[t.a], &pts[t.b]) {
                SegHit::None => {}
                SegHit::Overlap => {
                    return Err(NonSimple::Overlap(s.edge.min(t.edge), s.edge.max(t.edge)))
                }
                SegHit::Point(param) => {
                    let p = point_at(&pts[s.a], &pts[s.b], &param, scale);
                    let (e, f) = (edges[s.edge], edges[t.edge]);
                    let shared = [e.0, e.1]
                        .into_iter()
                        .filter(|&x| x == f.0 || x == f.1)
                        .any(|x| d.position[x] == p);
                    if shared {
                        continue;
                    }
                    seg_points[i].push(p.clone());
                    seg_points[j].push(p.clone());
                    found.insert((s.edge.min(t.edge), s.edge.max(t.edge), p));
                }
            }
        }
        active.push((maxx(i), i));
    }

    let crossings: Vec<Crossing> =
        found.into_iter().map(|(edge_a, edge_b, point)| Crossing { edge_a, edge_b, point }).collect();

    let mut at_point: BTreeMap<&Point, BTreeSet<usize>> = BTreeMap::new();
    for c in &crossings {
        let s = at_point.entry(&c.point).or_default();
        s.insert(c.edge_a);
        s.insert(c.edge_b);
    }
    for (p, es) in at_point {
        if es.len() > 2 {
            return Err(NonSimple::TriplePoint { edges: es.into_iter().collect(), point: p.clone() });
        }
    }
    Ok(Analysis { crossings, seg_points })
}

fn minmax<T: Ord>(a: T, b: T) -> (T, T) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn run_analysis(d: &Drawing) -> Result<(Vec<Point>, Vec<Seg>, Analysis), NonSimple> {
    let (pts, segs) = collect_points(d);
    let analysis = match to_int_grid(&pts) {
        Some(grid) => {
            let scale = Q::from_integer(grid.scale.clone());
            analyze(d, &grid.points, &scale, &segs)?
        }
        None => analyze(d, &to_q_points(&pts), &Q::one(), &segs)?,
    };
    Ok((pts, segs, analysis))
}

fn build_arrangement(d: &Drawing, pts: &[Point], segs: &[Seg], an: &Analysis) -> Arrangement {
    let n = d.dag.vertex_count();
    let mut index: BTreeMap<Point, usize> = BTreeMap::new();
    let mut points = Vec::new();
    let mut kind = Vec::new();
    for v in 0..n {
        index.insert(pts[v].clone(), v);
        points.push(pts[v].clone());
        kind.push(NodeKind::Vertex(v));
    }
    let mut crossing_index: BTreeMap<&Point, usize> = BTreeMap::new();
    for (i, c) in an.crossings.iter().enumerate() {
        crossing_index.insert(&c.point, i);
    }
    let mut node_of = |p: &Point, points: &mut Vec<Point>, kind: &mut Vec<NodeKind>| -> usize {
        if let Some(&i) = index.get(p) {
            return i;
        }
        let id = points.len();
        points.push(p.clone());
        kind.push(match crossing_index.get(p) {
            Some(&c) => NodeKind::Crossing(c),
            None => NodeKind::Bend,
        });
        index.insert(p.clone(), id);
        id
    };
    let mut edge_nodes: Vec<Vec<usize>> = vec![Vec::new(); d.dag.edge_count()];
    let mut adj: Vec<Vec<usize>> = Vec::new();
    for (si, s) in segs.iter().enumerate() {
        let a = &pts[s.a];
        let b = &pts[s.b];
        let mut on: Vec<Point> = an.seg_points[si].clone();
        let forward = a < b;
        on.sort();
        if !forward {
            on.reverse();
        }
        on.dedup();
        let mut chain = vec![node_of(a, &mut points, &mut kind)];
        for p in &on {
            if p != a && p != b {
                chain.push(node_of(p, &mut points, &mut kind));
            }
        }
        chain.push(node_of(b, &mut points, &mut kind));
        let list = &mut edge_nodes[s.edge];
        for &c in &chain {
            if list.last() != Some(&c) {
                list.push(c);
            }
        }
        if adj.len() < points.len() {
            adj.resize(points.len(), Vec::new());
        }
        for w in chain.windows(2) {
            adj[w[0]].push(w[1]);
            adj[w[1]].push(w[0]);
        }
    }
    adj.resize(points.len(), Vec::new());
    for (v, nb) in adj.iter_mut().enumerate() {
        let o = &points[v];
        nb.sort_by(|&i, &j| {
            let u = P2 { x: &points[i].x - &o.x, y: &points[i].y - &o.y };
            let w = P2 { x: &points[j].x - &o.x, y: &points[j].y - &o.y };
            angle_cmp(&u, &w)
        });
    }
    Arrangement { points, kind, rotation: RotationSystem::new(adj), edge_nodes }
}

impl Arrangement {
    /// Per connected component: a dart with the component's unbounded face
    /// on its left (none for an isolated node), its lowest node, the walk
    /// around that face, and whether another component encloses it.
    pub fn components(&self) -> Vec<ComponentBoundary> {
        let n = self.points.len();
        let mut comp = vec![usize::MAX; n];
        let mut result: Vec<ComponentBoundary> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let cid = result.len();
            let mut nodes = vec![s];
            comp[s] = cid;
            let mut i = 0;
            while i < nodes.len() {
                let v = nodes[i];
                i += 1;
                for &w in &self.rotation.rotation[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = cid;
                        nodes.push(w);
                    }
                }
            }
            let low = *nodes
                .iter()
                .min_by(|&&a, &&b| {
                    let (pa, pb) = (&self.points[a], &self.points[b]);
                    pa.y.cmp(&pb.y).then(pa.x.cmp(&pb.x))
                })
                .unwrap();
            let dart = self.rotation.rotation[low].last().map(|&q| (low, q));
            let walk = match dart {
                Some((u, v)) => self.rotation.face_of(u, v).vertices(),
                None => vec![low],
            };
            result.push(ComponentBoundary { dart, low, walk, enclosed: false });
        }
        for i in 0..result.len() {
            let p = &self.points[result[i].low];
            let enclosed = result
                .iter()
                .enumerate()
                .any(|(j, c)| j != i && c.walk.len() > 1 && self.ray_parity(p, &c.walk));
            result[i].enclosed = enclosed;
        }
        result
    }

    /// Nodes on the unbounded face of the whole arrangement.
    pub fn outer_nodes(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for c in self.components() {
            if !c.enclosed {
                out.extend(c.walk.iter().copied());
            }
        }
        out
    }

    /// Parity of crossings of the rightward horizontal ray from `p` with the
    /// closed walk `w` (half-open rule on y).
    fn ray_parity(&self, p: &Point, w: &[usize]) -> bool {
        let mut odd = false;
        for i in 0..w.len() {
            let a = &self.points[w[i]];
            let b = &self.points[w[(i + 1) % w.len()]];
            if (a.y > p.y) != (b.y > p.y) {
                // x-coordinate of the crossing with y = p.y
                let x = &a.x + (&p.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
                if x > p.x {
                    odd = !odd;
                }
            }
        }
        odd
    }
}

fn is_upward(d: &Drawing) -> bool {
    (0..d.dag.edge_count()).all(|e| d.route(e).windows(2).all(|w| w[0].y < w[1].y))
}

fn report_from(d: &Drawing, an: &Analysis, arr: &Arrangement) -> CrossingReport {
    let m = d.dag.edge_count();
    let mut per_edge_count = vec![0usize; m];
    let mut pair_points: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for c in &an.crossings {
        per_edge_count[c.edge_a] += 1;
        per_edge_count[c.edge_b] += 1;
        *pair_points.entry((c.edge_a, c.edge_b)).or_default() += 1;
    }
    let edges = d.dag.edges();
    let is_simple = pair_points.iter().all(|(&(a, b), &k)| {
        let (e, f) = (edges[a], edges[b]);
        let adjacent = e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1;
        k + usize::from(adjacent) <= 1
    });
    let outer_vertices = arr
        .outer_nodes()
        .into_iter()
        .filter_map(|i| match arr.kind[i] {
            NodeKind::Vertex(v) => Some(v),
            _ => None,
        })
        .collect();
    CrossingReport {
        crossings: an.crossings.clone(),
        max_per_edge: per_edge_count.iter().copied().max().unwrap_or(0),
        per_edge_count,
        is_upward: is_upward(d),
        is_simple,
        outer_vertices,
    }
}

pub(crate) fn analyze_drawing(d: &Drawing) -> Result<(CrossingReport, Arrangement), DrawingError> {
    let (pts, segs, an) = run_analysis(d)?;
    let arr = build_arrangement(d, &pts, &segs, &an);
    let report = report_from(d, &an, &arr);
    Ok((report, arr))
}

/// All crossings of a drawing, decided exactly.
pub fn compute_crossings(d: &Drawing) -> Result<CrossingReport, DrawingError> {
    analyze_drawing(d).map(|(r, _)| r)
}

/// Crossing count per edge only, skipping the outer-face computation.
pub fn crossing_counts(d: &Drawing) -> Result<(Vec<usize>, bool), DrawingError> {
    let (_, _, an) = run_analysis(d)?;
    let mut per = vec![0usize; d.dag.edge_count()];
    for c in &an.crossings {
        per[c.edge_a] += 1;
        per[c.edge_b] += 1;
    }
    Ok((per, is_upward(d)))
}

/// True iff `d` is simple, upward, and no edge is crossed more than `k` times.
pub fn verify_drawing(d: &Drawing, k: usize) -> Result<(bool, CrossingReport), DrawingError> {
    let r = compute_crossings(d)?;
    Ok((r.is_simple && r.is_upward && r.max_per_edge <= k, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::qr;

    fn pts(c: &[(i64, i64)]) -> Vec<Point> {
        c.iter().map(|&(x, y)| Point::int(x, y)).collect()
    }

    #[test]
    fn disjoint_edges_do_not_cross() {
        let g = Dag::from_edges(4, &[(0, 1), (2, 3)]);
        let d = Drawing::straight_line(g, pts(&[(0, 0), (0, 1), (2, 0), (2, 1)])).unwrap();
        let r = compute_crossings(&d).unwrap();
        assert_eq!(r.crossing_count(), 0);
        assert!(r.is_upward);
        assert_eq!(r.outer_vertices, vec![0, 1, 2, 3]);
    }

    #[test]
    fn symmetric_x_crosses_at_center() {
        let g = Dag::from_edges(4, &[(0, 1), (2, 3)]);
        let d = Drawing::straight_line(g, pts(&[(0, 0), (2, 2), (2, 0), (0, 2)])).unwrap();
        let r = compute_crossings(&d).unwrap();
        assert_eq!(r.crossings.len(), 1);
        assert_eq!(r.crossings[0].point, Point::int(1, 1));
        assert_eq!(r.per_edge_count, vec![1, 1]);
        assert!(r.is_simple);
        let (ok, _) = verify_drawing(&d, 1).unwrap();
        assert!(ok);
        let (ok, _) = verify_drawing(&d, 0).unwrap();
        assert!(!ok);
    }

    #[test]
    fn downward_edge_is_not_upward() {
        let g = Dag::from_edges(2, &[(0, 1)]);
        let d = Drawing::straight_line(g, pts(&[(0, 1), (0, 0)])).unwrap();
        let (ok, r) = verify_drawing(&d, 5).unwrap();
        assert!(!ok);
        assert!(!r.is_upward);
    }

    #[test]
    fn non_simple_inputs_are_errors() {
        let g = Dag::from_edges(3, &[(0, 1)]);
        let d = Drawing::straight_line(g, pts(&[(0, 0), (0, 2), (0, 1)])).unwrap();
        assert_eq!(
            compute_crossings(&d).unwrap_err(),
            DrawingError::NonSimple(NonSimple::RouteThroughVertex { edge: 0, vertex: 2 })
        );
        let g = Dag::from_edges(4, &[(0, 1), (2, 3)]);
        let d = Drawing::straight_line(g, pts(&[(0, 0), (0, 2), (0, 1), (0, 3)])).unwrap();
        assert!(matches!(compute_crossings(&d), Err(DrawingError::NonSimple(_))));
        let g = Dag::from_edges(6, &[(0, 1), (2, 3), (4, 5)]);
        let d = Drawing::straight_line(
            g,
            pts(&[(0, 0), (2, 2), (2, 0), (0, 2), (1, 0), (1, 2)]),
        )
        .unwrap();
        assert!(matches!(
            compute_crossings(&d),
            Err(DrawingError::NonSimple(NonSimple::TriplePoint { .. }))
        ));
    }

    #[test]
    fn bends_and_rational_points() {
        // edge 0 zig-zags across edge 1 twice: not simple
        let g = Dag::from_edges(4, &[(0, 1), (2, 3)]);
        let d = Drawing::new(
            g,
            pts(&[(0, 0), (0, 4), (-1, 0), (-1, 4)]),
            vec![vec![Point::int(-2, 1), Point::int(-2, 3)], vec![]],
        )
        .unwrap();
        let r = compute_crossings(&d).unwrap();
        assert_eq!(r.crossing_count(), 2);
        assert!(!r.is_simple);
        assert_eq!(r.crossings[0].point, Point::new(qr(-1, 1), qr(1, 2)));
    }

    #[test]
    fn enclosed_vertex_is_not_outer() {
        let g = Dag::from_edges(4, &[(0, 1), (0, 2), (1, 2)]);
        let d = Drawing::straight_line(g, pts(&[(0, 0), (4, 1), (0, 4), (1, 2)])).unwrap();
        let r = compute_crossings(&d).unwrap();
        assert_eq!(r.outer_vertices, vec![0, 1, 2]);
    }
}
