//! Incremental canvas shared by the fan and outerpath layouts.
//!
//! Vertices receive exact positions one at a time; edges are straight unless
//! registered as left routes, which leave their lower end towards the left,
//! climb along a vertical line left of the whole drawing and enter their
//! upper end from the left. Later left routes use lines further left.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::dag::Dag;
use crate::drawing::Drawing;
use crate::geom::{dyadic_between, on_segment, q, qr, Point, P2, Q};

pub(crate) struct Canvas<'g> {
    pub g: &'g Dag,
    pub pos: Vec<Option<Point>>,
    pub ymin: Q,
    pub ymax: Q,
    left_routes: Vec<usize>,
}

impl<'g> Canvas<'g> {
    pub fn new(g: &'g Dag) -> Self {
        Canvas { g, pos: vec![None; g.vertex_count()], ymin: q(0), ymax: q(0), left_routes: Vec::new() }
    }

    pub fn place(&mut self, v: usize, x: Q, y: Q) {
        if self.pos.iter().all(Option::is_none) {
            self.ymin = y.clone();
            self.ymax = y.clone();
        }
        if y < self.ymin {
            self.ymin = y.clone();
        }
        if y > self.ymax {
            self.ymax = y.clone();
        }
        self.pos[v] = Some(Point::new(x, y));
    }

    pub fn x(&self, v: usize) -> &Q {
        &self.pos[v].as_ref().expect("vertex placed").x
    }

    pub fn y(&self, v: usize) -> &Q {
        &self.pos[v].as_ref().expect("vertex placed").y
    }

    pub fn is_placed(&self, v: usize) -> bool {
        self.pos[v].is_some()
    }

    /// True if the segment from `a` to `b` touches a placed vertex other than
    /// its ends.
    pub fn blocked(&self, a: &Point, b: &Point) -> bool {
        let p2 = |p: &Point| P2 { x: p.x.clone(), y: p.y.clone() };
        let (a2, b2) = (p2(a), p2(b));
        self.pos.iter().flatten().any(|p| p != a && p != b && on_segment(&a2, &b2, &p2(p)))
    }

    /// Routes the edge between `a` and `b` around the left of the drawing.
    pub fn route_left(&mut self, a: usize, b: usize) {
        let e = self.g.edge_index(a, b).or_else(|| self.g.edge_index(b, a)).expect("edge exists");
        self.left_routes.push(e);
    }

    /// A y-value strictly inside `(lo, hi)` (either may be open-ended) that
    /// no placed vertex uses and that `ok` accepts.
    pub fn free_y(&self, lo: Option<&Q>, hi: Option<&Q>, ok: impl Fn(&Q) -> bool) -> Q {
        let (mut lo, mut hi) = match (lo, hi) {
            (Some(l), Some(h)) => (l.clone(), h.clone()),
            (Some(l), None) => (l.clone(), l + q(1)),
            (None, Some(h)) => (h - q(1), h.clone()),
            (None, None) => (q(-1), q(1)),
        };
        loop {
            let y = dyadic_between(&lo, &hi);
            if !self.pos.iter().flatten().any(|p| p.y == y) && ok(&y) {
                return y;
            }
            // shrink towards the lower end and retry
            hi = y.clone();
            if hi <= lo {
                lo = &hi - q(1);
            }
        }
    }

    /// Final drawing; `shrink` scales down the vertical offsets of left routes.
    pub fn finish(self, shrink: u32) -> Drawing {
        let pos: Vec<Point> = self.pos.into_iter().map(|p| p.expect("all vertices placed")).collect();
        let mut ys: Vec<Q> = pos.iter().map(|p| p.y.clone()).collect();
        ys.sort();
        ys.dedup();
        let gap = ys.windows(2).map(|w| &w[1] - &w[0]).min().unwrap_or_else(|| q(1));
        let xmin = pos.iter().map(|p| p.x.clone()).min().unwrap_or_else(Q::zero);
        let mut bends = vec![Vec::new(); self.g.edge_count()];
        for (t, &e) in self.left_routes.iter().enumerate() {
            let (lo, hi) = self.g.edges()[e];
            let bound = gap.clone() / q(4 * (t as i64 + 1) * shrink as i64);
            let delta = dyadic_between(&Q::zero(), &bound);
            let x = &xmin - q(1 + t as i64);
            bends[e] = vec![
                Point::new(x.clone(), &pos[lo].y + &delta),
                Point::new(x, &pos[hi].y - &delta),
            ];
        }
        Drawing::new(self.g.clone(), pos, bends).expect("consistent sizes")
    }
}

/// How to draw one fan: its centre must already be placed.
pub(crate) struct FanPlan<'p> {
    pub center: usize,
    pub path: &'p [usize],
    /// x-coordinate of every path vertex.
    pub xs: Vec<Q>,
    /// Leading path vertices that are already placed.
    pub prefix: usize,
    /// Draw the edge between the first two runs straight instead of around.
    pub straight_first_boundary: bool,
    /// Corner of the triangle that must contain the end of a reversed
    /// directed run starting a run: for the first run and for later runs.
    pub anchor_first: Point,
    pub anchor_rest: Point,
}

/// Maximal runs `[h, e]` of path indices with uniform spoke direction.
pub(crate) fn runs(g: &Dag, c: usize, path: &[usize]) -> Vec<(usize, usize, bool)> {
    let mut out: Vec<(usize, usize, bool)> = Vec::new();
    for (l, &v) in path.iter().enumerate() {
        let toward = g.has_edge(v, c);
        match out.last_mut() {
            Some(r) if r.2 == toward => r.1 = l,
            _ => out.push((l, l, toward)),
        }
    }
    out
}

pub(crate) fn place_fan(cv: &mut Canvas<'_>, plan: &FanPlan<'_>) {
    let all = runs(cv.g, plan.center, plan.path);
    let nruns = all.len();
    for (r, &(h, e, toward)) in all.iter().enumerate() {
        let is_last = r + 1 == nruns;
        if h.max(plan.prefix) <= e {
            place_run(cv, plan, (h, e), r, is_last, toward);
        }
        if !is_last && !(r == 0 && plan.straight_first_boundary) {
            cv.route_left(plan.path[e], plan.path[e + 1]);
        }
    }
}

fn place_run(cv: &mut Canvas<'_>, plan: &FanPlan<'_>, (h, e): (usize, usize), r: usize, is_last: bool, toward: bool) {
    let g = cv.g;
    let p = plan.path;
    let xs = &plan.xs;
    let xc = cv.x(plan.center).clone();
    let yc = cv.y(plan.center).clone();
    let s = if toward { q(1) } else { q(-1) };
    // frame: the run lies below the centre, which sits at height 0
    let fy = |y: &Q| &s * (y - &yc);
    let uy = |y: Q| &yc + &s * y;
    let up = |a: usize, b: usize| if toward { g.has_edge(a, b) } else { g.has_edge(b, a) };
    let fmin = |cv: &Canvas<'_>| if toward { &cv.ymin - &yc } else { &yc - &cv.ymax };
    let start = h.max(plan.prefix);

    // a trailing directed part v_i..v_e is drawn reversed at the bottom
    let case_b = !is_last && e > h && up(p[e - 1], p[e]);
    let mut i = e + 1;
    if case_b {
        i = e - 1;
        while i > start && up(p[i - 1], p[i]) {
            i -= 1;
        }
    }
    let stop = if case_b { i } else { e + 1 };
    for l in start..stop {
        let y = if l > h && up(p[l - 1], p[l]) {
            // strictly below the line from the previous vertex to the centre
            let yp = fy(cv.y(p[l - 1]));
            let xp = &xs[l - 1];
            let line = &yp - &yp * (&xs[l] - xp) / (&xc - xp);
            dyadic_between(&yp, &line)
        } else {
            fmin(cv) - q(1)
        };
        cv.place(p[l], xs[l].clone(), uy(y));
    }
    if !case_b {
        return;
    }
    let ym = fmin(cv);
    let half = qr(1, 2);
    // behind a straight boundary edge the previous run's last vertex plays
    // the role of v_{i-1}
    let joined = r == 1 && plan.straight_first_boundary;
    let (vx, vy) = if i > h || joined {
        (xs[i - 1].clone(), fy(cv.y(p[i - 1])))
    } else {
        let a = if r == 0 { &plan.anchor_first } else { &plan.anchor_rest };
        (a.x.clone(), fy(&a.y))
    };
    // the end of the reversed part (at xs[i]) lies above the line from
    // (vx, vy) to its start (at xs[e])
    let ratio = (&xs[i] - &vx) / (&xs[e] - &vx);
    let need = &ym - &vy - (&ym - &half - &vy) / &ratio;
    let need = if need < half { half.clone() } else { need };
    // a rise that is a multiple of the length keeps denominators small
    let span = (e - i) as i64;
    let gamma = &half + q(span) * (((&need - &half) / q(span)).floor() + q(1));
    let ay = &ym - &gamma;
    let by = &ym - &half;
    for l in i..=e {
        let k = (l - i) as i64;
        let y = &ay + (&by - &ay) * q(k) / q(span);
        cv.place(p[l], xs[e - (l - i)].clone(), uy(y));
    }
}

