//! Upward 2-planar drawings of directed acyclic outerpaths.
//!
//! The outerpath is first made maximal. Its backbone is drawn from left to
//! right; the fan of each backbone vertex `c` occupies the vertical strip
//! between `c` and its predecessor and is drawn like a single fan, with every
//! new run placed above or below everything drawn so far. If the first fan
//! vertex is forced between the two backbone vertices, a prefix of the fan
//! path is laid along the backbone edge instead.

use alloc::vec::Vec;

use super::engine::{place_fan, runs, Canvas, FanPlan};
use super::{check_output, LayoutError};
use crate::dag::Dag;
use crate::drawing::Drawing;
use crate::geom::{dyadic_between, q, Point, Q};
use crate::outerplanar::{outerpath_structure, OuterpathError, OuterpathStructure};

pub fn draw_outerpath(g: &Dag) -> Result<Drawing, LayoutError> {
    let s = outerpath_structure(g).map_err(|e| match e {
        OuterpathError::NotAnOuterpath => LayoutError::NotAnOuterpath,
        OuterpathError::CyclicInput => LayoutError::CyclicInput,
    })?;
    let mut last = None;
    // backbone direction and vertical mirror, in this order of preference
    for (reverse, mirror) in [(false, false), (true, false), (false, true), (true, true)] {
        for shrink in [1u32, 3, 7] {
            let d = outerpath_layout(&s, reverse, mirror, shrink);
            let bends = (0..g.edge_count()).map(|e| d.bends(e).to_vec()).collect();
            let d = Drawing::new(g.clone(), d.positions().to_vec(), bends).expect("consistent sizes");
            match check_output(d, 2) {
                Ok(d) => return Ok(d),
                Err(e) => last = Some(e),
            }
        }
    }
    Err(last.unwrap())
}

/// Drawing of the maximal outerpath `s.augmented`.
pub(crate) fn outerpath_layout(s: &OuterpathStructure, reverse: bool, mirror: bool, shrink: u32) -> Drawing {
    let aug = &s.augmented;
    let n = aug.vertex_count();
    let h = if mirror {
        Dag::new(n, aug.edges().iter().map(|&(u, v)| (v, u)).collect()).expect("reversal of a dag")
    } else {
        aug.clone()
    };
    let mut tris = s.triangles.clone();
    if reverse {
        tris.reverse();
    }
    let d = layout_maximal(s, &h, &tris, shrink);
    if !mirror {
        return d;
    }
    let pos: Vec<Point> = d.positions().iter().map(|p| Point::new(p.x.clone(), -p.y.clone())).collect();
    let bends: Vec<Vec<Point>> = (0..aug.edge_count())
        .map(|e| d.bends(e).iter().rev().map(|p| Point::new(p.x.clone(), -p.y.clone())).collect())
        .collect();
    Drawing::new(aug.clone(), pos, bends).expect("consistent sizes")
}

fn layout_maximal(s: &OuterpathStructure, h: &Dag, tris: &[[usize; 3]], shrink: u32) -> Drawing {
    let adj = h.undirected_adjacency();
    let mut bb: Vec<usize> = Vec::new();
    for t in tris {
        for &v in t {
            if s.backbone.contains(&v) && !bb.contains(&v) {
                bb.push(v);
            }
        }
    }
    let k = bb.len();
    let paths: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            let mut p = s.fan_path(bb[i]);
            let flip = match p.first() {
                None => false,
                Some(&w) if i > 0 => !adj[bb[i - 1]].contains(&w),
                Some(_) if k > 1 => !adj[bb[1]].contains(p.last().unwrap()),
                // a lone fan: start at the smaller end, as for single fans
                Some(&w) => *p.last().unwrap() < w,
            };
            if flip {
                p.reverse();
            }
            p
        })
        .collect();

    let mut cv = Canvas::new(h);
    let mut base = q(0);
    for i in 0..k {
        let c = bb[i];
        let p = &paths[i];
        let m = p.len();
        let xc = &base + q(m as i64 + 1);
        if i == 0 {
            cv.place(c, xc.clone(), q(0));
        } else {
            let mut lo: Option<Q> = None;
            let mut hi: Option<Q> = None;
            for &w in adj[c].iter().filter(|&&w| cv.is_placed(w)) {
                let y = cv.y(w).clone();
                if h.has_edge(w, c) {
                    lo = Some(lo.map_or(y.clone(), |l| l.max(y)));
                } else {
                    hi = Some(hi.map_or(y.clone(), |u| u.min(y)));
                }
            }
            let placed: Vec<Point> = adj[c].iter().filter_map(|&w| cv.pos[w].clone()).collect();
            let clear = |y: &Q| {
                let pt = Point::new(xc.clone(), y.clone());
                placed.iter().all(|w| !cv.blocked(&pt, w))
            };
            let y = cv.free_y(lo.as_ref(), hi.as_ref(), clear);
            cv.place(c, xc.clone(), y);
        }
        let yc = cv.y(c).clone();
        let mut xs: Vec<Q> = (0..m).map(|l| &base + q(l as i64 + 1)).collect();
        if let Some(last) = xs.last_mut() {
            *last = xc.clone();
        }
        let corner = Point::new(base.clone(), yc.clone());
        let mut plan = FanPlan {
            center: c,
            path: p,
            xs,
            prefix: 0,
            straight_first_boundary: false,
            anchor_first: corner.clone(),
            anchor_rest: corner,
        };
        if i > 0 && m > 0 {
            let cp = bb[i - 1];
            plan.anchor_first = cv.pos[cp].clone().unwrap();
            let w = p[0];
            let between = (h.has_edge(cp, w) && h.has_edge(w, c)) || (h.has_edge(c, w) && h.has_edge(w, cp));
            if between {
                let alpha = tris
                    .iter()
                    .find(|t| t.contains(&c))
                    .and_then(|t| t.iter().copied().find(|&v| v != c && v != cp));
                let (prefix, straight) = lay_along_backbone(&mut cv, p, (cp, c), alpha, &base);
                plan.prefix = prefix;
                plan.straight_first_boundary = straight;
            }
        }
        place_fan(&mut cv, &plan);
        base = xc;
    }
    cv.finish(shrink)
}

/// Places a prefix of the fan path next to the backbone edge `cp c`, when the
/// first fan vertex must lie between `cp` and `c`. If the first run is
/// directed away from its first vertex (as seen from `cp`), the whole run goes
/// on the far side of the edge and the next run is joined by a straight edge;
/// otherwise the part up to the first backward edge goes on the near side.
fn lay_along_backbone(
    cv: &mut Canvas<'_>,
    p: &[usize],
    (cp, c): (usize, usize),
    alpha: Option<usize>,
    base: &Q,
) -> (usize, bool) {
    let g = cv.g;
    // frame in which c lies above cp
    let sgn = if cv.y(c) > cv.y(cp) { q(1) } else { q(-1) };
    let fy = |y: &Q| &sgn * y;
    let upf = |a: usize, b: usize| if sgn > q(0) { g.has_edge(a, b) } else { g.has_edge(b, a) };
    let e0 = runs(g, c, p)[0].1;
    let back = (0..e0).find(|&l| !upf(p[l], p[l + 1]));
    let multi = e0 + 1 < p.len();
    let (prefix, above) = match back {
        None if multi => (e0 + 1, true),
        // the whole path: its last vertex goes right below the centre
        None => (e0, false),
        Some(t) => (t + 1, false),
    };
    let (xp, yp) = (cv.x(cp).clone(), fy(cv.y(cp)));
    let (xc, yc) = (cv.x(c).clone(), fy(cv.y(c)));
    let slope = (&yc - &yp) / (&xc - &xp);
    let seg = |x: &Q| &yp + &slope * (x - &xp);
    let side_line = alpha.filter(|&a| cv.is_placed(a)).map(|a| {
        let (xa, ya) = (cv.x(a).clone(), fy(cv.y(a)));
        let (xc, yc) = (xc.clone(), yc.clone());
        move |x: &Q| &ya + (&yc - &ya) * (x - &xa) / (&xc - &xa)
    });
    let xs: Vec<Q> = (0..prefix).map(|l| base + q(l as i64 + 1)).collect();
    let width = &xc - &xp;
    let mut eps = dyadic_between(&q(0), &(&slope / (q(2) * &width)));
    let ys = loop {
        let ys: Vec<Q> = xs
            .iter()
            .map(|x| {
                // far side: bulging away, so the last vertex sees past the earlier
                // spokes; near side: bulging towards the edge
                let arc = (x - &xp) * (&xc - x);
                let bump = if above { arc } else { -arc };
                seg(x) + &eps * bump
            })
            .collect();
        let clear = xs.iter().zip(&ys).all(|(x, y)| {
            let fits = match &side_line {
                Some(line) => {
                    let l = line(x);
                    let s = seg(x);
                    if above && l > s {
                        *y < l
                    } else if !above && l < s {
                        *y > l
                    } else {
                        true
                    }
                }
                None => true,
            };
            let real = &sgn * y;
            fits && !cv.pos.iter().flatten().any(|pt| pt.y == real)
        });
        if clear {
            break ys;
        }
        eps = eps / q(2);
    };
    let last = ys.last().cloned().unwrap_or_else(|| yp.clone());
    for (l, (x, y)) in xs.into_iter().zip(ys).enumerate() {
        cv.place(p[l], x, &sgn * y);
    }
    if back.is_none() && !multi {
        let y = dyadic_between(&last, &yc);
        cv.place(p[prefix], xc, &sgn * y);
        return (prefix + 1, false);
    }
    (prefix, above && multi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::verify_drawing;
    use alloc::vec;

    /// Maximal outerpath grown from the triangle 0,1,2 with current edge
    /// (1, 2): vertex `x` is attached to the current edge, which then keeps
    /// its first end (`true`) or its second end.
    fn grown(keep_first: &[bool]) -> Vec<(usize, usize)> {
        let mut e = vec![(0, 1), (1, 2), (0, 2)];
        let (mut a, mut b) = (1, 2);
        for (i, &k) in keep_first.iter().enumerate() {
            let x = i + 3;
            e.push((a, x));
            e.push((b, x));
            if k {
                b = x;
            } else {
                a = x;
            }
        }
        e
    }

    /// Orientation by a fixed scrambled ranking of the vertices.
    fn oriented(n: usize, e: &[(usize, usize)]) -> Dag {
        let rank = |v: usize| (v * 7 + 3) % n;
        let d: Vec<(usize, usize)> = e.iter().map(|&(u, v)| if rank(u) < rank(v) { (u, v) } else { (v, u) }).collect();
        Dag::from_edges(n, &d)
    }

    #[test]
    fn five_fan_outerpath() {
        let turns = [true, true, true, false, false, false, true, true, false, false, false, true, true, true];
        let n = turns.len() + 3;
        let g = oriented(n, &grown(&turns));
        let s = outerpath_structure(&g).unwrap();
        assert_eq!(s.backbone.len(), 5);
        let d = draw_outerpath(&g).unwrap();
        let (ok, rep) = verify_drawing(&d, 2).unwrap();
        assert!(ok && rep.is_upward && rep.max_per_edge <= 2);
    }

    #[test]
    fn zigzag_is_drawn_straight() {
        // every vertex of degree four: all fans are empty
        let turns: Vec<bool> = (0..12).map(|i| i % 2 == 0).collect();
        let g = oriented(15, &grown(&turns));
        let d = draw_outerpath(&g).unwrap();
        assert!((0..g.edge_count()).all(|e| d.bends(e).is_empty()));
        assert!(verify_drawing(&d, 2).unwrap().0);
    }

    #[test]
    fn non_maximal_input_keeps_its_edges() {
        let g = Dag::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)]);
        let d = draw_outerpath(&g).unwrap();
        assert_eq!(d.dag(), &g);
        assert!(verify_drawing(&d, 2).unwrap().0);
    }

    #[test]
    fn rejects_non_outerpaths() {
        let k4 = Dag::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(draw_outerpath(&k4).unwrap_err(), LayoutError::NotAnOuterpath);
        let cyc = Dag::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(draw_outerpath(&cyc).unwrap_err(), LayoutError::CyclicInput);
    }
}
