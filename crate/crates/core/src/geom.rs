//! Exact planar predicates.
//!
//! Coordinates are arbitrary-precision rationals. Predicates are generic so
//! that drawings whose coordinates share a modest common denominator can be
//! rescaled to `i128` integers and decided without allocation; the result is
//! identical either way.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q` (always with an explicit denominator).
pub fn q_to_string(v: &Q) -> String {
    alloc::format!("{}/{}", v.numer(), v.denom())
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: q(x), y: q(y) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(0.0), self.y.to_f64().unwrap_or(0.0))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Number type the predicates run on.
pub trait Coord:
    Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}
impl Coord for i128 {}
impl Coord for Q {}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct P2<T> {
    pub x: T,
    pub y: T,
}

pub fn cross<T: Coord>(a: &P2<T>, b: &P2<T>, c: &P2<T>) -> T {
    (b.x.clone() - a.x.clone()) * (c.y.clone() - a.y.clone())
        - (b.y.clone() - a.y.clone()) * (c.x.clone() - a.x.clone())
}

pub fn orient<T: Coord>(a: &P2<T>, b: &P2<T>, c: &P2<T>) -> Ordering {
    cross(a, b, c).cmp(&T::zero())
}

fn between<T: Coord>(a: &T, b: &T, x: &T) -> bool {
    (a <= x && x <= b) || (b <= x && x <= a)
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment<T: Coord>(a: &P2<T>, b: &P2<T>, p: &P2<T>) -> bool {
    orient(a, b, p) == Ordering::Equal && between(&a.x, &b.x, &p.x) && between(&a.y, &b.y, &p.y)
}

/// Parameter `num/den` (with `den > 0`) of a point along a segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Param<T> {
    pub num: T,
    pub den: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegHit<T> {
    None,
    /// Single common point at parameter `t` on the first segment.
    Point(Param<T>),
    /// Collinear with a common sub-segment of positive length.
    Overlap,
}

/// Intersection of closed segments `ab` and `cd` (both of positive length).
pub fn segment_hit<T: Coord>(a: &P2<T>, b: &P2<T>, c: &P2<T>, d: &P2<T>) -> SegHit<T> {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    use Ordering::*;
    if o1 == Equal && o2 == Equal {
        // collinear: project on the dominant axis
        let (ka, kb, kc, kd) = if a.x != b.x {
            (&a.x, &b.x, &c.x, &d.x)
        } else {
            (&a.y, &b.y, &c.y, &d.y)
        };
        let (lo1, hi1) = if ka <= kb { (ka, kb) } else { (kb, ka) };
        let (lo2, hi2) = if kc <= kd { (kc, kd) } else { (kd, kc) };
        let lo = if lo1 >= lo2 { lo1 } else { lo2 };
        let hi = if hi1 <= hi2 { hi1 } else { hi2 };
        return match lo.cmp(hi) {
            Greater => SegHit::None,
            Less => SegHit::Overlap,
            Equal => {
                // touching at a single endpoint
                let p = if between(&c.x, &d.x, &a.x) && between(&c.y, &d.y, &a.y) { a } else { b };
                if p == a {
                    SegHit::Point(Param { num: T::zero(), den: one_of(a, b) })
                } else {
                    let den = one_of(a, b);
                    SegHit::Point(Param { num: den.clone(), den })
                }
            }
        };
    }
    let straddles = |x: Ordering, y: Ordering| x == Equal || y == Equal || x != y;
    if !(straddles(o1, o2) && straddles(o3, o4)) {
        return SegHit::None;
    }
    // proper or touching intersection of non-parallel segments
    let r = P2 { x: b.x.clone() - a.x.clone(), y: b.y.clone() - a.y.clone() };
    let s = P2 { x: d.x.clone() - c.x.clone(), y: d.y.clone() - c.y.clone() };
    let den = r.x.clone() * s.y.clone() - r.y.clone() * s.x.clone();
    let qp = P2 { x: c.x.clone() - a.x.clone(), y: c.y.clone() - a.y.clone() };
    let num = qp.x.clone() * s.y.clone() - qp.y.clone() * s.x.clone();
    if den.is_zero() {
        return SegHit::None;
    }
    if den < T::zero() {
        SegHit::Point(Param { num: -num, den: -den })
    } else {
        SegHit::Point(Param { num, den })
    }
}

fn one_of<T: Coord>(a: &P2<T>, b: &P2<T>) -> T {
    // any positive value works as denominator for t in {0, 1}
    let dx = b.x.clone() - a.x.clone();
    let dy = b.y.clone() - a.y.clone();
    let ax = if dx < T::zero() { -dx } else { dx };
    let ay = if dy < T::zero() { -dy } else { dy };
    ax + ay
}

/// Compares the directions of vectors `u` and `v` by angle in `[0, 2π)`,
/// measured counterclockwise from the positive x-axis.
pub fn angle_cmp<T: Coord>(u: &P2<T>, v: &P2<T>) -> Ordering {
    let half = |p: &P2<T>| -> u8 {
        if p.y > T::zero() || (p.y.is_zero() && p.x > T::zero()) {
            0
        } else {
            1
        }
    };
    let (hu, hv) = (half(u), half(v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    let o = P2 { x: T::zero(), y: T::zero() };
    // u before v iff v is counterclockwise of u
    match orient(&o, u, v) {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        Ordering::Equal => Ordering::Equal,
    }
}

/// A set of points rescaled to a common integer grid, when that grid fits
/// comfortably inside `i64` (so that every product fits in `i128`).
pub struct IntGrid {
    pub scale: BigInt,
    pub points: Vec<P2<i128>>,
}

const GRID_LIMIT: i128 = 1 << 61;

pub fn to_int_grid(points: &[Point]) -> Option<IntGrid> {
    let mut l = BigInt::one();
    for p in points {
        l = l.lcm(p.x.denom());
        l = l.lcm(p.y.denom());
        if l.bits() > 61 {
            return None;
        }
    }
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let x = (p.x.numer() * (&l / p.x.denom())).to_i128()?;
        let y = (p.y.numer() * (&l / p.y.denom())).to_i128()?;
        if x.abs() >= GRID_LIMIT || y.abs() >= GRID_LIMIT {
            return None;
        }
        out.push(P2 { x, y });
    }
    Some(IntGrid { scale: l, points: out })
}

pub fn to_q_points(points: &[Point]) -> Vec<P2<Q>> {
    points.iter().map(|p| P2 { x: p.x.clone(), y: p.y.clone() }).collect()
}

pub trait ToQ {
    fn to_q(&self) -> Q;
}
impl ToQ for i128 {
    fn to_q(&self) -> Q {
        Q::from_integer(BigInt::from(*self))
    }
}
impl ToQ for Q {
    fn to_q(&self) -> Q {
        self.clone()
    }
}

/// Exact point at parameter `t` along `ab`, divided by `scale`.
pub fn point_at<T: Coord + ToQ>(a: &P2<T>, b: &P2<T>, t: &Param<T>, scale: &Q) -> Point {
    let tq = t.num.to_q() / t.den.to_q();
    let ax = a.x.to_q();
    let ay = a.y.to_q();
    let x = &ax + &tq * (b.x.to_q() - &ax);
    let y = &ay + &tq * (b.y.to_q() - &ay);
    Point { x: x / scale, y: y / scale }
}

pub fn is_positive(v: &Q) -> bool {
    v.is_positive()
}

/// The rational with the smallest denominator (then smallest magnitude)
/// strictly between `a` and `b`.
pub fn simplest_between(a: &Q, b: &Q) -> Q {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    assert!(a < b, "empty interval");
    if a.is_negative() && b.is_positive() {
        return Q::zero();
    }
    if !b.is_positive() {
        return -simplest_between(&-b, &-a);
    }
    // 0 <= a < b
    let fl = a.floor();
    if &(&fl + Q::one()) < b {
        return fl + Q::one();
    }
    let lo = a - &fl;
    let hi = b - &fl;
    // fractional part in (lo, hi) with 0 <= lo < hi <= 1
    let inv = if lo.is_zero() {
        (hi.recip()).floor() + Q::one()
    } else {
        simplest_between(&hi.recip(), &lo.recip())
    };
    fl + inv.recip()
}

/// A rational `m / 2^k` strictly between `a` and `b` with `k` minimal;
/// integers are preferred closest to zero.
pub fn dyadic_between(a: &Q, b: &Q) -> Q {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    assert!(a < b, "empty interval");
    if a.is_negative() && b.is_positive() {
        return Q::zero();
    }
    if !b.is_positive() {
        return -dyadic_between(&-b, &-a);
    }
    let mut scale = BigInt::one();
    loop {
        let m = (a * Q::from_integer(scale.clone())).floor() + Q::one();
        let cand = m / Q::from_integer(scale.clone());
        if &cand < b {
            return cand;
        }
        scale *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i128, y: i128) -> P2<i128> {
        P2 { x, y }
    }

    #[test]
    fn proper_crossing_parameter() {
        match segment_hit(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)) {
            SegHit::Point(t) => assert_eq!(t.num * 2, t.den),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn disjoint_and_touching_and_overlap() {
        assert_eq!(segment_hit(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1)), SegHit::None);
        assert_eq!(segment_hit(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)), SegHit::Overlap);
        assert!(matches!(segment_hit(&p(0, 0), &p(2, 0), &p(2, 0), &p(3, 5)), SegHit::Point(_)));
        assert!(matches!(segment_hit(&p(0, 0), &p(2, 0), &p(2, 0), &p(3, 0)), SegHit::Point(_)));
        assert_eq!(segment_hit(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)), SegHit::None);
        // T-junction
        assert!(matches!(segment_hit(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 3)), SegHit::Point(_)));
        assert_eq!(segment_hit(&p(0, 0), &p(2, 0), &p(1, 1), &p(1, 3)), SegHit::None);
    }

    #[test]
    fn angle_order() {
        let dirs = [p(1, 0), p(1, 1), p(0, 1), p(-1, 0), p(0, -1), p(1, -1)];
        for i in 0..dirs.len() {
            for j in 0..dirs.len() {
                assert_eq!(angle_cmp(&dirs[i], &dirs[j]), i.cmp(&j));
            }
        }
    }

    #[test]
    fn rational_strings() {
        assert_eq!(q_to_string(&qr(6, 4)), "3/2");
        assert_eq!(parse_q("3/2").unwrap(), qr(3, 2));
        assert_eq!(parse_q("-7").unwrap(), q(-7));
        assert!(parse_q("1/0").is_none());
    }

    #[test]
    fn dyadic_rationals() {
        assert_eq!(dyadic_between(&qr(1, 3), &qr(2, 5)), qr(3, 8));
        assert_eq!(dyadic_between(&q(-3), &q(3)), q(0));
        assert_eq!(dyadic_between(&qr(-7, 3), &qr(-2, 1)), qr(-9, 4));
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&qr(1, 3), &qr(2, 3)), qr(1, 2));
        assert_eq!(simplest_between(&q(-5), &qr(-7, 2)), q(-4));
        assert_eq!(simplest_between(&q(-1), &q(1)), q(0));
        assert_eq!(simplest_between(&q(2), &qr(9, 4)), qr(11, 5));
        let (a, b) = (qr(-101, 37), qr(-100, 37));
        let s = simplest_between(&a, &b);
        assert!(a < s && s < b);
    }

    #[test]
    fn int_grid_rescales() {
        let g = to_int_grid(&[Point::new(qr(1, 2), q(3)), Point::new(qr(1, 3), q(0))]).unwrap();
        assert_eq!(g.scale, BigInt::from(6));
        assert_eq!(g.points[0], p(3, 18));
        assert_eq!(g.points[1], p(2, 0));
    }
}
