//! Planar primitives: points, lines, chords, convex bodies and the affine
//! normalization that maps instances into the unit disk.
//!
//! All predicates use closed-set semantics with a single global tolerance
//! [`EPS_GEOM`]; orientation queries fall back to adaptive-precision
//! arithmetic so that sign decisions never flip due to rounding.

mod body;
mod line;
mod lp;
mod map;

pub use body::{bodies_intersect, body_halfplanes, convex_hull, ConvexBody};
pub use line::{Chord, LineEq};
pub use lp::{halfplanes_feasible, Halfplane};
pub use map::{normalize_to_disk, AffineMap};

use serde::{Deserialize, Serialize};

/// Global geometric tolerance. Tangency within this distance counts as a hit.
pub const EPS_GEOM: f64 = 1e-9;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("empty input: at least one point or body is required")]
    EmptyInput,
    #[error("non-finite coordinate")]
    NonFinite,
}

/// A point of the plane. Coordinates are always finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Point { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm2(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(self.x + other.x, self.y + other.y)
    }

    pub fn scale(&self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(&self, other: &Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn lerp(&self, other: &Point, t: f64) -> Point {
        Point::new(
            self.x + (other.x - self.x) * t,
            self.y + (other.y - self.y) * t,
        )
    }
}

/// Sign of the signed area of the triangle `abc`: `+1` for a counterclockwise
/// turn, `-1` for clockwise, `0` only for exactly collinear triples.
///
/// Uses the adaptive-precision predicate, so the sign is exact even for
/// nearly collinear inputs.
pub fn orient(a: Point, b: Point, c: Point) -> i8 {
    let v = robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    );
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Fast non-robust double cross product `(b - a) x (c - a)`. Used where a
/// continuous quantity is needed rather than an exact sign.
pub fn cross_raw(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b.sub(&a);
    let len2 = ab.norm2();
    if len2 == 0.0 {
        return p.dist(&a);
    }
    let t = (p.sub(&a).dot(&ab) / len2).clamp(0.0, 1.0);
    p.dist(&a.lerp(&b, t))
}

/// Distance between the closed segments `[p1, p2]` and `[q1, q2]`;
/// zero when they intersect.
pub fn segment_segment_distance(p1: Point, p2: Point, q1: Point, q2: Point) -> f64 {
    // Proper crossing: endpoints of each segment straddle the other's line.
    let d1 = cross_raw(q1, q2, p1);
    let d2 = cross_raw(q1, q2, p2);
    let d3 = cross_raw(p1, p2, q1);
    let d4 = cross_raw(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return 0.0;
    }
    point_segment_distance(p1, q1, q2)
        .min(point_segment_distance(p2, q1, q2))
        .min(point_segment_distance(q1, p1, p2))
        .min(point_segment_distance(q2, p1, p2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orient_signs() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 0.0);
        let c = Point::new(0.0, 1.0);
        assert_eq!(orient(a, b, c), 1);
        assert_eq!(orient(a, c, b), -1);
        assert_eq!(orient(a, b, Point::new(2.0, 0.0)), 0);
    }

    #[test]
    fn orient_near_collinear_is_exact() {
        // A point displaced off a long edge by one ulp still gets a sign.
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1e9, 1e9);
        let c = Point::new(0.5e9, 0.5e9 + 1e-6);
        assert_eq!(orient(a, b, c), 1);
        assert_eq!(orient(a, b, Point::new(0.5e9, 0.5e9)), 0);
    }

    #[test]
    fn segment_distances() {
        let d = segment_segment_distance(
            Point::new(-1.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, -1.0),
            Point::new(0.0, 1.0),
        );
        assert_eq!(d, 0.0);
        let d = segment_segment_distance(
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 2.0),
            Point::new(1.0, 2.0),
        );
        assert!((d - 2.0).abs() < 1e-12);
    }
}
