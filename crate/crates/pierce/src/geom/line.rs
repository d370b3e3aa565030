use serde::{Deserialize, Serialize};

use super::{Point, EPS_GEOM};

/// An infinite line `a*x + b*y = c` with unit normal `(a, b)`.
///
/// The representation is canonical: `a^2 + b^2 = 1` and the first nonzero
/// component of `(a, b)` is positive, so `(a, b, c)` and `(-a, -b, -c)`
/// collapse to the same value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineEq {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl LineEq {
    /// Builds the canonical line from raw coefficients.
    /// Returns `None` when `(a, b)` is too short to normalize.
    pub fn new(a: f64, b: f64, c: f64) -> Option<LineEq> {
        let n = a.hypot(b);
        if n < 1e-300 || !n.is_finite() {
            return None;
        }
        let (mut a, mut b, mut c) = (a / n, b / n, c / n);
        let flip = if a.abs() > 1e-12 { a < 0.0 } else { b < 0.0 };
        if flip {
            a = -a;
            b = -b;
            c = -c;
        }
        Some(LineEq { a, b, c })
    }

    /// The line through two distinct points; `None` when they (nearly) coincide.
    pub fn through(p: Point, q: Point) -> Option<LineEq> {
        let d = q.sub(&p);
        // Normal is the direction rotated by 90 degrees.
        LineEq::new(d.y, -d.x, d.y * p.x - d.x * p.y)
    }

    /// Signed distance from `p` to the line (positive on the normal side).
    pub fn signed_dist(&self, p: &Point) -> f64 {
        self.a * p.x + self.b * p.y - self.c
    }

    /// A point on the line plus its unit direction vector.
    pub fn point_and_dir(&self) -> (Point, Point) {
        (
            Point::new(self.a * self.c, self.b * self.c),
            Point::new(-self.b, self.a),
        )
    }

    /// True when the two canonical forms agree within `tol` on all coefficients.
    pub fn approx_eq(&self, other: &LineEq, tol: f64) -> bool {
        (self.a - other.a).abs() <= tol
            && (self.b - other.b).abs() <= tol
            && (self.c - other.c).abs() <= tol
    }
}

/// A chord of the unit circle. Endpoints sit on the circle within tolerance;
/// the chord may be degenerate (`p == q`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub p: Point,
    pub q: Point,
}

impl Chord {
    pub fn new(p: Point, q: Point) -> Chord {
        debug_assert!((p.norm() - 1.0).abs() < 1e-6 && (q.norm() - 1.0).abs() < 1e-6);
        Chord { p, q }
    }

    pub fn is_degenerate(&self) -> bool {
        self.p.dist(&self.q) < 1e-12
    }

    /// The full line through the chord. A degenerate chord yields the tangent
    /// line at its point, which misses every body strictly inside the disk.
    pub fn line(&self) -> LineEq {
        if let Some(l) = LineEq::through(self.p, self.q) {
            return l;
        }
        LineEq::new(self.p.x, self.p.y, self.p.norm2()).expect("tangent at a unit-circle point")
    }
}
