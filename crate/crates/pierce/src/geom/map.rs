use serde::{Deserialize, Serialize};

use super::{ConvexBody, GeomError, LineEq, Point};

/// Margin kept between normalized bodies and the unit circle.
pub const DISK_MARGIN: f64 = 0.05;

/// An invertible similarity `z -> scale * (z - shift)` with `scale > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub scale: f64,
    pub shift: Point,
}

impl AffineMap {
    pub fn identity() -> AffineMap {
        AffineMap {
            scale: 1.0,
            shift: Point::new(0.0, 0.0),
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::new(
            self.scale * (p.x - self.shift.x),
            self.scale * (p.y - self.shift.y),
        )
    }

    pub fn invert(&self, p: &Point) -> Point {
        Point::new(p.x / self.scale + self.shift.x, p.y / self.scale + self.shift.y)
    }

    pub fn apply_body(&self, body: &ConvexBody) -> ConvexBody {
        // A positive similarity preserves hull order and the lexicographic
        // starting vertex, so the canonical form maps vertex by vertex.
        ConvexBody::from_canonical(body.vertices().iter().map(|v| self.apply(v)).collect())
    }

    /// Pulls a line in normalized coordinates back to original coordinates.
    pub fn pull_back_line(&self, line: &LineEq) -> LineEq {
        // a*(s(x - hx)) + b*(s(y - hy)) = c  <=>  a*x + b*y = c/s + a*hx + b*hy
        LineEq::new(
            line.a,
            line.b,
            line.c / self.scale + line.a * self.shift.x + line.b * self.shift.y,
        )
        .expect("unit normal stays valid under pullback")
    }
}

/// Scales and translates all bodies strictly into the disk of radius
/// `1 - DISK_MARGIN` centered at the origin. Returns the map together with
/// the transformed families; certificates are pulled back through the
/// inverse map.
pub fn normalize_to_disk(
    families: &[Vec<ConvexBody>],
) -> Result<(AffineMap, Vec<Vec<ConvexBody>>), GeomError> {
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut any = false;
    for family in families {
        for body in family {
            for v in body.vertices() {
                any = true;
                min_x = min_x.min(v.x);
                min_y = min_y.min(v.y);
                max_x = max_x.max(v.x);
                max_y = max_y.max(v.y);
            }
        }
    }
    if !any {
        return Err(GeomError::EmptyInput);
    }
    let center = Point::new((min_x + max_x) / 2.0, (min_y + max_y) / 2.0);
    let mut radius: f64 = 0.0;
    for family in families {
        for body in family {
            for v in body.vertices() {
                radius = radius.max(v.dist(&center));
            }
        }
    }
    let scale = if radius < 1e-300 {
        1.0
    } else {
        (1.0 - DISK_MARGIN) / radius
    };
    let map = AffineMap {
        scale,
        shift: center,
    };
    let transformed = families
        .iter()
        .map(|family| family.iter().map(|b| map.apply_body(b)).collect())
        .collect();
    Ok((map, transformed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::convex_hull;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn single_point_maps_to_origin() {
        let fam = vec![vec![ConvexBody::point(pt(100.0, 100.0))]];
        let (map, out) = normalize_to_disk(&fam).unwrap();
        let v = out[0][0].vertices()[0];
        assert!(v.norm() < 1e-12);
        let back = map.invert(&v);
        assert!(back.dist(&pt(100.0, 100.0)) < 1e-9);
    }

    #[test]
    fn margin_rule_for_half_disk_input() {
        // Bodies touching the circle of radius 0.5: scale lands in [1, 2].
        let fam = vec![vec![
            ConvexBody::point(pt(0.5, 0.0)),
            ConvexBody::point(pt(-0.5, 0.0)),
            ConvexBody::point(pt(0.0, 0.45)),
        ]];
        let (map, out) = normalize_to_disk(&fam).unwrap();
        assert!(map.scale >= 1.0 && map.scale <= 2.0, "scale {}", map.scale);
        for body in &out[0] {
            for v in body.vertices() {
                assert!(v.norm() <= 0.95 + 1e-9);
            }
        }
    }

    #[test]
    fn round_trip_reproduces_inputs() {
        let body = convex_hull(&[pt(3.0, -7.0), pt(12.0, 4.0), pt(-5.0, 9.0)]).unwrap();
        let fam = vec![vec![body.clone()]];
        let (map, out) = normalize_to_disk(&fam).unwrap();
        for (orig, img) in body.vertices().iter().zip(out[0][0].vertices()) {
            assert!(map.invert(img).dist(orig) < 1e-9);
            assert!(map.apply(orig).dist(img) < 1e-12);
        }
    }

    #[test]
    fn line_pullback_is_consistent() {
        let fam = vec![vec![
            ConvexBody::point(pt(10.0, 3.0)),
            ConvexBody::point(pt(14.0, 3.0)),
        ]];
        let (map, out) = normalize_to_disk(&fam).unwrap();
        // The normalized bodies lie on a horizontal line; pull it back.
        let a = out[0][0].vertices()[0];
        let b = out[0][1].vertices()[0];
        let line = LineEq::through(a, b).unwrap();
        let orig = map.pull_back_line(&line);
        assert!(orig.signed_dist(&pt(10.0, 3.0)).abs() < 1e-9);
        assert!(orig.signed_dist(&pt(14.0, 3.0)).abs() < 1e-9);
    }
}
