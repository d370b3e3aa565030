use serde::{Deserialize, Serialize};

use super::lp::{halfplanes_feasible, Halfplane};
use super::{orient, point_segment_distance, segment_segment_distance, Chord, GeomError, LineEq, Point, EPS_GEOM};

/// A compact convex set represented as a canonical convex polygon:
/// counterclockwise vertices in strictly convex position, starting from the
/// lexicographically smallest vertex. Single points (one vertex) and segments
/// (two vertices) are first-class degenerate bodies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexBody {
    vertices: Vec<Point>,
}

impl ConvexBody {
    /// Canonicalizes an arbitrary point set into its convex hull.
    pub fn new(points: &[Point]) -> Result<ConvexBody, GeomError> {
        convex_hull(points)
    }

    pub fn point(p: Point) -> ConvexBody {
        ConvexBody { vertices: vec![p] }
    }

    pub fn segment(a: Point, b: Point) -> ConvexBody {
        convex_hull(&[a, b]).expect("two points")
    }

    /// Wraps vertices that are already in canonical hull order.
    pub(crate) fn from_canonical(vertices: Vec<Point>) -> ConvexBody {
        let body = ConvexBody { vertices };
        debug_assert!(body.is_canonical());
        body
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn centroid(&self) -> Point {
        let n = self.vertices.len() as f64;
        let (sx, sy) = self
            .vertices
            .iter()
            .fold((0.0, 0.0), |(sx, sy), v| (sx + v.x, sy + v.y));
        Point::new(sx / n, sy / n)
    }

    fn is_canonical(&self) -> bool {
        let v = &self.vertices;
        if v.is_empty() {
            return false;
        }
        if v.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return false;
        }
        for p in &v[1..] {
            if (p.x, p.y) < (v[0].x, v[0].y) {
                return false;
            }
        }
        if v.len() >= 2 && v.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        if v.len() >= 3 {
            let n = v.len();
            for i in 0..n {
                if orient(v[i], v[(i + 1) % n], v[(i + 2) % n]) != 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Closed-semantics membership test.
    pub fn contains(&self, p: &Point) -> bool {
        match self.vertices.len() {
            1 => self.vertices[0].dist(&p) <= EPS_GEOM,
            2 => point_segment_distance(*p, self.vertices[0], self.vertices[1]) <= EPS_GEOM,
            n => (0..n).all(|i| orient(self.vertices[i], self.vertices[(i + 1) % n], *p) >= 0),
        }
    }

    /// True when the body meets the line within tolerance `tol`
    /// (closed semantics: tangency counts).
    pub fn hits_line_tol(&self, line: &LineEq, tol: f64) -> bool {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in &self.vertices {
            let d = line.signed_dist(v);
            min = min.min(d);
            max = max.max(d);
        }
        min <= tol && max >= -tol
    }

    /// True when the body meets the line within [`EPS_GEOM`].
    pub fn hits_line(&self, line: &LineEq) -> bool {
        self.hits_line_tol(line, EPS_GEOM)
    }

    /// Euclidean distance between the body and a (possibly degenerate) chord;
    /// zero exactly when the two compact convex sets intersect.
    pub fn segment_distance(&self, chord: &Chord) -> f64 {
        let (p, q) = (chord.p, chord.q);
        match self.vertices.len() {
            1 => point_segment_distance(self.vertices[0], p, q),
            2 => segment_segment_distance(self.vertices[0], self.vertices[1], p, q),
            n => {
                let mut d = f64::INFINITY;
                for i in 0..n {
                    let e = segment_segment_distance(
                        self.vertices[i],
                        self.vertices[(i + 1) % n],
                        p,
                        q,
                    );
                    if e < d {
                        d = e;
                    }
                    if d == 0.0 {
                        return 0.0;
                    }
                }
                // No boundary contact: the segment is either fully inside or
                // fully outside.
                if d > 0.0 && self.contains(&p) {
                    return 0.0;
                }
                d
            }
        }
    }

    /// The closed halfplane system whose intersection is exactly this body.
    /// All normals are unit length, so offsets relax metrically.
    pub fn halfplanes(&self) -> Vec<Halfplane> {
        body_halfplanes(self)
    }
}

/// Minimal counterclockwise convex polygon containing all input points
/// (Andrew's monotone chain with exact orientation tests).
pub fn convex_hull(points: &[Point]) -> Result<ConvexBody, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|p, q| (p.x, p.y).partial_cmp(&(q.x, q.y)).unwrap());
    pts.dedup();
    if pts.len() == 1 {
        return Ok(ConvexBody { vertices: pts });
    }

    let mut lower: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let mut vertices = lower;
    vertices.extend(upper);
    if vertices.len() == 1 {
        // All input points collinear with exactly two extremes: the pops above
        // leave [min]; restore the far endpoint.
        vertices.push(*pts.last().unwrap());
    }
    Ok(ConvexBody { vertices })
}

pub fn body_halfplanes(body: &ConvexBody) -> Vec<Halfplane> {
    let v = body.vertices();
    match v.len() {
        1 => vec![
            Halfplane::new(1.0, 0.0, v[0].x),
            Halfplane::new(-1.0, 0.0, -v[0].x),
            Halfplane::new(0.0, 1.0, v[0].y),
            Halfplane::new(0.0, -1.0, -v[0].y),
        ],
        2 => {
            let d = v[1].sub(&v[0]);
            let n = Point::new(d.y, -d.x);
            vec![
                Halfplane::new(n.x, n.y, n.dot(&v[0])),
                Halfplane::new(-n.x, -n.y, -n.dot(&v[0])),
                Halfplane::new(d.x, d.y, d.dot(&v[1])),
                Halfplane::new(-d.x, -d.y, -d.dot(&v[0])),
            ]
        }
        n => (0..n)
            .map(|i| {
                let d = v[(i + 1) % n].sub(&v[i]);
                // CCW polygon: outward normal points right of the edge.
                Halfplane::new(d.y, -d.x, d.y * v[i].x - d.x * v[i].y)
            })
            .collect(),
    }
}

/// True iff `f`, `g` and `h` have a common point, decided by feasibility of
/// the joint halfplane system of the three polygons (closed semantics,
/// each constraint relaxed by [`EPS_GEOM`]).
pub fn bodies_intersect(f: &ConvexBody, g: &ConvexBody, h: &ConvexBody) -> bool {
    let mut planes = Vec::with_capacity(
        f.vertices().len().max(4) + g.vertices().len().max(4) + h.vertices().len().max(4),
    );
    for body in [f, g, h] {
        for mut hp in body.halfplanes() {
            hp.c += EPS_GEOM;
            planes.push(hp);
        }
    }
    halfplanes_feasible(&planes).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn hull_singleton() {
        let b = convex_hull(&[pt(0.0, 0.0)]).unwrap();
        assert_eq!(b.vertices().len(), 1);
    }

    #[test]
    fn hull_drops_interior_point() {
        let b = convex_hull(&[
            pt(0.0, 0.0),
            pt(1.0, 0.0),
            pt(1.0, 1.0),
            pt(0.0, 1.0),
            pt(0.5, 0.5),
        ])
        .unwrap();
        assert_eq!(b.vertices().len(), 4);
        assert_eq!(b.vertices()[0], pt(0.0, 0.0));
    }

    #[test]
    fn hull_collinear_collapses_to_segment() {
        let b = convex_hull(&[pt(2.0, 0.0), pt(0.0, 0.0), pt(1.0, 0.0)]).unwrap();
        assert_eq!(b.vertices(), &[pt(0.0, 0.0), pt(2.0, 0.0)]);
    }

    #[test]
    fn hull_empty_is_error() {
        assert_eq!(convex_hull(&[]).unwrap_err(), GeomError::EmptyInput);
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let b = convex_hull(&[pt(0.0, 0.0), pt(2.0, 0.3), pt(1.0, 2.0), pt(-0.5, 1.0)]).unwrap();
        let again = convex_hull(b.vertices()).unwrap();
        assert_eq!(b, again);
    }

    #[test]
    fn line_hit_examples() {
        let sq = convex_hull(&[pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)]).unwrap();
        assert!(sq.hits_line(&LineEq::new(1.0, 0.0, 0.5).unwrap()));
        assert!(!sq.hits_line(&LineEq::new(1.0, 0.0, 2.0).unwrap()));
        // Tangency at a single vertex counts (closed semantics).
        let tri = convex_hull(&[pt(0.0, 0.0), pt(1.0, 1.0), pt(-1.0, 1.0)]).unwrap();
        assert!(tri.hits_line(&LineEq::new(0.0, 1.0, 0.0).unwrap()));
    }

    #[test]
    fn segment_distance_examples() {
        let sq = convex_hull(&[pt(0.0, 0.0), pt(1.0, 0.0), pt(1.0, 1.0), pt(0.0, 1.0)]).unwrap();
        let crossing = Chord {
            p: pt(-2.0, 0.5),
            q: pt(3.0, 0.5),
        };
        assert_eq!(sq.segment_distance(&crossing), 0.0);
        let pb = ConvexBody::point(pt(0.0, 0.0));
        let side = Chord {
            p: pt(1.0, 0.0),
            q: pt(1.0, 1.0),
        };
        assert!((pb.segment_distance(&side) - 1.0).abs() < 1e-12);
        // Segment strictly inside the square.
        let inside = Chord {
            p: pt(0.4, 0.5),
            q: pt(0.6, 0.5),
        };
        assert_eq!(sq.segment_distance(&inside), 0.0);
    }

    #[test]
    fn triple_intersection_examples() {
        let mk = |cx: f64, cy: f64| {
            convex_hull(&[
                pt(cx - 1.0, cy - 1.0),
                pt(cx + 1.0, cy - 1.0),
                pt(cx + 1.0, cy + 1.0),
                pt(cx - 1.0, cy + 1.0),
            ])
            .unwrap()
        };
        assert!(bodies_intersect(
            &mk(0.2, 0.0),
            &mk(-0.3, 0.4),
            &mk(0.0, -0.5)
        ));

        // Collinear segments sharing the single point (1, 0).
        let s1 = ConvexBody::segment(pt(0.0, 0.0), pt(1.0, 0.0));
        let s2 = ConvexBody::segment(pt(0.0, 0.0), pt(2.0, 0.0));
        let s3 = ConvexBody::segment(pt(1.0, 0.0), pt(2.0, 0.0));
        assert!(bodies_intersect(&s1, &s2, &s3));

        // Edges of a nondegenerate triangle meet only pairwise.
        let e1 = ConvexBody::segment(pt(0.0, 0.0), pt(1.0, 0.0));
        let e2 = ConvexBody::segment(pt(0.0, 0.0), pt(0.0, 1.0));
        let e3 = ConvexBody::segment(pt(1.0, 0.0), pt(0.0, 1.0));
        assert!(!bodies_intersect(&e1, &e2, &e3));
    }
}
