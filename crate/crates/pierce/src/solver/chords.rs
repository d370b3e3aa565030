use std::f64::consts::PI;

use crate::geom::{orient, Chord, Point, EPS_GEOM};
use crate::kkm::SimplexPoint;

/// Inward pull applied to arc midpoints when they serve as side references.
pub const REGION_PULL: f64 = 1e-6;

/// The chord configuration driven by a barycentric point: `n` anchor points
/// on the unit circle at cumulative-coordinate angles, joined into `n/2`
/// chords between opposite anchors (`n` is 6 or 4).
///
/// Anchors are `f_i = (cos 2*pi*s_i, sin 2*pi*s_i)` with `s_i` the prefix sum
/// of the generating coordinates; the last anchor is pinned at `(1, 0)`.
#[derive(Debug, Clone)]
pub struct ChordConfig {
    n: usize,
    weights: Vec<f64>,
    cums: Vec<f64>,
    anchors: Vec<Point>,
    chords: Vec<Chord>,
}

/// Builds the configuration for a simplex point of dimension 4 or 6.
pub fn chords_from_simplex(x: &SimplexPoint) -> ChordConfig {
    ChordConfig::from_weights(x.coords())
}

/// `(cos 2*pi*s, sin 2*pi*s)` with the four quarter turns pinned to exact
/// axis points, so lattice fractions produce exactly representable anchors.
fn circle_point(s: f64) -> Point {
    if s <= 0.0 || s >= 1.0 {
        return Point::new(1.0, 0.0);
    }
    if s == 0.25 {
        return Point::new(0.0, 1.0);
    }
    if s == 0.5 {
        return Point::new(-1.0, 0.0);
    }
    if s == 0.75 {
        return Point::new(0.0, -1.0);
    }
    let t = 2.0 * PI * s;
    Point::new(t.cos(), t.sin())
}

impl ChordConfig {
    /// Raw constructor from nonnegative weights summing to one (within
    /// floating error). Negative rounding noise is clamped to zero.
    pub fn from_weights(weights: &[f64]) -> ChordConfig {
        let n = weights.len();
        assert!(n == 4 || n == 6, "chord configurations need 4 or 6 arcs");
        let weights: Vec<f64> = weights.iter().map(|w| w.max(0.0)).collect();
        let mut cums = Vec::with_capacity(n + 1);
        cums.push(0.0);
        let mut acc = 0.0;
        for w in &weights {
            acc = (acc + w).min(1.0);
            cums.push(acc);
        }
        cums[n] = 1.0;
        let anchors: Vec<Point> = (1..=n).map(|i| circle_point(cums[i])).collect();
        let chords: Vec<Chord> = (0..n / 2)
            .map(|k| Chord::new(anchors[k], anchors[k + n / 2]))
            .collect();
        ChordConfig {
            n,
            weights,
            cums,
            anchors,
            chords,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Anchor `f_i` for `i` in `1..=n`.
    pub fn anchor(&self, i: usize) -> Point {
        self.anchors[i - 1]
    }

    pub fn anchors(&self) -> &[Point] {
        &self.anchors
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    /// Midpoint of arc `i` pulled inward to radius `1 - REGION_PULL`.
    pub fn arc_reference(&self, i: usize) -> Point {
        let theta = PI * (self.cums[i - 1] + self.cums[i]);
        Point::new(
            (1.0 - REGION_PULL) * theta.cos(),
            (1.0 - REGION_PULL) * theta.sin(),
        )
    }

    /// The region adjacent to arc `i` (1-based), described by the required
    /// side of every chord line; `None` when the region is empty.
    ///
    /// Region `i` is the open cell of the chord arrangement inside the unit
    /// disk adjacent to arc `i`: a point belongs to it when it lies strictly
    /// inside the disk and strictly on the same side of every non-degenerate
    /// chord as the inward-pulled arc midpoint. The region is empty by fiat
    /// when the generating coordinate `x_i` is zero.
    pub fn region(&self, i: usize) -> Option<Region> {
        assert!((1..=self.n).contains(&i));
        if self.weights[i - 1] <= 0.0 {
            return None;
        }
        let reference = self.arc_reference(i);
        let mut side_signs = Vec::with_capacity(self.chords.len());
        for chord in &self.chords {
            if chord.is_degenerate() {
                side_signs.push(0);
                continue;
            }
            let s = orient(chord.p, chord.q, reference);
            if s == 0 {
                // Arc midpoint on a chord line: degenerate sliver, treat as empty.
                return None;
            }
            side_signs.push(s);
        }
        Some(Region {
            index: i,
            side_signs,
        })
    }

    /// Strict membership of `p` in region `i`.
    pub fn region_contains(&self, i: usize, p: &Point) -> bool {
        match self.region(i) {
            Some(region) => region.contains(self, p),
            None => false,
        }
    }

    /// True when the whole body lies strictly inside region `i` (all
    /// vertices suffice because the region is convex).
    pub fn body_in_region(&self, i: usize, body: &crate::geom::ConvexBody) -> bool {
        match self.region(i) {
            Some(region) => body.vertices().iter().all(|v| region.contains(self, v)),
            None => false,
        }
    }

    /// Clips an inscribed `steps`-gon of the unit disk by the region's chord
    /// halfplanes; `None` when the region is empty at that discretization.
    pub fn region_polygon(&self, i: usize, steps: usize) -> Option<Vec<Point>> {
        let region = self.region(i)?;
        let mut poly: Vec<Point> = (0..steps)
            .map(|s| {
                let t = 2.0 * PI * s as f64 / steps as f64;
                Point::new(t.cos(), t.sin())
            })
            .collect();
        for (k, chord) in self.chords.iter().enumerate() {
            let sign = region.side_signs[k];
            if sign == 0 {
                continue;
            }
            // The cross product matches the orientation sign convention used
            // by membership (canonical line normals may be flipped).
            let keep =
                |p: &Point| sign as f64 * crate::geom::cross_raw(chord.p, chord.q, *p);
            poly = clip_polygon(&poly, keep);
            if poly.is_empty() {
                return None;
            }
        }
        Some(poly)
    }
}

/// Sutherland-Hodgman clip of a polygon by the halfplane `keep(p) >= 0`.
pub fn clip_polygon(poly: &[Point], keep: impl Fn(&Point) -> f64) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 2);
    let n = poly.len();
    for i in 0..n {
        let cur = poly[i];
        let next = poly[(i + 1) % n];
        let dc = keep(&cur);
        let dn = keep(&next);
        if dc >= 0.0 {
            out.push(cur);
        }
        if (dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0) {
            let t = dc / (dc - dn);
            out.push(cur.lerp(&next, t));
        }
    }
    out
}

/// A region's halfplane description: required orientation sign per chord,
/// zero meaning the chord is degenerate and unconstraining.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub index: usize,
    pub side_signs: Vec<i8>,
}

impl Region {
    pub fn contains(&self, config: &ChordConfig, p: &Point) -> bool {
        if p.norm2() >= (1.0 - EPS_GEOM) * (1.0 - EPS_GEOM) {
            return false;
        }
        for (k, chord) in config.chords().iter().enumerate() {
            let want = self.side_signs[k];
            if want == 0 {
                continue;
            }
            if orient(chord.p, chord.q, *p) != want {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ConvexBody;

    fn simplex(coords: &[f64]) -> SimplexPoint {
        SimplexPoint::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn barycentric_hexagon_has_diameters() {
        let config = chords_from_simplex(&SimplexPoint::barycenter(6));
        for (i, a) in config.anchors().iter().enumerate() {
            let want = 2.0 * PI * (i as f64 + 1.0) / 6.0;
            assert!((a.x - want.cos()).abs() < 1e-12, "anchor {i}");
            assert!((a.y - want.sin()).abs() < 1e-12 || (i == 5 && a.y == 0.0));
        }
        for chord in config.chords() {
            // Opposite anchors: the chord passes through the origin.
            let mid = chord.p.add(&chord.q).scale(0.5);
            assert!(mid.norm() < 1e-12);
        }
    }

    #[test]
    fn vertex_of_simplex_pins_anchors() {
        let config = chords_from_simplex(&simplex(&[0.0, 0.0, 0.0, 0.0, 0.0, 1.0]));
        for i in 1..=5 {
            assert_eq!(config.anchor(i), Point::new(1.0, 0.0));
        }
        assert_eq!(config.anchor(6), Point::new(1.0, 0.0));
        for i in 1..=5 {
            assert!(config.region(i).is_none(), "region {i} must be empty");
        }
        // Region 6 is the whole open disk: all chords are degenerate.
        assert!(config.region_contains(6, &Point::new(0.3, -0.2)));
        assert!(!config.region_contains(6, &Point::new(2.0, 0.0)));
    }

    #[test]
    fn cumulative_angles_match_direct_evaluation() {
        let x = simplex(&[0.3, 0.1, 0.2, 0.15, 0.15, 0.1]);
        let config = chords_from_simplex(&x);
        let cums = [0.3, 0.4, 0.6, 0.75, 0.9, 1.0];
        for (i, s) in cums.iter().enumerate() {
            let a = config.anchor(i + 1);
            let t = 2.0 * PI * s;
            assert!((a.x - t.cos()).abs() < 1e-12);
            if i + 1 < 6 {
                assert!((a.y - t.sin()).abs() < 1e-12);
            } else {
                assert_eq!(a, Point::new(1.0, 0.0));
            }
        }
    }

    #[test]
    fn hexagon_sector_membership() {
        let config = chords_from_simplex(&SimplexPoint::barycenter(6));
        // Arc 1 spans angles 0..60 degrees; a point at 30 degrees inside the
        // disk belongs to region 1 and to no other region.
        let p = Point::new(0.9 * (PI / 6.0).cos(), 0.9 * (PI / 6.0).sin());
        assert!(config.region_contains(1, &p));
        for i in 2..=6 {
            assert!(!config.region_contains(i, &p));
        }
        assert!(!config.region_contains(1, &Point::new(2.0, 0.0)));
        // The origin lies on all three diameters.
        assert!((1..=6).all(|i| !config.region_contains(i, &Point::new(0.0, 0.0))));
    }

    #[test]
    fn empty_weight_empties_region() {
        let config = chords_from_simplex(&simplex(&[0.4, 0.0, 0.2, 0.2, 0.1, 0.1]));
        assert!(config.region(2).is_none());
        assert!(!config.region_contains(2, &Point::new(0.1, 0.1)));
    }

    #[test]
    fn body_on_chord_is_in_no_region() {
        // Quarter-turn weights make the second chord exactly the x-axis.
        let config = chords_from_simplex(&simplex(&[0.25, 0.25, 0.25, 0.25, 0.0, 0.0]));
        let chord = &config.chords()[1];
        assert_eq!(chord.p, Point::new(-1.0, 0.0));
        assert_eq!(chord.q, Point::new(1.0, 0.0));
        let body = ConvexBody::point(Point::new(-0.25, 0.0));
        assert!((1..=6).all(|i| !config.body_in_region(i, &body)));
        // Nudged off the chord, the point falls into exactly one region.
        let above = ConvexBody::point(Point::new(-0.25, 1e-7));
        let hit: Vec<usize> = (1..=6).filter(|&i| config.body_in_region(i, &above)).collect();
        assert_eq!(hit.len(), 1);
    }

    #[test]
    fn chords_pairwise_interleave() {
        // Endpoint indices alternate, so chords intersect inside the closed disk.
        let x = simplex(&[0.25, 0.1, 0.15, 0.2, 0.05, 0.25]);
        let config = chords_from_simplex(&x);
        for a in 0..3 {
            for b in (a + 1)..3 {
                let ca = &config.chords()[a];
                let cb = &config.chords()[b];
                let d = crate::geom::segment_segment_distance(ca.p, ca.q, cb.p, cb.q);
                assert!(d <= 1e-9, "chords {a} and {b} must meet, d = {d}");
            }
        }
    }

    #[test]
    fn four_arc_configuration() {
        let config = chords_from_simplex(&SimplexPoint::barycenter(4));
        assert_eq!(config.chords().len(), 2);
        // Perpendicular diameters at the barycenter of the 3-simplex.
        for chord in config.chords() {
            assert!(chord.p.add(&chord.q).norm() < 1e-12);
        }
        let p = Point::new(0.5, 0.5);
        assert!(config.region_contains(1, &p));
        assert!((2..=4).all(|i| !config.region_contains(i, &p)));
    }

    #[test]
    fn region_polygon_matches_membership() {
        let x = simplex(&[0.2, 0.2, 0.15, 0.15, 0.2, 0.1]);
        let config = chords_from_simplex(&x);
        for i in 1..=6 {
            if let Some(poly) = config.region_polygon(i, 64) {
                // The polygon centroid lies in the region.
                let c = poly
                    .iter()
                    .fold(Point::new(0.0, 0.0), |acc, p| acc.add(p))
                    .scale(1.0 / poly.len() as f64);
                assert!(
                    config.region_contains(i, &c),
                    "centroid of region {i} polygon must be inside"
                );
            }
        }
    }
}
