//! Discrete engine for the colorful KKM theorem: enumerate a barycentric
//! grid on the simplex, verify the KKM boundary condition for user-supplied
//! open covers, and search for a permutation and a common point of the
//! permuted cover sets.
//!
//! The engine works at grid scale: a positive condition check is evidence,
//! not proof, and "no witness up to resolution k" is reported rather than
//! treated as nonexistence.

mod matching;

pub use matching::{matching_exists_brute, perfect_matching};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Barycentric point of the standard simplex: nonnegative coordinates
/// summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    coords: Vec<f64>,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum KkmError {
    #[error("invalid simplex point: {0}")]
    BadPoint(String),
    #[error("KKM boundary condition violated for cover {cover} at grid vertex {point:?}")]
    ConditionViolated { cover: usize, point: SimplexPoint },
}

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<SimplexPoint, KkmError> {
        if coords.is_empty() {
            return Err(KkmError::BadPoint("empty coordinate list".into()));
        }
        if coords.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(KkmError::BadPoint(format!(
                "coordinates must be finite and nonnegative: {coords:?}"
            )));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(KkmError::BadPoint(format!("coordinates sum to {sum}")));
        }
        Ok(SimplexPoint { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn barycenter(n: usize) -> SimplexPoint {
        SimplexPoint {
            coords: vec![1.0 / n as f64; n],
        }
    }

    /// The `i`-th vertex of the simplex (indicator coordinate vector).
    pub fn vertex(n: usize, i: usize) -> SimplexPoint {
        let mut coords = vec![0.0; n];
        coords[i] = 1.0;
        SimplexPoint { coords }
    }

    fn from_composition(comp: &[usize], k: usize) -> SimplexPoint {
        SimplexPoint {
            coords: comp.iter().map(|&c| c as f64 / k as f64).collect(),
        }
    }
}

/// A system of `n` covers of the simplex by `n` sets each. `contains` must be
/// deterministic and cheap; open-set semantics (strict inequalities) are the
/// implementor's responsibility.
pub trait CoverOracle: Sync {
    fn n(&self) -> usize;

    /// Membership of `point` in the `set`-th set of the `cover`-th cover.
    fn contains(&self, cover: usize, set: usize, point: &SimplexPoint) -> bool;

    /// Signed proxy for how deep `point` sits inside the set (positive
    /// inside). The default gives only the membership sign.
    fn margin(&self, cover: usize, set: usize, point: &SimplexPoint) -> f64 {
        if self.contains(cover, set, point) {
            1.0
        } else {
            -1.0
        }
    }
}

/// Analytic cover family: set `j` of cover `i` is `{x : x_j > t_i}`.
#[derive(Debug, Clone)]
pub struct ThresholdCover {
    thresholds: Vec<f64>,
}

impl ThresholdCover {
    pub fn new(thresholds: Vec<f64>) -> ThresholdCover {
        assert!(thresholds.iter().all(|t| (0.0..1.0).contains(t)));
        ThresholdCover { thresholds }
    }

    /// All covers use the same threshold `t`. With `t = 1/(n+1)` the KKM
    /// boundary condition holds at every resolution.
    pub fn uniform(n: usize, t: f64) -> ThresholdCover {
        ThresholdCover::new(vec![t; n])
    }

    /// Distinct gentle thresholds `0.02 * (i + 1)` per cover.
    pub fn ramp(n: usize) -> ThresholdCover {
        ThresholdCover::new((0..n).map(|i| 0.02 * (i + 1) as f64).collect())
    }
}

impl CoverOracle for ThresholdCover {
    fn n(&self) -> usize {
        self.thresholds.len()
    }

    fn contains(&self, cover: usize, set: usize, point: &SimplexPoint) -> bool {
        point.coords()[set] > self.thresholds[cover]
    }

    fn margin(&self, cover: usize, set: usize, point: &SimplexPoint) -> f64 {
        point.coords()[set] - self.thresholds[cover]
    }
}

/// The barycentric lattice of the simplex with coordinates that are
/// multiples of `1/resolution`. The induced Kuhn triangulation has
/// `binomial(resolution + n - 1, n - 1)` vertices and simplex diameter at
/// most `sqrt(2)/resolution`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KuhnGrid {
    pub n: usize,
    pub resolution: usize,
}

impl KuhnGrid {
    pub fn new(n: usize, resolution: usize) -> KuhnGrid {
        assert!(n >= 1 && resolution >= 1);
        KuhnGrid { n, resolution }
    }

    pub fn vertex_count(&self) -> usize {
        binomial(self.resolution + self.n - 1, self.n - 1)
    }

    /// Streams every lattice point exactly once, in lexicographic order of
    /// integer compositions (starting from `(k, 0, ..., 0)`).
    pub fn points(&self) -> GridIter {
        let mut comp = vec![0usize; self.n];
        comp[0] = self.resolution;
        GridIter {
            k: self.resolution,
            comp: Some(comp),
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

pub struct GridIter {
    k: usize,
    comp: Option<Vec<usize>>,
}

impl Iterator for GridIter {
    type Item = SimplexPoint;

    fn next(&mut self) -> Option<SimplexPoint> {
        let comp = self.comp.as_mut()?;
        let point = SimplexPoint::from_composition(comp, self.k);
        // Advance to the next composition in decreasing lexicographic order:
        // move one unit left-to-right past the rightmost positive entry
        // before the last slot.
        let n = comp.len();
        let pivot = (0..n - 1).rev().find(|&i| comp[i] > 0);
        match pivot {
            None => self.comp = None,
            Some(i) => {
                let tail: usize = comp[i + 1..].iter().sum();
                comp[i] -= 1;
                comp[i + 1..].iter_mut().for_each(|c| *c = 0);
                comp[i + 1] = tail + 1;
            }
        }
        Some(point)
    }
}

/// Result of a grid-level KKM boundary-condition check.
#[derive(Debug, Clone, PartialEq)]
pub struct KkmConditionReport {
    pub holds: bool,
    /// First failing `(cover, vertex)` in scan order, when any.
    pub violation: Option<(usize, SimplexPoint)>,
}

/// Verifies at every grid vertex `v` and every cover `i` that `v` belongs to
/// the union of the sets indexed by the positive coordinates of `v` (the
/// face spanned by its support). A pass at grid level is evidence, not proof.
pub fn check_kkm_condition(oracle: &dyn CoverOracle, grid: &KuhnGrid) -> KkmConditionReport {
    let n = oracle.n();
    assert_eq!(n, grid.n, "oracle and grid dimension mismatch");
    for v in grid.points() {
        let support: Vec<usize> = (0..n).filter(|&j| v.coords()[j] > 0.0).collect();
        for cover in 0..n {
            if !support.iter().any(|&j| oracle.contains(cover, j, &v)) {
                return KkmConditionReport {
                    holds: false,
                    violation: Some((cover, v)),
                };
            }
        }
    }
    KkmConditionReport {
        holds: true,
        violation: None,
    }
}

/// A verified output of the colorful witness search: a permutation `pi` and
/// a grid point lying in set `pi(i)` of every cover `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColorfulWitness {
    pub permutation: Vec<usize>,
    pub point: SimplexPoint,
    pub margins: Vec<f64>,
}

impl ColorfulWitness {
    pub fn verify(&self, oracle: &dyn CoverOracle) -> bool {
        let n = oracle.n();
        if self.permutation.len() != n || self.point.dim() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for (cover, &set) in self.permutation.iter().enumerate() {
            if set >= n || seen[set] || !oracle.contains(cover, set, &self.point) {
                return false;
            }
            seen[set] = true;
        }
        true
    }
}

const SCAN_CHUNK: usize = 4096;

/// Scans a single resolution for the first grid vertex admitting a perfect
/// matching between covers and sets, in grid enumeration order.
pub fn find_colorful_witness_at(oracle: &dyn CoverOracle, resolution: usize) -> Option<ColorfulWitness> {
    let n = oracle.n();
    let mut points = KuhnGrid::new(n, resolution).points();
    loop {
        let chunk: Vec<SimplexPoint> = points.by_ref().take(SCAN_CHUNK).collect();
        if chunk.is_empty() {
            return None;
        }
        let hit = chunk
            .par_iter()
            .enumerate()
            .filter_map(|(idx, v)| {
                let adj: Vec<Vec<bool>> = (0..n)
                    .map(|cover| (0..n).map(|set| oracle.contains(cover, set, v)).collect())
                    .collect();
                perfect_matching(&adj).map(|m| (idx, m))
            })
            .min_by_key(|(idx, _)| *idx);
        if let Some((idx, permutation)) = hit {
            let point = chunk[idx].clone();
            let margins = permutation
                .iter()
                .enumerate()
                .map(|(cover, &set)| oracle.margin(cover, set, &point))
                .collect();
            let witness = ColorfulWitness {
                permutation,
                point,
                margins,
            };
            debug_assert!(witness.verify(oracle));
            return Some(witness);
        }
    }
}

/// Searches for a colorful witness over a doubling resolution schedule
/// `8, 16, ..., max_resolution`, after verifying the KKM boundary condition
/// at the starting resolution. `Ok(None)` means no witness was found up to
/// the budget — a report, not a disproof.
pub fn find_colorful_witness(
    oracle: &dyn CoverOracle,
    max_resolution: usize,
) -> Result<Option<ColorfulWitness>, KkmError> {
    let mut schedule: Vec<usize> = Vec::new();
    let mut k = 8;
    while k <= max_resolution {
        schedule.push(k);
        k *= 2;
    }
    if schedule.is_empty() {
        schedule.push(max_resolution.max(1));
    }
    let start = KuhnGrid::new(oracle.n(), schedule[0]);
    let report = check_kkm_condition(oracle, &start);
    if let Some((cover, point)) = report.violation {
        return Err(KkmError::ConditionViolated { cover, point });
    }
    for k in schedule {
        if let Some(w) = find_colorful_witness_at(oracle, k) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_order_matches_composition_order() {
        let pts: Vec<Vec<f64>> = KuhnGrid::new(3, 2)
            .points()
            .map(|p| p.coords().to_vec())
            .collect();
        assert_eq!(
            pts,
            vec![
                vec![1.0, 0.0, 0.0],
                vec![0.5, 0.5, 0.0],
                vec![0.5, 0.0, 0.5],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.5, 0.5],
                vec![0.0, 0.0, 1.0],
            ]
        );
    }

    #[test]
    fn unit_resolution_yields_vertices() {
        let pts: Vec<SimplexPoint> = KuhnGrid::new(6, 1).points().collect();
        assert_eq!(pts.len(), 6);
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(p, &SimplexPoint::vertex(6, i));
        }
    }

    #[test]
    fn vertex_count_matches_stars_and_bars() {
        let grid = KuhnGrid::new(6, 8);
        assert_eq!(grid.vertex_count(), 1287);
        assert_eq!(grid.points().count(), 1287);
        for p in grid.points() {
            assert!(SimplexPoint::new(p.coords().to_vec()).is_ok());
        }
    }

    #[test]
    fn kkm_condition_for_analytic_cover() {
        // x_j > 1/(n+1): on a face of size m the maximum coordinate is at
        // least 1/m >= 1/n > 1/(n+1), so the condition holds everywhere.
        for n in [2usize, 3, 6] {
            let cover = ThresholdCover::uniform(n, 1.0 / (n as f64 + 1.0));
            for k in [1usize, 4, 9] {
                let report = check_kkm_condition(&cover, &KuhnGrid::new(n, k));
                assert!(report.holds, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn kkm_condition_violation_at_barycenter() {
        let cover = ThresholdCover::uniform(3, 0.9);
        let report = check_kkm_condition(&cover, &KuhnGrid::new(3, 3));
        assert!(!report.holds);
        let (_, point) = report.violation.unwrap();
        // The first interior vertex already fails; all its coordinates are
        // below the threshold.
        assert!(point.coords().iter().all(|&c| c < 0.9));
    }

    #[test]
    fn witness_at_barycenter_for_identical_covers() {
        // Resolution 12 contains the barycenter, which is the only grid
        // vertex with all six coordinates above 1/7.
        let cover = ThresholdCover::uniform(6, 1.0 / 7.0);
        let w = find_colorful_witness_at(&cover, 12).expect("witness");
        assert!(w.verify(&cover));
        assert_eq!(w.point, SimplexPoint::barycenter(6));
        // Identity is among the eligible assignments at the barycenter.
        assert!((0..6).all(|i| cover.contains(i, i, &w.point)));
    }

    #[test]
    fn witness_on_one_simplex_overlap() {
        // n = 2: both covers are {x1 > 0.4}, {x2 > 0.4}; the witness point
        // must have both coordinates above 0.4.
        let cover = ThresholdCover::uniform(2, 0.4);
        let w = find_colorful_witness(&cover, 16).unwrap().expect("witness");
        assert!(w.verify(&cover));
        assert!(w.point.coords().iter().all(|&c| c > 0.4));
    }

    #[test]
    fn shifted_thresholds_match_analytic_feasibility() {
        // Covers i: {x_j > t_i} with t = (0.10, 0.15, 0.20). A perfect
        // matching at v needs the sorted coordinates of v to dominate the
        // sorted thresholds pairwise (match the largest coordinate to the
        // strictest cover). Check the engine against that analytic rule on
        // the whole grid.
        let t = vec![0.10, 0.15, 0.20];
        let cover = ThresholdCover::new(t.clone());
        let k = 8;
        let analytic_first = KuhnGrid::new(3, k).points().find(|v| {
            let mut c = v.coords().to_vec();
            c.sort_by(|a, b| a.partial_cmp(b).unwrap());
            // thresholds sorted ascending; coordinate c[i] must beat t[i]
            // after matching ascending to ascending.
            c.iter().zip(&t).all(|(ci, ti)| ci > ti)
        });
        let engine = find_colorful_witness_at(&cover, k);
        assert_eq!(engine.is_some(), analytic_first.is_some());
        if let (Some(w), Some(v)) = (engine, analytic_first) {
            assert_eq!(w.point, v);
        }
    }

    #[test]
    fn precondition_failure_is_reported() {
        let cover = ThresholdCover::uniform(4, 0.9);
        let err = find_colorful_witness(&cover, 16).unwrap_err();
        assert!(matches!(err, KkmError::ConditionViolated { .. }));
    }

    #[test]
    fn identical_covers_reduce_to_plain_intersection() {
        let cover = ThresholdCover::uniform(4, 0.15);
        let k = 8;
        // Plain KKM scan: first vertex inside all sets of one cover.
        let plain = KuhnGrid::new(4, k)
            .points()
            .find(|v| (0..4).all(|j| cover.contains(0, j, v)));
        let colorful = find_colorful_witness_at(&cover, k);
        assert_eq!(plain.is_some(), colorful.is_some());
        if let (Some(p), Some(w)) = (plain, colorful) {
            assert_eq!(p, w.point);
        }
    }
}
