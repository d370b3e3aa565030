//! The certificate search: barycentric points drive chord configurations of
//! the unit circle; a two-phase derivative-free search looks for a point at
//! which one family's every member touches the chord union, and the emitted
//! piercing lines are re-verified independently of the optimizer. When the
//! search fails, a colorful-KKM witness over the induced region covers is
//! sought instead; it certifies a violated hypothesis.

mod chords;
mod nelder_mead;

pub use chords::{chords_from_simplex, clip_polygon, ChordConfig, Region, REGION_PULL};
pub use nelder_mead::{project_to_simplex, SimplexDescent};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geom::{normalize_to_disk, AffineMap, ConvexBody, GeomError, LineEq, EPS_GEOM};
use crate::kkm::{
    find_colorful_witness, ColorfulWitness, CoverOracle, KkmError, KuhnGrid, SimplexPoint,
};
use crate::transversal::{
    check_colorful_t4, check_colorful_tight, check_tight_triples, common_transversal,
    replicate_to, tight_triple, FamilyId, HypothesisReport, SetRef, TransversalError,
};

/// Residual below which a chord configuration counts as a piercing solution,
/// subject to exact re-verification of the emitted lines.
pub const TOL_RESIDUAL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Seed for all solver randomness (descent jitter).
    pub seed: u64,
    /// Phase-A grid resolution; defaults to 12 on five-dimensional simplices
    /// and 24 on three-dimensional ones.
    pub grid_resolution: Option<usize>,
    /// Number of descent starts.
    pub starts: usize,
    /// Objective-evaluation budget per start.
    pub evals_per_start: usize,
    /// Success threshold for the residual.
    pub tol_residual: f64,
    /// Skip the hypothesis check, accepting possible failure.
    pub waive_hypothesis: bool,
    /// Lift the exhaustive-check size caps.
    pub allow_large: bool,
    /// Resolution budget for the dual colorful-KKM witness search.
    pub dual_max_resolution: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            grid_resolution: None,
            starts: 32,
            evals_per_start: 2000,
            tol_residual: TOL_RESIDUAL,
            waive_hypothesis: false,
            allow_large: false,
            dual_max_resolution: 16,
        }
    }
}

/// A verified piercing certificate: `k` lines (in normalized and original
/// coordinates), the family they pierce, a hitting-line assignment per set,
/// the achieved residual and the simplex point that produced the chords.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PiercingCertificate {
    pub lines: Vec<LineEq>,
    pub lines_original: Vec<LineEq>,
    pub family: FamilyId,
    pub assignment: Vec<usize>,
    pub residual: f64,
    pub witness: SimplexPoint,
    pub transform: AffineMap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DualWitnessKind {
    /// Three sets in pairwise-disjoint alternating regions: not a tight triple.
    NonTightTriple,
    /// Four sets, one per family, with no common line transversal.
    NoTransversalQuadruple,
}

/// Disproof artifact produced when the search fails: a colorful-KKM witness
/// placing one set of each family in a region, plus the concrete tuple that
/// violates the hypothesis (re-verified before emission).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualWitness {
    pub kind: DualWitnessKind,
    pub witness: ColorfulWitness,
    /// Region index hosting each family's set: `placements[j] = (region, set index)`.
    pub placements: Vec<(usize, SetRef)>,
    /// The violating triple or quadruple, in original family ids.
    pub violating: Vec<SetRef>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum SolveOutcome {
    Certificate(PiercingCertificate),
    DualWitness(DualWitness),
    Inconclusive {
        best_residual: f64,
        best_family: FamilyId,
        best_point: SimplexPoint,
    },
}

impl SolveOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            SolveOutcome::Certificate(_) => "certificate",
            SolveOutcome::DualWitness(_) => "dual_witness",
            SolveOutcome::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// A finished solve: hypothesis report (absent when waived), the outcome,
/// and wall-clock milliseconds per phase.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveRun {
    pub hypothesis: Option<HypothesisReport>,
    pub outcome: SolveOutcome,
    pub timings_ms: std::collections::BTreeMap<String, u64>,
}

#[derive(Debug, thiserror::Error)]
pub enum SolverError {
    #[error("hypothesis check failed (pass --waive-hypothesis to search anyway)")]
    HypothesisViolated(HypothesisReport),
    #[error(transparent)]
    Transversal(#[from] TransversalError),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error("expected between 1 and {max} nonempty families, got {got}")]
    BadFamilyCount { max: usize, got: usize },
    #[error("upstream solve ended in {0}, not a certificate")]
    NoCertificate(&'static str),
}

/// Worst set-to-chord-union distance within one family: zero means every set
/// of the family touches some chord. Stops early once `cutoff` is exceeded.
pub fn family_residual(config: &ChordConfig, family: &[ConvexBody], cutoff: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for body in family {
        let mut best = f64::INFINITY;
        for chord in config.chords() {
            let d = body.segment_distance(chord);
            if d < best {
                best = d;
                if best == 0.0 {
                    break;
                }
            }
        }
        if best > worst {
            worst = best;
            if worst >= cutoff {
                return worst;
            }
        }
    }
    worst
}

/// True when no set of the family lies inside any region of the
/// configuration.
pub fn family_escapes(config: &ChordConfig, family: &[ConvexBody]) -> bool {
    (1..=config.n()).all(|i| family.iter().all(|b| !config.body_in_region(i, b)))
}

/// The cover system induced by normalized families on the simplex:
/// membership of `x` in set `i` of cover `j` means region `i+1` of the chord
/// configuration at `x` strictly contains some set of family `j`.
pub struct InducedCover<'a> {
    families: &'a [Vec<ConvexBody>],
}

impl<'a> InducedCover<'a> {
    /// Families must already be normalized into the unit disk and there must
    /// be exactly 4 or 6 of them.
    pub fn new(families: &'a [Vec<ConvexBody>]) -> InducedCover<'a> {
        assert!(families.len() == 4 || families.len() == 6);
        InducedCover { families }
    }
}

impl CoverOracle for InducedCover<'_> {
    fn n(&self) -> usize {
        self.families.len()
    }

    fn contains(&self, cover: usize, set: usize, point: &SimplexPoint) -> bool {
        let config = chords_from_simplex(point);
        self.families[cover]
            .iter()
            .any(|b| config.body_in_region(set + 1, b))
    }

    fn margin(&self, cover: usize, set: usize, point: &SimplexPoint) -> f64 {
        let config = chords_from_simplex(point);
        let Some(region) = config.region(set + 1) else {
            return -1.0;
        };
        let mut best = -1.0f64;
        for body in &self.families[cover] {
            if !body.vertices().iter().all(|v| region.contains(&config, v)) {
                continue;
            }
            let mut slack = f64::INFINITY;
            for v in body.vertices() {
                slack = slack.min(1.0 - EPS_GEOM - v.norm());
                for (k, chord) in config.chords().iter().enumerate() {
                    if region.side_signs[k] != 0 {
                        slack = slack.min(chord.line().signed_dist(v).abs());
                    }
                }
            }
            best = best.max(slack);
        }
        best
    }
}

/// Searches for three lines piercing one of up to six families whose
/// cross-colored triples are all tight.
pub fn solve_three_lines(
    families: &[Vec<ConvexBody>],
    options: &SolveOptions,
) -> Result<SolveRun, SolverError> {
    solve(families, 6, options)
}

/// Searches for two lines piercing one of up to four families whose
/// cross-colored quadruples all admit a line transversal.
pub fn solve_two_lines(
    families: &[Vec<ConvexBody>],
    options: &SolveOptions,
) -> Result<SolveRun, SolverError> {
    solve(families, 4, options)
}

fn remap_witness(mut report: HypothesisReport, m: usize) -> HypothesisReport {
    if let Some(witness) = &mut report.witness_violation {
        for s in witness.iter_mut() {
            s.family = FamilyId(((s.family.0 as usize - 1) % m) as u8 + 1);
        }
    }
    report
}

fn solve(
    families: &[Vec<ConvexBody>],
    n: usize,
    options: &SolveOptions,
) -> Result<SolveRun, SolverError> {
    let m = families.len();
    if m == 0 || m > n || families.iter().any(|f| f.is_empty()) {
        return Err(SolverError::BadFamilyCount { max: n, got: m });
    }
    let padded = replicate_to(families, n);
    let mut timings = std::collections::BTreeMap::new();
    let clock = std::time::Instant::now();

    let hypothesis = if options.waive_hypothesis {
        None
    } else {
        let report = if n == 6 {
            if m == 1 {
                check_tight_triples(&families[0], options.allow_large)?
            } else {
                remap_witness(check_colorful_tight(&padded, options.allow_large)?, m)
            }
        } else {
            remap_witness(check_colorful_t4(&padded, options.allow_large)?, m)
        };
        if !report.holds {
            return Err(SolverError::HypothesisViolated(report));
        }
        Some(report)
    };
    timings.insert("hypothesis".into(), clock.elapsed().as_millis() as u64);
    let clock = std::time::Instant::now();

    let (transform, normalized) = normalize_to_disk(&padded)?;
    let grid_resolution = options
        .grid_resolution
        .unwrap_or(if n == 6 { 12 } else { 24 });

    // Phase A: coarse scan of the barycentric grid, keeping the best seeds
    // per (distinct) family.
    let per_family = (options.starts / m).max(4);
    let seeds = phase_a(&normalized[..m], n, grid_resolution, per_family);
    timings.insert("phase_a".into(), clock.elapsed().as_millis() as u64);
    let clock = std::time::Instant::now();

    // Phase B: multi-start descent from the best seeds.
    let best = phase_b(&normalized[..m], n, grid_resolution, &seeds, options);
    timings.insert("phase_b".into(), clock.elapsed().as_millis() as u64);
    let clock = std::time::Instant::now();

    if let Some((family, point, residual)) = &best {
        if *residual <= options.tol_residual {
            if let Some(cert) = emit_certificate(
                families,
                &normalized[*family],
                *family,
                point,
                &transform,
                options,
            ) {
                return Ok(SolveRun {
                    hypothesis,
                    outcome: SolveOutcome::Certificate(cert),
                    timings_ms: timings,
                });
            }
        }
    }

    // Dual branch: look for a colorful witness over the induced cover. A
    // KKM-condition violation at a grid vertex is itself an escape point and
    // may directly yield a certificate.
    let induced = InducedCover::new(&normalized);
    let dual_result = find_colorful_witness(&induced, options.dual_max_resolution);
    timings.insert("dual".into(), clock.elapsed().as_millis() as u64);
    match dual_result {
        Err(KkmError::ConditionViolated { cover, point }) => {
            let family = cover % m;
            let config = chords_from_simplex(&point);
            if family_residual(&config, &normalized[family], f64::INFINITY)
                <= options.tol_residual
            {
                if let Some(cert) = emit_certificate(
                    families,
                    &normalized[family],
                    family,
                    &point,
                    &transform,
                    options,
                ) {
                    return Ok(SolveRun {
                        hypothesis,
                        outcome: SolveOutcome::Certificate(cert),
                        timings_ms: timings,
                    });
                }
            }
        }
        Err(KkmError::BadPoint(_)) => {}
        Ok(Some(witness)) => {
            if let Some(dual) = build_dual_witness(&normalized, m, &witness) {
                return Ok(SolveRun {
                    hypothesis,
                    outcome: SolveOutcome::DualWitness(dual),
                    timings_ms: timings,
                });
            }
        }
        Ok(None) => {}
    }

    let (family, point, residual) = best.expect("phase B always reports a best point");
    Ok(SolveRun {
        hypothesis,
        outcome: SolveOutcome::Inconclusive {
            best_residual: residual,
            best_family: FamilyId((family % m) as u8 + 1),
            best_point: point,
        },
        timings_ms: timings,
    })
}

struct Seed {
    residual: f64,
    order: usize,
    weights: Vec<f64>,
}

fn phase_a(
    families: &[Vec<ConvexBody>],
    n: usize,
    resolution: usize,
    per_family: usize,
) -> Vec<Vec<Seed>> {
    const CHUNK: usize = 1024;
    let m = families.len();
    let mut result: Vec<Vec<Seed>> = (0..m).map(|_| Vec::new()).collect();
    let mut points = KuhnGrid::new(n, resolution).points();
    let mut offset = 0usize;
    loop {
        let chunk: Vec<SimplexPoint> = points.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let locals: Vec<Vec<Seed>> = chunk
            .par_iter()
            .enumerate()
            .fold(
                || (0..m).map(|_| Vec::new()).collect::<Vec<Vec<Seed>>>(),
                |mut acc, (i, x)| {
                    let config = chords_from_simplex(x);
                    for (j, family) in families.iter().enumerate() {
                        let cutoff = acc[j]
                            .last()
                            .filter(|_| acc[j].len() >= per_family)
                            .map_or(f64::INFINITY, |s: &Seed| s.residual);
                        let r = family_residual(&config, family, cutoff);
                        if r < cutoff {
                            let seed = Seed {
                                residual: r,
                                order: offset + i,
                                weights: x.coords().to_vec(),
                            };
                            let pos = acc[j]
                                .binary_search_by(|s| {
                                    s.residual.total_cmp(&r).then(std::cmp::Ordering::Less)
                                })
                                .unwrap_err();
                            acc[j].insert(pos, seed);
                            acc[j].truncate(per_family);
                        }
                    }
                    acc
                },
            )
            .reduce(
                || (0..m).map(|_| Vec::new()).collect::<Vec<Vec<Seed>>>(),
                |mut a, b| {
                    for (fa, fb) in a.iter_mut().zip(b) {
                        fa.extend(fb);
                    }
                    a
                },
            );
        for (j, local) in locals.into_iter().enumerate() {
            result[j].extend(local);
        }
        offset += chunk.len();
    }
    for family in &mut result {
        family.sort_by(|a, b| a.residual.total_cmp(&b.residual).then(a.order.cmp(&b.order)));
        family.truncate(per_family);
    }
    result
}

fn phase_b(
    families: &[Vec<ConvexBody>],
    _n: usize,
    resolution: usize,
    seeds: &[Vec<Seed>],
    options: &SolveOptions,
) -> Option<(usize, SimplexPoint, f64)> {
    let m = families.len();
    let mut order: Vec<usize> = (0..m).filter(|&j| !seeds[j].is_empty()).collect();
    order.sort_by(|&a, &b| {
        seeds[a][0]
            .residual
            .total_cmp(&seeds[b][0].residual)
            .then(a.cmp(&b))
    });
    if order.is_empty() {
        return None;
    }

    struct Start {
        family: usize,
        weights: Vec<f64>,
        scale: f64,
        rng_seed: u64,
    }
    let base_scale = 1.0 / resolution as f64;
    let mut starts: Vec<Start> = Vec::with_capacity(options.starts);
    let mut round = 0usize;
    while starts.len() < options.starts.max(1) {
        let mut added = false;
        for &j in &order {
            if starts.len() >= options.starts.max(1) {
                break;
            }
            let list = &seeds[j];
            let seed = &list[round % list.len()];
            starts.push(Start {
                family: j,
                weights: seed.weights.clone(),
                scale: base_scale * (1.0 + 0.5 * (round / list.len()) as f64),
                rng_seed: options
                    .seed
                    .wrapping_add((starts.len() as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
            });
            added = true;
        }
        if !added {
            break;
        }
        round += 1;
    }

    let descent = SimplexDescent {
        max_evals: options.evals_per_start,
        target: options.tol_residual,
    };
    let mut best: Option<(usize, usize, Vec<f64>, f64)> = None; // (start, family, x, f)
    for block in starts.chunks(4) {
        let block_offset = best.as_ref().map_or(0, |_| 0);
        let _ = block_offset;
        let results: Vec<(usize, Vec<f64>, f64)> = block
            .par_iter()
            .map(|start| {
                let family = &families[start.family];
                let f = |x: &[f64]| {
                    family_residual(&ChordConfig::from_weights(x), family, f64::INFINITY)
                };
                let mut rng = ChaCha8Rng::seed_from_u64(start.rng_seed);
                let (x, v) = descent.run(f, &start.weights, start.scale, &mut rng);
                (start.family, x, v)
            })
            .collect();
        for (i, (family, x, v)) in results.into_iter().enumerate() {
            let idx = starts
                .iter()
                .position(|s| std::ptr::eq(s, &block[i]))
                .unwrap_or(0);
            let better = match &best {
                None => true,
                Some((bi, _, _, bv)) => v < *bv || (v == *bv && idx < *bi),
            };
            if better {
                best = Some((idx, family, x, v));
            }
        }
        if let Some((_, _, _, v)) = &best {
            if *v <= options.tol_residual {
                break;
            }
        }
    }
    best.map(|(_, family, x, v)| {
        let point = SimplexPoint::new(project_to_simplex(&x)).expect("projected point");
        (family, point, v)
    })
}

/// Builds and fully re-verifies a certificate at `point` for `family_idx`;
/// returns `None` when verification fails (never emits a false certificate).
fn emit_certificate(
    original: &[Vec<ConvexBody>],
    normalized_family: &[ConvexBody],
    family_idx: usize,
    point: &SimplexPoint,
    transform: &AffineMap,
    options: &SolveOptions,
) -> Option<PiercingCertificate> {
    let config = chords_from_simplex(point);
    let residual = family_residual(&config, normalized_family, f64::INFINITY);
    if residual > options.tol_residual {
        return None;
    }
    let lines: Vec<LineEq> = config.chords().iter().map(|c| c.line()).collect();
    let mut assignment = Vec::with_capacity(normalized_family.len());
    for body in normalized_family {
        let mut best = (f64::INFINITY, 0usize);
        for (k, chord) in config.chords().iter().enumerate() {
            let d = body.segment_distance(chord);
            if d < best.0 {
                best = (d, k);
            }
        }
        if !body.hits_line_tol(&lines[best.1], EPS_GEOM.max(options.tol_residual)) {
            return None;
        }
        assignment.push(best.1);
    }
    let lines_original: Vec<LineEq> = lines.iter().map(|l| transform.pull_back_line(l)).collect();
    let cert = PiercingCertificate {
        lines,
        lines_original,
        family: FamilyId((family_idx % original.len()) as u8 + 1),
        assignment,
        residual,
        witness: point.clone(),
        transform: *transform,
    };
    if verify_certificate(original, &cert) {
        Some(cert)
    } else {
        None
    }
}

fn build_dual_witness(
    normalized: &[Vec<ConvexBody>],
    m: usize,
    witness: &ColorfulWitness,
) -> Option<DualWitness> {
    let n = normalized.len();
    let config = chords_from_simplex(&witness.point);
    // Locate, per family j, the first set inside region permutation[j] + 1.
    let mut placements: Vec<(usize, SetRef)> = Vec::with_capacity(n);
    let mut region_to_body: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    for (j, &set) in witness.permutation.iter().enumerate() {
        let region = set + 1;
        let idx = normalized[j]
            .iter()
            .position(|b| config.body_in_region(region, b))?;
        placements.push((
            region,
            SetRef {
                family: FamilyId((j % m) as u8 + 1),
                index: idx,
            },
        ));
        region_to_body[region] = Some((j, idx));
    }
    if n == 6 {
        // One of the alternating region triples is pairwise disjoint; its
        // occupants cannot form a tight triple. Re-verify before emitting.
        for triple in [[1usize, 3, 5], [2, 4, 6]] {
            let bodies: Vec<&ConvexBody> = triple
                .iter()
                .filter_map(|&r| region_to_body[r].map(|(j, i)| &normalized[j][i]))
                .collect();
            if bodies.len() != 3 {
                continue;
            }
            if !tight_triple(bodies[0], bodies[1], bodies[2]) {
                let violating = triple
                    .iter()
                    .map(|&r| {
                        let (j, i) = region_to_body[r].unwrap();
                        SetRef {
                            family: FamilyId((j % m) as u8 + 1),
                            index: i,
                        }
                    })
                    .collect();
                return Some(DualWitness {
                    kind: DualWitnessKind::NonTightTriple,
                    witness: witness.clone(),
                    placements,
                    violating,
                });
            }
        }
        None
    } else {
        // Four sets in the four distinct cells of two crossing chords: a
        // line meets at most three of them, so the quadruple cannot have a
        // transversal. Re-verify before emitting.
        let bodies: Vec<ConvexBody> = (1..=4)
            .filter_map(|r| region_to_body[r].map(|(j, i)| normalized[j][i].clone()))
            .collect();
        if bodies.len() != 4 {
            return None;
        }
        if common_transversal(&bodies).ok()?.is_none() {
            let violating = (1..=4)
                .map(|r| {
                    let (j, i) = region_to_body[r].unwrap();
                    SetRef {
                        family: FamilyId((j % m) as u8 + 1),
                        index: i,
                    }
                })
                .collect();
            return Some(DualWitness {
                kind: DualWitnessKind::NoTransversalQuadruple,
                witness: witness.clone(),
                placements,
                violating,
            });
        }
        None
    }
}

/// Re-verifies a certificate against the instance in original coordinates:
/// every set of the certified family must be hit by its assigned line, or
/// failing that by any certificate line (the assignment is advisory). The
/// tolerance is the normalized-space tolerance pulled back through the
/// transform, and the original-coordinate lines must match the pullbacks of
/// the normalized ones.
pub fn verify_certificate(families: &[Vec<ConvexBody>], cert: &PiercingCertificate) -> bool {
    let Some(family) = families.get(cert.family.index()) else {
        return false;
    };
    if cert.assignment.len() != family.len()
        || cert.lines.len() != cert.lines_original.len()
        || cert.lines.is_empty()
    {
        return false;
    }
    for (normalized, original) in cert.lines.iter().zip(&cert.lines_original) {
        if !cert
            .transform
            .pull_back_line(normalized)
            .approx_eq(original, 1e-9)
        {
            return false;
        }
    }
    let tol = (EPS_GEOM + 1e-12) / cert.transform.scale;
    family.iter().enumerate().all(|(i, body)| {
        cert.assignment
            .get(i)
            .and_then(|&k| cert.lines_original.get(k))
            .is_some_and(|line| body.hits_line_tol(line, tol))
            || cert
                .lines_original
                .iter()
                .any(|line| body.hits_line_tol(line, tol))
    })
}

/// The deepest certificate line for a single family: the line hitting the
/// most sets. By pigeonhole the count is at least `ceil(|family| / 3)`
/// whenever the three-line solve succeeds on six replicas of the family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeepLine {
    pub line: LineEq,
    pub line_normalized: LineEq,
    pub hits: usize,
    pub certificate: PiercingCertificate,
}

pub fn deep_line(family: &[ConvexBody], options: &SolveOptions) -> Result<DeepLine, SolverError> {
    let run = solve_three_lines(&[family.to_vec()], options)?;
    let cert = match run.outcome {
        SolveOutcome::Certificate(cert) => cert,
        other => return Err(SolverError::NoCertificate(other.label())),
    };
    let tol = (EPS_GEOM + 1e-12) / cert.transform.scale;
    let mut best = (0usize, 0usize);
    for (k, line) in cert.lines_original.iter().enumerate() {
        let hits = family.iter().filter(|b| b.hits_line_tol(line, tol)).count();
        if hits > best.1 {
            best = (k, hits);
        }
    }
    Ok(DeepLine {
        line: cert.lines_original[best.0],
        line_normalized: cert.lines[best.0],
        hits: best.1,
        certificate: cert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{convex_hull, Point};

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn square(cx: f64, cy: f64, r: f64) -> ConvexBody {
        convex_hull(&[
            pt(cx - r, cy - r),
            pt(cx + r, cy - r),
            pt(cx + r, cy + r),
            pt(cx - r, cy + r),
        ])
        .unwrap()
    }

    #[test]
    fn stabbed_single_family_certifies() {
        // Bodies crossing the x-axis: one line suffices, three are reported.
        let family: Vec<ConvexBody> = (0..8)
            .map(|i| square(i as f64 * 2.0, 0.0, 0.3))
            .collect();
        let run = solve_three_lines(&[family.clone()], &SolveOptions::default()).unwrap();
        match run.outcome {
            SolveOutcome::Certificate(cert) => {
                assert!(cert.residual <= TOL_RESIDUAL);
                assert_eq!(cert.family, FamilyId(1));
                assert!(verify_certificate(&[family], &cert));
            }
            other => panic!("expected certificate, got {}", other.label()),
        }
        assert!(run.hypothesis.unwrap().holds);
    }

    #[test]
    fn hypothesis_violation_is_an_error() {
        let family = vec![
            ConvexBody::point(pt(0.0, 0.0)),
            ConvexBody::point(pt(1.0, 0.0)),
            ConvexBody::point(pt(0.0, 1.0)),
        ];
        let err = solve_three_lines(&[family], &SolveOptions::default()).unwrap_err();
        match err {
            SolverError::HypothesisViolated(report) => {
                assert!(!report.holds);
                assert!(report.witness_violation.is_some());
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn waived_triangle_never_yields_false_certificate() {
        let family = vec![
            ConvexBody::point(pt(0.0, 0.0)),
            ConvexBody::point(pt(1.0, 0.0)),
            ConvexBody::point(pt(0.0, 1.0)),
        ];
        let options = SolveOptions {
            waive_hypothesis: true,
            ..SolveOptions::default()
        };
        let run = solve_three_lines(&[family.clone()], &options).unwrap();
        assert!(run.hypothesis.is_none());
        if let SolveOutcome::Certificate(cert) = &run.outcome {
            assert!(verify_certificate(&[family], cert));
        }
    }

    #[test]
    fn two_lines_on_stabbed_family() {
        let family: Vec<ConvexBody> = (0..6)
            .map(|i| square(i as f64 * 3.0, 0.0, 0.4))
            .collect();
        let run = solve_two_lines(&[family.clone()], &SolveOptions::default()).unwrap();
        match run.outcome {
            SolveOutcome::Certificate(cert) => {
                assert_eq!(cert.lines.len(), 2);
                assert!(cert.residual <= TOL_RESIDUAL);
                assert!(verify_certificate(&[family], &cert));
            }
            other => panic!("expected certificate, got {}", other.label()),
        }
    }

    #[test]
    fn deep_line_on_common_transversal_family_hits_all() {
        let family: Vec<ConvexBody> = (0..12)
            .map(|i| square(i as f64, 0.0, 0.2))
            .collect();
        let deep = deep_line(&family, &SolveOptions::default()).unwrap();
        assert_eq!(deep.hits, 12);
    }

    #[test]
    fn perturbed_certificate_fails_verification() {
        let family: Vec<ConvexBody> = (0..8)
            .map(|i| square(i as f64 * 2.0, 0.0, 0.25))
            .collect();
        let run = solve_three_lines(&[family.clone()], &SolveOptions::default()).unwrap();
        let SolveOutcome::Certificate(cert) = run.outcome else {
            panic!("expected certificate");
        };
        let mut bad = cert.clone();
        for line in &mut bad.lines_original {
            line.c += 0.5;
        }
        for line in &mut bad.lines {
            line.c += 0.5 * bad.transform.scale;
        }
        assert!(!verify_certificate(&[family.clone()], &bad));

        // Shuffling the assignment alone must not break verification.
        let mut shuffled = cert.clone();
        shuffled.assignment.rotate_left(1);
        assert!(verify_certificate(&[family], &shuffled));
    }

    #[test]
    fn induced_cover_point_body_at_origin() {
        let families: Vec<Vec<ConvexBody>> =
            (0..6).map(|_| vec![ConvexBody::point(pt(0.0, 0.0))]).collect();
        let cover = InducedCover::new(&families);
        let barycenter = SimplexPoint::barycenter(6);
        for j in 0..6 {
            for i in 0..6 {
                assert!(!cover.contains(j, i, &barycenter));
            }
        }
    }

    #[test]
    fn induced_cover_body_near_arc() {
        // A tiny body hugging arc 3 of the barycentric hexagon configuration.
        let theta = 2.0 * std::f64::consts::PI * (2.5 / 6.0);
        let c = pt(0.93 * theta.cos(), 0.93 * theta.sin());
        let body = square(c.x, c.y, 0.01);
        let families: Vec<Vec<ConvexBody>> = (0..6).map(|_| vec![body.clone()]).collect();
        let cover = InducedCover::new(&families);
        let barycenter = SimplexPoint::barycenter(6);
        assert!(cover.contains(0, 2, &barycenter), "region 3 holds the body");
        assert!(cover.margin(0, 2, &barycenter) > 0.0);
    }
}
