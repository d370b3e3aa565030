//! Certified instance generators. Every kind self-checks its advertised
//! hypothesis before returning and is deterministic given the seed. Randomly
//! placed bodies that violate the hypothesis are repaired by growing them
//! toward each other; growth never breaks an already-satisfied triple (all
//! hulls only gain points), so a single resumable scan suffices.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::instance::{family_record, InstanceFile};
use crate::geom::{convex_hull, ConvexBody, Point};
use crate::solver::chords_from_simplex;
use crate::transversal::{
    check_colorful_t4, check_colorful_tight, check_t_r, check_tight_triples, common_transversal,
    replicate_to, tight_triple,
};

/// Hard cap on rejection/repair attempts, per the generator contract.
pub const MAX_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    /// Every body meets one planted line.
    Stabbed,
    /// Bodies along three planted lines, repaired until T(3) holds.
    Planted3,
    /// Bodies on the chords of a hidden simplex point, colorful.
    PlantedChords,
    /// Random bodies repaired until the colorful hypothesis holds.
    TightRandom,
    /// A known non-tight triple embedded in an otherwise tight family.
    Violator,
}

impl GenKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GenKind::Stabbed => "stabbed",
            GenKind::Planted3 => "planted3",
            GenKind::PlantedChords => "plantedChords",
            GenKind::TightRandom => "tightRandom",
            GenKind::Violator => "violator",
        }
    }

    pub fn parse(s: &str) -> Option<GenKind> {
        match s {
            "stabbed" => Some(GenKind::Stabbed),
            "planted3" => Some(GenKind::Planted3),
            "plantedChords" | "planted-chords" => Some(GenKind::PlantedChords),
            "tightRandom" | "tight-random" => Some(GenKind::TightRandom),
            "violator" => Some(GenKind::Violator),
            _ => None,
        }
    }

    /// Default family count when the caller does not specify one.
    pub fn default_families(&self) -> usize {
        match self {
            GenKind::Stabbed | GenKind::Planted3 | GenKind::Violator => 1,
            GenKind::PlantedChords | GenKind::TightRandom => 6,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error("generator {kind} exhausted its attempt budget ({attempts})")]
    Exhausted { kind: &'static str, attempts: usize },
    #[error("bad generator parameters: {0}")]
    BadParams(String),
}

/// Generates a certified instance of the given kind with `n` bodies split
/// round-robin across `families` families.
pub fn generate(
    kind: GenKind,
    n: usize,
    families: usize,
    seed: u64,
) -> Result<InstanceFile, GenError> {
    if n == 0 {
        return Err(GenError::BadParams("need at least one body".into()));
    }
    if !(1..=6).contains(&families) {
        return Err(GenError::BadParams(format!(
            "family count {families} outside 1..=6"
        )));
    }
    if kind == GenKind::Violator && n < 3 {
        return Err(GenError::BadParams(
            "violator needs at least three bodies".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (family_bodies, mut metadata) = match kind {
        GenKind::Stabbed => gen_stabbed(n, families, &mut rng)?,
        GenKind::Planted3 => gen_planted3(n, families, &mut rng)?,
        GenKind::PlantedChords => gen_planted_chords(n, families, &mut rng)?,
        GenKind::TightRandom => gen_tight_random(n, families, &mut rng)?,
        GenKind::Violator => gen_violator(n, families, &mut rng)?,
    };
    metadata.insert("generator".into(), kind.as_str().into());
    metadata.insert("seed".into(), seed.to_string());
    metadata.insert("bodies".into(), n.to_string());
    let records = family_bodies
        .iter()
        .enumerate()
        .map(|(i, bodies)| family_record(&format!("F{}", i + 1), bodies))
        .collect();
    let mut instance = InstanceFile::new(records);
    instance.metadata = metadata;
    Ok(instance)
}

type GenOut = (Vec<Vec<ConvexBody>>, BTreeMap<String, String>);

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen::<f64>()
}

fn random_blob(rng: &mut ChaCha8Rng, center: Point, radius: f64, k: usize) -> ConvexBody {
    let pts: Vec<Point> = (0..k)
        .map(|_| {
            let a = uniform(rng, 0.0, 2.0 * PI);
            let r = radius * rng.gen::<f64>().sqrt();
            Point::new(center.x + r * a.cos(), center.y + r * a.sin())
        })
        .collect();
    convex_hull(&pts).expect("nonempty blob")
}

/// Thin convex strip containing the whole segment `[a, b]`.
fn thin_strip(rng: &mut ChaCha8Rng, a: Point, b: Point, width: f64) -> ConvexBody {
    let d = b.sub(&a);
    let len = d.norm().max(1e-12);
    let n = Point::new(-d.y / len, d.x / len).scale(width);
    let mut pts = vec![a.add(&n), a.sub(&n), b.add(&n), b.sub(&n)];
    // A little asymmetry so strips are not all rectangles.
    let t = uniform(rng, 0.2, 0.8);
    pts.push(a.lerp(&b, t).add(&n.scale(uniform(rng, 1.0, 2.0))));
    convex_hull(&pts).expect("strip")
}

fn grow_toward(body: &ConvexBody, target: Point, step: f64) -> ConvexBody {
    let c = body.centroid();
    let q = c.lerp(&target, step);
    let mut pts = body.vertices().to_vec();
    pts.push(q);
    convex_hull(&pts).expect("growth keeps at least the old vertices")
}

/// Escalating growth: gentle steps first, then the exact target point. Once
/// the body contains the target the repaired tuple is provably satisfied, so
/// per-tuple repair terminates.
fn grow_step(body: &ConvexBody, target: Point, attempt: usize) -> ConvexBody {
    let step = match attempt {
        0 => 0.35,
        1 => 0.7,
        _ => 1.0,
    };
    grow_toward(body, target, step)
}

fn split_round_robin(bodies: Vec<ConvexBody>, families: usize) -> Vec<Vec<ConvexBody>> {
    let mut out: Vec<Vec<ConvexBody>> = (0..families).map(|_| Vec::new()).collect();
    for (i, b) in bodies.into_iter().enumerate() {
        out[i % families].push(b);
    }
    out
}

fn gen_stabbed(n: usize, families: usize, rng: &mut ChaCha8Rng) -> Result<GenOut, GenError> {
    if n < families {
        return Err(GenError::BadParams("fewer bodies than families".into()));
    }
    let base = Point::new(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    let angle = uniform(rng, 0.0, PI);
    let dir = Point::new(angle.cos(), angle.sin());
    let mut bodies = Vec::with_capacity(n);
    for _ in 0..n {
        let anchor = base.add(&dir.scale(uniform(rng, -3.0, 3.0)));
        let style = rng.gen::<f64>();
        let body = if style < 0.1 {
            ConvexBody::point(anchor)
        } else if style < 0.3 {
            let a2 = uniform(rng, 0.0, 2.0 * PI);
            let half = Point::new(a2.cos(), a2.sin()).scale(uniform(rng, 0.1, 0.5));
            ConvexBody::segment(anchor.sub(&half), anchor.add(&half))
        } else {
            // Recenter a random blob so its centroid sits on the line.
            let radius = uniform(rng, 0.15, 0.5);
            let k = rng.gen_range(3..8);
            let blob = random_blob(rng, anchor, radius, k);
            let shift = anchor.sub(&blob.centroid());
            convex_hull(
                &blob
                    .vertices()
                    .iter()
                    .map(|v| v.add(&shift))
                    .collect::<Vec<_>>(),
            )
            .expect("shifted blob")
        };
        bodies.push(body);
    }
    let line = common_transversal(&bodies)
        .expect("nonempty")
        .ok_or(GenError::Exhausted {
            kind: "stabbed",
            attempts: 1,
        })?;
    let mut metadata = BTreeMap::new();
    metadata.insert(
        "planted_line".into(),
        format!("{:.6}x + {:.6}y = {:.6}", line.a, line.b, line.c),
    );
    Ok((split_round_robin(bodies, families), metadata))
}

fn gen_planted3(n: usize, families: usize, rng: &mut ChaCha8Rng) -> Result<GenOut, GenError> {
    if n < families {
        return Err(GenError::BadParams("fewer bodies than families".into()));
    }
    // Three pairwise crossing points, well separated and not collinear.
    let mut attempts = 0usize;
    let crossings = loop {
        attempts += 1;
        if attempts > MAX_ATTEMPTS {
            return Err(GenError::Exhausted {
                kind: "planted3",
                attempts,
            });
        }
        let ps: Vec<Point> = (0..3)
            .map(|_| {
                let a = uniform(rng, 0.0, 2.0 * PI);
                let r = uniform(rng, 0.3, 1.0);
                Point::new(r * a.cos(), r * a.sin())
            })
            .collect();
        let ok = ps[0].dist(&ps[1]) > 0.6
            && ps[0].dist(&ps[2]) > 0.6
            && ps[1].dist(&ps[2]) > 0.6
            && crate::geom::orient(ps[0], ps[1], ps[2]) != 0;
        if ok {
            break ps;
        }
    };
    // Line i joins the two crossings it participates in.
    let line_ends = [
        (crossings[0], crossings[1]),
        (crossings[0], crossings[2]),
        (crossings[1], crossings[2]),
    ];
    let mut bodies = Vec::with_capacity(n);
    for i in 0..n {
        let (ca, cb) = line_ends[i % 3];
        let e = cb.sub(&ca);
        let (a, b) = if rng.gen::<f64>() < 0.55 {
            // Spanning: covers both crossings with overhang.
            (
                ca.sub(&e.scale(uniform(rng, 0.05, 0.4))),
                cb.add(&e.scale(uniform(rng, 0.05, 0.4))),
            )
        } else {
            // Around one crossing only.
            let c = if rng.gen::<bool>() { ca } else { cb };
            (
                c.sub(&e.scale(uniform(rng, 0.05, 0.35))),
                c.add(&e.scale(uniform(rng, 0.05, 0.35))),
            )
        };
        let width = uniform(rng, 0.005, 0.03);
        bodies.push(thin_strip(rng, a, b, width));
    }
    repair_t3(&mut bodies, &mut attempts)?;
    let report = check_t_r(&bodies, 3, true).expect("nonempty family");
    debug_assert!(report.holds);
    if !report.holds {
        return Err(GenError::Exhausted {
            kind: "planted3",
            attempts: MAX_ATTEMPTS,
        });
    }
    let transversal = common_transversal(&bodies).expect("nonempty").is_some();
    let mut metadata = BTreeMap::new();
    metadata.insert(
        "common_transversal".into(),
        if transversal { "present" } else { "absent" }.into(),
    );
    Ok((split_round_robin(bodies, families), metadata))
}

fn gen_planted_chords(n: usize, families: usize, rng: &mut ChaCha8Rng) -> Result<GenOut, GenError> {
    if n < families {
        return Err(GenError::BadParams("fewer bodies than families".into()));
    }
    let arcs = if families == 4 { 4 } else { 6 };
    // Hidden interior simplex point with no tiny arc.
    let mut attempts = 0usize;
    let hidden: Vec<f64> = loop {
        attempts += 1;
        if attempts > MAX_ATTEMPTS {
            return Err(GenError::Exhausted {
                kind: "plantedChords",
                attempts,
            });
        }
        let raw: Vec<f64> = (0..arcs).map(|_| -rng.gen::<f64>().max(1e-12).ln()).collect();
        let sum: f64 = raw.iter().sum();
        let x: Vec<f64> = raw.iter().map(|v| v / sum).collect();
        if x.iter().all(|&c| c >= 0.06) {
            break x;
        }
    };
    let config = chords_from_simplex(
        &crate::kkm::SimplexPoint::new(hidden.clone()).expect("normalized"),
    );
    let mut bodies = Vec::with_capacity(n);
    for i in 0..n {
        let chord = &config.chords()[i % config.chords().len()];
        let t = uniform(rng, 0.15, 0.85);
        let anchor = chord.p.lerp(&chord.q, t);
        let radius = uniform(rng, 0.02, 0.06);
        let k = rng.gen_range(3..7);
        let blob = random_blob(rng, anchor, radius, k);
        let mut pts = blob.vertices().to_vec();
        pts.push(anchor);
        bodies.push(convex_hull(&pts).expect("anchored blob"));
    }
    let mut family_bodies = split_round_robin(bodies, families);
    if families == 4 {
        repair_colorful_t4(&mut family_bodies, &mut attempts)?;
        debug_assert!(check_colorful_t4(&family_bodies, true)
            .expect("4 families")
            .holds);
    } else {
        repair_colorful_tight(&mut family_bodies, &mut attempts)?;
        let padded = replicate_to(&family_bodies, 6);
        debug_assert!(check_colorful_tight(&padded, true).expect("6 families").holds);
    }
    let mut metadata = BTreeMap::new();
    metadata.insert(
        "hidden_point".into(),
        hidden
            .iter()
            .map(|c| format!("{c:.6}"))
            .collect::<Vec<_>>()
            .join(","),
    );
    Ok((family_bodies, metadata))
}

fn gen_tight_random(n: usize, families: usize, rng: &mut ChaCha8Rng) -> Result<GenOut, GenError> {
    if n < families {
        return Err(GenError::BadParams("fewer bodies than families".into()));
    }
    let bodies: Vec<ConvexBody> = (0..n)
        .map(|_| {
            let a = uniform(rng, 0.0, 2.0 * PI);
            let r = uniform(rng, 0.0, 1.4);
            let center = Point::new(r * a.cos(), r * a.sin());
            let radius = uniform(rng, 0.35, 0.8);
            let k = rng.gen_range(4..8);
            random_blob(rng, center, radius, k)
        })
        .collect();
    let mut family_bodies = split_round_robin(bodies, families);
    let mut attempts = 0usize;
    if families == 4 {
        repair_colorful_t4(&mut family_bodies, &mut attempts)?;
        debug_assert!(check_colorful_t4(&family_bodies, true)
            .expect("4 families")
            .holds);
    } else {
        repair_colorful_tight(&mut family_bodies, &mut attempts)?;
        let padded = replicate_to(&family_bodies, 6);
        debug_assert!(check_colorful_tight(&padded, true).expect("6 families").holds);
    }
    Ok((family_bodies, BTreeMap::new()))
}

fn gen_violator(n: usize, families: usize, rng: &mut ChaCha8Rng) -> Result<GenOut, GenError> {
    let scale = uniform(rng, 0.5, 2.0);
    let off = Point::new(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    let triangle = [
        Point::new(off.x, off.y),
        Point::new(off.x + scale, off.y),
        Point::new(off.x, off.y + scale),
    ];
    // Fillers contain the whole triangle, so only the embedded triple violates.
    let mut bodies: Vec<ConvexBody> = triangle.iter().map(|p| ConvexBody::point(*p)).collect();
    for _ in 3..n {
        let pad = uniform(rng, 0.2, 0.8);
        bodies.push(
            convex_hull(&[
                Point::new(off.x - pad, off.y - pad),
                Point::new(off.x + scale + pad, off.y - pad),
                Point::new(off.x + scale + pad, off.y + scale + pad),
                Point::new(off.x - pad, off.y + scale + pad),
            ])
            .expect("filler"),
        );
    }
    debug_assert!(!tight_triple(&bodies[0], &bodies[1], &bodies[2]));
    let family_bodies = if families == 1 {
        let report = check_tight_triples(&bodies, true).expect("nonempty");
        debug_assert!(!report.holds);
        vec![bodies]
    } else {
        // The three triangle points land in three distinct families.
        let split = split_round_robin(bodies, families);
        let padded = replicate_to(&split, 6);
        let report = check_colorful_tight(&padded, true).expect("6 families");
        debug_assert!(!report.holds);
        split
    };
    let mut metadata = BTreeMap::new();
    metadata.insert("embedded_witness".into(), "first three bodies".into());
    Ok((family_bodies, metadata))
}

/// Scans all triples once, growing the third body of any violating triple
/// until the triple has a transversal. Growth is monotone-safe: triples
/// verified earlier stay satisfied.
fn repair_t3(bodies: &mut [ConvexBody], attempts: &mut usize) -> Result<(), GenError> {
    let n = bodies.len();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut local = 0usize;
                loop {
                    let triple = [bodies[i].clone(), bodies[j].clone(), bodies[k].clone()];
                    if common_transversal(&triple).expect("nonempty").is_some() {
                        break;
                    }
                    *attempts += 1;
                    if *attempts > MAX_ATTEMPTS {
                        return Err(GenError::Exhausted {
                            kind: "planted3",
                            attempts: *attempts,
                        });
                    }
                    // Once body k contains the centroid midpoint, the line
                    // through the two centroids is a transversal of the triple.
                    let target = bodies[i].centroid().lerp(&bodies[j].centroid(), 0.5);
                    bodies[k] = grow_step(&bodies[k], target, local);
                    local += 1;
                }
            }
        }
    }
    Ok(())
}

/// Scans all cross-family triples of the six-fold replication once, growing
/// violating bodies until tight.
fn repair_colorful_tight(
    families: &mut [Vec<ConvexBody>],
    attempts: &mut usize,
) -> Result<(), GenError> {
    let m = families.len();
    for f1 in 0..6usize {
        for f2 in (f1 + 1)..6 {
            for f3 in (f2 + 1)..6 {
                let counts = (
                    families[f1 % m].len(),
                    families[f2 % m].len(),
                    families[f3 % m].len(),
                );
                for i1 in 0..counts.0 {
                    for i2 in 0..counts.1 {
                        for i3 in 0..counts.2 {
                            let mut local = 0usize;
                            loop {
                                let a = &families[f1 % m][i1];
                                let b = &families[f2 % m][i2];
                                let c = &families[f3 % m][i3];
                                if tight_triple(a, b, c) {
                                    break;
                                }
                                // The centroid midpoint of a and b lies in
                                // all three union hulls once c contains it.
                                let target = a.centroid().lerp(&b.centroid(), 0.5);
                                *attempts += 1;
                                if *attempts > MAX_ATTEMPTS {
                                    return Err(GenError::Exhausted {
                                        kind: "tight repair",
                                        attempts: *attempts,
                                    });
                                }
                                families[f3 % m][i3] =
                                    grow_step(&families[f3 % m][i3], target, local);
                                local += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Scans all cross-family quadruples once (4 families), growing violating
/// bodies until each quadruple has a transversal.
fn repair_colorful_t4(
    families: &mut [Vec<ConvexBody>],
    attempts: &mut usize,
) -> Result<(), GenError> {
    let m = families.len();
    assert_eq!(m, 4);
    // Fast path: a single transversal of everything settles all quadruples.
    let all: Vec<ConvexBody> = families.iter().flatten().cloned().collect();
    if common_transversal(&all).expect("nonempty").is_some() {
        return Ok(());
    }
    let counts: Vec<usize> = families.iter().map(|f| f.len()).collect();
    for i1 in 0..counts[0] {
        for i2 in 0..counts[1] {
            for i3 in 0..counts[2] {
                for i4 in 0..counts[3] {
                    loop {
                        let tuple = [
                            families[0][i1].clone(),
                            families[1][i2].clone(),
                            families[2][i3].clone(),
                            families[3][i4].clone(),
                        ];
                        if common_transversal(&tuple).expect("nonempty").is_some() {
                            break;
                        }
                        *attempts += 1;
                        if *attempts > MAX_ATTEMPTS {
                            return Err(GenError::Exhausted {
                                kind: "t4 repair",
                                attempts: *attempts,
                            });
                        }
                        let target = tuple[0]
                            .centroid()
                            .lerp(&tuple[1].centroid(), 0.5)
                            .lerp(&tuple[2].centroid(), 0.5);
                        families[3][i4] = grow_toward(&families[3][i4], target, 0.35);
                    }
                }
            }
        }
    }
    Ok(())
}
