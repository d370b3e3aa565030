//! Decision procedures for transversal hypotheses: existence of a common
//! line transversal, property `T(r)`, tight triples and the colorful
//! variants quantified over up to six colored families.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geom::{bodies_intersect, convex_hull, ConvexBody, LineEq, Point};

/// One-based color index of a family; at most six families are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyId(pub u8);

impl FamilyId {
    pub fn index(&self) -> usize {
        self.0 as usize - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Property {
    T3,
    T4,
    TightTriples,
    ColorfulTightTriples,
    ColorfulT4,
}

/// A `(family, set index)` reference into an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetRef {
    pub family: FamilyId,
    pub index: usize,
}

/// Outcome of a hypothesis check. `holds == false` always comes with the
/// lexicographically first violating tuple, and any reported violation
/// re-verifies as a violation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub property: Property,
    pub holds: bool,
    pub witness_violation: Option<Vec<SetRef>>,
}

impl HypothesisReport {
    fn holds(property: Property) -> HypothesisReport {
        HypothesisReport {
            property,
            holds: true,
            witness_violation: None,
        }
    }

    fn violated(property: Property, witness: Vec<SetRef>) -> HypothesisReport {
        HypothesisReport {
            property,
            holds: false,
            witness_violation: Some(witness),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TransversalError {
    #[error("empty input: at least one body is required")]
    EmptyInput,
    #[error("unsupported r = {0}: only T(3) and T(4) are implemented")]
    UnsupportedR(u32),
    #[error("expected exactly {expected} families, got {got}")]
    BadArity { expected: usize, got: usize },
    #[error("input of size {size} exceeds the exhaustive-check cap {cap}; pass --allow-large")]
    TooLarge { size: usize, cap: usize },
}

/// Family-size cap for exhaustive T(r) checks (82,160 triples at r = 3).
pub const T_R_FAMILY_CAP: usize = 80;
/// Cap on the number of cross-family triples checked exhaustively.
pub const TIGHT_TRIPLE_CAP: usize = 1_500_000;
/// Cap on the number of cross-family quadruples checked exhaustively.
pub const COLORFUL_T4_CAP: usize = 250_000;

/// Searches for a single line meeting every body (closed semantics).
///
/// Candidates are the lines through every pair of distinct vertices drawn
/// from the union of all bodies: a common transversal, if one exists, can be
/// translated and rotated until it touches two vertices of the
/// configuration, so the enumeration is complete. The returned line always
/// re-verifies against every body.
pub fn common_transversal(bodies: &[ConvexBody]) -> Result<Option<LineEq>, TransversalError> {
    if bodies.is_empty() {
        return Err(TransversalError::EmptyInput);
    }
    let mut vertices: Vec<Point> = Vec::new();
    for body in bodies {
        for v in body.vertices() {
            if !vertices.contains(v) {
                vertices.push(*v);
            }
        }
    }
    if vertices.len() == 1 {
        // All bodies are the same point; any line through it works.
        let v = vertices[0];
        let line = LineEq::through(v, Point::new(v.x + 1.0, v.y)).expect("distinct points");
        return Ok(if bodies.iter().all(|b| b.hits_line(&line)) {
            Some(line)
        } else {
            None
        });
    }
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            let Some(line) = LineEq::through(vertices[i], vertices[j]) else {
                continue;
            };
            if bodies.iter().all(|b| b.hits_line(&line)) {
                return Ok(Some(line));
            }
        }
    }
    Ok(None)
}

/// Exhaustively checks property `T(r)` for `r` in `{3, 4}`: every subset of
/// `min(r, |family|)` bodies must admit a line transversal. Reports the
/// lexicographically first violating subset.
pub fn check_t_r(
    family: &[ConvexBody],
    r: u32,
    allow_large: bool,
) -> Result<HypothesisReport, TransversalError> {
    if !(r == 3 || r == 4) {
        return Err(TransversalError::UnsupportedR(r));
    }
    if family.is_empty() {
        return Err(TransversalError::EmptyInput);
    }
    if family.len() > T_R_FAMILY_CAP && !allow_large {
        return Err(TransversalError::TooLarge {
            size: family.len(),
            cap: T_R_FAMILY_CAP,
        });
    }
    let property = if r == 3 { Property::T3 } else { Property::T4 };
    let n = family.len();
    let k = (r as usize).min(n);
    let witness = |subset: &[usize]| {
        subset
            .iter()
            .map(|&i| SetRef {
                family: FamilyId(1),
                index: i,
            })
            .collect::<Vec<_>>()
    };
    // Parallel over the first index; lexicographic order is restored by
    // taking the minimum violating subset.
    let first = (0..=(n - k))
        .into_par_iter()
        .filter_map(|i0| {
            let mut best: Option<Vec<usize>> = None;
            let mut subset = vec![0usize; k];
            subset[0] = i0;
            enumerate_tail(&mut subset, 1, n, &mut |s| {
                let bodies: Vec<ConvexBody> = s.iter().map(|&i| family[i].clone()).collect();
                if common_transversal(&bodies).expect("nonempty").is_none() {
                    best = Some(s.to_vec());
                    false
                } else {
                    true
                }
            });
            best
        })
        .min();
    Ok(match first {
        Some(subset) => HypothesisReport::violated(property, witness(&subset)),
        None => HypothesisReport::holds(property),
    })
}

/// Walks combinations `subset[pos..]` in increasing order, calling `f` on
/// each complete subset; `f` returns `false` to stop early.
fn enumerate_tail(
    subset: &mut Vec<usize>,
    pos: usize,
    n: usize,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if pos == subset.len() {
        return f(subset);
    }
    let lo = subset[pos - 1] + 1;
    for v in lo..n {
        subset[pos] = v;
        if !enumerate_tail(subset, pos + 1, n, f) {
            return false;
        }
    }
    true
}

/// Convex hull of the union of two bodies.
pub fn hull_union(a: &ConvexBody, b: &ConvexBody) -> ConvexBody {
    let mut pts: Vec<Point> = Vec::with_capacity(a.vertices().len() + b.vertices().len());
    pts.extend_from_slice(a.vertices());
    pts.extend_from_slice(b.vertices());
    convex_hull(&pts).expect("nonempty union")
}

/// True iff `conv(A ∪ B)`, `conv(A ∪ C)` and `conv(B ∪ C)` have a common
/// point. Any triple admitting a common line transversal is tight.
pub fn tight_triple(a: &ConvexBody, b: &ConvexBody, c: &ConvexBody) -> bool {
    bodies_intersect(&hull_union(a, b), &hull_union(a, c), &hull_union(b, c))
}

/// Checks that every triple within a single family is tight.
pub fn check_tight_triples(
    family: &[ConvexBody],
    allow_large: bool,
) -> Result<HypothesisReport, TransversalError> {
    if family.is_empty() {
        return Err(TransversalError::EmptyInput);
    }
    let n = family.len();
    let triples = n * (n - 1) * (n.saturating_sub(2)) / 6;
    if triples > TIGHT_TRIPLE_CAP && !allow_large {
        return Err(TransversalError::TooLarge {
            size: triples,
            cap: TIGHT_TRIPLE_CAP,
        });
    }
    let first = (0..n)
        .into_par_iter()
        .filter_map(|i| {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if !tight_triple(&family[i], &family[j], &family[k]) {
                        return Some([i, j, k]);
                    }
                }
            }
            None
        })
        .min();
    Ok(match first {
        Some([i, j, k]) => HypothesisReport::violated(
            Property::TightTriples,
            vec![i, j, k]
                .into_iter()
                .map(|idx| SetRef {
                    family: FamilyId(1),
                    index: idx,
                })
                .collect(),
        ),
        None => HypothesisReport::holds(Property::TightTriples),
    })
}

/// Checks the colorful tight-triple hypothesis over exactly six families:
/// every three sets chosen from three distinct families must form a tight
/// triple. A single family may be replicated six times by the caller.
pub fn check_colorful_tight(
    families: &[Vec<ConvexBody>],
    allow_large: bool,
) -> Result<HypothesisReport, TransversalError> {
    if families.len() != 6 {
        return Err(TransversalError::BadArity {
            expected: 6,
            got: families.len(),
        });
    }
    if families.iter().any(|f| f.is_empty()) {
        return Err(TransversalError::EmptyInput);
    }
    let mut combos: Vec<(usize, usize, usize)> = Vec::new();
    let mut total = 0usize;
    for f1 in 0..6 {
        for f2 in (f1 + 1)..6 {
            for f3 in (f2 + 1)..6 {
                combos.push((f1, f2, f3));
                total += families[f1].len() * families[f2].len() * families[f3].len();
            }
        }
    }
    if total > TIGHT_TRIPLE_CAP && !allow_large {
        return Err(TransversalError::TooLarge {
            size: total,
            cap: TIGHT_TRIPLE_CAP,
        });
    }
    let first = combos
        .par_iter()
        .enumerate()
        .filter_map(|(ci, &(f1, f2, f3))| {
            for (i1, a) in families[f1].iter().enumerate() {
                for (i2, b) in families[f2].iter().enumerate() {
                    for (i3, c) in families[f3].iter().enumerate() {
                        if !tight_triple(a, b, c) {
                            return Some((ci, [(f1, i1), (f2, i2), (f3, i3)]));
                        }
                    }
                }
            }
            None
        })
        .min_by_key(|(ci, w)| (*ci, *w));
    Ok(match first {
        Some((_, witness)) => HypothesisReport::violated(
            Property::ColorfulTightTriples,
            witness
                .iter()
                .map(|&(f, i)| SetRef {
                    family: FamilyId(f as u8 + 1),
                    index: i,
                })
                .collect(),
        ),
        None => HypothesisReport::holds(Property::ColorfulTightTriples),
    })
}

/// Checks the colorful `T(4)` hypothesis over exactly four families: every
/// quadruple taking one set from each family must admit a line transversal.
///
/// When a single line meets every body of the instance the hypothesis holds
/// outright; that fast path avoids the product enumeration entirely.
pub fn check_colorful_t4(
    families: &[Vec<ConvexBody>],
    allow_large: bool,
) -> Result<HypothesisReport, TransversalError> {
    if families.len() != 4 {
        return Err(TransversalError::BadArity {
            expected: 4,
            got: families.len(),
        });
    }
    if families.iter().any(|f| f.is_empty()) {
        return Err(TransversalError::EmptyInput);
    }
    let all: Vec<ConvexBody> = families.iter().flatten().cloned().collect();
    if common_transversal(&all)?.is_some() {
        return Ok(HypothesisReport::holds(Property::ColorfulT4));
    }
    let product: usize = families.iter().map(|f| f.len()).product();
    if product > COLORFUL_T4_CAP && !allow_large {
        return Err(TransversalError::TooLarge {
            size: product,
            cap: COLORFUL_T4_CAP,
        });
    }
    let first = (0..families[0].len())
        .into_par_iter()
        .filter_map(|i1| {
            for i2 in 0..families[1].len() {
                for i3 in 0..families[2].len() {
                    for i4 in 0..families[3].len() {
                        let tuple = [
                            families[0][i1].clone(),
                            families[1][i2].clone(),
                            families[2][i3].clone(),
                            families[3][i4].clone(),
                        ];
                        if common_transversal(&tuple).expect("nonempty").is_none() {
                            return Some([i1, i2, i3, i4]);
                        }
                    }
                }
            }
            None
        })
        .min();
    Ok(match first {
        Some(idx) => HypothesisReport::violated(
            Property::ColorfulT4,
            idx.iter()
                .enumerate()
                .map(|(f, &i)| SetRef {
                    family: FamilyId(f as u8 + 1),
                    index: i,
                })
                .collect(),
        ),
        None => HypothesisReport::holds(Property::ColorfulT4),
    })
}

/// Pads a nonempty list of families to exactly `n` by cycling through the
/// given ones, matching the reduction that replicates a single family.
pub fn replicate_to(families: &[Vec<ConvexBody>], n: usize) -> Vec<Vec<ConvexBody>> {
    assert!(!families.is_empty());
    (0..n).map(|i| families[i % families.len()].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

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
    fn collinear_squares_have_transversal() {
        let bodies = vec![square(0.0, 0.0, 0.5), square(10.0, 0.0, 0.5), square(20.0, 0.0, 0.5)];
        let line = common_transversal(&bodies).unwrap().expect("transversal");
        assert!(bodies.iter().all(|b| b.hits_line(&line)));
        // The line must be within tolerance of y = 0 at the body centers.
        for x in [0.0, 10.0, 20.0] {
            assert!(line.signed_dist(&pt(x, 0.0)).abs() <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn noncollinear_points_have_none() {
        let bodies = vec![
            ConvexBody::point(pt(0.0, 0.0)),
            ConvexBody::point(pt(1.0, 1.0)),
            ConvexBody::point(pt(2.0, 0.0)),
        ];
        assert!(common_transversal(&bodies).unwrap().is_none());
    }

    #[test]
    fn empty_input_is_error() {
        assert_eq!(
            common_transversal(&[]).unwrap_err(),
            TransversalError::EmptyInput
        );
    }

    #[test]
    fn t3_holds_for_origin_families() {
        let bodies: Vec<ConvexBody> = (0..6).map(|i| square(0.0, 0.0, 0.2 + 0.1 * i as f64)).collect();
        let report = check_t_r(&bodies, 3, false).unwrap();
        assert!(report.holds);
        assert!(report.witness_violation.is_none());
    }

    #[test]
    fn t3_violation_reports_first_witness() {
        let bodies = vec![
            ConvexBody::point(pt(0.0, 0.0)),
            ConvexBody::point(pt(1.0, 1.0)),
            ConvexBody::point(pt(2.0, 0.0)),
        ];
        let report = check_t_r(&bodies, 3, false).unwrap();
        assert!(!report.holds);
        let w = report.witness_violation.unwrap();
        assert_eq!(w.iter().map(|s| s.index).collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn t_r_rejects_bad_r() {
        let bodies = vec![ConvexBody::point(pt(0.0, 0.0))];
        assert_eq!(
            check_t_r(&bodies, 5, false).unwrap_err(),
            TransversalError::UnsupportedR(5)
        );
    }

    #[test]
    fn tight_triple_examples() {
        let a = ConvexBody::point(pt(0.0, 0.0));
        let b = ConvexBody::point(pt(1.0, 0.0));
        let c = ConvexBody::point(pt(2.0, 0.0));
        assert!(tight_triple(&a, &b, &c));

        let c2 = ConvexBody::point(pt(0.0, 1.0));
        assert!(!tight_triple(&a, &b, &c2));
    }

    #[test]
    fn transversal_triples_are_tight() {
        // Any triple with a common transversal must be tight.
        let a = square(0.0, 0.1, 0.3);
        let b = square(3.0, -0.2, 0.4);
        let c = square(7.0, 0.0, 0.5);
        assert!(common_transversal(&[a.clone(), b.clone(), c.clone()])
            .unwrap()
            .is_some());
        assert!(tight_triple(&a, &b, &c));
    }

    #[test]
    fn tight_triple_is_symmetric() {
        let a = square(0.0, 0.0, 0.4);
        let b = ConvexBody::segment(pt(2.0, -1.0), pt(2.5, 1.0));
        let c = ConvexBody::point(pt(1.0, 3.0));
        let expected = tight_triple(&a, &b, &c);
        for (x, y, z) in [
            (&a, &b, &c),
            (&a, &c, &b),
            (&b, &a, &c),
            (&b, &c, &a),
            (&c, &a, &b),
            (&c, &b, &a),
        ] {
            assert_eq!(tight_triple(x, y, z), expected);
        }
    }

    #[test]
    fn colorful_tight_requires_six_families() {
        let fam = vec![vec![ConvexBody::point(pt(0.0, 0.0))]; 3];
        assert!(matches!(
            check_colorful_tight(&fam, false),
            Err(TransversalError::BadArity { expected: 6, got: 3 })
        ));
    }

    #[test]
    fn colorful_tight_on_x_axis_families() {
        let families: Vec<Vec<ConvexBody>> = (0..6)
            .map(|i| vec![square(i as f64, 0.0, 0.3), square(i as f64 + 0.4, 0.0, 0.2)])
            .collect();
        let report = check_colorful_tight(&families, false).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn colorful_tight_finds_triangle_witness() {
        let mut families: Vec<Vec<ConvexBody>> = (0..6)
            .map(|_| vec![square(0.5, 0.2, 0.5)])
            .collect();
        families[1].push(ConvexBody::point(pt(0.0, 0.0)));
        families[3].push(ConvexBody::point(pt(1.0, 0.0)));
        families[5].push(ConvexBody::point(pt(0.0, 1.0)));
        let report = check_colorful_tight(&families, false).unwrap();
        assert!(!report.holds);
        let w = report.witness_violation.unwrap();
        assert!(!tight_triple(
            &families[w[0].family.index()][w[0].index],
            &families[w[1].family.index()][w[1].index],
            &families[w[2].family.index()][w[2].index],
        ));
    }

    #[test]
    fn colorful_t4_fast_path_and_violation() {
        let stabbed: Vec<Vec<ConvexBody>> = (0..4)
            .map(|i| vec![square(2.0 * i as f64, 0.0, 0.4)])
            .collect();
        assert!(check_colorful_t4(&stabbed, false).unwrap().holds);

        let spread: Vec<Vec<ConvexBody>> = [
            pt(0.0, 0.0),
            pt(1.0, 0.0),
            pt(0.3, 0.9),
            pt(0.7, -0.8),
        ]
        .iter()
        .map(|p| vec![ConvexBody::point(*p)])
        .collect();
        let report = check_colorful_t4(&spread, false).unwrap();
        assert!(!report.holds);
    }

    #[test]
    fn transversal_monotone_under_subsets() {
        let bodies = vec![
            square(0.0, 0.0, 0.5),
            square(4.0, 0.3, 0.5),
            square(8.0, -0.2, 0.5),
            square(12.0, 0.1, 0.5),
        ];
        assert!(common_transversal(&bodies).unwrap().is_some());
        for skip in 0..bodies.len() {
            let subset: Vec<ConvexBody> = bodies
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, b)| b.clone())
                .collect();
            assert!(common_transversal(&subset).unwrap().is_some());
        }
    }
}
