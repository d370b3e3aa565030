use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Euclidean projection onto the probability simplex, by the sort-based
/// threshold method.
pub fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (i, ui) in u.iter().enumerate() {
        cumsum += ui;
        let t = (cumsum - 1.0) / (i as f64 + 1.0);
        if ui - t > 0.0 {
            theta = t;
        }
    }
    let mut out: Vec<f64> = v.iter().map(|&x| (x - theta).max(0.0)).collect();
    // Remove the last crumbs of rounding so downstream sums stay within 1e-12.
    let s: f64 = out.iter().sum();
    if s > 0.0 {
        for x in &mut out {
            *x /= s;
        }
    } else {
        let k = n as f64;
        out.iter_mut().for_each(|x| *x = 1.0 / k);
    }
    out
}

/// Reflection-based simplex descent restricted to the probability simplex:
/// every candidate is projected before evaluation. Stops when the budget is
/// exhausted, the target value is reached, or the simplex collapses.
pub struct SimplexDescent {
    pub max_evals: usize,
    pub target: f64,
}

impl SimplexDescent {
    pub fn run(
        &self,
        f: impl Fn(&[f64]) -> f64,
        seed: &[f64],
        scale: f64,
        rng: &mut ChaCha8Rng,
    ) -> (Vec<f64>, f64) {
        let n = seed.len();
        let mut evals = 0usize;
        let eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            f(x)
        };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        let p0 = project_to_simplex(seed);
        let f0 = eval(&p0, &mut evals);
        simplex.push((p0, f0));
        for i in 0..n {
            let mut p = seed.to_vec();
            p[i] += scale * (1.0 + 0.25 * rng.gen::<f64>());
            let p = project_to_simplex(&p);
            let v = eval(&p, &mut evals);
            simplex.push((p, v));
        }

        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].1;
            if best <= self.target || evals >= self.max_evals {
                break;
            }
            let spread = simplex
                .iter()
                .map(|(p, _)| {
                    p.iter()
                        .zip(&simplex[0].0)
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            if spread < 1e-14 {
                break;
            }

            let worst = simplex[n].1;
            let second_worst = simplex[n - 1].1;
            let centroid: Vec<f64> = (0..n)
                .map(|d| simplex[..n].iter().map(|(p, _)| p[d]).sum::<f64>() / n as f64)
                .collect();
            let towards = |alpha: f64| -> Vec<f64> {
                let raw: Vec<f64> = (0..n)
                    .map(|d| centroid[d] + alpha * (centroid[d] - simplex[n].0[d]))
                    .collect();
                project_to_simplex(&raw)
            };

            let reflected = towards(1.0);
            let fr = eval(&reflected, &mut evals);
            if fr < best {
                let expanded = towards(2.0);
                let fe = eval(&expanded, &mut evals);
                simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            } else if fr < second_worst {
                simplex[n] = (reflected, fr);
            } else {
                let (contracted, fc) = if fr < worst {
                    let c = towards(0.5);
                    let v = eval(&c, &mut evals);
                    (c, v)
                } else {
                    let c = towards(-0.5);
                    let v = eval(&c, &mut evals);
                    (c, v)
                };
                if fc < worst.min(fr) {
                    simplex[n] = (contracted, fc);
                } else {
                    // Shrink toward the best vertex.
                    let anchor = simplex[0].0.clone();
                    for entry in simplex.iter_mut().skip(1) {
                        let raw: Vec<f64> = entry
                            .0
                            .iter()
                            .zip(&anchor)
                            .map(|(p, a)| a + 0.5 * (p - a))
                            .collect();
                        let p = project_to_simplex(&raw);
                        let v = eval(&p, &mut evals);
                        *entry = (p, v);
                    }
                }
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        simplex.swap_remove(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn projection_properties() {
        let cases: Vec<Vec<f64>> = vec![
            vec![0.5, 0.5, 0.5],
            vec![-1.0, 2.0, 0.3],
            vec![0.0, 0.0, 0.0, 0.0],
            vec![10.0, -3.0, 0.1, 0.2, 0.4, 0.05],
        ];
        for v in cases {
            let p = project_to_simplex(&v);
            assert!(p.iter().all(|&x| x >= 0.0));
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        // A point already on the simplex is fixed.
        let v = vec![0.2, 0.3, 0.5];
        let p = project_to_simplex(&v);
        for (a, b) in v.iter().zip(&p) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn descent_reaches_a_simplex_minimum() {
        // Distance to a target barycentric point, minimized over the simplex.
        let target = [0.1, 0.2, 0.3, 0.15, 0.15, 0.1];
        let f = |x: &[f64]| -> f64 {
            x.iter()
                .zip(&target)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let seed = [1.0 / 6.0; 6];
        let descent = SimplexDescent {
            max_evals: 4000,
            target: 1e-10,
        };
        let (x, v) = descent.run(f, &seed, 0.1, &mut rng);
        assert!(v < 1e-6, "residual {v}");
        assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }
}
