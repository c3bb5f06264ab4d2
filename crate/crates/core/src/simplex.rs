//! Nelder-Mead simplex minimisation with dimension-adaptive coefficients.

#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    pub max_iter: usize,
    /// Stop once the spread of objective values on the simplex is below this.
    pub f_tol: f64,
    /// ... and the simplex fits in a box of this half-width.
    pub x_tol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self { max_iter: 20_000, f_tol: 1e-15, x_tol: 1e-12 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
}

impl NelderMead {
    /// Minimises `f` from an axis-aligned simplex of edge `step` at `x0`.
    pub fn minimize<F>(&self, f: F, x0: &[f64], step: f64) -> Minimum
    where
        F: Fn(&[f64]) -> f64,
    {
        let n = x0.len();
        if n == 0 {
            return Minimum { x: Vec::new(), f: f(x0), iterations: 0 };
        }
        let dim = n as f64;
        let (reflect, expand, contract, shrink) = (1.0, 1.0 + 2.0 / dim, 0.75 - 0.5 / dim, 1.0 - 1.0 / dim);

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((x0.to_vec(), f(x0)));
        for i in 0..n {
            let mut v = x0.to_vec();
            v[i] += step;
            let fv = f(&v);
            simplex.push((v, fv));
        }

        let mut iterations = 0;
        while iterations < self.max_iter {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].1;
            let worst = simplex[n].1;
            let spread = simplex
                .iter()
                .skip(1)
                .flat_map(|(v, _)| v.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if (worst - best).abs() <= self.f_tol && spread <= self.x_tol {
                break;
            }
            iterations += 1;

            let mut centroid = vec![0.0; n];
            for (v, _) in &simplex[..n] {
                for (c, x) in centroid.iter_mut().zip(v) {
                    *c += x / dim;
                }
            }
            let along = |t: f64| -> Vec<f64> {
                centroid.iter().zip(&simplex[n].0).map(|(c, w)| c + t * (c - w)).collect()
            };

            let xr = along(reflect);
            let fr = f(&xr);
            if fr < best {
                let xe = along(reflect * expand);
                let fe = f(&xe);
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[n - 1].1 {
                simplex[n] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < worst {
                let xc = along(reflect * contract);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(-contract);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < worst.min(fr) {
                simplex[n] = (xc, fc);
                continue;
            }
            let head = simplex[0].0.clone();
            for (v, fv) in simplex.iter_mut().skip(1) {
                for (x, h) in v.iter_mut().zip(&head) {
                    *x = h + shrink * (*x - h);
                }
                *fv = f(v);
            }
        }

        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, f) = simplex.swap_remove(0);
        Minimum { x, f, iterations }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let m = NelderMead::default().minimize(|x| (x[0] - 1.0).powi(2) + 4.0 * (x[1] + 2.0).powi(2), &[0.0, 0.0], 0.5);
        assert!((m.x[0] - 1.0).abs() < 1e-6);
        assert!((m.x[1] + 2.0).abs() < 1e-6);
        assert!(m.f < 1e-12);
    }

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2);
        let m = NelderMead::default().minimize(f, &[-1.2, 1.0], 0.2);
        assert!((m.x[0] - 1.0).abs() < 1e-5, "{:?}", m);
    }

    #[test]
    fn piecewise_max() {
        // kink at x = 1 where both pieces equal 2
        let m = NelderMead::default().minimize(|x| f64::max(2.0 * x[0], 4.0 - 2.0 * x[0]), &[3.0], 0.5);
        assert!((m.f - 2.0).abs() < 1e-10);
    }
}
