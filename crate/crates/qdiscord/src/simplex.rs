//! Gradient-free Nelder-Mead simplex minimizer.
//!
//! Used by the measurement optimizer; the search spaces here are tiny
//! (d²−1 ≤ 8 parameters) and the objectives are smooth but nonconvex, so a
//! seeded multi-start around this local search is the whole strategy.

#[derive(Debug, Clone)]
pub(crate) struct SimplexOptions {
    /// Convergence tolerance on the objective spread across the simplex.
    pub tol: f64,
    pub max_iters: usize,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { tol: 1e-8, max_iters: 400, initial_step: 0.5 }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    #[allow(dead_code)]
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimize `f` from `x0` with the classic reflect/expand/contract/shrink
/// moves (α=1, γ=2, β=½, σ=½).
pub(crate) fn minimize<F>(mut f: F, x0: &[f64], opts: &SimplexOptions) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        f(x)
    };

    // initial simplex: x0 plus one step along each axis
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let v0 = eval(x0, &mut evals);
    simplex.push((x0.to_vec(), v0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += opts.initial_step;
        let v = eval(&x, &mut evals);
        simplex.push((x, v));
    }

    let centroid = |simplex: &[(Vec<f64>, f64)]| {
        let mut c = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (ci, xi) in c.iter_mut().zip(x) {
                *ci += xi / n as f64;
            }
        }
        c
    };

    let mut converged = false;
    for _ in 0..opts.max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[n].1 - simplex[0].1 < opts.tol {
            converged = true;
            break;
        }
        let c = centroid(&simplex);
        let worst = simplex[n].clone();

        let blend = |t: f64| -> Vec<f64> {
            c.iter().zip(&worst.0).map(|(ci, wi)| ci + t * (ci - wi)).collect()
        };

        let xr = blend(1.0);
        let vr = eval(&xr, &mut evals);
        if vr < simplex[0].1 {
            let xe = blend(2.0);
            let ve = eval(&xe, &mut evals);
            simplex[n] = if ve < vr { (xe, ve) } else { (xr, vr) };
        } else if vr < simplex[n - 1].1 {
            simplex[n] = (xr, vr);
        } else {
            let xc = blend(-0.5);
            let vc = eval(&xc, &mut evals);
            if vc < simplex[n].1 {
                simplex[n] = (xc, vc);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = entry
                        .0
                        .iter()
                        .zip(&best)
                        .map(|(xi, bi)| bi + 0.5 * (xi - bi))
                        .collect();
                    let v = eval(&x, &mut evals);
                    *entry = (x, v);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    SimplexResult {
        x: simplex[0].0.clone(),
        value: simplex[0].1,
        evaluations: evals,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_shifted_quadratic() {
        let f = |x: &[f64]| (x[0] - 1.5).powi(2) + 2.0 * (x[1] + 0.5).powi(2) + 3.0;
        let res = minimize(f, &[0.0, 0.0], &SimplexOptions::default());
        assert!(res.converged);
        assert!((res.x[0] - 1.5).abs() < 1e-4);
        assert!((res.x[1] + 0.5).abs() < 1e-4);
        assert!((res.value - 3.0).abs() < 1e-7);
    }

    #[test]
    fn minimizes_rosenbrock_reasonably() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let res =
            minimize(f, &[-1.2, 1.0], &SimplexOptions { max_iters: 2000, ..Default::default() });
        assert!(res.value < 1e-6);
    }

    #[test]
    fn respects_iteration_budget() {
        let f = |x: &[f64]| x[0].powi(2);
        let res = minimize(f, &[100.0], &SimplexOptions { max_iters: 3, ..Default::default() });
        assert!(!res.converged);
    }
}
