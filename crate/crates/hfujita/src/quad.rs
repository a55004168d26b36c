//! One-dimensional quadrature building blocks.
//!
//! Gauss rules are generated at runtime by Golub-Welsch from the Jacobi
//! recurrence coefficients, so no tabulated constants are needed and every
//! rule can be unit-tested against analytic moments. The adaptive routine is
//! the independent 1-D oracle used to cross-check gauge-polar integration.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Quadrature rule: paired nodes and weights.
#[derive(Clone, Debug)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .collect();
        pairwise_sum(&terms)
    }

    /// Affine image of the rule on `[a, b]` (for rules defined on `[-1, 1]`).
    pub fn scaled_to(&self, a: f64, b: f64) -> Rule {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Rule {
            nodes: self.nodes.iter().map(|&x| mid + half * x).collect(),
            weights: self.weights.iter().map(|&w| w * half).collect(),
        }
    }
}

/// Golub-Welsch for the Jacobi weight `(1-x)^a (1+x)^b` on `[-1, 1]`,
/// restricted to the two families used here (`a = 0`).
fn jacobi_rule(n: usize, b: f64, mu0: f64) -> Rule {
    assert!(n >= 1 && b > -1.0);
    let alpha = |k: usize| -> f64 {
        let k = k as f64;
        if k == 0.0 {
            b / (b + 2.0)
        } else {
            let d = 2.0 * k + b;
            (b * b) / (d * (d + 2.0))
        }
    };
    let beta = |k: usize| -> f64 {
        let k = k as f64;
        let d = 2.0 * k + b;
        4.0 * k * k * (k + b) * (k + b) / (d * d * (d + 1.0) * (d - 1.0))
    };

    let mut t = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        t[(i, i)] = alpha(i);
        if i + 1 < n {
            let off = beta(i + 1).sqrt();
            t[(i, i + 1)] = off;
            t[(i + 1, i)] = off;
        }
    }
    let eig = SymmetricEigen::new(t);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let node = eig.eigenvalues[j];
            let v0 = eig.eigenvectors[(0, j)];
            (node, mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

fn legendre_cache() -> &'static Mutex<HashMap<usize, Rule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Rule>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Rule {
    let cache = legendre_cache();
    if let Some(r) = cache.lock().unwrap().get(&n) {
        return r.clone();
    }
    let rule = jacobi_rule(n, 0.0, 2.0);
    cache.lock().unwrap().insert(n, rule.clone());
    rule
}

/// Gauss-Legendre rule on `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Rule {
    gauss_legendre(n).scaled_to(a, b)
}

/// Gauss-Jacobi rule for `∫_0^R r^beta f(r) dr` (`beta > -1`): the returned
/// weights already include the singular factor `r^beta`.
pub fn gauss_jacobi_power(n: usize, beta: f64, r_max: f64) -> Rule {
    let mu0 = 2f64.powf(beta + 1.0) / (beta + 1.0);
    let base = jacobi_rule(n, beta, mu0);
    // x in [-1,1] -> r = R (1+x)/2; weight picks up (R/2)^{beta+1}
    let scale = (0.5 * r_max).powf(beta + 1.0);
    Rule {
        nodes: base.nodes.iter().map(|&x| 0.5 * r_max * (1.0 + x)).collect(),
        weights: base.weights.iter().map(|&w| w * scale).collect(),
    }
}

/// Deterministic pairwise summation: result is independent of how the work
/// that produced `terms` was scheduled.
pub fn pairwise_sum(terms: &[f64]) -> f64 {
    match terms.len() {
        0 => 0.0,
        1 => terms[0],
        2 => terms[0] + terms[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&terms[..mid]) + pairwise_sum(&terms[mid..])
        }
    }
}

const ADAPT_MAX_PANELS: usize = 20_000;

/// Adaptive quadrature on a finite interval by panel bisection with a
/// GL7/GL15 error estimate. Returns `(value, error_estimate)`.
pub fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    let coarse = gauss_legendre(7);
    let fine = gauss_legendre(15);
    let mut stack = vec![(a, b, 0usize)];
    let mut total = 0.0;
    let mut err_total = 0.0;
    let mut panels = 0usize;
    while let Some((lo, hi, depth)) = stack.pop() {
        panels += 1;
        if panels > ADAPT_MAX_PANELS {
            return Err(Error::QuadratureNonConvergence {
                partial: total,
                estimate: err_total.max(tol),
                tol,
            });
        }
        let vc = coarse.scaled_to(lo, hi).apply(f);
        let vf = fine.scaled_to(lo, hi).apply(f);
        let err = (vf - vc).abs();
        let local_tol = tol * ((hi - lo) / (b - a)).max(1e-300);
        if err <= local_tol.max(1e-3 * tol) || depth >= 52 {
            if depth >= 52 && err > 10.0 * local_tol.max(tol) {
                return Err(Error::QuadratureNonConvergence {
                    partial: total + vf,
                    estimate: err,
                    tol,
                });
            }
            total += vf;
            err_total += err;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    Ok((total, err_total))
}

/// Adaptive quadrature on `[a, ∞)` by geometric panels. The integrand must
/// decay; three consecutive negligible octaves terminate the sweep, and a
/// missing decay by 60 octaves is reported as non-convergence.
pub fn adaptive_to_infinity(f: &dyn Fn(f64) -> f64, a: f64, tol: f64) -> Result<(f64, f64)> {
    let mut lo = if a > 0.0 { a } else { 0.0 };
    let mut total = 0.0;
    let mut err_total: f64 = 0.0;
    if lo == 0.0 {
        let (v, e) = adaptive(f, 0.0, 1.0, tol * 0.5)?;
        total += v;
        err_total += e;
        lo = 1.0;
    }
    let mut quiet = 0usize;
    for _ in 0..60 {
        let hi = lo * 2.0;
        let (v, e) = adaptive(f, lo, hi, tol * 0.25)?;
        total += v;
        err_total += e;
        if v.abs() < tol * 0.125 {
            quiet += 1;
            if quiet >= 3 {
                return Ok((total, err_total + v.abs()));
            }
        } else {
            quiet = 0;
        }
        lo = hi;
    }
    Err(Error::QuadratureNonConvergence {
        partial: total,
        estimate: err_total.max(tol),
        tol,
    })
}

/// Least-squares slope and intercept of `log y` against `log x`.
pub fn loglog_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(&x, &y)| x > 0.0 && y > 0.0)
        .map(|(&x, &y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}
