//! Haar-measure machinery: gauge-polar integration, sphere-measure
//! calibration and Monte-Carlo volume estimators.
//!
//! Gauge-radial integrals reduce to `c_Q ∫ r^{Q-1} g(r) dr`. The constant
//! `c_Q` (total gauge-sphere measure, `vol(B_1) = c_Q / Q`) is calibrated
//! once per `(N, gauge)` by quasi-Monte-Carlo estimation of the unit-ball
//! volume; for the standard gauge (and any gauge at `N = 1`) an analytic
//! reduction is available and used to cross-check the calibration.

use crate::error::Result;
use crate::group::{gauge_distance, gauge_norm, Gauge, GroupParams, GroupPoint};
use crate::quad;
use crate::rng::Stream;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Gamma function at `k/2` for positive integer `k`.
fn gamma_half(k: usize) -> f64 {
    match k {
        1 => PI.sqrt(),
        2 => 1.0,
        _ => (k as f64 / 2.0 - 1.0) * gamma_half(k - 2),
    }
}

/// Surface measure of the Euclidean unit sphere `S^{m-1}`.
pub fn sphere_area(m: usize) -> f64 {
    2.0 * PI.powf(m as f64 / 2.0) / gamma_half(m)
}

/// Analytic gauge-sphere mass `c_Q`, available for the standard gauge at any
/// `N` and for both gauges at `N = 1`:
/// `c_Q = |S^{2N-1}| ∫_{-π/2}^{π/2} cos^{N-1}(ψ) dψ`.
pub fn analytic_c_q(gp: &GroupParams) -> Option<f64> {
    if gp.n() > 1 && gp.gauge() == Gauge::Quartic {
        return None;
    }
    let n = gp.n();
    // ∫ cos^{N-1} = √π Γ(N/2) / Γ((N+1)/2)
    let angular = PI.sqrt() * gamma_half(n) / gamma_half(n + 1);
    Some(sphere_area(2 * n) * angular)
}

/// Measure calibration for one `(N, gauge)` pair. Write-once: computed at
/// start-up, immutable afterwards.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Calibration {
    pub gp: GroupParams,
    pub ball_volume: f64,
    pub ball_volume_stderr: f64,
    /// Gauge-sphere mass `c_Q = Q vol(B_1)`.
    pub c_q: f64,
    pub c_q_stderr: f64,
    /// Measured pseudo-triangle constant of the gauge quasi-distance.
    pub triangle_c: f64,
    /// `1.1 · triangle_c`, the factor used wherever integration domains are
    /// split at `d(ξ)/(2c)`.
    pub triangle_margin: f64,
    pub qmc_samples: usize,
    pub seed: u64,
}

/// Additive-recurrence QMC point in `[0,1)^d` (generalised golden ratio).
fn kronecker_alphas(d: usize) -> Vec<f64> {
    // root of x^{d+1} = x + 1
    let mut phi = 1.5f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (d as f64 + 1.0));
    }
    (1..=d).map(|j| (1.0 / phi.powi(j as i32)) % 1.0).collect()
}

impl Calibration {
    /// QMC unit-ball volume with Cranley-Patterson shifts for the error
    /// estimate, plus the empirical pseudo-triangle constant.
    pub fn compute(gp: GroupParams, seed: u64, samples: usize) -> Self {
        let dim = 2 * gp.n() + 1;
        let alphas = kronecker_alphas(dim);
        let n_shifts = 16usize;
        let per_shift = (samples / n_shifts).max(1024);
        let box_volume = 2f64.powi(dim as i32);

        let mut estimates = Vec::with_capacity(n_shifts);
        for shift_idx in 0..n_shifts {
            let mut rng = Stream::new(seed, shift_idx as u64);
            let shift: Vec<f64> = (0..dim).map(|_| rng.uniform()).collect();
            let mut hits = 0usize;
            let mut point = GroupPoint::origin(gp.n());
            for k in 0..per_shift {
                for (j, alpha) in alphas.iter().enumerate() {
                    let u = (shift[j] + k as f64 * alpha).fract();
                    let c = 2.0 * u - 1.0;
                    if j < gp.n() {
                        point.x[j] = c;
                    } else if j < 2 * gp.n() {
                        point.y[j - gp.n()] = c;
                    } else {
                        point.w = c;
                    }
                }
                if gauge_norm(&point, &gp) < 1.0 {
                    hits += 1;
                }
            }
            estimates.push(box_volume * hits as f64 / per_shift as f64);
        }
        let mean = estimates.iter().sum::<f64>() / n_shifts as f64;
        let var = estimates.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
            / (n_shifts as f64 - 1.0);
        let stderr = (var / n_shifts as f64).sqrt();

        let (triangle_c, _) = measure_triangle_constant(&gp, seed ^ 0xABCD, 60_000);

        Calibration {
            gp,
            ball_volume: mean,
            ball_volume_stderr: stderr,
            c_q: gp.q() * mean,
            c_q_stderr: gp.q() * stderr,
            triangle_c,
            triangle_margin: 1.1 * triangle_c,
            qmc_samples: per_shift * n_shifts,
            seed,
        }
    }

    /// Calibration that adopts the analytic sphere mass when available
    /// (still records the QMC stderr from a short calibration run).
    pub fn with_analytic(gp: GroupParams, seed: u64) -> Self {
        let mut calib = Calibration::compute(gp, seed, 1 << 18);
        if let Some(cq) = analytic_c_q(&gp) {
            calib.c_q = cq;
            calib.ball_volume = cq / gp.q();
        }
        calib
    }
}

/// Empirical maximum of `d(a,b) / (d(a,m) + d(m,b))` over random triples.
pub fn measure_triangle_constant(gp: &GroupParams, seed: u64, triples: usize) -> (f64, usize) {
    let mut rng = Stream::new(seed, 0);
    let n = gp.n();
    let sample = |rng: &mut Stream, scale: f64| GroupPoint {
        x: (0..n).map(|_| scale * (rng.uniform() - 0.5)).collect(),
        y: (0..n).map(|_| scale * (rng.uniform() - 0.5)).collect(),
        w: scale * scale * (rng.uniform() - 0.5),
    };
    let mut best = 1.0f64; // degenerate triple (m = a) already attains 1
    let mut at = 0usize;
    for k in 0..triples {
        let scale = 10f64.powf(3.0 * rng.uniform() - 1.5);
        let a = sample(&mut rng, scale);
        let b = sample(&mut rng, scale);
        let m = sample(&mut rng, scale);
        let dab = gauge_distance(&a, &b, gp).unwrap();
        let dam = gauge_distance(&a, &m, gp).unwrap();
        let dmb = gauge_distance(&m, &b, gp).unwrap();
        if dam + dmb > 0.0 {
            let ratio = dab / (dam + dmb);
            if ratio > best {
                best = ratio;
                at = k;
            }
        }
    }
    (best, at)
}

/// Gauge-radial integral `∫_{H^N} g(||η||) dη = c_Q ∫_{lo}^{hi} r^{Q-1} g(r) dr`.
/// `hi = f64::INFINITY` integrates the whole tail; non-integrable inputs are
/// reported as quadrature non-convergence.
pub fn polar_integrate_radial(
    g: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    calib: &Calibration,
    tol: f64,
) -> Result<f64> {
    let q = calib.gp.q();
    let weighted = move |r: f64| r.powf(q - 1.0) * g(r);
    let (value, _err) = if hi.is_finite() {
        quad::adaptive(&weighted, lo, hi, tol)?
    } else {
        quad::adaptive_to_infinity(&weighted, lo, tol)?
    };
    Ok(calib.c_q * value)
}

/// Monte-Carlo volume of the gauge ball `B_R(center)` with binomial
/// standard error, via rejection from the tight coordinate bounding box.
pub fn mc_ball_volume(
    center: &GroupPoint,
    radius: f64,
    gp: &GroupParams,
    seed: u64,
    samples: usize,
) -> (f64, f64) {
    let n = gp.n();
    // ||c^{-1} ∘ p|| < R constrains each |x_i - c_i| <= R and the twisted
    // vertical coordinate within R^2 of the translated centre.
    let horiz: f64 = radius;
    let mut abs_sum = 0.0;
    for i in 0..n {
        abs_sum += center.x[i].abs() + center.y[i].abs();
    }
    let w_half = radius * radius + 2.0 * radius * abs_sum;
    let mut rng = Stream::new(seed, 1);
    let mut hits = 0usize;
    let mut p = GroupPoint::origin(n);
    for _ in 0..samples {
        for i in 0..n {
            p.x[i] = center.x[i] + horiz * (2.0 * rng.uniform() - 1.0);
            p.y[i] = center.y[i] + horiz * (2.0 * rng.uniform() - 1.0);
        }
        p.w = center.w + w_half * (2.0 * rng.uniform() - 1.0);
        if gauge_distance(&p, center, gp).unwrap() < radius {
            hits += 1;
        }
    }
    let box_volume = (2.0 * horiz).powi(2 * n as i32) * 2.0 * w_half;
    let frac = hits as f64 / samples as f64;
    let stderr = box_volume * (frac * (1.0 - frac) / samples as f64).sqrt();
    (box_volume * frac, stderr)
}

/// Monte-Carlo volume of the left translate `g ∘ B_R(0)`, for checking Haar
/// invariance. Membership is `||(g∘q)| ... ||g^{-1} ∘ p|| < R`.
pub fn mc_translated_ball_volume(
    g: &GroupPoint,
    radius: f64,
    gp: &GroupParams,
    seed: u64,
    samples: usize,
) -> (f64, f64) {
    // g ∘ B_R(0) = B_R(g) as a set, because ||g^{-1} ∘ p|| < R is exactly
    // the membership test for the ball centred at g.
    mc_ball_volume(g, radius, gp, seed, samples)
}

/// Exact unit-ball volume at `N = 1`: `π²/2` (both gauges coincide).
pub fn exact_unit_ball_volume_h1() -> f64 {
    PI * PI / 2.0
}
