//! Group structure of the Heisenberg group `H^N`.
//!
//! A point is `(x, y, w)` with `x, y` in `R^N` and vertical `w`. The group
//! law twists the vertical coordinate by the symplectic form of the
//! horizontal layer; anisotropic dilations scale `(x, y)` linearly and `w`
//! quadratically, which is what makes the homogeneous dimension `Q = 2N + 2`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which homogeneous gauge to use.
///
/// `Quartic` places the fourth power inside the sum over coordinate pairs,
/// `Standard` is the usual Koranyi gauge `(|z|^4 + w^2)^{1/4}`. The two
/// coincide for `N = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gauge {
    Quartic,
    Standard,
}

/// Dimension bundle: topological parameter `N`, homogeneous dimension
/// `Q = 2N + 2`, and the gauge choice.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupParams {
    n: usize,
    gauge: Gauge,
}

impl GroupParams {
    pub fn new(n: usize, gauge: Gauge) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("N", "must be >= 1"));
        }
        Ok(GroupParams { n, gauge })
    }

    /// `N = 1` with the default gauge; the configuration every experiment
    /// defaults to (the gauges agree there).
    pub fn h1() -> Self {
        GroupParams {
            n: 1,
            gauge: Gauge::Quartic,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Homogeneous dimension `Q = 2N + 2`.
    pub fn q(&self) -> f64 {
        (2 * self.n + 2) as f64
    }

    pub fn gauge(&self) -> Gauge {
        self.gauge
    }

    pub fn with_gauge(self, gauge: Gauge) -> Self {
        GroupParams { gauge, ..self }
    }
}

/// Element of `H^N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupPoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub w: f64,
}

impl GroupPoint {
    pub fn new(x: Vec<f64>, y: Vec<f64>, w: f64) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        let p = GroupPoint { x, y, w };
        if !p.is_finite() {
            return Err(Error::invalid("point", "components must be finite"));
        }
        Ok(p)
    }

    /// Identity element of `H^N`.
    pub fn origin(n: usize) -> Self {
        GroupPoint {
            x: vec![0.0; n],
            y: vec![0.0; n],
            w: 0.0,
        }
    }

    /// Convenience constructor for `H^1`.
    pub fn h1(x: f64, y: f64, w: f64) -> Self {
        GroupPoint {
            x: vec![x],
            y: vec![y],
            w,
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn is_finite(&self) -> bool {
        self.w.is_finite()
            && self.x.iter().all(|v| v.is_finite())
            && self.y.iter().all(|v| v.is_finite())
    }

    /// Euclidean norm of the horizontal block `z = (x, y)`.
    pub fn horizontal_norm(&self) -> f64 {
        let s: f64 = self
            .x
            .iter()
            .zip(&self.y)
            .map(|(&a, &b)| a * a + b * b)
            .sum();
        s.sqrt()
    }

    fn check_same_n(&self, other: &GroupPoint) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(())
    }
}

/// Group law: `(x,y,w) ∘ (x',y',w') = (x+x', y+y', w+w' + 2(<y,x'> - <x,y'>))`.
pub fn group_mul(a: &GroupPoint, b: &GroupPoint) -> Result<GroupPoint> {
    a.check_same_n(b)?;
    let n = a.n();
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    let mut twist = 0.0;
    for i in 0..n {
        x.push(a.x[i] + b.x[i]);
        y.push(a.y[i] + b.y[i]);
        twist += a.y[i] * b.x[i] - a.x[i] * b.y[i];
    }
    Ok(GroupPoint {
        x,
        y,
        w: a.w + b.w + 2.0 * twist,
    })
}

/// Group inverse: componentwise negation.
pub fn inverse(a: &GroupPoint) -> GroupPoint {
    GroupPoint {
        x: a.x.iter().map(|v| -v).collect(),
        y: a.y.iter().map(|v| -v).collect(),
        w: -a.w,
    }
}

/// Anisotropic dilation `Φ_λ(x, y, w) = (λx, λy, λ²w)`, `λ > 0`.
pub fn dilate(lambda: f64, a: &GroupPoint) -> Result<GroupPoint> {
    if !(lambda > 0.0) {
        return Err(Error::invalid("lambda", format!("must be > 0, got {lambda}")));
    }
    Ok(GroupPoint {
        x: a.x.iter().map(|v| lambda * v).collect(),
        y: a.y.iter().map(|v| lambda * v).collect(),
        w: lambda * lambda * a.w,
    })
}

/// Homogeneous gauge norm of `a` under the configured gauge.
pub fn gauge_norm(a: &GroupPoint, params: &GroupParams) -> f64 {
    let quartic: f64 = match params.gauge() {
        Gauge::Quartic => a
            .x
            .iter()
            .zip(&a.y)
            .map(|(&x, &y)| {
                let r2 = x * x + y * y;
                r2 * r2
            })
            .sum(),
        Gauge::Standard => {
            let r2: f64 = a.x.iter().zip(&a.y).map(|(&x, &y)| x * x + y * y).sum();
            r2 * r2
        }
    };
    (quartic + a.w * a.w).powf(0.25)
}

/// Gauge norm of a cylindrical coordinate pair `(|z|, w)`. Valid for the
/// standard gauge at any `N`, and for both gauges at `N = 1`.
pub fn gauge_norm_cyl(rho: f64, w: f64) -> f64 {
    (rho.powi(4) + w * w).powf(0.25)
}

/// Left-invariant quasi-distance `d(a, b) = ||b^{-1} ∘ a||`.
pub fn gauge_distance(a: &GroupPoint, b: &GroupPoint, params: &GroupParams) -> Result<f64> {
    let rel = group_mul(&inverse(b), a)?;
    Ok(gauge_norm(&rel, params))
}

/// Gauge ball membership: `||center^{-1} ∘ a|| < radius` (strict).
pub fn in_ball(center: &GroupPoint, radius: f64, a: &GroupPoint, params: &GroupParams) -> Result<bool> {
    if !(radius > 0.0) {
        return Err(Error::invalid("radius", format!("must be > 0, got {radius}")));
    }
    Ok(gauge_distance(a, center, params)? < radius)
}
