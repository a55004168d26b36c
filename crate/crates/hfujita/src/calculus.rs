//! Horizontal vector fields, the local sub-Laplacian and smooth cutoffs.
//!
//! Functions enter through the [`Smooth`] trait: a value plus optional
//! analytic first/second derivatives. When a caller has no analytic
//! derivatives the defaults fall back to central finite differences with
//! step `h = 1e-5 (1 + |coordinate|)`.

use crate::group::GroupPoint;

/// Scalar function on `H^N` with derivative access. Coordinates are indexed
/// `0..N` for `x`, `N..2N` for `y`, and `2N` for `w`.
pub trait Smooth: Sync {
    fn value(&self, p: &GroupPoint) -> f64;

    /// Gradient of length `2N + 1`.
    fn gradient(&self, p: &GroupPoint) -> Vec<f64> {
        let dim = 2 * p.n() + 1;
        (0..dim).map(|i| fd_partial(self, p, i)).collect()
    }

    /// Dense symmetric Hessian, row-major `(2N+1) x (2N+1)`.
    fn hessian(&self, p: &GroupPoint) -> Vec<f64> {
        let dim = 2 * p.n() + 1;
        let mut h = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = fd_second(self, p, i, j);
                h[i * dim + j] = v;
                h[j * dim + i] = v;
            }
        }
        h
    }
}

impl<F: Fn(&GroupPoint) -> f64 + Sync> Smooth for F {
    fn value(&self, p: &GroupPoint) -> f64 {
        self(p)
    }
}

/// Smooth function with analytic derivatives supplied by the caller.
pub struct AnalyticFn<V, G, H> {
    pub value: V,
    pub gradient: G,
    pub hessian: H,
}

impl<V, G, H> Smooth for AnalyticFn<V, G, H>
where
    V: Fn(&GroupPoint) -> f64 + Sync,
    G: Fn(&GroupPoint) -> Vec<f64> + Sync,
    H: Fn(&GroupPoint) -> Vec<f64> + Sync,
{
    fn value(&self, p: &GroupPoint) -> f64 {
        (self.value)(p)
    }
    fn gradient(&self, p: &GroupPoint) -> Vec<f64> {
        (self.gradient)(p)
    }
    fn hessian(&self, p: &GroupPoint) -> Vec<f64> {
        (self.hessian)(p)
    }
}

fn coord(p: &GroupPoint, i: usize) -> f64 {
    let n = p.n();
    if i < n {
        p.x[i]
    } else if i < 2 * n {
        p.y[i - n]
    } else {
        p.w
    }
}

fn shifted(p: &GroupPoint, i: usize, delta: f64) -> GroupPoint {
    let n = p.n();
    let mut q = p.clone();
    if i < n {
        q.x[i] += delta;
    } else if i < 2 * n {
        q.y[i - n] += delta;
    } else {
        q.w += delta;
    }
    q
}

fn fd_step(p: &GroupPoint, i: usize) -> f64 {
    1e-5 * (1.0 + coord(p, i).abs())
}

fn fd_partial<S: Smooth + ?Sized>(u: &S, p: &GroupPoint, i: usize) -> f64 {
    let h = fd_step(p, i);
    (u.value(&shifted(p, i, h)) - u.value(&shifted(p, i, -h))) / (2.0 * h)
}

fn fd_second<S: Smooth + ?Sized>(u: &S, p: &GroupPoint, i: usize, j: usize) -> f64 {
    if i == j {
        let h = fd_step(p, i);
        (u.value(&shifted(p, i, h)) - 2.0 * u.value(p) + u.value(&shifted(p, i, -h))) / (h * h)
    } else {
        let hi = fd_step(p, i);
        let hj = fd_step(p, j);
        let pp = u.value(&shifted(&shifted(p, i, hi), j, hj));
        let pm = u.value(&shifted(&shifted(p, i, hi), j, -hj));
        let mp = u.value(&shifted(&shifted(p, i, -hi), j, hj));
        let mm = u.value(&shifted(&shifted(p, i, -hi), j, -hj));
        (pp - pm - mp + mm) / (4.0 * hi * hj)
    }
}

/// Left-invariant generators: `X_i = ∂_{x_i} + 2 y_i ∂_w`,
/// `Y_i = ∂_{y_i} - 2 x_i ∂_w`, and the vertical `W = ∂_w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VectorField {
    X(usize),
    Y(usize),
    W,
}

/// Apply a horizontal/vertical vector field at `a`.
pub fn vector_field_apply(field: VectorField, u: &dyn Smooth, a: &GroupPoint) -> f64 {
    let n = a.n();
    let grad = u.gradient(a);
    match field {
        VectorField::X(i) => grad[i] + 2.0 * a.y[i] * grad[2 * n],
        VectorField::Y(i) => grad[n + i] - 2.0 * a.x[i] * grad[2 * n],
        VectorField::W => grad[2 * n],
    }
}

/// `V u` as a `Smooth` function, so fields compose. The gradient is exact
/// whenever the wrapped function supplies an analytic Hessian.
pub struct FieldDerivative<'a> {
    pub field: VectorField,
    pub u: &'a dyn Smooth,
}

impl Smooth for FieldDerivative<'_> {
    fn value(&self, p: &GroupPoint) -> f64 {
        vector_field_apply(self.field, self.u, p)
    }

    fn gradient(&self, p: &GroupPoint) -> Vec<f64> {
        let n = p.n();
        let dim = 2 * n + 1;
        let grad = self.u.gradient(p);
        let hess = self.u.hessian(p);
        let row = |i: usize, j: usize| hess[i * dim + j];
        (0..dim)
            .map(|j| match self.field {
                // ∂_j (u_{x_i} + 2 y_i u_w): product rule hits the y_i factor
                VectorField::X(i) => {
                    let mut g = row(i, j) + 2.0 * p.y[i] * row(2 * n, j);
                    if j == n + i {
                        g += 2.0 * grad[2 * n];
                    }
                    g
                }
                VectorField::Y(i) => {
                    let mut g = row(n + i, j) - 2.0 * p.x[i] * row(2 * n, j);
                    if j == i {
                        g -= 2.0 * grad[2 * n];
                    }
                    g
                }
                VectorField::W => row(2 * n, j),
            })
            .collect()
    }
}

/// Which realisation of the sub-Laplacian to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubLaplacianForm {
    /// `Σ X_i² + Y_i²` by composing vector field applications.
    VectorField,
    /// The expanded Euclidean-derivative expression.
    Euclidean,
}

/// Local sub-Laplacian `Δ_{H^N} u(a)`.
pub fn sub_laplacian(u: &dyn Smooth, a: &GroupPoint, form: SubLaplacianForm) -> f64 {
    let n = a.n();
    match form {
        SubLaplacianForm::VectorField => {
            let mut total = 0.0;
            for i in 0..n {
                let xi = FieldDerivative {
                    field: VectorField::X(i),
                    u,
                };
                total += vector_field_apply(VectorField::X(i), &xi, a);
                let yi = FieldDerivative {
                    field: VectorField::Y(i),
                    u,
                };
                total += vector_field_apply(VectorField::Y(i), &yi, a);
            }
            total
        }
        SubLaplacianForm::Euclidean => {
            let dim = 2 * n + 1;
            let hess = u.hessian(a);
            let h = |i: usize, j: usize| hess[i * dim + j];
            let wi = 2 * n;
            let mut total = 0.0;
            for i in 0..n {
                total += h(i, i) + h(n + i, n + i);
                total += 4.0 * a.y[i] * h(i, wi);
                total -= 4.0 * a.x[i] * h(n + i, wi);
                total += 4.0 * (a.x[i] * a.x[i] + a.y[i] * a.y[i]) * h(wi, wi);
            }
            total
        }
    }
}

/// Commutator `[X_i, Y_i] u (a)`, for checking the step-2 bracket relation.
pub fn bracket_xy(i: usize, u: &dyn Smooth, a: &GroupPoint) -> f64 {
    let yu = FieldDerivative {
        field: VectorField::Y(i),
        u,
    };
    let xu = FieldDerivative {
        field: VectorField::X(i),
        u,
    };
    vector_field_apply(VectorField::X(i), &yu, a) - vector_field_apply(VectorField::Y(i), &xu, a)
}

/// C² radial cutoff: `1` on `[0, 1]`, quintic-smoothstep descent on `[1, 2]`,
/// `0` on `[2, ∞)`. First and second derivatives vanish at both seams.
#[derive(Clone, Copy, Debug, Default)]
pub struct CutoffProfile;

impl CutoffProfile {
    pub fn value(&self, r: f64) -> f64 {
        if r <= 1.0 {
            1.0
        } else if r >= 2.0 {
            0.0
        } else {
            let t = 2.0 - r;
            t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
        }
    }

    pub fn d1(&self, r: f64) -> f64 {
        if !(1.0..2.0).contains(&r) {
            0.0
        } else {
            let t = 2.0 - r;
            -(t * t * (30.0 + t * (-60.0 + 30.0 * t)))
        }
    }

    pub fn d2(&self, r: f64) -> f64 {
        if !(1.0..2.0).contains(&r) {
            0.0
        } else {
            let t = 2.0 - r;
            t * (60.0 + t * (-180.0 + 120.0 * t))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupPoint;

    // u = x_1 with exact derivatives
    fn poly_x() -> impl Smooth {
        AnalyticFn {
            value: |p: &GroupPoint| p.x[0],
            gradient: |p: &GroupPoint| {
                let mut g = vec![0.0; 2 * p.n() + 1];
                g[0] = 1.0;
                g
            },
            hessian: |p: &GroupPoint| vec![0.0; (2 * p.n() + 1) * (2 * p.n() + 1)],
        }
    }

    fn poly_w() -> impl Smooth {
        AnalyticFn {
            value: |p: &GroupPoint| p.w,
            gradient: |p: &GroupPoint| {
                let mut g = vec![0.0; 2 * p.n() + 1];
                g[2 * p.n()] = 1.0;
                g
            },
            hessian: |p: &GroupPoint| vec![0.0; (2 * p.n() + 1) * (2 * p.n() + 1)],
        }
    }

    #[test]
    fn field_application_hand_values() {
        let u = poly_x();
        assert!((vector_field_apply(VectorField::X(0), &u, &GroupPoint::h1(0.2, 0.4, 0.1)) - 1.0).abs() < 1e-12);
        // X_1 w = 2 y_1
        let w = poly_w();
        let p = GroupPoint::h1(0.0, 3.0, 0.0);
        assert!((vector_field_apply(VectorField::X(0), &w, &p) - 6.0).abs() < 1e-12);
        assert!((vector_field_apply(VectorField::W, &w, &p) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bracket_is_minus_four_dw() {
        // exact route: u = w, [X,Y]w = -4
        let w = poly_w();
        let p = GroupPoint::h1(0.7, -0.3, 0.2);
        assert!((bracket_xy(0, &w, &p) + 4.0).abs() < 1e-12);

        // polynomial with full second-order structure, analytic derivatives
        let u = AnalyticFn {
            value: |p: &GroupPoint| {
                p.x[0] * p.x[0] * p.y[0] + p.w * p.x[0] + 0.5 * p.w * p.w
            },
            gradient: |p: &GroupPoint| {
                vec![
                    2.0 * p.x[0] * p.y[0] + p.w,
                    p.x[0] * p.x[0],
                    p.x[0] + p.w,
                ]
            },
            hessian: |p: &GroupPoint| {
                vec![
                    2.0 * p.y[0], 2.0 * p.x[0], 1.0,
                    2.0 * p.x[0], 0.0,          0.0,
                    1.0,          0.0,          1.0,
                ]
            },
        };
        for q in [
            GroupPoint::h1(0.0, 0.0, 0.0),
            GroupPoint::h1(1.0, 2.0, -0.5),
            GroupPoint::h1(-0.4, 0.9, 1.7),
        ] {
            let lhs = bracket_xy(0, &u, &q);
            let wq = -4.0 * vector_field_apply(VectorField::W, &u, &q);
            assert!((lhs - wq).abs() < 1e-10, "at {q:?}: {lhs} vs {wq}");
        }
    }

    #[test]
    fn sub_laplacian_hand_values() {
        let sq = AnalyticFn {
            value: |p: &GroupPoint| p.x[0] * p.x[0],
            gradient: |p: &GroupPoint| vec![2.0 * p.x[0], 0.0, 0.0],
            hessian: |_: &GroupPoint| vec![2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        };
        let p = GroupPoint::h1(0.3, 0.8, -0.2);
        for form in [SubLaplacianForm::VectorField, SubLaplacianForm::Euclidean] {
            assert!((sub_laplacian(&sq, &p, form) - 2.0).abs() < 1e-10);
        }
        // u = w: all second-order terms vanish
        let w = poly_w();
        for form in [SubLaplacianForm::VectorField, SubLaplacianForm::Euclidean] {
            assert!(sub_laplacian(&w, &p, form).abs() < 1e-10);
        }
        // u = x w at (0, 1, 0): only 4 y u_{xw} survives -> 4
        let xw = AnalyticFn {
            value: |p: &GroupPoint| p.x[0] * p.w,
            gradient: |p: &GroupPoint| vec![p.w, 0.0, p.x[0]],
            hessian: |_: &GroupPoint| vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        };
        let q = GroupPoint::h1(0.0, 1.0, 0.0);
        for form in [SubLaplacianForm::VectorField, SubLaplacianForm::Euclidean] {
            assert!((sub_laplacian(&xw, &q, form) - 4.0).abs() < 1e-10);
        }
    }

    #[test]
    fn forms_agree_on_polynomials() {
        // mixed polynomial with exact derivatives
        let u = AnalyticFn {
            value: |p: &GroupPoint| {
                let (x, y, w) = (p.x[0], p.y[0], p.w);
                x * x * y - 2.0 * y * w + w * w + x * y * w
            },
            gradient: |p: &GroupPoint| {
                let (x, y, w) = (p.x[0], p.y[0], p.w);
                vec![2.0 * x * y + y * w, x * x - 2.0 * w + x * w, -2.0 * y + 2.0 * w + x * y]
            },
            hessian: |p: &GroupPoint| {
                let (x, y, w) = (p.x[0], p.y[0], p.w);
                vec![
                    2.0 * y, 2.0 * x + w, y,
                    2.0 * x + w, 0.0, -2.0 + x,
                    y, -2.0 + x, 2.0,
                ]
            },
        };
        for q in [
            GroupPoint::h1(0.0, 0.0, 0.0),
            GroupPoint::h1(1.2, -0.7, 0.4),
            GroupPoint::h1(-2.0, 1.5, -3.0),
        ] {
            let a = sub_laplacian(&u, &q, SubLaplacianForm::VectorField);
            let b = sub_laplacian(&u, &q, SubLaplacianForm::Euclidean);
            assert!((a - b).abs() < 1e-10, "at {q:?}: {a} vs {b}");
        }
    }

    #[test]
    fn finite_difference_fallback_is_consistent() {
        // closure without analytic derivatives: FD path, looser tolerance
        let u = |p: &GroupPoint| (p.x[0] * p.y[0] + 0.3 * p.w).sin();
        let q = GroupPoint::h1(0.4, -0.9, 1.1);
        let a = sub_laplacian(&u, &q, SubLaplacianForm::VectorField);
        let b = sub_laplacian(&u, &q, SubLaplacianForm::Euclidean);
        assert!((a - b).abs() < 1e-4, "{a} vs {b}");
    }

    #[test]
    fn cutoff_profile_shape_and_smoothness() {
        let phi = CutoffProfile;
        assert_eq!(phi.value(0.0), 1.0);
        assert_eq!(phi.value(1.0), 1.0);
        assert_eq!(phi.value(2.0), 0.0);
        assert_eq!(phi.value(5.0), 0.0);
        // strictly decreasing inside the transition, values in [0,1]
        let mut prev = 1.0;
        for k in 1..=100 {
            let r = 1.0 + k as f64 / 100.0;
            let v = phi.value(r);
            assert!((0.0..=1.0).contains(&v));
            assert!(v <= prev + 1e-15);
            prev = v;
        }
        // derivatives vanish at the seams (checked one-sided numerically too)
        for r in [1.0, 2.0] {
            assert_eq!(phi.d1(r), 0.0);
            assert_eq!(phi.d2(r), 0.0);
        }
        for r in [1.0 + 1e-7, 2.0 - 1e-7] {
            assert!(phi.d1(r).abs() < 1e-5);
            assert!(phi.d2(r).abs() < 1e-3);
        }
        // interior derivative consistency vs finite differences
        for k in 1..20 {
            let r = 1.0 + k as f64 * 0.05;
            let h = 1e-6;
            let fd1 = (phi.value(r + h) - phi.value(r - h)) / (2.0 * h);
            assert!((fd1 - phi.d1(r)).abs() < 1e-6);
            let fd2 = (phi.value(r + h) - 2.0 * phi.value(r) + phi.value(r - h)) / (h * h);
            assert!((fd2 - phi.d2(r)).abs() < 1e-3);
        }
    }
}
