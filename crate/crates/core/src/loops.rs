//! The loop on G/H ≅ S¹ defined by a validated section.
//!
//! Multiplication is `s ∗ t = angle(σ(s) · rot(t))`. Both translations are
//! degree-one circle maps; the divisions invert them by bisection on their
//! lifts. The conjugate-transversal angles `η_w` measure how the section meets
//! the cosets of the conjugates of H, and their monotonicity in `t` is the
//! sharp transitivity criterion.
//!
//! Every upper triangular matrix with positive diagonal maps the upper and
//! lower half-planes to themselves, so the angular displacement it causes is
//! always strictly inside `(-π, π)`. All lifts below rely on that: a lift is
//! the base angle plus the displacement wrapped into `(-π, π]`.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::builder::LoopSpec;
use crate::error::{Error, Result};
use crate::fourier::TruncatedFourierSeries;
use crate::sl2::{angle_of, normalize_angle, rot, wrap_to_pi, CosetAngle, Mat2};
use crate::tolerances::{Tolerances, MAX_BISECTION_ITERS};

/// Below this `|cos t|` the tan quotient for `η_w` is replaced by the
/// conjugation route.
const TAN_POLE_GUARD: f64 = 1e-3;

/// `eta_derivative_expr` refuses to divide by `cos² t` below this.
const POLE_EPS: f64 = 1e-12;

/// Image of a coset under the section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectionPoint {
    pub t: CosetAngle,
    pub matrix: Mat2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircleLoop {
    f_inv: TruncatedFourierSeries,
    g: TruncatedFourierSeries,
    tol: Tolerances,
}

impl CircleLoop {
    pub fn new(spec: &LoopSpec) -> Result<Self> {
        if !spec.is_admissible() {
            return Err(Error::InvalidSpec);
        }
        Ok(Self::unchecked(spec.f_inv().clone(), spec.g().clone(), *spec.tolerances()))
    }

    /// Skips validation. The operations still run, but nothing guarantees
    /// the result is a loop; the verification suites use this to exercise
    /// their failure paths.
    pub fn unchecked(f_inv: TruncatedFourierSeries, g: TruncatedFourierSeries, tol: Tolerances) -> Self {
        Self { f_inv, g, tol }
    }

    pub fn f_inv(&self) -> &TruncatedFourierSeries {
        &self.f_inv
    }

    pub fn g(&self) -> &TruncatedFourierSeries {
        &self.g
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn f(&self, t: f64) -> f64 {
        self.f_inv.eval(t).recip()
    }

    fn shear(&self, t: f64) -> Mat2 {
        let f = self.f(t);
        Mat2::new(f, self.g.eval(t), 0.0, f.recip())
    }

    pub fn section(&self, t: f64) -> SectionPoint {
        SectionPoint {
            t: CosetAngle::new(t),
            matrix: rot(t) * self.shear(t),
        }
    }

    fn angle(&self, m: &Mat2) -> f64 {
        // the section is unimodular by construction; drift is far below tol_det
        angle_of(m, self.tol.tol_det.max(1e-6))
            .map(CosetAngle::radians)
            .unwrap_or(f64::NAN)
    }

    pub fn mul(&self, s: f64, t: f64) -> CosetAngle {
        CosetAngle::new(self.angle(&(self.section(s).matrix * rot(t))))
    }

    /// Lift of `s ∗ t` that is continuous in both arguments and equals
    /// `s + t` whenever either factor is the identity.
    pub fn mul_lift(&self, s: f64, t: f64) -> f64 {
        let base = s + t;
        base + wrap_to_pi(self.mul(s, t).radians() - base)
    }

    /// `y` with `a ∗ y = b`.
    pub fn ldiv(&self, a: f64, b: f64) -> Result<CosetAngle> {
        let shear = self.section(a).matrix;
        let lift = |y: f64| {
            let base = a + y;
            base + wrap_to_pi(self.angle(&(shear * rot(y))) - base)
        };
        let target = a + normalize_angle(b - a);
        bisect_lift(lift, target, self.tol.bisection_tol).map(CosetAngle::new)
    }

    /// `x` with `x ∗ a = b`.
    pub fn rdiv(&self, b: f64, a: f64) -> Result<CosetAngle> {
        let target = a + normalize_angle(b - a);
        bisect_lift(|x| self.mul_lift(x, a), target, self.tol.bisection_tol).map(CosetAngle::new)
    }

    /// `η_w(t)` from the closed tan quotient, lifted continuously with
    /// `η_w(0) = 0`.
    pub fn eta(&self, w: f64, t: f64) -> f64 {
        if w == 0.0 {
            return t;
        }
        let c = t.cos();
        if c.abs() < TAN_POLE_GUARD {
            return self.eta_by_conjugation(w.atan(), t);
        }
        let tan_t = t.tan();
        let (f, g) = (self.f(t), self.g.eval(t));
        let lead = f - g * w;
        let num = lead * (tan_t - w) + w / f * (1.0 + w * tan_t);
        let den = lead * (1.0 + w * tan_t) + w / f * (w - tan_t);
        // (sin η, cos η) is a positive multiple of (num·cos t, den·cos t)
        let theta = (num * c).atan2(den * c);
        t + wrap_to_pi(theta - t)
    }

    /// `η_β(t)` as the coset angle of `rot(t) · κ⁻¹ σ-shear(t) κ` with
    /// `κ = rot(β)`; agrees with [`eta`](Self::eta) at `w = tan β`.
    pub fn eta_by_conjugation(&self, beta: f64, t: f64) -> f64 {
        let kappa = rot(beta);
        let m = rot(t) * kappa.inverse_unimodular() * self.shear(t) * kappa;
        t + wrap_to_pi(self.angle(&m) - t)
    }

    /// Quadratic form in `w` whose positivity for every `w` is sharp
    /// transitivity at `t`:
    /// `w²(g'f + g f' + g² f² + 1) + w(-2 f f' - 2 g f³) + f⁴`.
    pub fn eta_bracket(&self, w: f64, t: f64) -> f64 {
        let (lead, mid, constant) = self.bracket_coefficients(t);
        w * w * lead + w * mid + constant
    }

    fn bracket_coefficients(&self, t: f64) -> (f64, f64, f64) {
        let fi = self.f_inv.eval(t);
        let f = fi.recip();
        let fp = -self.f_inv.eval_derivative(t) / (fi * fi);
        let (g, gp) = (self.g.eval(t), self.g.eval_derivative(t));
        let f2 = f * f;
        (
            gp * f + g * fp + g * g * f2 + 1.0,
            -2.0 * f * fp - 2.0 * g * f2 * f,
            f2 * f2,
        )
    }

    /// `(w² + 1)/cos² t` times [`eta_bracket`](Self::eta_bracket). This is a
    /// positive multiple of `dη_w/dt`, not the derivative itself.
    pub fn eta_derivative_expr(&self, w: f64, t: f64) -> Result<f64> {
        let c = t.cos();
        if c.abs() < POLE_EPS {
            return Err(Error::PoleAt(t));
        }
        Ok((w * w + 1.0) / (c * c) * self.eta_bracket(w, t))
    }

    /// Minimum of the quadratic form over `w ∈ {0} ∪ ±logspace(1e-3, 1e3)`
    /// plus its vertex, across the uniform `t` grid.
    pub fn quadratic_form_spot_check(&self, t_grid: usize, w_per_decade: usize) -> SpotCheck {
        let decades = 6;
        let steps = decades * w_per_decade;
        let mut ws = vec![0.0];
        for i in 0..=steps {
            let w = 10f64.powf(-3.0 + 6.0 * i as f64 / steps as f64);
            ws.push(w);
            ws.push(-w);
        }
        let mut best = SpotCheck {
            min_value: f64::INFINITY,
            worst_t: 0.0,
            worst_w: 0.0,
        };
        for t in crate::fourier::uniform_grid(t_grid) {
            let (lead, mid, constant) = self.bracket_coefficients(t);
            let vertex = (lead > 0.0).then(|| -mid / (2.0 * lead));
            for &w in ws.iter().chain(vertex.iter()) {
                let v = w * w * lead + w * mid + constant;
                if v < best.min_value {
                    best = SpotCheck {
                        min_value: v,
                        worst_t: t,
                        worst_w: w,
                    };
                }
            }
        }
        best
    }

    /// For each `β = jπ/beta_grid`, checks that `t ↦ η_β(t)` is strictly
    /// increasing on the `t` grid over `[0, 2π]` and winds exactly once.
    pub fn baer_transversal_check(&self, beta_grid: usize, t_grid: usize) -> BaerReport {
        let mut report = BaerReport {
            beta_grid,
            t_grid,
            min_forward_difference: f64::INFINITY,
            worst_beta: 0.0,
            worst_t: 0.0,
            max_winding_error: 0.0,
            worst_winding_beta: 0.0,
            passed: false,
        };
        for j in 0..beta_grid {
            let beta = PI * j as f64 / beta_grid as f64;
            let mut prev = self.eta_by_conjugation(beta, 0.0);
            let start = prev;
            for i in 1..=t_grid {
                let t = TAU * i as f64 / t_grid as f64;
                let cur = self.eta_by_conjugation(beta, t);
                let diff = cur - prev;
                if diff < report.min_forward_difference || diff.is_nan() {
                    report.min_forward_difference = diff;
                    report.worst_beta = beta;
                    report.worst_t = t;
                }
                prev = cur;
            }
            let winding_error = (prev - start - TAU).abs();
            if winding_error > report.max_winding_error || winding_error.is_nan() {
                report.max_winding_error = winding_error;
                report.worst_winding_beta = beta;
            }
        }
        report.passed = report.min_forward_difference > 0.0 && report.max_winding_error <= WINDING_TOL;
        report
    }
}

/// Allowed deviation of a transversal's total increase from 2π.
pub const WINDING_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpotCheck {
    pub min_value: f64,
    pub worst_t: f64,
    pub worst_w: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaerReport {
    pub beta_grid: usize,
    pub t_grid: usize,
    pub min_forward_difference: f64,
    pub worst_beta: f64,
    pub worst_t: f64,
    pub max_winding_error: f64,
    pub worst_winding_beta: f64,
    pub passed: bool,
}

/// Finds `x ∈ [0, 2π]` with `lift(x) = target` for a degree-one lift with
/// `lift(0) ≤ target ≤ lift(0) + 2π`.
fn bisect_lift(lift: impl Fn(f64) -> f64, target: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0, TAU);
    let (flo, fhi) = (lift(lo), lift(hi));
    // lift(2π) may round a hair below lift(0) + 2π
    let slack = 1e-9;
    if !(flo <= target + slack && fhi >= target - slack) {
        return Err(Error::RootNotBracketed { target });
    }
    for _ in 0..MAX_BISECTION_ITERS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let v = lift(mid);
        if v.is_nan() {
            return Err(Error::RootNotBracketed { target });
        }
        if v < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
