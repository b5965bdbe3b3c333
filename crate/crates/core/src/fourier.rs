//! Truncated Fourier series on the circle.
//!
//! A [`TruncatedFourierSeries`] is the trigonometric polynomial
//! `a0 + Σ_{k=1..K} (a_k cos kt + b_k sin kt)` with period 2π. The weight
//! function `R`, the reciprocal `f_inv = 1/f` and the shear `g` of a loop
//! section are all stored in this form.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerances::{min_grid, Tolerances};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedFourierSeries {
    a0: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

/// Points `2πj/n` for `j = 0..n`, the validation grid used everywhere.
pub fn uniform_grid(n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |j| TAU * j as f64 / n as f64)
}

impl TruncatedFourierSeries {
    pub fn new(a0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if cos.len() != sin.len() {
            return Err(Error::LengthMismatch {
                cos: cos.len(),
                sin: sin.len(),
            });
        }
        if !a0.is_finite() {
            return Err(Error::NonFinite("constant term"));
        }
        if cos.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("cosine coefficients"));
        }
        if sin.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("sine coefficients"));
        }
        Ok(Self { a0, cos, sin })
    }

    pub fn constant(a0: f64) -> Self {
        Self {
            a0,
            cos: Vec::new(),
            sin: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// Builds a weight series whose constant term is chosen so that
    /// `a0 + Σ (a_k + k b_k)/(1 + k²) = 1` holds by construction.
    pub fn with_solved_a0(cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        let mut s = Self::new(0.0, cos, sin)?;
        s.a0 = 1.0 - s.closure_sum();
        Ok(s)
    }

    /// Builds a series with `s(0) = 0` by setting the constant to `-Σ a_k`.
    pub fn anchored_at_zero(cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        let mut s = Self::new(0.0, cos, sin)?;
        s.a0 = -s.cos.iter().sum::<f64>();
        Ok(s)
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    pub fn harmonics(&self) -> usize {
        self.cos.len()
    }

    /// `(k, a_k, b_k)` for `k = 1..=K`.
    pub fn terms(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.cos
            .iter()
            .zip(&self.sin)
            .enumerate()
            .map(|(i, (&a, &b))| ((i + 1) as f64, a, b))
    }

    pub fn eval(&self, t: f64) -> f64 {
        let t = t.rem_euclid(TAU);
        self.terms().fold(self.a0, |acc, (k, a, b)| {
            let (s, c) = (k * t).sin_cos();
            acc + a * c + b * s
        })
    }

    pub fn eval_derivative(&self, t: f64) -> f64 {
        let t = t.rem_euclid(TAU);
        self.terms().fold(0.0, |acc, (k, a, b)| {
            let (s, c) = (k * t).sin_cos();
            acc + k * (b * c - a * s)
        })
    }

    /// Termwise derivative as a series.
    pub fn derivative(&self) -> Self {
        let (cos, sin) = self.terms().map(|(k, a, b)| (k * b, -k * a)).unzip();
        Self { a0: 0.0, cos, sin }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            a0: self.a0 * factor,
            cos: self.cos.iter().map(|c| c * factor).collect(),
            sin: self.sin.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let k = self.harmonics().max(other.harmonics());
        let pick = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        Self {
            a0: self.a0 - other.a0,
            cos: (0..k).map(|i| pick(&self.cos, i) - pick(&other.cos, i)).collect(),
            sin: (0..k).map(|i| pick(&self.sin, i) - pick(&other.sin, i)).collect(),
        }
    }

    /// Exact product of two trigonometric polynomials.
    pub fn product(&self, other: &Self) -> Self {
        let n = self.harmonics() + other.harmonics();
        // index 0 of `c` is the constant term; `s[0]` stays zero
        let mut c = vec![0.0; n + 1];
        let mut s = vec![0.0; n + 1];
        let full = |x: &Self, k: usize| -> (f64, f64) {
            if k == 0 {
                (x.a0, 0.0)
            } else {
                (x.cos[k - 1], x.sin[k - 1])
            }
        };
        for k in 0..=self.harmonics() {
            let (c1, s1) = full(self, k);
            for l in 0..=other.harmonics() {
                let (c2, s2) = full(other, l);
                let plus = k + l;
                let minus = k.abs_diff(l);
                // sin of a negative frequency flips sign
                let sign = if k >= l { 1.0 } else { -1.0 };
                c[plus] += 0.5 * (c1 * c2 - s1 * s2);
                c[minus] += 0.5 * (c1 * c2 + s1 * s2);
                s[plus] += 0.5 * (s1 * c2 + c1 * s2);
                if minus != 0 {
                    s[minus] += 0.5 * sign * (s1 * c2 - c1 * s2);
                }
            }
        }
        Self {
            a0: c[0],
            cos: c[1..].to_vec(),
            sin: s[1..].to_vec(),
        }
    }

    /// The series of `t ↦ s(-t)`.
    pub fn reflected(&self) -> Self {
        Self {
            a0: self.a0,
            cos: self.cos.clone(),
            sin: self.sin.iter().map(|b| -b).collect(),
        }
    }

    /// `∫_0^t s(u) du`, exact.
    pub fn integral_from_zero(&self, t: f64) -> f64 {
        self.terms().fold(self.a0 * t, |acc, (k, a, b)| {
            let (s, c) = (k * t).sin_cos();
            acc + (a * s + b * (1.0 - c)) / k
        })
    }

    /// Mean value over one period times 2π.
    pub fn period_integral(&self) -> f64 {
        TAU * self.a0
    }

    /// `∫_0^t s(u) e^{-u} du` in closed form (partial integration of each
    /// harmonic).
    pub fn exp_weighted_integral(&self, t: f64) -> f64 {
        let decay = (-t).exp();
        self.terms().fold(self.a0 * (1.0 - decay), |acc, (k, a, b)| {
            let (s, c) = (k * t).sin_cos();
            let cos_part = 1.0 + k * s * decay - c * decay;
            let sin_part = k - k * c * decay - s * decay;
            acc + (a * cos_part + b * sin_part) / (1.0 + k * k)
        })
    }

    /// `Σ (a_k + k b_k)/(1 + k²)`; the closure identity asks for `a0 + this = 1`.
    pub fn closure_sum(&self) -> f64 {
        self.terms().map(|(k, a, b)| (a + k * b) / (1.0 + k * k)).sum()
    }

    /// Minimum over the uniform grid and where it is attained.
    pub fn min_on_grid(&self, grid_n: usize) -> (f64, f64) {
        min_on_grid(grid_n, |t| self.eval(t))
    }
}

pub(crate) fn min_on_grid(grid_n: usize, f: impl Fn(f64) -> f64) -> (f64, f64) {
    uniform_grid(grid_n)
        .map(|t| (t, f(t)))
        .fold((0.0, f64::INFINITY), |best, cur| {
            if cur.1 < best.1 || cur.1.is_nan() {
                cur
            } else {
                best
            }
        })
}

pub(crate) fn max_on_grid(grid_n: usize, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let (t, v) = min_on_grid(grid_n, |t| -f(t));
    (t, -v)
}

/// Outcome of the three membership conditions for the weight series `R`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FMembershipReport {
    /// `|a0 + Σ (a_k + k b_k)/(1 + k²) - 1|`
    pub sum_identity_residual: f64,
    /// Grid minimum of `a0 - Σ [(k a_k - b_k) sin kt - (a_k + k b_k) cos kt]/(1 + k²)`.
    pub positivity_margin: f64,
    pub positivity_worst_t: f64,
    /// `2 a0² - Σ (a_k² + b_k²)(k² - 1)/(k² + 1)`, which equals
    /// `(1/π) ∫_0^{2π} (f_inv² - f_inv'²)`.
    pub energy_slack: f64,
    pub grid_size: usize,
    pub verdict: bool,
}

pub fn check_f_membership(
    r: &TruncatedFourierSeries,
    grid_n: usize,
    tol: &Tolerances,
) -> Result<FMembershipReport> {
    let min = min_grid(r.harmonics());
    if grid_n < min {
        return Err(Error::InvalidGrid { got: grid_n, min });
    }
    let sum_identity_residual = (r.a0 + r.closure_sum() - 1.0).abs();
    let (positivity_worst_t, positivity_margin) = min_on_grid(grid_n, |t| {
        let rhs: f64 = r
            .terms()
            .map(|(k, a, b)| {
                let (s, c) = (k * t).sin_cos();
                ((k * a - b) * s - (a + k * b) * c) / (1.0 + k * k)
            })
            .sum();
        r.a0 - rhs
    });
    let energy_slack = 2.0 * r.a0 * r.a0
        - r.terms()
            .map(|(k, a, b)| (a * a + b * b) * (k * k - 1.0) / (k * k + 1.0))
            .sum::<f64>();
    let verdict = sum_identity_residual <= tol.tol_eq
        && positivity_margin > tol.delta_strict
        && energy_slack >= -tol.tol_eq;
    Ok(FMembershipReport {
        sum_identity_residual,
        positivity_margin,
        positivity_worst_t,
        energy_slack,
        grid_size: grid_n,
        verdict,
    })
}

/// Composite 3-point Gauss–Legendre rule on `n / 2` equal panels.
///
/// Independent of every closed form in this crate; the tests use it as the
/// reference integral.
pub fn quadrature_oracle(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Result<f64> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidGrid {
            got: n,
            min: 2,
        });
    }
    const NODE: f64 = 0.774_596_669_241_483_4; // sqrt(3/5)
    const W_OUTER: f64 = 5.0 / 9.0;
    const W_MID: f64 = 8.0 / 9.0;
    let panels = n / 2;
    let width = (hi - lo) / panels as f64;
    let half = 0.5 * width;
    let total: f64 = (0..panels)
        .map(|p| {
            let mid = lo + (p as f64 + 0.5) * width;
            W_OUTER * f(mid - half * NODE) + W_MID * f(mid) + W_OUTER * f(mid + half * NODE)
        })
        .sum();
    Ok(total * half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn series(a0: f64, cos: &[f64], sin: &[f64]) -> TruncatedFourierSeries {
        TruncatedFourierSeries::new(a0, cos.to_vec(), sin.to_vec()).unwrap()
    }

    /// Plain summation, written out separately from `eval`.
    fn naive_eval(a0: f64, cos: &[f64], sin: &[f64], t: f64) -> f64 {
        let mut acc = a0;
        for i in 0..cos.len() {
            let k = (i + 1) as f64;
            acc += cos[i] * (k * t).cos();
            acc += sin[i] * (k * t).sin();
        }
        acc
    }

    #[test]
    fn eval_examples() {
        assert_eq!(TruncatedFourierSeries::constant(1.0).eval(0.7), 1.0);
        assert_eq!(series(0.0, &[1.0], &[0.0]).eval(0.0), 1.0);
        let s = series(0.9, &[0.2], &[0.0]);
        assert!((s.eval(PI) - 0.7).abs() < 1e-15);
        assert!((s.eval(PI) - naive_eval(0.9, &[0.2], &[0.0], PI)).abs() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(TruncatedFourierSeries::constant(1.0).eval_derivative(2.3), 0.0);
        assert_eq!(series(0.0, &[0.0], &[1.0]).eval_derivative(0.0), 1.0);
        let s = series(0.9, &[0.2], &[0.0]);
        assert!((s.eval_derivative(PI / 2.0) + 0.2).abs() < 1e-15);
        let h = 1e-6;
        let fd = (s.eval(PI / 2.0 + h) - s.eval(PI / 2.0 - h)) / (2.0 * h);
        assert!((fd + 0.2).abs() < 1e-9);
    }

    #[test]
    fn derivative_series_matches_pointwise() {
        let s = series(0.3, &[0.1, -0.4, 0.05], &[0.2, 0.0, -0.3]);
        let d = s.derivative();
        for t in uniform_grid(37) {
            assert!((d.eval(t) - s.eval_derivative(t)).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_mismatched_and_non_finite() {
        assert_eq!(
            TruncatedFourierSeries::new(0.0, vec![1.0], vec![]),
            Err(Error::LengthMismatch { cos: 1, sin: 0 })
        );
        assert!(matches!(
            TruncatedFourierSeries::new(f64::NAN, vec![], vec![]),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            TruncatedFourierSeries::new(0.0, vec![f64::INFINITY], vec![0.0]),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn exp_weighted_integral_examples() {
        let one = TruncatedFourierSeries::constant(1.0);
        let expected = 1.0 - (-TAU).exp();
        assert!((one.exp_weighted_integral(TAU) - expected).abs() < 1e-15);
        let s = series(0.4, &[0.3, 0.1], &[-0.2, 0.5]);
        assert_eq!(s.exp_weighted_integral(0.0), 0.0);
        let sin1 = series(0.0, &[0.0], &[1.0]);
        assert!((sin1.exp_weighted_integral(TAU) - 0.5 * expected).abs() < 1e-15);
        let q = quadrature_oracle(|u| u.sin() * (-u).exp(), 0.0, TAU, 512).unwrap();
        assert!((sin1.exp_weighted_integral(TAU) - q).abs() < 1e-12);
    }

    #[test]
    fn quadrature_examples() {
        let q = quadrature_oracle(|_| 1.0, 0.0, TAU, 128).unwrap();
        assert!((q - TAU).abs() < 1e-12);
        let q = quadrature_oracle(f64::sin, 0.0, PI, 128).unwrap();
        assert!((q - 2.0).abs() < 1e-10);
        let q = quadrature_oracle(|u| (-u).exp(), 0.0, TAU, 256).unwrap();
        assert!((q - (1.0 - (-TAU).exp())).abs() < 1e-10);
        assert!(matches!(
            quadrature_oracle(|_| 1.0, 0.0, 1.0, 7),
            Err(Error::InvalidGrid { .. })
        ));
        assert!(quadrature_oracle(|_| 1.0, 0.0, 1.0, 0).is_err());
    }

    #[test]
    fn integral_from_zero_matches_quadrature() {
        let s = series(0.4, &[0.3, 0.1, -0.2], &[-0.2, 0.5, 0.05]);
        for t in [0.0, 0.3, 1.9, 4.4, TAU] {
            let q = quadrature_oracle(|u| s.eval(u), 0.0, t, 256).unwrap();
            assert!((s.integral_from_zero(t) - q).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn product_matches_pointwise() {
        let x = series(0.4, &[0.3, 0.1, -0.2], &[-0.2, 0.5, 0.05]);
        let y = series(-0.1, &[0.7, 0.25], &[0.15, -0.6]);
        let p = x.product(&y);
        assert_eq!(p.harmonics(), 5);
        for t in uniform_grid(53) {
            assert!((p.eval(t) - x.eval(t) * y.eval(t)).abs() < 1e-14);
        }
    }

    #[test]
    fn membership_constant_series() {
        let r = TruncatedFourierSeries::constant(1.0);
        let rep = check_f_membership(&r, 4096, &Tolerances::default()).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.sum_identity_residual, 0.0);
        assert_eq!(rep.positivity_margin, 1.0);
        assert_eq!(rep.energy_slack, 2.0);
    }

    #[test]
    fn membership_first_harmonic_fixture() {
        let r = series(0.9, &[0.2], &[0.0]);
        let rep = check_f_membership(&r, 4096, &Tolerances::default()).unwrap();
        assert!(rep.verdict);
        assert!(rep.sum_identity_residual < 1e-15);
        // dense scan of 0.9 - (0.1 sin t - 0.1 cos t)
        let dense = (0..200_000)
            .map(|j| {
                let t = TAU * j as f64 / 200_000.0;
                0.9 - (0.1 * t.sin() - 0.1 * t.cos())
            })
            .fold(f64::INFINITY, f64::min);
        let exact = 0.9 - 0.1 * 2f64.sqrt();
        assert!((dense - exact).abs() < 1e-9);
        assert!((rep.positivity_margin - exact).abs() < 1e-6);
        assert!((rep.energy_slack - 1.62).abs() < 1e-15);
    }

    #[test]
    fn membership_rejects_identity_violation() {
        let r = TruncatedFourierSeries::constant(0.5);
        let rep = check_f_membership(&r, 4096, &Tolerances::default()).unwrap();
        assert!(!rep.verdict);
        assert_eq!(rep.sum_identity_residual, 0.5);
    }

    #[test]
    fn membership_grid_bound() {
        let r = series(0.9, &[0.2, 0.0, 0.0], &[0.0, 0.0, 0.0]);
        assert_eq!(
            check_f_membership(&r, 27, &Tolerances::default()),
            Err(Error::InvalidGrid { got: 27, min: 28 })
        );
    }

    #[test]
    fn solved_a0_meets_identity() {
        let r = TruncatedFourierSeries::with_solved_a0(vec![0.1, 0.08, 0.0], vec![0.05, 0.0, -0.03])
            .unwrap();
        assert!((r.a0() + r.closure_sum() - 1.0).abs() < 1e-15);
        let g = TruncatedFourierSeries::anchored_at_zero(vec![0.02, -0.01], vec![0.03, 0.0]).unwrap();
        assert_eq!(g.eval(0.0), 0.0);
    }

    #[test]
    fn reflection_negates_sines_only() {
        let s = series(0.4, &[0.3, 0.1], &[-0.2, 0.5]);
        let r = s.reflected();
        for t in uniform_grid(19) {
            assert!((r.eval(t) - s.eval(-t)).abs() < 1e-14);
        }
        assert_eq!(r.reflected(), s);
    }
}
