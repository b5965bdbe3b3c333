//! Construction and validation of the pair `(f, g)` that defines a loop
//! section `t ↦ rot(t) · [[f(t), g(t)], [0, 1/f(t)]]`.
//!
//! The reciprocal `f_inv = 1/f` is obtained from a weight series `R` as the
//! periodic solution of `y' - y + R = 0` with `y(0) = 1`; `g` is supplied
//! directly. A [`LoopSpec`] always carries the full [`ValidationReport`], and
//! only specs whose report verdict is true can be turned into a loop.
//!
//! Admissibility is decided by the pointwise discriminant condition
//! `f'² + g f² f' - g' f³ - f² < 0`. The integral lower bound for `g` is
//! evaluated and reported alongside it; when the lower bound holds but the
//! discriminant fails, the report flags the disagreement.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{
    check_f_membership, max_on_grid, min_on_grid, uniform_grid, FMembershipReport,
    TruncatedFourierSeries,
};
use crate::tolerances::{min_grid, Tolerances, BOUNDARY_TOL, DEFAULT_GRID_N};

/// Reciprocal series `f_inv` generated by the weight `R`:
/// `a0 + Σ [(a_k + k b_k) cos kt + (b_k - k a_k) sin kt] / (1 + k²)`.
///
/// No membership check; see [`build_f_inv`]. Fails only if a coefficient
/// overflows.
pub fn f_inv_series(r: &TruncatedFourierSeries) -> Result<TruncatedFourierSeries> {
    let (cos, sin) = r
        .terms()
        .map(|(k, a, b)| {
            let d = 1.0 + k * k;
            ((a + k * b) / d, (b - k * a) / d)
        })
        .unzip();
    TruncatedFourierSeries::new(r.a0(), cos, sin)
}

/// Weight series `R = f_inv - f_inv'`, the inverse of [`f_inv_series`].
pub fn weight_from_f_inv(f_inv: &TruncatedFourierSeries) -> TruncatedFourierSeries {
    f_inv.sub(&f_inv.derivative())
}

pub fn build_f_inv(r: &TruncatedFourierSeries, tol: &Tolerances) -> Result<TruncatedFourierSeries> {
    let report = check_f_membership(r, tol.grid_n, tol)?;
    if !report.verdict {
        return Err(Error::NotInF(format!(
            "identity residual {:.3e}, positivity margin {:.3e}, energy slack {:.3e}",
            report.sum_identity_residual, report.positivity_margin, report.energy_slack
        )));
    }
    f_inv_series(r)
}

/// Left side of the discriminant condition at one point, with
/// `f = 1/f_inv` and `f' = -f_inv'/f_inv²`.
pub fn discriminant_at(f_inv: &TruncatedFourierSeries, g: &TruncatedFourierSeries, t: f64) -> f64 {
    let fi = f_inv.eval(t);
    let f = fi.recip();
    let fp = -f_inv.eval_derivative(t) / (fi * fi);
    let (gv, gp) = (g.eval(t), g.eval_derivative(t));
    fp * fp + gv * f * f * fp - gp * f * f * f - f * f
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscriminantCheck {
    /// Grid maximum of the discriminant; admissible specs have this `< 0`.
    pub margin: f64,
    pub worst_t: f64,
    /// `g'(0) - (f'(0)² - 1)`, positive for admissible specs.
    pub initial_slope_margin: f64,
}

pub fn check_discriminant(
    f_inv: &TruncatedFourierSeries,
    g: &TruncatedFourierSeries,
    grid_n: usize,
) -> DiscriminantCheck {
    let (worst_t, margin) = max_on_grid(grid_n, |t| discriminant_at(f_inv, g, t));
    let fi0 = f_inv.eval(0.0);
    let fp0 = -f_inv.eval_derivative(0.0) / (fi0 * fi0);
    DiscriminantCheck {
        margin,
        worst_t,
        initial_slope_margin: g.eval_derivative(0.0) - (fp0 * fp0 - 1.0),
    }
}

/// The comparison function `h(t) = f_inv(t)⁻¹ ∫_0^t (f_inv² - f_inv'²)`.
///
/// The integrand is itself a trigonometric polynomial, so the integral is
/// evaluated exactly from its coefficients.
#[derive(Debug, Clone)]
pub struct SubfunctionBound {
    f_inv: TruncatedFourierSeries,
    integrand: TruncatedFourierSeries,
}

impl SubfunctionBound {
    pub fn new(f_inv: &TruncatedFourierSeries, grid_n: usize) -> Result<Self> {
        let (t, value) = f_inv.min_on_grid(grid_n);
        if !(value > 0.0) {
            return Err(Error::NonPositiveF { t, value });
        }
        let d = f_inv.derivative();
        Ok(Self {
            f_inv: f_inv.clone(),
            integrand: f_inv.product(f_inv).sub(&d.product(&d)),
        })
    }

    /// `∫_0^t (f_inv² - f_inv'²)`.
    pub fn integral(&self, t: f64) -> f64 {
        self.integrand.integral_from_zero(t)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.integral(t) / self.f_inv.eval(t)
    }

    pub fn integrand(&self) -> &TruncatedFourierSeries {
        &self.integrand
    }
}

/// `h(t)` with the default positivity grid.
pub fn subfunction_bound(f_inv: &TruncatedFourierSeries, t: f64) -> Result<f64> {
    Ok(SubfunctionBound::new(f_inv, DEFAULT_GRID_N.max(min_grid(f_inv.harmonics())))?.eval(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GAdmissibility {
    /// Minimum over interior grid points of `g(t) - (-h(t))`.
    pub lower_bound_margin: f64,
    pub lower_bound_worst_t: f64,
    pub discriminant: DiscriminantCheck,
}

pub fn check_g_admissible(
    f_inv: &TruncatedFourierSeries,
    g: &TruncatedFourierSeries,
    grid_n: usize,
) -> Result<GAdmissibility> {
    let g0 = g.eval(0.0);
    if !(g0.abs() <= BOUNDARY_TOL) {
        return Err(Error::GNotAnchored(g0));
    }
    let h = SubfunctionBound::new(f_inv, grid_n)?;
    let (lower_bound_worst_t, lower_bound_margin) = uniform_grid(grid_n)
        .skip(1)
        .map(|t| (t, g.eval(t) + h.eval(t)))
        .fold((0.0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    Ok(GAdmissibility {
        lower_bound_margin,
        lower_bound_worst_t,
        discriminant: check_discriminant(f_inv, g, grid_n),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryResiduals {
    pub f_at_zero: f64,
    pub g_at_zero: f64,
    pub g_at_two_pi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub condition: &'static str,
    pub worst_t: Option<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub tolerances: Tolerances,
    pub f_membership: FMembershipReport,
    pub positivity_margin_f: f64,
    pub positivity_worst_t: f64,
    pub discriminant_margin: f64,
    pub discriminant_worst_t: f64,
    pub initial_slope_margin: f64,
    pub g_lower_bound_margin: f64,
    pub g_lower_bound_worst_t: f64,
    /// `∫_0^{2π} (f_inv² - f_inv'²)`, must be `>= 0`.
    pub integral_inequality_value: f64,
    pub boundary_residuals: BoundaryResiduals,
    /// The integral lower bound on `g` holds on the grid while the
    /// discriminant condition does not.
    pub lower_bound_without_discriminant: bool,
    pub verdict: bool,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoopSpec {
    r: TruncatedFourierSeries,
    f_inv: TruncatedFourierSeries,
    g: TruncatedFourierSeries,
    report: ValidationReport,
}

impl LoopSpec {
    pub fn r(&self) -> &TruncatedFourierSeries {
        &self.r
    }

    pub fn f_inv(&self) -> &TruncatedFourierSeries {
        &self.f_inv
    }

    pub fn g(&self) -> &TruncatedFourierSeries {
        &self.g
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.report.tolerances
    }

    pub fn is_admissible(&self) -> bool {
        self.report.verdict
    }
}

/// Builds `f_inv` from `r`, pairs it with `g` and runs every check.
///
/// Only a grid below the resolution bound or an overflowing `f_inv` is an
/// error; any other defect
/// yields a spec whose report verdict is false.
pub fn build_loop_spec(
    r: &TruncatedFourierSeries,
    g: &TruncatedFourierSeries,
    tol: &Tolerances,
) -> Result<LoopSpec> {
    let f_inv = f_inv_series(r)?;
    assemble(r.clone(), f_inv, g.clone(), tol)
}

/// The spec of `(f(-t), -g(-t))`, re-validated.
pub fn reflect_spec(spec: &LoopSpec) -> LoopSpec {
    let f_inv = spec.f_inv.reflected();
    let g = spec.g.reflected().scaled(-1.0);
    let r = weight_from_f_inv(&f_inv);
    assemble(r, f_inv, g, spec.tolerances()).expect("grid was valid for the original spec")
}

fn assemble(
    r: TruncatedFourierSeries,
    f_inv: TruncatedFourierSeries,
    g: TruncatedFourierSeries,
    tol: &Tolerances,
) -> Result<LoopSpec> {
    let grid_n = tol.grid_n;
    let min = min_grid(r.harmonics().max(g.harmonics()));
    if grid_n < min {
        return Err(Error::InvalidGrid { got: grid_n, min });
    }
    let report = validate(&r, &f_inv, &g, tol)?;
    Ok(LoopSpec {
        r,
        f_inv,
        g,
        report,
    })
}

fn validate(
    r: &TruncatedFourierSeries,
    f_inv: &TruncatedFourierSeries,
    g: &TruncatedFourierSeries,
    tol: &Tolerances,
) -> Result<ValidationReport> {
    let grid_n = tol.grid_n;
    let delta = tol.delta_strict;
    let mut failures = Vec::new();

    let f_membership = check_f_membership(r, grid_n, tol)?;
    if !(f_membership.sum_identity_residual <= tol.tol_eq) {
        failures.push(Failure {
            condition: "F-identity",
            worst_t: None,
            value: f_membership.sum_identity_residual,
        });
    }
    if !(f_membership.positivity_margin > delta) {
        failures.push(Failure {
            condition: "F-positivity",
            worst_t: Some(f_membership.positivity_worst_t),
            value: f_membership.positivity_margin,
        });
    }
    if !(f_membership.energy_slack >= -tol.tol_eq) {
        failures.push(Failure {
            condition: "F-energy",
            worst_t: None,
            value: f_membership.energy_slack,
        });
    }

    let (positivity_worst_t, positivity_margin_f) = min_on_grid(grid_n, |t| f_inv.eval(t));
    let f_positive = positivity_margin_f > delta;
    if !f_positive {
        failures.push(Failure {
            condition: "f-positivity",
            worst_t: Some(positivity_worst_t),
            value: positivity_margin_f,
        });
    }

    let boundary_residuals = BoundaryResiduals {
        f_at_zero: (f_inv.eval(0.0).recip() - 1.0).abs(),
        g_at_zero: g.eval(0.0).abs(),
        g_at_two_pi: g.eval(std::f64::consts::TAU).abs(),
    };
    for (condition, worst_t, value) in [
        ("boundary-f0", 0.0, boundary_residuals.f_at_zero),
        ("boundary-g0", 0.0, boundary_residuals.g_at_zero),
        ("boundary-g2pi", std::f64::consts::TAU, boundary_residuals.g_at_two_pi),
    ] {
        if !(value <= BOUNDARY_TOL) {
            failures.push(Failure {
                condition,
                worst_t: Some(worst_t),
                value,
            });
        }
    }

    let disc = check_discriminant(f_inv, g, grid_n);
    if !(disc.margin < -delta) {
        failures.push(Failure {
            condition: "discriminant",
            worst_t: Some(disc.worst_t),
            value: disc.margin,
        });
    }
    if !(disc.initial_slope_margin > delta) {
        failures.push(Failure {
            condition: "initial-slope",
            worst_t: Some(0.0),
            value: disc.initial_slope_margin,
        });
    }

    let (g_lower_bound_margin, g_lower_bound_worst_t, integral_inequality_value) = if f_positive {
        let h = SubfunctionBound::new(f_inv, grid_n)?;
        let (t, m) = uniform_grid(grid_n)
            .skip(1)
            .map(|t| (t, g.eval(t) + h.eval(t)))
            .fold((0.0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        (m, t, h.integrand().period_integral())
    } else {
        (f64::NAN, f64::NAN, f64::NAN)
    };
    if f_positive && !(g_lower_bound_margin > delta) {
        failures.push(Failure {
            condition: "g-lower-bound",
            worst_t: Some(g_lower_bound_worst_t),
            value: g_lower_bound_margin,
        });
    }
    if f_positive && !(integral_inequality_value >= -tol.tol_eq) {
        failures.push(Failure {
            condition: "integral-inequality",
            worst_t: None,
            value: integral_inequality_value,
        });
    }

    let lower_bound_without_discriminant =
        f_positive && g_lower_bound_margin > delta && !(disc.margin < -delta);

    Ok(ValidationReport {
        tolerances: *tol,
        f_membership,
        positivity_margin_f,
        positivity_worst_t,
        discriminant_margin: disc.margin,
        discriminant_worst_t: disc.worst_t,
        initial_slope_margin: disc.initial_slope_margin,
        g_lower_bound_margin,
        g_lower_bound_worst_t,
        integral_inequality_value,
        boundary_residuals,
        lower_bound_without_discriminant,
        verdict: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::quadrature_oracle;
    use std::f64::consts::{PI, TAU};

    fn series(a0: f64, cos: &[f64], sin: &[f64]) -> TruncatedFourierSeries {
        TruncatedFourierSeries::new(a0, cos.to_vec(), sin.to_vec()).unwrap()
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    /// `e^t (1 - ∫_0^t R(u) e^{-u} du)` by quadrature.
    fn integral_form(r: &TruncatedFourierSeries, t: f64) -> f64 {
        let q = quadrature_oracle(|u| r.eval(u) * (-u).exp(), 0.0, t, 2048).unwrap();
        t.exp() * (1.0 - q)
    }

    #[test]
    fn f_inv_of_constant_weight() {
        let f = build_f_inv(&TruncatedFourierSeries::constant(1.0), &tol()).unwrap();
        assert_eq!(f, TruncatedFourierSeries::constant(1.0));
    }

    #[test]
    fn f_inv_of_first_harmonic_weight() {
        let r = series(0.9, &[0.2], &[0.0]);
        let f = build_f_inv(&r, &tol()).unwrap();
        assert_eq!(f.a0(), 0.9);
        assert!((f.cos_coeffs()[0] - 0.1).abs() < 1e-16);
        assert!((f.sin_coeffs()[0] + 0.1).abs() < 1e-16);
        for t in [0.0, 0.5, 2.0, 3.7, 5.0, TAU] {
            assert!((f.eval(t) - integral_form(&r, t)).abs() < 1e-9, "t = {t}");
        }
        assert!((f.eval(0.0) - 1.0).abs() < 1e-15);
        assert!((f.eval(TAU) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn f_inv_rejects_non_members() {
        let err = build_f_inv(&TruncatedFourierSeries::constant(0.5), &tol()).unwrap_err();
        assert!(matches!(err, Error::NotInF(_)));
    }

    #[test]
    fn weight_round_trips_through_f_inv() {
        let r = series(0.917, &[0.1, 0.08, 0.0], &[0.05, 0.0, -0.03]);
        let back = weight_from_f_inv(&f_inv_series(&r).unwrap());
        for t in uniform_grid(31) {
            assert!((back.eval(t) - r.eval(t)).abs() < 1e-15);
        }
    }

    #[test]
    fn discriminant_group_case() {
        let one = TruncatedFourierSeries::constant(1.0);
        let d = check_discriminant(&one, &TruncatedFourierSeries::zero(), 4096);
        assert_eq!(d.margin, -1.0);
        assert_eq!(d.initial_slope_margin, 1.0);
    }

    #[test]
    fn discriminant_first_harmonic() {
        let f_inv = f_inv_series(&series(0.9, &[0.2], &[0.0])).unwrap();
        let zero = TruncatedFourierSeries::zero();
        let d = check_discriminant(&f_inv, &zero, 4096);
        // g = 0 leaves f'^2 - f^2 = (f_inv'^2 - f_inv^2) / f_inv^4
        let direct = uniform_grid(4096)
            .map(|t| {
                let (fi, fp) = (f_inv.eval(t), f_inv.eval_derivative(t));
                (fp * fp - fi * fi) / fi.powi(4)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((d.margin - direct).abs() < 1e-14);
        assert!(d.margin < 0.0);
    }

    #[test]
    fn initial_slope_violation() {
        let one = TruncatedFourierSeries::constant(1.0);
        let g = TruncatedFourierSeries::new(0.0, vec![0.0], vec![-2.0]).unwrap();
        let d = check_discriminant(&one, &g, 256);
        assert_eq!(d.initial_slope_margin, -1.0);
        let spec = build_loop_spec(&one, &g, &tol()).unwrap();
        assert!(!spec.is_admissible());
        assert!(spec.report().failures.iter().any(|f| f.condition == "initial-slope"));
    }

    #[test]
    fn discriminant_equals_hat_form() {
        let f_inv = f_inv_series(&series(0.917, &[0.1, 0.08, 0.0], &[0.05, 0.0, -0.03])).unwrap();
        let g = TruncatedFourierSeries::anchored_at_zero(vec![0.02, -0.01], vec![0.03, 0.0]).unwrap();
        for t in uniform_grid(64) {
            // f_inv'^2 + ĝ f_inv' + ĝ' f_inv - f_inv^2 with ĝ = -g, scaled by f_inv^-4
            let (fi, fp) = (f_inv.eval(t), f_inv.eval_derivative(t));
            let (gh, ghp) = (-g.eval(t), -g.eval_derivative(t));
            let hat = (fp * fp + gh * fp + ghp * fi - fi * fi) / fi.powi(4);
            assert!((discriminant_at(&f_inv, &g, t) - hat).abs() < 1e-13);
        }
    }

    #[test]
    fn subfunction_bound_examples() {
        let one = TruncatedFourierSeries::constant(1.0);
        for t in [0.0, 0.4, 3.0, TAU] {
            assert!((subfunction_bound(&one, t).unwrap() - t).abs() < 1e-15);
        }
        assert_eq!(subfunction_bound(&one, 0.0).unwrap(), 0.0);

        let f_inv = series(0.9, &[0.1], &[0.1]);
        let h = SubfunctionBound::new(&f_inv, 4096).unwrap();
        // exact: 2π·0.81 + π(0.02) - π(0.02)
        assert!((h.integral(TAU) - TAU * 0.81).abs() < 1e-13);
        let q = quadrature_oracle(
            |u| f_inv.eval(u).powi(2) - f_inv.eval_derivative(u).powi(2),
            0.0,
            TAU,
            1024,
        )
        .unwrap();
        assert!((h.eval(TAU) - q / f_inv.eval(TAU)).abs() < 1e-12);
        assert!(h.eval(TAU) >= 0.0);
    }

    #[test]
    fn subfunction_slope_at_zero() {
        let r = TruncatedFourierSeries::with_solved_a0(vec![0.1, 0.08, 0.0], vec![0.05, 0.0, -0.03]).unwrap();
        let f_inv = f_inv_series(&r).unwrap();
        assert!((f_inv.eval(0.0) - 1.0).abs() < 1e-15);
        let h = SubfunctionBound::new(&f_inv, 4096).unwrap();
        let step = 1e-6;
        let slope = (h.eval(step) - h.eval(-step)) / (2.0 * step);
        let expected = 1.0 - f_inv.eval_derivative(0.0).powi(2);
        assert!((slope - expected).abs() < 1e-6);
    }

    #[test]
    fn subfunction_requires_positive_f_inv() {
        let bad = series(0.1, &[1.0], &[0.0]);
        assert!(matches!(
            SubfunctionBound::new(&bad, 256),
            Err(Error::NonPositiveF { .. })
        ));
    }

    #[test]
    fn g_lower_bound_group_case() {
        let one = TruncatedFourierSeries::constant(1.0);
        let ga = check_g_admissible(&one, &TruncatedFourierSeries::zero(), 4096).unwrap();
        // margin is min over interior points of h(t) = t
        assert!((ga.lower_bound_margin - TAU / 4096.0).abs() < 1e-15);
        assert!(ga.discriminant.margin < 0.0);
    }

    #[test]
    fn lower_bound_passes_where_discriminant_touches_zero() {
        // g = cos t - 1: ĝ = 1 - cos t, discriminant sin t - 1 reaches 0 at π/2
        let one = TruncatedFourierSeries::constant(1.0);
        let g = TruncatedFourierSeries::anchored_at_zero(vec![1.0], vec![0.0]).unwrap();
        let ga = check_g_admissible(&one, &g, 4096).unwrap();
        assert!(ga.lower_bound_margin > 0.0);
        assert!(ga.discriminant.margin.abs() < 1e-12);
        assert!((ga.discriminant.worst_t - PI / 2.0).abs() < 1e-12);
        let spec = build_loop_spec(&one, &g, &tol()).unwrap();
        assert!(!spec.is_admissible());
        assert!(spec.report().lower_bound_without_discriminant);
    }

    #[test]
    fn g_must_vanish_at_zero() {
        let one = TruncatedFourierSeries::constant(1.0);
        let g = TruncatedFourierSeries::constant(0.1);
        assert_eq!(check_g_admissible(&one, &g, 256), Err(Error::GNotAnchored(0.1)));
        let spec = build_loop_spec(&one, &g, &tol()).unwrap();
        assert!(spec.report().failures.iter().any(|f| f.condition == "boundary-g0"));
    }

    #[test]
    fn build_examples() {
        let one = TruncatedFourierSeries::constant(1.0);
        let zero = TruncatedFourierSeries::zero();
        let trivial = build_loop_spec(&one, &zero, &tol()).unwrap();
        assert!(trivial.is_admissible());
        assert_eq!(trivial.report().discriminant_margin, -1.0);

        let a1 = build_loop_spec(&series(0.9, &[0.2], &[0.0]), &zero, &tol()).unwrap();
        assert!(a1.is_admissible(), "{:?}", a1.report().failures);

        let bad = build_loop_spec(&TruncatedFourierSeries::constant(0.5), &zero, &tol()).unwrap();
        assert!(!bad.is_admissible());
        assert_eq!(
            bad.report().failures[0],
            Failure {
                condition: "F-identity",
                worst_t: None,
                value: 0.5
            }
        );
    }

    #[test]
    fn build_reports_small_grid() {
        let r = series(0.9, &[0.2], &[0.0]);
        let err = build_loop_spec(&r, &TruncatedFourierSeries::zero(), &tol().with_grid(8));
        assert_eq!(err, Err(Error::InvalidGrid { got: 8, min: 20 }));
    }

    #[test]
    fn integral_inequality_matches_energy_slack() {
        let r = series(0.917, &[0.1, 0.08, 0.0], &[0.05, 0.0, -0.03]);
        let spec = build_loop_spec(&r, &TruncatedFourierSeries::zero(), &tol()).unwrap();
        let rep = spec.report();
        assert!((rep.integral_inequality_value - PI * rep.f_membership.energy_slack).abs() < 1e-13);
    }

    #[test]
    fn reflection_examples() {
        let zero = TruncatedFourierSeries::zero();
        let trivial = build_loop_spec(&TruncatedFourierSeries::constant(1.0), &zero, &tol()).unwrap();
        let rt = reflect_spec(&trivial);
        assert_eq!(rt.f_inv(), trivial.f_inv());
        assert!(rt.is_admissible());

        let a1 = build_loop_spec(&series(0.9, &[0.2], &[0.0]), &zero, &tol()).unwrap();
        let ra = reflect_spec(&a1);
        assert_eq!(ra.f_inv().sin_coeffs(), &[0.1]);
        assert_eq!(ra.f_inv().cos_coeffs(), a1.f_inv().cos_coeffs());
        assert!(ra.is_admissible());

        let g = TruncatedFourierSeries::anchored_at_zero(vec![0.02, -0.01], vec![0.03, 0.0]).unwrap();
        let mixed = build_loop_spec(&series(0.917, &[0.1, 0.08], &[0.05, 0.0]), &g, &tol()).unwrap();
        let twice = reflect_spec(&reflect_spec(&mixed));
        assert_eq!(twice.f_inv(), mixed.f_inv());
        assert_eq!(twice.g(), mixed.g());
        for t in uniform_grid(16) {
            assert!((reflect_spec(&mixed).g().eval(t) + mixed.g().eval(-t)).abs() < 1e-15);
        }
    }
}
