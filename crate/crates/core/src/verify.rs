//! Property batteries over a loop, each returning a [`SuiteResult`].
//!
//! Grid sizes, tolerances and RNG seeds fully determine every result.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::builder::{build_loop_spec, LoopSpec};
use crate::fourier::{quadrature_oracle, uniform_grid, TruncatedFourierSeries};
use crate::loops::{CircleLoop, WINDING_TOL};
use crate::sl2::{circular_distance, normalize_angle};
use crate::tolerances::Tolerances;

pub const DEFAULT_SEED: u64 = 0x5eed_2009;

pub const AXIOM_TOL: f64 = 1e-9;
pub const ISOMORPHISM_TOL: f64 = 1e-8;
pub const ORACLE_TOL: f64 = 1e-8;
pub const PSL2_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Detail {
    pub check: String,
    pub location: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub suite_name: String,
    pub passed: bool,
    pub cases_run: usize,
    pub worst_violation: f64,
    pub tolerance: f64,
    pub seed: Option<u64>,
    pub note: Option<String>,
    pub details: Vec<Detail>,
}

/// Tracks the worst value of each named check.
struct Tally {
    cases: usize,
    details: Vec<Detail>,
}

impl Tally {
    fn new() -> Self {
        Self {
            cases: 0,
            details: Vec::new(),
        }
    }

    fn record(&mut self, check: &str, location: &[f64], value: f64) {
        self.cases += 1;
        match self.details.iter_mut().find(|d| d.check == check) {
            Some(d) => {
                if value > d.value || value.is_nan() {
                    d.value = value;
                    d.location = location.to_vec();
                }
            }
            None => self.details.push(Detail {
                check: check.to_string(),
                location: location.to_vec(),
                value,
            }),
        }
    }

    fn finish(self, name: &str, tolerance: f64, seed: Option<u64>, note: Option<String>) -> SuiteResult {
        let worst_violation = self
            .details
            .iter()
            .map(|d| d.value)
            .fold(0.0, |acc: f64, v| if v.is_nan() { f64::NAN } else { acc.max(v) });
        SuiteResult {
            suite_name: name.to_string(),
            passed: worst_violation <= tolerance,
            cases_run: self.cases,
            worst_violation,
            tolerance,
            seed,
            note,
            details: self.details,
        }
    }
}

/// Worst decrease and winding error of a degree-one lift sampled on
/// `samples + 1` points of `[0, 2π]`.
fn monotonicity_violation(lift: impl Fn(f64) -> f64, samples: usize) -> (f64, f64, f64) {
    let mut prev = lift(0.0);
    let start = prev;
    let mut worst = (0.0, 0.0);
    for i in 1..=samples {
        let t = TAU * i as f64 / samples as f64;
        let cur = lift(t);
        let drop = prev - cur;
        if drop > worst.0 || drop.is_nan() {
            worst = (drop, t);
        }
        prev = cur;
    }
    (worst.0, worst.1, ((prev - start) - TAU).abs())
}

/// Identity laws, division round trips on a `grid_n × grid_n` grid plus
/// seeded random pairs, and monotonicity of both translations.
pub fn run_axiom_suite(lp: &CircleLoop, grid_n: usize, seed: u64) -> SuiteResult {
    let mut tally = Tally::new();
    let grid: Vec<f64> = uniform_grid(grid_n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random: Vec<(f64, f64)> = (0..256)
        .map(|_| (rng.random_range(0.0..TAU), rng.random_range(0.0..TAU)))
        .collect();

    for &t in &grid {
        tally.record("left-identity", &[t], circular_distance(lp.mul(0.0, t).radians(), t));
        tally.record("right-identity", &[t], circular_distance(lp.mul(t, 0.0).radians(), t));
    }

    let pairs = grid
        .iter()
        .flat_map(|&a| grid.iter().map(move |&b| (a, b)))
        .chain(random.iter().copied());
    for (a, b) in pairs {
        let left = lp
            .ldiv(a, b)
            .map(|y| circular_distance(lp.mul(a, y.radians()).radians(), b))
            .unwrap_or(f64::INFINITY);
        tally.record("ldiv-round-trip", &[a, b], left);
        let right = lp
            .rdiv(b, a)
            .map(|x| circular_distance(lp.mul(x.radians(), a).radians(), b))
            .unwrap_or(f64::INFINITY);
        tally.record("rdiv-round-trip", &[b, a], right);
    }

    let samples = 16 * grid_n;
    for &a in &grid {
        let (drop, t, wind) = monotonicity_violation(|y| lp.mul_lift(a, y), samples);
        tally.record("left-translation-monotone", &[a, t], drop.max(0.0));
        tally.record("left-translation-degree", &[a], wind);
        let (drop, t, wind) = monotonicity_violation(|x| lp.mul_lift(x, a), samples);
        tally.record("right-translation-monotone", &[a, t], drop.max(0.0));
        tally.record("right-translation-degree", &[a], wind);
    }
    tally.finish("axioms", AXIOM_TOL, Some(seed), None)
}

/// Checks `phi(a ∗ b) = phi(a) ∗' phi(b)` on the grid.
pub fn check_intertwiner(
    name: &str,
    source: &CircleLoop,
    target: &CircleLoop,
    phi: impl Fn(f64) -> f64,
    grid_n: usize,
) -> SuiteResult {
    let mut tally = Tally::new();
    for s in uniform_grid(grid_n) {
        for t in uniform_grid(grid_n) {
            let lhs = phi(source.mul(s, t).radians());
            let rhs = target.mul(phi(s), phi(t)).radians();
            tally.record("intertwines", &[s, t], circular_distance(lhs, rhs));
        }
    }
    let mut result = tally.finish(name, ISOMORPHISM_TOL, None, None);
    result.note = Some(if result.passed {
        "consistent with an isomorphism between the two loops".into()
    } else {
        "candidate intertwiner rejected".into()
    });
    result
}

/// Tests whether `t ↦ -t` carries the loop of `(f, g)` onto the loop of
/// `(f(-t), -g(-t))`.
pub fn check_isomorphism_pair(lp: &CircleLoop, reflected: &CircleLoop, grid_n: usize) -> SuiteResult {
    check_intertwiner("isomorphism", lp, reflected, |t| normalize_angle(-t), grid_n)
}

/// `f(π) = 1` and `g(π) = 0`: the loop double covers a loop whose left
/// translations generate PSL₂(ℝ).
pub fn check_psl2_quotient(lp: &CircleLoop) -> bool {
    (lp.f_inv().eval(PI) - 1.0).abs() < PSL2_TOL && lp.g().eval(PI).abs() < PSL2_TOL
}

/// Reports the quotient predicate. Informational: never fails.
pub fn psl2_suite(lp: &CircleLoop) -> SuiteResult {
    let holds = check_psl2_quotient(lp);
    SuiteResult {
        suite_name: "psl2".into(),
        passed: true,
        cases_run: 1,
        worst_violation: 0.0,
        tolerance: PSL2_TOL,
        seed: None,
        note: Some(if holds {
            "f(pi) = 1 and g(pi) = 0: double cover of a PSL2(R) loop".into()
        } else {
            "not a double cover of a PSL2(R) loop".into()
        }),
        details: vec![
            Detail {
                check: "f_inv(pi) - 1".into(),
                location: vec![PI],
                value: lp.f_inv().eval(PI) - 1.0,
            },
            Detail {
                check: "g(pi)".into(),
                location: vec![PI],
                value: lp.g().eval(PI),
            },
        ],
    }
}

pub fn baer_suite(lp: &CircleLoop, beta_grid: usize, t_grid: usize) -> SuiteResult {
    let rep = lp.baer_transversal_check(beta_grid, t_grid);
    let mut tally = Tally::new();
    tally.cases = beta_grid * t_grid;
    // strict monotonicity: any non-positive step is a violation, reported
    // by its size
    let mono = (-rep.min_forward_difference).max(0.0);
    tally.details.push(Detail {
        check: "transversal-monotone".into(),
        location: vec![rep.worst_beta, rep.worst_t],
        value: mono,
    });
    tally.details.push(Detail {
        check: "transversal-winding".into(),
        location: vec![rep.worst_winding_beta],
        value: rep.max_winding_error,
    });
    let note = format!(
        "min forward difference {:.6e} at beta = {:.6}, t = {:.6}",
        rep.min_forward_difference, rep.worst_beta, rep.worst_t
    );
    let mut result = tally.finish("baer", WINDING_TOL, None, Some(note));
    result.passed = rep.passed;
    result
}

/// Sum with a running compensation term.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compares each closed form against quadrature on a `grid_n` grid of
/// `[0, 2π]` and at seeded random points.
pub fn oracle_crosscheck_suite(spec: &LoopSpec, grid_n: usize, seed: u64) -> SuiteResult {
    let mut tally = Tally::new();
    let (r, f_inv) = (spec.r(), spec.f_inv());
    let weighted = |u: f64| r.eval(u) * (-u).exp();
    let energy = |u: f64| f_inv.eval(u).powi(2) - f_inv.eval_derivative(u).powi(2);
    let h = crate::builder::SubfunctionBound::new(f_inv, grid_n.max(16)).ok();

    let mut q_weighted = CompensatedSum::default();
    let mut q_energy = CompensatedSum::default();
    for j in 1..=grid_n {
        let (lo, hi) = (TAU * (j - 1) as f64 / grid_n as f64, TAU * j as f64 / grid_n as f64);
        q_weighted.add(quadrature_oracle(weighted, lo, hi, 8).expect("even panel count"));
        q_energy.add(quadrature_oracle(energy, lo, hi, 8).expect("even panel count"));
        let qw = q_weighted.value();
        tally.record("exp-weighted-integral", &[hi], (r.exp_weighted_integral(hi) - qw).abs());
        tally.record("f_inv-integral-form", &[hi], (f_inv.eval(hi) - hi.exp() * (1.0 - qw)).abs());
        if let Some(h) = &h {
            tally.record("subfunction-integral", &[hi], (h.integral(hi) - q_energy.value()).abs());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..16 {
        let t = rng.random_range(0.0..TAU);
        let q = quadrature_oracle(weighted, 0.0, t, 1024).expect("even panel count");
        tally.record("f_inv-integral-form-random", &[t], (f_inv.eval(t) - t.exp() * (1.0 - q)).abs());
        if let Some(h) = &h {
            let qe = quadrature_oracle(energy, 0.0, t, 1024).expect("even panel count");
            tally.record("subfunction-random", &[t], (h.eval(t) - qe / f_inv.eval(t)).abs());
        }
    }
    tally.finish("oracle", ORACLE_TOL, Some(seed), None)
}

/// Random specs with up to `max_harmonics` harmonics in `R` and `g`, kept
/// only when admissible.
pub fn random_admissible_specs(count: usize, max_harmonics: usize, seed: u64, tol: &Tolerances) -> Vec<LoopSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = rng.random_range(1..=max_harmonics.max(1));
        let mut coeffs = |scale: f64| -> Vec<f64> {
            (1..=k)
                .map(|i| rng.random_range(-scale..scale) / i as f64)
                .collect()
        };
        let (rc, rs) = (coeffs(0.15), coeffs(0.15));
        let (gc, gs) = (coeffs(0.05), coeffs(0.05));
        let r = TruncatedFourierSeries::with_solved_a0(rc, rs).expect("finite");
        let g = TruncatedFourierSeries::anchored_at_zero(gc, gs).expect("finite");
        if let Ok(spec) = build_loop_spec(&r, &g, tol) {
            if spec.is_admissible() {
                out.push(spec);
            }
        }
    }
    out
}

pub const SUITE_NAMES: [&str; 5] = ["axioms", "baer", "isomorphism", "oracle", "psl2"];
