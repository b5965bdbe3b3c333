//! Reference specs used by the tests, the acceptance suite and the CLI.

use crate::builder::{build_loop_spec, LoopSpec};
use crate::fourier::TruncatedFourierSeries;
use crate::loops::CircleLoop;
use crate::tolerances::Tolerances;

fn series(a0: f64, cos: &[f64], sin: &[f64]) -> TruncatedFourierSeries {
    TruncatedFourierSeries::new(a0, cos.to_vec(), sin.to_vec()).expect("finite fixture coefficients")
}

fn build(r: TruncatedFourierSeries, g: TruncatedFourierSeries) -> LoopSpec {
    build_loop_spec(&r, &g, &Tolerances::default()).expect("default grid resolves every fixture")
}

/// `R ≡ 1`, `g ≡ 0`: the section is the rotation group itself.
pub fn trivial() -> LoopSpec {
    build(TruncatedFourierSeries::constant(1.0), TruncatedFourierSeries::zero())
}

/// `R = 0.9 + 0.2 cos t`, `g ≡ 0`.
pub fn first_harmonic() -> LoopSpec {
    build(series(0.9, &[0.2], &[0.0]), TruncatedFourierSeries::zero())
}

/// Even harmonic only, so `f(π) = 1` and `g(π) = 0`.
pub fn even_harmonic() -> LoopSpec {
    let r = TruncatedFourierSeries::with_solved_a0(vec![0.0, 0.5], vec![0.0, 0.0]).expect("finite");
    build(r, series(0.0, &[0.0, 0.0], &[0.0, 0.1]))
}

/// `R = 0.9 + 0.2 cos t`, `g = 0.05 sin t`.
pub fn sheared() -> LoopSpec {
    build(series(0.9, &[0.2], &[0.0]), series(0.0, &[0.0], &[0.05]))
}

/// Three harmonics in `R`, two in `g`.
pub fn multi_harmonic() -> LoopSpec {
    let r = TruncatedFourierSeries::with_solved_a0(vec![0.1, 0.08, 0.0], vec![0.05, 0.0, -0.03]).expect("finite");
    let g = TruncatedFourierSeries::anchored_at_zero(vec![0.02, -0.01], vec![0.03, 0.0]).expect("finite");
    build(r, g)
}

/// [`sheared`] with `g` scaled by 100: the discriminant turns positive and
/// the result is not a loop.
pub fn corrupted_g() -> TruncatedFourierSeries {
    sheared().g().scaled(100.0)
}

pub fn corrupted_spec() -> LoopSpec {
    build(sheared().r().clone(), corrupted_g())
}

/// The corrupted section wrapped without validation.
pub fn corrupted_loop() -> CircleLoop {
    let spec = sheared();
    CircleLoop::unchecked(spec.f_inv().clone(), corrupted_g(), *spec.tolerances())
}

/// Every admissible fixture with its name.
pub fn admissible() -> Vec<(&'static str, LoopSpec)> {
    vec![
        ("trivial", trivial()),
        ("first_harmonic", first_harmonic()),
        ("even_harmonic", even_harmonic()),
        ("sheared", sheared()),
        ("multi_harmonic", multi_harmonic()),
    ]
}
