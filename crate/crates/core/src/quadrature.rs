//! One-dimensional integration.
//!
//! [`integrate_adaptive`] is a globally adaptive 7/15-point Gauss-Kronrod
//! scheme in the style of QUADPACK's QAG: the panel with the largest error
//! estimate is bisected until the summed estimate meets the tolerance.
//! [`riemann_oracle`] is a plain midpoint sum kept structurally separate from
//! it so the two can cross-check each other.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Value, error estimate and evaluation count of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Maximum number of panels the adaptive engine may create.
pub const DEFAULT_MAX_PANELS: usize = 2000;

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Largest error first; ties go to the leftmost panel so the splitting
    // order is fully deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn eval<F>(f: &mut F, x: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let y = f(x)?;
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite { x })
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn gauss_kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval(f, center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut lo = [0.0; 7];
    let mut hi = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(f, center - dx)?;
        let f2 = eval(f, center + dx)?;
        lo[j] = f1;
        hi[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((lo[j] - mean).abs() + (hi[j] - mean).abs());
    }
    let scale = half.abs();
    Ok(Panel {
        a,
        b,
        value: res_k * half,
        error: rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale),
    })
}

fn check_interval(a: f64, b: f64, tol: f64) -> Result<()> {
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::invalid(
            "interval",
            format!("need finite a < b, got [{a}, {b}]"),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", format!("must be positive, got {tol}")));
    }
    Ok(())
}

/// Adaptive integration of a fallible integrand with an explicit panel budget.
///
/// Stops once the summed error estimate is at most `max(tol, tol * |value|)`.
pub fn integrate_adaptive_with<F>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    check_interval(a, b, tol)?;
    let first = gauss_kronrod(&mut f, a, b)?;
    let mut evaluations = 15;
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    // Panels too narrow to split keep contributing their error but leave the
    // heap.
    let mut frozen_error = 0.0;
    heap.push(first);
    let mut panels = 1;

    loop {
        if error <= tol.max(tol * value.abs()) {
            return Ok(QuadResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }
        let worst = match heap.pop() {
            Some(p) if panels < max_panels => p,
            _ => {
                return Err(Error::Convergence {
                    what: "adaptive quadrature",
                    estimate: value,
                    error,
                })
            }
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b || (worst.b - worst.a) < 1e3 * f64::EPSILON * mid.abs() {
            frozen_error += worst.error;
            if heap.is_empty() {
                return Err(Error::Convergence {
                    what: "adaptive quadrature",
                    estimate: value,
                    error: frozen_error,
                });
            }
            continue;
        }
        let left = gauss_kronrod(&mut f, worst.a, mid)?;
        let right = gauss_kronrod(&mut f, mid, worst.b)?;
        evaluations += 30;
        panels += 1;
        value += left.value + right.value - worst.value;
        heap.push(left);
        heap.push(right);
        // Re-summing avoids drift from the incremental updates.
        error = frozen_error + heap.iter().map(|p| p.error).sum::<f64>();
    }
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
pub fn integrate_adaptive<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    integrate_adaptive_with(|x| Ok(f(x)), a, b, tol, DEFAULT_MAX_PANELS)
}

fn check_breakpoints(a: f64, b: f64, breakpoints: &[f64]) -> Result<()> {
    let mut prev = a;
    for &p in breakpoints {
        if !(p > prev && p < b) {
            return Err(Error::invalid(
                "breakpoints",
                format!("must be strictly increasing inside ({a}, {b}); offending value {p}"),
            ));
        }
        prev = p;
    }
    Ok(())
}

/// Piecewise adaptive integration between consecutive breakpoints; the
/// tolerance is shared out in proportion to segment length.
pub fn integrate_oscillatory_with<F>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
    max_panels: usize,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    check_interval(a, b, tol)?;
    check_breakpoints(a, b, breakpoints)?;
    let width = b - a;
    let mut total = QuadResult {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
    };
    let edges = std::iter::once(a)
        .chain(breakpoints.iter().copied())
        .chain(std::iter::once(b));
    let mut lo = a;
    for hi in edges.skip(1) {
        let seg_tol = tol * (hi - lo) / width;
        let part = integrate_adaptive_with(&mut f, lo, hi, seg_tol, max_panels).map_err(|e| match e {
            Error::Convergence { what, estimate, error } => Error::Convergence {
                what,
                estimate: total.value + estimate,
                error: total.error_estimate + error,
            },
            other => other,
        })?;
        total.value += part.value;
        total.error_estimate += part.error_estimate;
        total.evaluations += part.evaluations;
        lo = hi;
    }
    Ok(total)
}

/// [`integrate_oscillatory_with`] for an infallible integrand and the default
/// panel budget.
pub fn integrate_oscillatory<F>(
    mut f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    integrate_oscillatory_with(|x| Ok(f(x)), a, b, breakpoints, tol, DEFAULT_MAX_PANELS)
}

/// Midpoint rule with `panels` equal panels.
pub fn riemann_oracle<F>(mut f: F, a: f64, b: f64, panels: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if panels == 0 {
        return Err(Error::invalid("panels", "need at least one panel"));
    }
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for i in 0..panels {
        let x = a + (i as f64 + 0.5) * h;
        let y = f(x);
        if !y.is_finite() {
            return Err(Error::NonFinite { x });
        }
        sum += y;
    }
    Ok(sum * h)
}
