//! Momentum-space wavefunction.
//!
//! With the kernel `exp(-2 pi i p.r)` the angular integral of the cylindrical
//! Fourier transform gives `2 pi (-i)^l J_l(2 pi p r) e^{i l p_theta}`, leaving
//! the real radial amplitude
//!
//! ```text
//! phi(p) = 2 pi int_0^r0 R_t(r) J_l(2 pi p r) r dr
//! ```
//!
//! where `R_t = sqrt(lz) R` is the radial factor normalized over the disk. The
//! longitudinal factor is a single box mode at `p_z = k / (2 pi)` carrying all
//! of the probability, so the momentum density per `p dp dp_theta` is
//! `phi(p)^2` and `2 pi int phi^2 p dp = 1`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

use crate::eigen::Eigenstate;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_oscillatory_with, DEFAULT_MAX_PANELS};
use crate::specfun::{self, Order};

/// Absolute tolerance of the radial (inner) transform integral.
pub const DEFAULT_AMPLITUDE_TOL: f64 = 1e-9;
/// Absolute tolerance of each momentum-norm integration stage.
pub const DEFAULT_NORM_QUAD_TOL: f64 = 1e-9;
/// Default bound on the estimated norm beyond `p_max`.
pub const DEFAULT_NORM_TOL: f64 = 1e-7;
/// Default number of emitted profile samples.
pub const DEFAULT_SAMPLES: usize = 512;
/// `p_max r0` may not exceed this.
pub const MAX_REDUCED_P: f64 = 2048.0;

/// Breakpoint spacing in `p r0`: the density oscillates with period `1 / (2 r0)`.
pub const SEGMENT_REDUCED_P: f64 = 0.5;
const STAGE_RATIO: f64 = 1.5;

/// Zeros of the transform kernel `J_|l|` and the interior radial nodes.
#[derive(Debug, Clone)]
struct Kernel {
    kernel_order: Order,
    kernel_zeros: Vec<f64>,
    radial_nodes: Vec<f64>,
}

impl Kernel {
    fn new(state: &Eigenstate, p_max: f64) -> Result<Self> {
        let kernel_order = Order::new(state.quantum_numbers().l.unsigned_abs() as f64)?;
        let x_max = 2.0 * PI * p_max * state.params().r0;
        Ok(Kernel {
            kernel_order,
            kernel_zeros: specfun::bessel_zeros_below(kernel_order, x_max)?,
            radial_nodes: state.radial_nodes(),
        })
    }

    /// Sorted interior breakpoints for the transform at `q = 2 pi p`.
    fn breakpoints(&self, q: f64, r0: f64) -> Vec<f64> {
        let guard = 1e-12 * r0;
        let mut out: Vec<f64> = self
            .kernel_zeros
            .iter()
            .map(|z| z / q)
            .take_while(|&r| r < r0 - guard)
            .chain(self.radial_nodes.iter().copied())
            .collect();
        out.sort_by(f64::total_cmp);
        out.dedup_by(|b, a| (*b - *a).abs() <= guard);
        out.retain(|&r| r > guard && r < r0 - guard);
        out
    }
}

fn amplitude_with(state: &Eigenstate, kernel: &Kernel, p: f64, tol: f64) -> Result<f64> {
    if !p.is_finite() || p < 0.0 {
        return Err(Error::domain("radial_amplitude", format!("p_r must be finite and >= 0, got {p}")));
    }
    let l = state.quantum_numbers().l;
    let params = state.params();
    let r0 = params.r0;
    let scale = 2.0 * PI * params.lz.sqrt();
    if p == 0.0 {
        if l != 0 {
            return Ok(0.0);
        }
        let res = integrate_oscillatory_with(
            |r| Ok(state.radial(r) * r),
            0.0,
            r0,
            &kernel.radial_nodes,
            tol / scale,
            DEFAULT_MAX_PANELS,
        )?;
        return Ok(scale * res.value);
    }
    let q = 2.0 * PI * p;
    if q * r0 > 2.0 * PI * kernel_limit(kernel) * 1.000_001 {
        return Err(Error::domain("radial_amplitude", "kernel zeros do not cover this p_r"));
    }
    let breaks = kernel.breakpoints(q, r0);
    let order = kernel.kernel_order.value();
    let res = integrate_oscillatory_with(
        |r| Ok(state.radial(r) * specfun::j_unchecked(order, q * r) * r),
        0.0,
        r0,
        &breaks,
        tol / scale,
        DEFAULT_MAX_PANELS,
    )?;
    // J_{-l} = (-1)^l J_l
    let sign = if l < 0 && l % 2 != 0 { -1.0 } else { 1.0 };
    Ok(sign * scale * res.value)
}

// Largest reduced momentum covered by the stored kernel zeros, with the
// convention that an empty list covers up to the first zero.
fn kernel_limit(kernel: &Kernel) -> f64 {
    let next = kernel
        .kernel_zeros
        .last()
        .map(|z| z + PI)
        .unwrap_or_else(|| specfun::mcmahon_guess(kernel.kernel_order.value(), 1) + PI);
    next / (2.0 * PI)
}

/// Radial momentum amplitude `phi(p_r)`; the unimodular phase
/// `(-i)^l e^{i l p_theta}` is dropped.
pub fn radial_amplitude(state: &Eigenstate, p_r: f64) -> Result<f64> {
    let kernel = Kernel::new(state, p_r.max(0.0))?;
    amplitude_with(state, &kernel, p_r, DEFAULT_AMPLITUDE_TOL)
}

/// Momentum density per `p dp dp_theta`, uniform in `p_theta`.
pub fn momentum_density(state: &Eigenstate, p_r: f64) -> Result<f64> {
    let a = radial_amplitude(state, p_r)?;
    Ok(a * a)
}

/// One point of a sampled momentum profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumSample {
    pub p: f64,
    pub amplitude: f64,
    pub density: f64,
}

/// Settings for [`build_profile_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileOptions {
    pub samples: usize,
    pub norm_tol: f64,
    pub amplitude_tol: f64,
    pub norm_quad_tol: f64,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            samples: DEFAULT_SAMPLES,
            norm_tol: DEFAULT_NORM_TOL,
            amplitude_tol: DEFAULT_AMPLITUDE_TOL,
            norm_quad_tol: DEFAULT_NORM_QUAD_TOL,
        }
    }
}

/// Truncated momentum-space description of a state.
///
/// Amplitudes requested through [`MomentumProfile::amplitude`] are memoized;
/// the cache is behind a mutex so a profile can be shared between threads.
#[derive(Debug)]
pub struct MomentumProfile {
    state: Eigenstate,
    p_max: f64,
    samples: Vec<MomentumSample>,
    truncated_norm: f64,
    tail_norm_bound: f64,
    options: ProfileOptions,
    kernel: Kernel,
    cache: Mutex<HashMap<u64, f64>>,
}

impl MomentumProfile {
    pub fn state(&self) -> &Eigenstate {
        &self.state
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    pub fn samples(&self) -> &[MomentumSample] {
        &self.samples
    }

    /// Estimated probability beyond `p_max`.
    pub fn tail_norm_bound(&self) -> f64 {
        self.tail_norm_bound
    }

    /// `2 pi int_0^p_max phi^2 p dp`.
    pub fn truncated_norm(&self) -> f64 {
        self.truncated_norm
    }

    /// Truncated norm plus the extrapolated tail.
    pub fn captured_norm(&self) -> f64 {
        self.truncated_norm + self.tail_norm_bound
    }

    pub fn options(&self) -> &ProfileOptions {
        &self.options
    }

    /// `phi(p)` for `0 <= p <= p_max`.
    pub fn amplitude(&self, p: f64) -> Result<f64> {
        if p > self.p_max * (1.0 + 1e-12) {
            return Err(Error::domain(
                "MomentumProfile::amplitude",
                format!("p_r = {p} beyond p_max = {}", self.p_max),
            ));
        }
        cached_amplitude(&self.cache, &self.state, &self.kernel, p, self.options.amplitude_tol)
    }

    pub fn density(&self, p: f64) -> Result<f64> {
        let a = self.amplitude(p)?;
        Ok(a * a)
    }

    /// Breakpoints every `SEGMENT_REDUCED_P / r0` strictly inside `(a, b)`.
    pub fn segment_breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        segment_breakpoints(self.state.params().r0, a, b)
    }
}

fn cached_amplitude(
    cache: &Mutex<HashMap<u64, f64>>,
    state: &Eigenstate,
    kernel: &Kernel,
    p: f64,
    tol: f64,
) -> Result<f64> {
    let key = p.to_bits();
    if let Some(&v) = cache.lock().expect("cache lock").get(&key) {
        return Ok(v);
    }
    let v = amplitude_with(state, kernel, p, tol)?;
    cache.lock().expect("cache lock").insert(key, v);
    Ok(v)
}

fn segment_breakpoints(r0: f64, a: f64, b: f64) -> Vec<f64> {
    let h = SEGMENT_REDUCED_P / r0;
    let first = (a / h).floor() as i64 + 1;
    (first..)
        .map(|i| i as f64 * h)
        .take_while(|&p| p < b - 1e-9 * h)
        .filter(|&p| p > a + 1e-9 * h)
        .collect()
}

/// Remaining norm beyond `ratio^2 P` from the increments
/// `d1 = N(ratio P) - N(P)` and `d2 = N(ratio^2 P) - N(ratio P)`.
///
/// The tail is modelled as `a P^-g + b P^-3`: `g = 2 nu + 2` comes from the
/// `r^nu` behaviour on the axis, the `P^-3` term from the kink at the wall.
/// Falls back to a single power law fitted to the ratio `d2 / d1`.
pub fn extrapolate_tail(d1: f64, d2: f64, ratio: f64, origin_exponent: f64) -> f64 {
    let d1 = d1.max(0.0);
    let d2 = d2.max(0.0);
    if d2 == 0.0 {
        return 0.0;
    }
    let wall = ratio.powf(-3.0);
    if (origin_exponent - 3.0).abs() > 0.15 {
        let origin = ratio.powf(-origin_exponent);
        let u = (d2 - d1 * wall) / (origin - wall);
        let v = d1 - u;
        if u >= 0.0 && v >= 0.0 {
            return u * origin * origin / (1.0 - origin) + v * wall * wall / (1.0 - wall);
        }
    }
    if d1 > 0.0 {
        let r = d2 / d1;
        if r < 1.0 {
            return d2 * r / (1.0 - r);
        }
    }
    f64::INFINITY
}

/// [`build_profile_with`] with default tolerances.
pub fn build_profile(state: &Eigenstate, samples: usize, norm_tol: f64) -> Result<MomentumProfile> {
    build_profile_with(
        state,
        &ProfileOptions {
            samples,
            norm_tol,
            ..ProfileOptions::default()
        },
    )
}

/// Chooses `p_max`, then samples the density on a grid that puts three
/// quarters of the points where almost all of the probability lives.
///
/// `p_max` grows geometrically (in units of `1 / r0`) until the extrapolated
/// tail drops below `norm_tol`.
pub fn build_profile_with(state: &Eigenstate, options: &ProfileOptions) -> Result<MomentumProfile> {
    if options.samples < 64 {
        return Err(Error::invalid("samples", format!("need at least 64, got {}", options.samples)));
    }
    for (name, tol) in [
        ("norm_tol", options.norm_tol),
        ("amplitude_tol", options.amplitude_tol),
        ("norm_quad_tol", options.norm_quad_tol),
    ] {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::invalid(name, format!("must be positive, got {tol}")));
        }
    }
    let r0 = state.params().r0;
    let h = SEGMENT_REDUCED_P;
    let round_up = |reduced: f64| (reduced / h).ceil() * h;

    // Stage boundaries in reduced units p r0.
    let mut stages = vec![round_up(state.theta() / (2.0 * PI) + 8.0)];
    let origin_exponent = 2.0 * state.order().value() + 2.0;

    let mut kernel = Kernel::new(state, stages[0] / r0)?;
    let cache = Mutex::new(HashMap::new());
    // (p, cumulative norm) at every segment end.
    let mut cumulative: Vec<(f64, f64)> = vec![(0.0, 0.0)];
    let mut stage_norms: Vec<f64> = Vec::new();
    let mut tail;
    let mut lo = 0.0;
    loop {
        let hi = *stages.last().expect("non-empty");
        if kernel_limit(&kernel) < hi {
            kernel = Kernel::new(state, (hi * STAGE_RATIO) / r0)?;
        }
        let mut acc = cumulative.last().expect("non-empty").1;
        let points = segment_breakpoints(r0, lo / r0, hi / r0);
        let seg_tol = options.norm_quad_tol / (points.len() + 1) as f64;
        let mut a = lo / r0;
        for b in points.into_iter().chain(std::iter::once(hi / r0)) {
            let part = integrate_oscillatory_with(
                |p| {
                    let phi = cached_amplitude(&cache, state, &kernel, p, options.amplitude_tol)?;
                    Ok(2.0 * PI * phi * phi * p)
                },
                a,
                b,
                &[],
                seg_tol,
                DEFAULT_MAX_PANELS,
            )?;
            acc += part.value;
            cumulative.push((b, acc));
            a = b;
        }
        stage_norms.push(acc);
        let n = stage_norms.len();
        tail = if n >= 3 {
            extrapolate_tail(
                stage_norms[n - 2] - stage_norms[n - 3],
                stage_norms[n - 1] - stage_norms[n - 2],
                STAGE_RATIO,
                origin_exponent,
            )
        } else {
            f64::INFINITY
        };
        if tail <= options.norm_tol {
            break;
        }
        let next = round_up(hi * STAGE_RATIO);
        if next > MAX_REDUCED_P {
            return Err(Error::Convergence {
                what: "momentum cutoff search",
                estimate: acc,
                error: tail,
            });
        }
        stages.push(next);
        lo = hi;
    }

    let p_max = stages.last().expect("non-empty") / r0;
    let truncated_norm = cumulative.last().expect("non-empty").1;

    let core_target = truncated_norm - 1e-4;
    let p_core = cumulative
        .iter()
        .find(|(_, c)| *c >= core_target)
        .map(|(p, _)| *p)
        .unwrap_or(p_max)
        .max(p_max.min(stages[0] / r0));

    let profile = MomentumProfile {
        state: *state,
        p_max,
        samples: Vec::new(),
        truncated_norm,
        tail_norm_bound: tail,
        options: *options,
        kernel,
        cache,
    };

    let n_core = options.samples * 3 / 4;
    let n_tail = options.samples - n_core;
    let mut grid: Vec<f64> = (0..n_core)
        .map(|i| p_core * i as f64 / (n_core - 1) as f64)
        .collect();
    if p_max > p_core {
        grid.extend((1..=n_tail).map(|i| p_core + (p_max - p_core) * i as f64 / n_tail as f64));
    }
    let samples = grid
        .into_iter()
        .map(|p| {
            let amplitude = profile.amplitude(p)?;
            Ok(MomentumSample {
                p,
                amplitude,
                density: amplitude * amplitude,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentumProfile { samples, ..profile })
}
