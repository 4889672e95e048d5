//! Special functions: Gamma, Bessel functions of the first kind of real
//! non-negative order, their derivative and their positive zeros.
//!
//! `J_nu(x)` is evaluated with three methods depending on the argument:
//!
//! * `x <= SERIES_LIMIT`: the ascending power series;
//! * `x >= hankel_threshold(nu)`: Hankel's asymptotic expansion;
//! * otherwise: Miller's backward recurrence, normalized with the Neumann sum
//!   `sum_k (mu + 2k) Gamma(mu + k) / k! J_{mu+2k}(x) = (x/2)^mu`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Non-negative, finite order of a Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(Error::domain(
                "Order::new",
                format!("order must be finite and non-negative, got {nu}"),
            ));
        }
        Ok(Order(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Order {
    type Error = Error;

    fn try_from(nu: f64) -> Result<Self> {
        Order::new(nu)
    }
}

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Beyond this the Lanczos form overflows before Gamma itself does.
const GAMMA_DIRECT_MAX: f64 = 140.0;

fn lanczos_sum(x: f64) -> f64 {
    LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (i, c)| acc + c / (x + (i + 1) as f64))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    if x > GAMMA_DIRECT_MAX {
        return ln_gamma_unchecked(x).exp();
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * lanczos_sum(x)
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma_unchecked(1.0 - x);
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln()
}

/// The Gamma function for positive arguments.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(
            "gamma",
            format!("argument must be positive and finite, got {x}"),
        ));
    }
    Ok(gamma_unchecked(x))
}

/// Natural logarithm of the Gamma function for positive arguments.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(
            "ln_gamma",
            format!("argument must be positive and finite, got {x}"),
        ));
    }
    Ok(ln_gamma_unchecked(x))
}

/// Largest argument evaluated with the power series.
pub const SERIES_LIMIT: f64 = 8.0;

/// Smallest argument evaluated with the Hankel expansion for order `nu`.
pub fn hankel_threshold(nu: f64) -> f64 {
    25.0 + 0.5 * nu * nu
}

/// Bessel function of the first kind `J_nu(x)` for `x >= 0`.
pub fn bessel_j(nu: Order, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(
            "bessel_j",
            format!("argument must be finite and non-negative, got {x}"),
        ));
    }
    Ok(j_unchecked(nu.0, x))
}

pub(crate) fn j_unchecked(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_LIMIT {
        j_series(nu, x)
    } else if x >= hankel_threshold(nu) {
        j_hankel(nu, x)
    } else {
        j_miller(nu, x)
    }
}

fn j_series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let lead = if nu + 1.0 <= GAMMA_DIRECT_MAX {
        half.powf(nu) / gamma_unchecked(nu + 1.0)
    } else {
        (nu * half.ln() - ln_gamma_unchecked(nu + 1.0)).exp()
    };
    let q = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let k = k as f64;
        term *= q / (k * (nu + k));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn j_hankel(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let z = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    for k in 1..120 {
        let odd = (2 * k - 1) as f64;
        let ratio = (mu - odd * odd) / (k as f64 * z);
        if ratio.abs() >= 1.0 {
            break;
        }
        term *= ratio;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    // cos(x - phase) expanded so the large argument is reduced exactly.
    let phase = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

fn j_miller(nu: f64, x: f64) -> f64 {
    const RESCALE_AT: f64 = 1e250;
    let whole = nu.floor();
    let mu = nu - whole;
    let target = whole as usize;

    let start = (x + 12.0 * x.cbrt() + 10.0).max(whole + 20.0).ceil() as usize;
    let start = start + start % 2;

    // r_m = Gamma(mu + m) / (m! Gamma(mu + 1)), carried down from m = start / 2.
    let top = start / 2;
    let mut r = 1.0;
    for m in 1..top {
        let m = m as f64;
        r *= (mu + m) / (m + 1.0);
    }

    let mut f_next = 0.0;
    let mut f = 1e-30;
    let mut sum = 0.0;
    let mut found = 0.0;
    for k in (0..=start).rev() {
        if k == target {
            found = f;
        }
        if k % 2 == 0 {
            let m = k / 2;
            if m == 0 {
                sum += f;
            } else {
                sum += (mu + k as f64) * r * f;
                if m >= 2 {
                    let mf = m as f64;
                    r *= mf / (mu + mf - 1.0);
                }
            }
        }
        if k > 0 {
            let f_prev = 2.0 * (mu + k as f64) / x * f - f_next;
            f_next = f;
            f = f_prev;
            if f.abs() > RESCALE_AT {
                f /= RESCALE_AT;
                f_next /= RESCALE_AT;
                sum /= RESCALE_AT;
                found /= RESCALE_AT;
            }
        }
    }
    found * (0.5 * x).powf(mu) / (gamma_unchecked(mu + 1.0) * sum)
}

/// Derivative `dJ_nu/dx` for `x > 0`.
///
/// Uses `(J_{nu-1} - J_{nu+1}) / 2` when `nu >= 1` and
/// `nu/x J_nu - J_{nu+1}` otherwise, so negative orders are never needed.
pub fn bessel_j_prime(nu: Order, x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(
            "bessel_j_prime",
            format!("argument must be finite and positive, got {x}"),
        ));
    }
    Ok(j_prime_unchecked(nu.0, x))
}

fn j_prime_unchecked(nu: f64, x: f64) -> f64 {
    if nu >= 1.0 {
        0.5 * (j_unchecked(nu - 1.0, x) - j_unchecked(nu + 1.0, x))
    } else {
        nu / x * j_unchecked(nu, x) - j_unchecked(nu + 1.0, x)
    }
}

/// McMahon's large-zero expansion for the `j`-th positive zero of `J_nu`.
pub fn mcmahon_guess(nu: f64, j: usize) -> f64 {
    let beta = (j as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5))
}

// Consecutive zeros of J_nu are more than 2.4 apart for every nu >= 0, so a
// half-unit step can never straddle two of them.
const SCAN_STEP: f64 = 0.5;
const MCMAHON_MIN_INDEX: usize = 7;

/// The `j`-th positive zero of `J_nu` (`j = 1` is the smallest).
pub fn bessel_zero(nu: Order, j: usize) -> Result<f64> {
    if j == 0 {
        return Err(Error::domain(
            "bessel_zero",
            "zero index starts at 1 (j = 0 requested)",
        ));
    }
    let nu = nu.0;
    if j >= MCMAHON_MIN_INDEX {
        let guess = mcmahon_guess(nu, j);
        let (a, b) = (guess - 1.0, guess + 1.0);
        if a > nu && j_unchecked(nu, a).signum() != j_unchecked(nu, b).signum() {
            // Accept only if the bracket holds the j-th zero: J keeps the sign
            // (-1)^(j-1) just before it.
            let expected = if j % 2 == 1 { 1.0 } else { -1.0 };
            if j_unchecked(nu, a).signum() == expected {
                return Ok(refine_zero(nu, a, b));
            }
        }
    }
    let mut x = nu;
    let mut fx = j_unchecked(nu, x);
    let mut seen = 0;
    loop {
        let next = x + SCAN_STEP;
        let fn_ = j_unchecked(nu, next);
        if fn_ == 0.0 || fn_.signum() != fx.signum() {
            seen += 1;
            if seen == j {
                return Ok(if fn_ == 0.0 { next } else { refine_zero(nu, x, next) });
            }
        }
        x = next;
        fx = fn_;
    }
}

/// All positive zeros of `J_nu` strictly below `x_max`, in increasing order.
pub fn bessel_zeros_below(nu: Order, x_max: f64) -> Result<Vec<f64>> {
    if !x_max.is_finite() {
        return Err(Error::domain("bessel_zeros_below", "upper limit must be finite"));
    }
    let nu = nu.0;
    let mut zeros = Vec::new();
    let mut x = nu;
    let mut fx = j_unchecked(nu, x);
    while x < x_max {
        let next = x + SCAN_STEP;
        let fn_ = j_unchecked(nu, next);
        if fn_ == 0.0 || fn_.signum() != fx.signum() {
            let z = if fn_ == 0.0 { next } else { refine_zero(nu, x, next) };
            if z >= x_max {
                break;
            }
            zeros.push(z);
            // Skip ahead: the next zero is at least 2.4 away.
            x = z + 1.0;
            fx = j_unchecked(nu, x);
            continue;
        }
        x = next;
        fx = fn_;
    }
    Ok(zeros)
}

/// Safeguarded Newton iteration on a bracket `[a, b]` holding one sign change.
fn refine_zero(nu: f64, mut a: f64, mut b: f64) -> f64 {
    let sign_a = j_unchecked(nu, a).signum();
    let mut x = 0.5 * (a + b);
    for _ in 0..100 {
        let f = j_unchecked(nu, x);
        if f == 0.0 {
            return x;
        }
        if f.signum() == sign_a {
            a = x;
        } else {
            b = x;
        }
        let step = f / j_prime_unchecked(nu, x);
        let mut next = x - step;
        if !(next > a && next < b) {
            next = 0.5 * (a + b);
        }
        if (next - x).abs() <= 2.0 * f64::EPSILON * x || b - a <= 4.0 * f64::EPSILON * x {
            return next;
        }
        x = next;
    }
    x
}
