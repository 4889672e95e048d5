//! Hard-wall eigenstates in the dislocation background.
//!
//! With `psi(r, theta, z) = e^{i(l theta + k z)} R(r)` and terms of second
//! order in `beta` dropped, the radial equation is Bessel's equation of order
//! `nu = |l - beta k|`. The wall `R(r0) = 0` quantizes the radial wavenumber to
//! `Theta / r0`, with `Theta` a positive zero of `J_nu`, and
//!
//! ```text
//! E = (Theta / r0)^2 / (2m) + k^2 / (2m)
//! ```
//!
//! The plane wave along `z` is normalized in a periodic box of length `lz`.
//! The radial index `n = 0, 1, 2, ...` selects the `(n + 1)`-th positive zero.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_oscillatory, QuadResult};
use crate::specfun::{self, Order};

/// Mass, dislocation strength, wall radius and z-box length (`hbar = c = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub m: f64,
    pub beta: f64,
    pub r0: f64,
    pub lz: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        SystemParams {
            m: 1.0,
            beta: 0.0,
            r0: 1.0,
            lz: 1.0,
        }
    }
}

impl SystemParams {
    pub fn new(m: f64, beta: f64, r0: f64, lz: f64) -> Result<Self> {
        let params = SystemParams { m, beta, r0, lz };
        params.validate()?;
        Ok(params)
    }

    /// Default mass, radius and box length with the given `beta`.
    pub fn with_beta(beta: f64) -> Result<Self> {
        SystemParams {
            beta,
            ..SystemParams::default()
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// `0 <= beta < 1` (zero is the defect-free reference), and positive
    /// finite `m`, `r0`, `lz`.
    pub fn validate(&self) -> Result<()> {
        if !self.beta.is_finite() || !(0.0..1.0).contains(&self.beta) {
            return Err(Error::invalid(
                "beta",
                format!(
                    "dislocation parameter must satisfy 0 < beta < 1 (0 allowed as the defect-free case), got {}",
                    self.beta
                ),
            ));
        }
        for (name, value) in [("m", self.m), ("r0", self.r0), ("lz", self.lz)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::invalid(name, format!("must be positive and finite, got {value}")));
            }
        }
        Ok(())
    }
}

/// Radial index, angular momentum and longitudinal wavenumber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: i32,
    pub k: f64,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: i32, k: f64) -> Result<Self> {
        let qn = QuantumNumbers { n, l, k };
        qn.validate()?;
        Ok(qn)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.k.is_finite() {
            return Err(Error::invalid("k", format!("must be finite, got {}", self.k)));
        }
        Ok(())
    }
}

/// `|l - beta k|`, the Bessel order shifted by the dislocation.
pub fn effective_order(l: i32, beta: f64, k: f64) -> Order {
    // Finite inputs always give a valid order.
    Order::new((l as f64 - beta * k).abs()).expect("finite effective order")
}

/// A solved, normalized eigenstate. Immutable once built by [`solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenstate {
    params: SystemParams,
    qn: QuantumNumbers,
    nu: Order,
    theta: f64,
    energy: f64,
    a0: f64,
}

/// Normalization constant for a state with order `nu` and wall zero `theta`.
///
/// Uses `int_0^r0 J_nu(theta r / r0)^2 r dr = (r0^2 / 2) J_{nu+1}(theta)^2`,
/// which holds because `theta` is a zero of `J_nu`.
pub fn normalize(nu: Order, theta: f64, params: &SystemParams) -> Result<f64> {
    let radial = radial_norm_closed_form(nu, theta, params.r0)?;
    assert!(radial > 0.0, "J_(nu+1) vanishes at a zero of J_nu");
    Ok((2.0 * PI * params.lz * radial).powf(-0.5))
}

/// `(r0^2 / 2) J_{nu+1}(theta)^2`.
pub fn radial_norm_closed_form(nu: Order, theta: f64, r0: f64) -> Result<f64> {
    let next = Order::new(nu.value() + 1.0)?;
    let j = specfun::bessel_j(next, theta)?;
    Ok(0.5 * r0 * r0 * j * j)
}

/// The same radial norm by adaptive quadrature, split at interior nodes.
pub fn radial_norm_quadrature(nu: Order, theta: f64, r0: f64, tol: f64) -> Result<QuadResult> {
    let nodes: Vec<f64> = specfun::bessel_zeros_below(nu, theta * (1.0 - 1e-12))?
        .into_iter()
        .map(|z| z * r0 / theta)
        .collect();
    let v = nu.value();
    integrate_oscillatory(
        |r| {
            let j = specfun::j_unchecked(v, theta * r / r0);
            j * j * r
        },
        0.0,
        r0,
        &nodes,
        tol,
    )
}

/// Builds the eigenstate for `qn` in the background `params`.
pub fn solve(params: &SystemParams, qn: &QuantumNumbers) -> Result<Eigenstate> {
    params.validate()?;
    qn.validate()?;
    let nu = effective_order(qn.l, params.beta, qn.k);
    let theta = specfun::bessel_zero(nu, qn.n as usize + 1)?;
    let energy = ((theta / params.r0).powi(2) + qn.k * qn.k) / (2.0 * params.m);
    let a0 = normalize(nu, theta, params)?;
    Ok(Eigenstate {
        params: *params,
        qn: *qn,
        nu,
        theta,
        energy,
        a0,
    })
}

impl Eigenstate {
    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn quantum_numbers(&self) -> &QuantumNumbers {
        &self.qn
    }

    /// Effective Bessel order `|l - beta k|`.
    pub fn order(&self) -> Order {
        self.nu
    }

    /// The wall zero `Theta` of `J_nu`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    /// Radial wavefunction `a0 J_nu(Theta r / r0)` inside the wall, zero outside.
    pub fn radial(&self, r: f64) -> f64 {
        if r > self.params.r0 || r < 0.0 {
            return 0.0;
        }
        self.a0 * specfun::j_unchecked(self.nu.value(), self.theta * r / self.params.r0)
    }

    /// Radial positions of the interior nodes of `R`, increasing.
    pub fn radial_nodes(&self) -> Vec<f64> {
        specfun::bessel_zeros_below(self.nu, self.theta * (1.0 - 1e-12))
            .expect("finite limit")
            .into_iter()
            .map(|z| z * self.params.r0 / self.theta)
            .collect()
    }

    /// Full probability density `|psi|^2` at radius `r` (independent of
    /// `theta` and `z`).
    pub fn position_density(&self, r: f64) -> f64 {
        let rad = self.radial(r);
        rad * rad
    }

    /// `int |psi|^2 r dr dtheta dz` over the cylinder, by quadrature.
    pub fn norm(&self, tol: f64) -> Result<f64> {
        let nodes = self.radial_nodes();
        let radial = integrate_oscillatory(
            |r| self.position_density(r) * r,
            0.0,
            self.params.r0,
            &nodes,
            tol,
        )?;
        Ok(2.0 * PI * self.params.lz * radial.value)
    }
}

/// Density of the full state at `r`, see [`Eigenstate::position_density`].
pub fn position_density(state: &Eigenstate, r: f64) -> f64 {
    state.position_density(r)
}
