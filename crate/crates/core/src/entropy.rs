//! Shannon entropies of an eigenstate and the entropic uncertainty check.
//!
//! Entropies are in nats. With the z-box convention the position density is
//! uniform along `z` (contributing `ln lz`) and the longitudinal momentum is a
//! single discrete mode (contributing nothing), so
//!
//! ```text
//! S_r = -2 pi lz int_0^r0   rho ln rho r dr
//! S_p = -2 pi    int_0^pmax rho~ ln rho~ p dp
//! ```

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::eigen::{solve, Eigenstate, QuantumNumbers, SystemParams};
use crate::error::{Result, Stage};
use crate::momentum::{build_profile_with, MomentumProfile, ProfileOptions};
use crate::quadrature::{integrate_oscillatory, integrate_oscillatory_with, DEFAULT_MAX_PANELS};

/// Densities at or below this count as zero (`0 ln 0 = 0`).
pub const DENSITY_FLOOR: f64 = 1e-300;

/// Tail effects on `S_p` above this (half a unit in the fifth decimal) are
/// logged.
pub const TAIL_WARN: f64 = 5e-6;

/// Slack allowed when comparing an entropy sum with the uncertainty bound.
pub const BBM_SLACK: f64 = 1e-9;

/// `-rho ln rho` with the `0 ln 0 = 0` convention.
pub fn entropy_integrand(rho: f64) -> f64 {
    if rho <= DENSITY_FLOOR {
        0.0
    } else {
        -rho * rho.ln()
    }
}

/// Tolerances for the full pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Absolute tolerance of both entropy integrals.
    pub quad: f64,
    /// Bound on the momentum probability left beyond `p_max`.
    pub norm: f64,
    /// Absolute tolerance of the inner radial transform.
    pub amplitude: f64,
    /// Samples kept in the momentum profile.
    pub samples: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        let profile = ProfileOptions::default();
        Tolerances {
            quad: 1e-7,
            norm: profile.norm_tol,
            amplitude: profile.amplitude_tol,
            samples: profile.samples,
        }
    }
}

impl Tolerances {
    pub fn profile_options(&self) -> ProfileOptions {
        ProfileOptions {
            samples: self.samples,
            norm_tol: self.norm,
            amplitude_tol: self.amplitude,
            ..ProfileOptions::default()
        }
    }
}

/// Position entropy of a radially symmetric density on a cylinder of radius
/// `r0` and length `lz`. `nodes` are interior radii where the density vanishes.
pub fn position_entropy_of<F>(density: F, r0: f64, lz: f64, nodes: &[f64], tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let scale = 2.0 * PI * lz;
    let res = integrate_oscillatory(|r| entropy_integrand(density(r)) * r, 0.0, r0, nodes, tol / scale)?;
    Ok(scale * res.value)
}

/// Momentum entropy of a density uniform in `p_theta`, over `[0, p_max]`.
pub fn momentum_entropy_of<F>(density: F, p_max: f64, breakpoints: &[f64], tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut density = density;
    let scale = 2.0 * PI;
    let res = integrate_oscillatory_with(
        |p| Ok(entropy_integrand(density(p)?) * p),
        0.0,
        p_max,
        breakpoints,
        tol / scale,
        DEFAULT_MAX_PANELS,
    )?;
    Ok(scale * res.value)
}

/// `S_r` of an eigenstate.
pub fn shannon_position(state: &Eigenstate, tol: f64) -> Result<f64> {
    let params = state.params();
    position_entropy_of(
        |r| state.position_density(r),
        params.r0,
        params.lz,
        &state.radial_nodes(),
        tol,
    )
}

/// `S_p` over the truncated profile. Logs a warning when the neglected tail
/// could move the result by more than `max(tol, TAIL_WARN)`.
pub fn shannon_momentum(profile: &MomentumProfile, tol: f64) -> Result<f64> {
    let p_max = profile.p_max();
    let breaks = profile.segment_breakpoints(0.0, p_max);
    let value = momentum_entropy_of(|p| profile.density(p), p_max, &breaks, tol)?;

    let edge = profile
        .samples()
        .iter()
        .rev()
        .map(|s| s.density)
        .find(|&d| d > DENSITY_FLOOR);
    if let Some(edge) = edge {
        let tail_effect = profile.tail_norm_bound() * edge.ln().abs();
        if tail_effect > tol.max(TAIL_WARN) {
            log::warn!(
                "momentum entropy truncated at p_max = {p_max:.3}: tail may shift S_p by ~{tail_effect:.1e}"
            );
        }
    }
    Ok(value)
}

/// Entropic uncertainty bound `D (1 + ln pi)` and whether `s_r + s_p` meets it.
pub fn bbm_check(s_r: f64, s_p: f64, dimension: u32) -> (f64, bool) {
    let bound = dimension as f64 * (1.0 + PI.ln());
    (bound, s_r + s_p >= bound - BBM_SLACK)
}

/// Entropies of one state and the uncertainty check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub qn: QuantumNumbers,
    pub params: SystemParams,
    pub s_r: f64,
    pub s_p: f64,
    pub total: f64,
    pub bbm_bound: f64,
    pub satisfied: bool,
}

/// Flat serialized form of an [`EntropyReport`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub n: u32,
    pub l: i32,
    pub k: f64,
    pub beta: f64,
    pub m: f64,
    pub r0: f64,
    pub lz: f64,
    #[serde(rename = "S_r")]
    pub s_r: f64,
    #[serde(rename = "S_p")]
    pub s_p: f64,
    pub total: f64,
    pub bbm_bound: f64,
    pub satisfied: bool,
}

impl EntropyReport {
    pub fn from_entropies(params: SystemParams, qn: QuantumNumbers, s_r: f64, s_p: f64) -> Self {
        let (bbm_bound, satisfied) = bbm_check(s_r, s_p, 3);
        EntropyReport {
            qn,
            params,
            s_r,
            s_p,
            total: s_r + s_p,
            bbm_bound,
            satisfied,
        }
    }

    pub fn record(&self) -> ReportRecord {
        ReportRecord {
            n: self.qn.n,
            l: self.qn.l,
            k: self.qn.k,
            beta: self.params.beta,
            m: self.params.m,
            r0: self.params.r0,
            lz: self.params.lz,
            s_r: self.s_r,
            s_p: self.s_p,
            total: self.total,
            bbm_bound: self.bbm_bound,
            satisfied: self.satisfied,
        }
    }
}

impl Serialize for EntropyReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.record().serialize(serializer)
    }
}

/// [`report_with`] at default tolerances.
pub fn report(params: &SystemParams, qn: &QuantumNumbers) -> Result<EntropyReport> {
    report_with(params, qn, &Tolerances::default())
}

/// Solve, transform, integrate both entropies and check the bound. Errors are
/// tagged with the failing [`Stage`].
pub fn report_with(params: &SystemParams, qn: &QuantumNumbers, tol: &Tolerances) -> Result<EntropyReport> {
    let state = solve(params, qn).map_err(|e| e.at(Stage::Eigenstate))?;
    let profile = build_profile_with(&state, &tol.profile_options()).map_err(|e| e.at(Stage::MomentumProfile))?;
    let s_r = shannon_position(&state, tol.quad).map_err(|e| e.at(Stage::PositionEntropy))?;
    let s_p = shannon_momentum(&profile, tol.quad).map_err(|e| e.at(Stage::MomentumEntropy))?;
    Ok(EntropyReport::from_entropies(*params, *qn, s_r, s_p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_convention() {
        assert_eq!(entropy_integrand(0.0), 0.0);
        assert_eq!(entropy_integrand(1e-301), 0.0);
        assert_eq!(entropy_integrand(1.0), 0.0);
        assert!((entropy_integrand(0.5) - 0.5 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn bound_values() {
        let (b3, ok) = bbm_check(9.74631, 0.06678, 3);
        assert_eq!(format!("{b3:.5}"), "6.43419");
        assert!(ok);
        let (b1, _) = bbm_check(0.0, 0.0, 1);
        assert!((b1 - 2.144_729_885_849_4).abs() < 1e-12);
        let (_, low) = bbm_check(3.0, 3.0, 3);
        assert!(!low);
        let (_, edge) = bbm_check(b3 - 5e-10, 0.0, 3);
        assert!(edge);
    }

    #[test]
    fn uniform_cylinder() {
        let (r0, lz) = (1.0, 1.0);
        let rho = 1.0 / (PI * r0 * r0 * lz);
        let s = position_entropy_of(|r| if r <= r0 { rho } else { 0.0 }, r0, lz, &[], 1e-12).unwrap();
        assert!((s - PI.ln()).abs() < 1e-10);
        let (r0, lz) = (1.7, 2.5);
        let rho = 1.0 / (PI * r0 * r0 * lz);
        let s = position_entropy_of(|_| rho, r0, lz, &[], 1e-12).unwrap();
        assert!((s - (PI * r0 * r0 * lz).ln()).abs() < 1e-10);
    }

    #[test]
    fn uniform_momentum_disk() {
        let pmax = 2.3;
        let rho = 1.0 / (PI * pmax * pmax);
        let s = momentum_entropy_of(|_| Ok(rho), pmax, &[1.0], 1e-12).unwrap();
        assert!((s - (PI * pmax * pmax).ln()).abs() < 1e-10);
    }

    #[test]
    fn report_record_keys() {
        let r = EntropyReport::from_entropies(
            SystemParams::with_beta(0.2).unwrap(),
            QuantumNumbers::new(0, 0, 1.0).unwrap(),
            1.0,
            2.0,
        );
        assert_eq!(r.total, r.s_r + r.s_p);
        let json = serde_json::to_string(&r).unwrap();
        for key in ["n", "l", "k", "beta", "m", "r0", "lz", "S_r", "S_p", "total", "bbm_bound", "satisfied"] {
            assert!(json.contains(&format!("\"{key}\"")), "{key} missing in {json}");
        }
    }
}
