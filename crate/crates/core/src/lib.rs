//! Eigenstates of a spinless particle confined by a hard cylindrical wall in a
//! screw-dislocation background, and the Shannon information entropies of those
//! states in position and momentum space.
//!
//! The pipeline is
//!
//! 1. [`eigen::solve`]: effective Bessel order `nu = |l - beta k|`, the hard-wall
//!    zero, the energy and the normalization constant;
//! 2. [`momentum::build_profile`]: the radial Hankel-type transform of the state
//!    and the truncation radius in momentum space;
//! 3. [`entropy::report`]: `S_r`, `S_p` and the entropic uncertainty bound.
//!
//! All special functions and quadrature engines are implemented in this crate
//! ([`specfun`], [`quadrature`]).

pub mod eigen;
pub mod entropy;
mod error;
pub mod momentum;
pub mod quadrature;
pub mod reference;
pub mod specfun;

pub use eigen::{Eigenstate, QuantumNumbers, SystemParams};
pub use entropy::{EntropyReport, Tolerances};
pub use error::{Error, Result, Stage};
pub use momentum::MomentumProfile;
pub use quadrature::QuadResult;
pub use specfun::Order;
