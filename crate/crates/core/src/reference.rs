//! Reference entropy table for the dislocation-confined particle.
//!
//! The absolute values depend on parameters that were never stated, so they
//! serve as comparison data for trends only.

use crate::eigen::QuantumNumbers;

/// One reference row. `total` is the printed sum, not recomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub n: u32,
    pub l: i32,
    pub beta: f64,
    pub s_r: f64,
    pub s_p: f64,
    pub total: f64,
}

/// The 27 reference rows in table order.
pub const TABLE: [ReferenceRow; 27] = [
    ReferenceRow { n: 0, l: 0, beta: 0.2, s_r: 9.74631, s_p: 0.06678, total: 9.81309 },
    ReferenceRow { n: 0, l: 0, beta: 0.4, s_r: 9.74262, s_p: 0.07558, total: 9.81821 },
    ReferenceRow { n: 0, l: 0, beta: 0.8, s_r: 9.74040, s_p: 0.12158, total: 9.86199 },
    ReferenceRow { n: 1, l: -1, beta: 0.2, s_r: 9.74435, s_p: 0.05526, total: 9.79961 },
    ReferenceRow { n: 1, l: -1, beta: 0.4, s_r: 9.74424, s_p: 0.10408, total: 9.84832 },
    ReferenceRow { n: 1, l: -1, beta: 0.8, s_r: 9.74387, s_p: 0.29596, total: 10.03984 },
    ReferenceRow { n: 1, l: 0, beta: 0.2, s_r: 9.74483, s_p: 0.00770, total: 9.75254 },
    ReferenceRow { n: 1, l: 0, beta: 0.4, s_r: 9.74439, s_p: 0.10381, total: 9.84821 },
    ReferenceRow { n: 1, l: 0, beta: 0.8, s_r: 9.74353, s_p: 0.29641, total: 10.03991 },
    ReferenceRow { n: 1, l: 1, beta: 0.2, s_r: 9.74410, s_p: 0.01640, total: 9.76050 },
    ReferenceRow { n: 1, l: 1, beta: 0.4, s_r: 9.74377, s_p: 0.13777, total: 9.88154 },
    ReferenceRow { n: 1, l: 1, beta: 0.8, s_r: 9.74312, s_p: 0.29938, total: 10.04251 },
    ReferenceRow { n: 2, l: -2, beta: 0.2, s_r: 9.74461, s_p: 0.02251, total: 9.76713 },
    ReferenceRow { n: 2, l: -2, beta: 0.4, s_r: 9.74329, s_p: 0.22803, total: 9.97133 },
    ReferenceRow { n: 2, l: -2, beta: 0.8, s_r: 9.74277, s_p: 0.35949, total: 10.10231 },
    ReferenceRow { n: 2, l: -1, beta: 0.2, s_r: 9.74518, s_p: 0.02720, total: 9.77238 },
    ReferenceRow { n: 2, l: -1, beta: 0.4, s_r: 9.74361, s_p: 0.25583, total: 9.99944 },
    ReferenceRow { n: 2, l: -1, beta: 0.8, s_r: 9.74301, s_p: 0.48609, total: 10.22910 },
    ReferenceRow { n: 2, l: 0, beta: 0.2, s_r: 9.74482, s_p: 0.04111, total: 9.78593 },
    ReferenceRow { n: 2, l: 0, beta: 0.4, s_r: 9.74370, s_p: 0.25717, total: 10.00091 },
    ReferenceRow { n: 2, l: 0, beta: 0.8, s_r: 9.74317, s_p: 0.52424, total: 10.26742 },
    ReferenceRow { n: 2, l: 1, beta: 0.2, s_r: 9.74435, s_p: 0.04188, total: 9.78623 },
    ReferenceRow { n: 2, l: 1, beta: 0.4, s_r: 9.74335, s_p: 0.35605, total: 10.09942 },
    ReferenceRow { n: 2, l: 1, beta: 0.8, s_r: 9.74291, s_p: 0.85920, total: 10.60214 },
    ReferenceRow { n: 2, l: 2, beta: 0.2, s_r: 9.74399, s_p: 0.07462, total: 9.81861 },
    ReferenceRow { n: 2, l: 2, beta: 0.4, s_r: 9.74311, s_p: 0.44406, total: 10.18722 },
    ReferenceRow { n: 2, l: 2, beta: 0.8, s_r: 9.74272, s_p: 0.91082, total: 10.65351 },
];

/// Dislocation values of the reference sweep.
pub const BETAS: [f64; 3] = [0.2, 0.4, 0.8];

/// `(n, l)` blocks of the reference sweep, in table order.
pub const BLOCKS: [(u32, i32); 9] = [(0, 0), (1, -1), (1, 0), (1, 1), (2, -2), (2, -1), (2, 0), (2, 1), (2, 2)];

/// Longitudinal wavenumber used for the default sweep.
pub const DEFAULT_K: f64 = 1.0;

/// Reference row for `(n, l, beta)`.
pub fn lookup(n: u32, l: i32, beta: f64) -> Option<&'static ReferenceRow> {
    TABLE.iter().find(|r| r.n == n && r.l == l && (r.beta - beta).abs() < 1e-12)
}

/// The default sweep as `(quantum numbers, beta)` in table order.
pub fn default_grid() -> Vec<(QuantumNumbers, f64)> {
    BLOCKS
        .iter()
        .flat_map(|&(n, l)| {
            BETAS.iter().map(move |&beta| (QuantumNumbers { n, l, k: DEFAULT_K }, beta))
        })
        .collect()
}
