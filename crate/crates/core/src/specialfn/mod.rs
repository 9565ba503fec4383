//! Special functions for the closed-form inner solutions: complex gamma,
//! Kummer `M`, Tricomi `U`, the Whittaker pair and Gauss `2F1` on `x <= 0`.

mod confluent;
mod gamma;
mod hypergeometric;

pub use confluent::{
    kummer_m, kummer_m_series, kummer_m_with, tricomi_u, tricomi_u_series, tricomi_u_with, whittaker_m, whittaker_m_dy, whittaker_w,
    whittaker_w_dy,
};
pub use gamma::{gamma, ln_gamma, rgamma};
pub use hypergeometric::{gauss_2f1, gauss_2f1_with, hyp2f1_pfaff, hyp2f1_series};

/// Stopping rule shared by the power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl { rel_tol: 1e-13, max_terms: 100_000 }
    }
}
