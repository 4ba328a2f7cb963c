//! Floating-point evaluation: nested Hurwitz-type sums, the parametrized
//! series, regularized values on `H^1`, and iterated integrals by
//! double-exponential quadrature. Every value carries an absolute error
//! bound.

mod estimate;
pub mod quad;
pub mod sums;
pub mod verify;
pub mod zeta;

pub use estimate::ComplexEstimate;
pub use quad::{eval_k_quadrature, eval_l_quadrature};
pub use sums::{eval_hurwitz, eval_pms, z_y, SumVariant};
pub use verify::{
    eval_k, eval_zstar_reg, sigma_expansion, verify_eq3, verify_lemma_kyx, verify_theorem1,
    Eq3Report, KMethod, KyxReport, Theorem1Report,
};
pub use zeta::{bernoulli, zeta};

pub use num_complex::Complex64;

/// Knobs shared by all evaluators.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct NumericOptions {
    /// Largest summation index before the tail model takes over.
    pub trunc_n: usize,
    /// Target accuracy for quadrature.
    pub quad_tol: f64,
    /// Truncation order for series in `alpha`.
    pub order_m: usize,
    /// Sum the final series strictly left to right instead of in fixed
    /// chunks. Both are deterministic; this one is also independent of
    /// the chunk size.
    pub sequential_sum: bool,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            trunc_n: 1_000_000,
            quad_tol: 1e-9,
            order_m: 8,
            sequential_sum: false,
        }
    }
}

/// Rejects parameters outside `Re alpha > -1`.
pub(crate) fn check_alpha(alpha: Complex64) -> crate::Result<()> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() || alpha.re <= -1.0 {
        return Err(crate::error::domain(format!(
            "alpha = {alpha} is outside Re alpha > -1"
        )));
    }
    Ok(())
}
