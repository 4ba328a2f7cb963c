//! Linear combinations of words, the three products and the linear maps
//! built from them.

pub mod lincomb;
pub mod maps;
pub mod products;
pub mod regularize;
pub mod series;
pub mod tensor;

pub use lincomb::{q, qf, JsonWord, LinComb, XYComb, Q};
pub use maps::{
    coproduct, iota, psi, psi_bar, psi_bar_closed_form, rho, sigma, sigma_closed_form, HeadMap,
    IotaVariant, RingMap,
};
pub use products::{shuffle_xy, stuffle, stuffle_power, tshuffle};
pub use regularize::{harmonic_regularize, RegDecomposition};
pub use series::{lambda_truncated, sigma_series, AlphaSeries};
pub use tensor::TensorComb;
