//! Airborne transient-electromagnetic (ATEM) modeling, denoising, and
//! inversion: an exact 1D layered-earth forward engine, synthetic model and
//! noise generators, a from-scratch autodiff substrate and disentangling
//! encoder/decoder network, a physics-constrained training loop, a classical
//! Gauss-Newton baseline, and evaluation/survey-product tooling.

pub mod error;
pub mod baseline;
pub mod eval;
pub mod forward;
pub mod autodiff;
pub mod io;
pub mod model;
pub mod modelgen;
pub mod network;
pub mod noise;
pub mod system;
pub mod training;

pub use error::{AtemError, Result};
pub use forward::{Forward1D, TransformProfile};
pub use model::LayeredModel;
pub use system::{Normalization, Sounding, SystemConfig, Waveform};
