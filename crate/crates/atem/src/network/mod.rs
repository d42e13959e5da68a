//! The denoising-and-inversion network: a transformer encoder that
//! factorizes a sounding into a signal part and a noise part, a decoder
//! that reassembles soundings from factor pairs, a decoder that maps the
//! signal factor to a layered resistivity model, and a mutual-information
//! estimator that keeps the two factors apart.

mod arch;
mod club;
mod params;

pub use arch::{
    block_forward, decode_model, decode_model_batch, decode_signal, decode_signal_batch,
    embed_input, encode, encode_batch, log_rho_bounds, signed_log, signed_log_deriv,
    signed_log_inv, time_embedding,
};
pub use club::{club_loglik, club_mi_upper};
pub use params::{
    init_club_params, init_net_params, load_checkpoint, require_matching_config, save_checkpoint,
    Binding, CheckpointHeader, ParamStore, CHECKPOINT_FORMAT_VERSION,
};

use serde::{Deserialize, Serialize};

use crate::error::{AtemError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetConfig {
    pub d_model: usize,
    pub n_blocks_encoder: usize,
    pub n_blocks_decoder: usize,
    pub n_heads: usize,
    pub d_ff: usize,
    /// Dimensionality of each latent factor.
    pub d_z: usize,
    /// Gate count the network is built for (token sequence length).
    pub n_gates: usize,
    /// Length of the predicted resistivity column.
    pub n_layers_out: usize,
}

impl Default for NetConfig {
    fn default() -> Self {
        NetConfig {
            d_model: 64,
            n_blocks_encoder: 2,
            n_blocks_decoder: 2,
            n_heads: 4,
            d_ff: 256,
            d_z: 64,
            n_gates: 30,
            n_layers_out: 30,
        }
    }
}

impl NetConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("d_model", self.d_model),
            ("n_blocks_encoder", self.n_blocks_encoder),
            ("n_blocks_decoder", self.n_blocks_decoder),
            ("n_heads", self.n_heads),
            ("d_ff", self.d_ff),
            ("d_z", self.d_z),
            ("n_gates", self.n_gates),
            ("n_layers_out", self.n_layers_out),
        ];
        for (name, v) in fields {
            if v == 0 {
                return Err(AtemError::config(format!("{name} must be positive")));
            }
        }
        if self.d_model % self.n_heads != 0 {
            return Err(AtemError::config(format!(
                "d_model {} is not divisible by n_heads {}",
                self.d_model, self.n_heads
            )));
        }
        Ok(())
    }
}
