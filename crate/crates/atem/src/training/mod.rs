//! Self-supervised-plus-physics training of the disentangling network:
//! pair generation, the combined loss, the optimizer, the alternating
//! variational-estimator refit, and the epoch loop with deterministic
//! checkpoint/resume.

mod data;
mod optim;
mod physics;
mod step;
mod trainer;

pub use data::{make_pair, SplitManifest, TrainSample};
pub use optim::{clip_global_norm, AdamW, AdamWConfig};
pub use physics::{forward_signed_log, PhysicsContext};
pub use step::{training_step, LossBreakdown};
pub use trainer::{train, EpochMeans, EpochRecord, TrainReport, TrainerState};

use serde::{Deserialize, Serialize};

use crate::error::{AtemError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    pub epochs: u64,
    pub batch_size: usize,
    /// Learning rate of the main network.
    pub lr: f64,
    /// Learning rate of the variational estimator's refit steps.
    pub club_lr: f64,
    pub weight_decay: f64,
    /// Global gradient-norm ceiling.
    pub clip_norm: f64,
    /// Weight of the mutual-information penalty; 0 disables the penalty
    /// and the estimator refits entirely.
    pub lambda_mi: f64,
    /// Estimator maximum-likelihood steps after each network update.
    pub k_q: usize,
    /// Epochs over which the physics-loss weight ramps linearly from 0 to
    /// 1; 0 keeps it at 1 throughout.
    pub physics_ramp_epochs: u64,
    /// Apply the physics loss to the models decoded from both encodings
    /// instead of only the noisy one.
    pub physics_both_paths: bool,
    /// Epoch interval between validation passes.
    pub val_every: u64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 30,
            batch_size: 32,
            lr: 1e-4,
            club_lr: 1e-3,
            weight_decay: 0.01,
            clip_norm: 1.0,
            lambda_mi: 0.1,
            k_q: 5,
            physics_ramp_epochs: 2,
            physics_both_paths: false,
            val_every: 1,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.batch_size == 0 {
            return Err(AtemError::config("batch_size must be positive"));
        }
        for (name, v) in [("lr", self.lr), ("club_lr", self.club_lr), ("clip_norm", self.clip_norm)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(AtemError::config(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [("weight_decay", self.weight_decay), ("lambda_mi", self.lambda_mi)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(AtemError::config(format!(
                    "{name} must be non-negative, got {v}"
                )));
            }
        }
        if self.val_every == 0 {
            return Err(AtemError::config("val_every must be positive"));
        }
        Ok(())
    }
}

/// Schedule of the physics-loss weight: λ(e) = min(1, e/W). The first
/// epoch trains without the forward model (and skips its cost entirely);
/// the weight reaches 1 after `ramp_epochs` epochs.
pub fn physics_weighting(epoch: u64, ramp_epochs: u64) -> f64 {
    if ramp_epochs == 0 {
        1.0
    } else {
        (epoch as f64 / ramp_epochs as f64).min(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn physics_weight_ramps_linearly_and_saturates() {
        assert_eq!(physics_weighting(0, 2), 0.0);
        assert_eq!(physics_weighting(1, 2), 0.5);
        assert_eq!(physics_weighting(2, 2), 1.0);
        assert_eq!(physics_weighting(10, 2), 1.0);
        assert_eq!(physics_weighting(0, 0), 1.0);
        assert_eq!(physics_weighting(3, 4), 0.75);
    }

    #[test]
    fn config_defaults_are_valid_and_unknown_fields_are_rejected() {
        TrainConfig::default().validate().unwrap();
        let toml = "epochs = 5\nbatch_size = 8\n";
        let cfg: TrainConfig = toml::from_str(toml).unwrap();
        assert_eq!(cfg.epochs, 5);
        assert_eq!(cfg.lr, 1e-4);
        assert!(toml::from_str::<TrainConfig>("learning_rate = 0.1").is_err());
        assert!(TrainConfig {
            batch_size: 0,
            ..TrainConfig::default()
        }
        .validate()
        .is_err());
    }
}
