//! Training pairs: a resistivity model, its noise-free forward response,
//! and a corrupted copy, stored with enough provenance (background level
//! and the seed of a dedicated noise stream) to regenerate the corruption
//! bit for bit.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AtemError, Result};
use crate::forward::Forward1D;
use crate::model::LayeredModel;
use crate::modelgen::sample_height;
use crate::noise::{synth_noise, NoiseConfig};
use crate::system::{Normalization, Sounding, SystemConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainSample {
    pub model_id: u64,
    pub resistivity_ohm_m: Vec<f64>,
    pub thickness_m: Vec<f64>,
    /// Transmitter height drawn for this sounding, m.
    pub height_m: f64,
    pub gate_times_s: Vec<f64>,
    /// Noise-free forward response, nV/m².
    pub clean_nv_m2: Vec<f64>,
    /// Same gates after the noise model, nV/m².
    pub noisy_nv_m2: Vec<f64>,
    /// Background level at the 1 ms reference gate, nV/m²; 0 when noise
    /// was disabled.
    pub noise_b_level: f64,
    /// Seed of the private random stream the corruption was drawn from.
    pub noise_seed: u64,
    /// Gates whose clean value was exactly zero, where the noise is purely
    /// additive background.
    pub fallback_gates: Vec<usize>,
}

impl TrainSample {
    pub fn model(&self) -> Result<LayeredModel> {
        LayeredModel::new(self.resistivity_ohm_m.clone(), self.thickness_m.clone())
    }

    pub fn log_rho(&self) -> Vec<f64> {
        self.resistivity_ohm_m.iter().map(|r| r.ln()).collect()
    }

    pub fn clean(&self) -> Sounding {
        Sounding {
            gate_times: self.gate_times_s.clone(),
            dbdt: self.clean_nv_m2.clone(),
            height: self.height_m,
            unit: Normalization::NanovoltPerSquareMeter,
        }
    }

    pub fn noisy(&self) -> Sounding {
        Sounding {
            gate_times: self.gate_times_s.clone(),
            dbdt: self.noisy_nv_m2.clone(),
            height: self.height_m,
            unit: Normalization::NanovoltPerSquareMeter,
        }
    }

    /// Replays the stored noise stream against the clean response. With
    /// the generating `NoiseConfig` this reproduces `noisy_nv_m2` exactly.
    pub fn regenerate_noisy(&self, noise: Option<&NoiseConfig>) -> Result<Vec<f64>> {
        match noise {
            None => Ok(self.clean_nv_m2.clone()),
            Some(cfg) => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.noise_seed);
                let (sounding, _) = synth_noise(&self.clean(), cfg, &mut rng)?;
                Ok(sounding.dbdt)
            }
        }
    }
}

/// Builds one training pair: draws a flight height, runs the forward
/// model there, and corrupts the result with a freshly seeded noise
/// stream. `noise: None` leaves the pair noise-free (noisy == clean).
pub fn make_pair<R: Rng>(
    model_id: u64,
    model: &LayeredModel,
    sys: &SystemConfig,
    fwd: &Forward1D,
    noise: Option<&NoiseConfig>,
    rng: &mut R,
) -> Result<TrainSample> {
    let height = sample_height(rng);
    let mut sys_h = sys.clone();
    sys_h.tx_height = height;
    if sys_h.normalization != Normalization::NanovoltPerSquareMeter {
        return Err(AtemError::config(
            "training data must be generated in nV/m² so the noise law applies",
        ));
    }
    let clean = fwd.forward(model, &sys_h).map_err(|e| {
        AtemError::numerical(format!("forward model failed for model {model_id}: {e}"))
    })?;
    let noise_seed: u64 = rng.gen();
    let (noisy_dbdt, b_level, fallback) = match noise {
        None => (clean.dbdt.clone(), 0.0, Vec::new()),
        Some(cfg) => {
            let mut nrng = ChaCha8Rng::seed_from_u64(noise_seed);
            let (noisy, prov) = synth_noise(&clean, cfg, &mut nrng)?;
            (noisy.dbdt, prov.b_level, prov.additive_fallback_gates)
        }
    };
    Ok(TrainSample {
        model_id,
        resistivity_ohm_m: model.resistivities.clone(),
        thickness_m: model.thicknesses.clone(),
        height_m: height,
        gate_times_s: clean.gate_times,
        clean_nv_m2: clean.dbdt,
        noisy_nv_m2: noisy_dbdt,
        noise_b_level: b_level,
        noise_seed,
        fallback_gates: fallback,
    })
}

/// How a generated dataset is carved into train/validation/test stretches.
/// Samples are independent draws, so contiguous stretches are themselves
/// random subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitManifest {
    pub n_total: usize,
    pub n_train: usize,
    pub n_val: usize,
    pub n_test: usize,
}

impl SplitManifest {
    pub fn new(n_total: usize, train_fraction: f64, val_fraction: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&train_fraction)
            || !(0.0..=1.0).contains(&val_fraction)
            || train_fraction + val_fraction > 1.0
        {
            return Err(AtemError::config(format!(
                "split fractions {train_fraction}/{val_fraction} must be non-negative and sum to at most 1"
            )));
        }
        let n_train = (n_total as f64 * train_fraction).round() as usize;
        let n_val = ((n_total as f64 * val_fraction).round() as usize).min(n_total - n_train);
        Ok(SplitManifest {
            n_total,
            n_train,
            n_val,
            n_test: n_total - n_train - n_val,
        })
    }

    pub fn train_range(&self) -> std::ops::Range<usize> {
        0..self.n_train
    }

    pub fn val_range(&self) -> std::ops::Range<usize> {
        self.n_train..self.n_train + self.n_val
    }

    pub fn test_range(&self) -> std::ops::Range<usize> {
        self.n_train + self.n_val..self.n_total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::TransformProfile;
    use crate::modelgen::rng_for_stream;
    use crate::system::Waveform;

    fn gen_system() -> SystemConfig {
        let n = 12;
        let ratio = (8e-3_f64 / 1e-4).powf(1.0 / (n - 1) as f64);
        SystemConfig {
            tx_radius: 10.0,
            waveform: Waveform::StepOff { current: 1.0 },
            gate_centers: (0..n).map(|i| 1e-4 * ratio.powi(i as i32)).collect(),
            gate_widths: vec![0.0; n],
            ..SystemConfig::default()
        }
    }

    fn layered() -> LayeredModel {
        LayeredModel::new(vec![150.0, 20.0, 400.0], vec![20.0, 60.0]).unwrap()
    }

    #[test]
    fn disabling_noise_copies_the_clean_response() {
        let fwd = Forward1D::with_profile(TransformProfile::training());
        let mut rng = rng_for_stream(1, 0);
        let pair = make_pair(0, &layered(), &gen_system(), &fwd, None, &mut rng).unwrap();
        assert_eq!(pair.noisy_nv_m2, pair.clean_nv_m2);
        assert_eq!(pair.noise_b_level, 0.0);
        assert!((25.0..=100.0).contains(&pair.height_m));
    }

    #[test]
    fn stored_provenance_replays_the_corruption_bit_for_bit() {
        let fwd = Forward1D::with_profile(TransformProfile::training());
        let noise = NoiseConfig::default();
        let mut rng = rng_for_stream(2, 0);
        let pair = make_pair(7, &layered(), &gen_system(), &fwd, Some(&noise), &mut rng).unwrap();
        assert_ne!(pair.noisy_nv_m2, pair.clean_nv_m2);
        let replayed = pair.regenerate_noisy(Some(&noise)).unwrap();
        assert_eq!(replayed, pair.noisy_nv_m2);
    }

    #[test]
    fn pair_stream_noise_matches_the_law_within_five_percent() {
        // Pool normalized residuals (noisy − clean)/σ_gate over many pairs;
        // they should be standard normal, so their spread pins the injected
        // noise level against the law σ = sqrt(0.03² + (n/s)²)·|s|.
        let fwd = Forward1D::with_profile(TransformProfile::training());
        let noise = NoiseConfig {
            b_level: Some(3.0),
            ..NoiseConfig::default()
        };
        let model = layered();
        let sys = gen_system();
        let mut rng = rng_for_stream(3, 0);
        let mut z = Vec::new();
        for id in 0..1000 {
            let pair = make_pair(id, &model, &sys, &fwd, Some(&noise), &mut rng).unwrap();
            for (k, t) in pair.gate_times_s.iter().enumerate() {
                let s = pair.clean_nv_m2[k];
                let n = 3.0 * (t / 1e-3).powf(-0.5);
                let sigma = (0.03_f64.powi(2) + (n / s).powi(2)).sqrt() * s.abs();
                z.push((pair.noisy_nv_m2[k] - s) / sigma);
            }
        }
        let mean = z.iter().sum::<f64>() / z.len() as f64;
        let var = z.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (z.len() - 1) as f64;
        let std = var.sqrt();
        assert!((std - 1.0).abs() < 0.05, "normalized residual std {std}");
        assert!(mean.abs() < 4.0 / (z.len() as f64).sqrt(), "mean {mean}");
    }

    #[test]
    fn samples_survive_a_jsonl_round_trip_bitwise() {
        let fwd = Forward1D::with_profile(TransformProfile::training());
        let noise = NoiseConfig::default();
        let mut rng = rng_for_stream(4, 0);
        let pairs: Vec<TrainSample> = (0..3)
            .map(|id| make_pair(id, &layered(), &gen_system(), &fwd, Some(&noise), &mut rng).unwrap())
            .collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pairs.jsonl");
        crate::io::write_jsonl(&path, &pairs).unwrap();
        let back: Vec<TrainSample> = crate::io::read_jsonl(&path).unwrap();
        assert_eq!(back, pairs);
    }

    #[test]
    fn split_counts_cover_everything_without_overlap() {
        let m = SplitManifest::new(3000, 0.8, 0.1).unwrap();
        assert_eq!(m.n_train, 2400);
        assert_eq!(m.n_val, 300);
        assert_eq!(m.n_test, 300);
        assert_eq!(m.train_range().end, m.val_range().start);
        assert_eq!(m.val_range().end, m.test_range().start);
        assert_eq!(m.test_range().end, m.n_total);
        assert!(SplitManifest::new(100, 0.8, 0.3).is_err());
    }
}
