//! Synthetic measurement noise for airborne transient soundings.
//!
//! The main model perturbs each gate multiplicatively with a floor set by a
//! time-dependent ambient background: the standard deviation at a gate with
//! signal `s` is `|s|·sqrt(STD² + (n/s)²)`, where `n(t) = b·(t/1 ms)^{-1/2}`
//! is the background level and `STD` a uniform relative noise fraction. The
//! background level `b` is drawn once per sounding, so late gates sink below
//! a per-sounding noise floor exactly as in flight data. Plain Gaussian
//! noise and user-recorded noise traces are also supported.

use std::path::{Path, PathBuf};

use rand::Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};
use serde::{Deserialize, Serialize};

use crate::error::{AtemError, Result};
use crate::system::{Normalization, Sounding};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseConfig {
    /// Relative (multiplicative) noise fraction applied to every gate.
    pub std_uniform: f64,
    /// Background level at 1 ms in nV/m². When `None`, each sounding draws
    /// its own level uniformly from `b_range`.
    pub b_level: Option<f64>,
    pub b_range: (f64, f64),
    /// Extra i.i.d. Gaussian noise with this absolute sigma, if set.
    pub gaussian_sigma: Option<f64>,
    /// CSV of recorded noise traces, one per row, aligned to the gate table.
    pub recorded_noise_path: Option<PathBuf>,
    /// Probability per gate of an impulsive spike (sferics-like); 0 = off.
    pub impulse_prob: f64,
    pub seed: u64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig {
            std_uniform: 0.03,
            b_level: None,
            b_range: (1.0, 5.0),
            gaussian_sigma: None,
            recorded_noise_path: None,
            impulse_prob: 0.0,
            seed: 0,
        }
    }
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<()> {
        if self.std_uniform < 0.0 {
            return Err(AtemError::config("std_uniform must be nonnegative"));
        }
        if let Some(b) = self.b_level {
            if b < 0.0 {
                return Err(AtemError::config("b_level must be nonnegative"));
            }
        }
        if !(0.0 < self.b_range.0 && self.b_range.0 <= self.b_range.1) {
            return Err(AtemError::config("b_range must satisfy 0 < low <= high"));
        }
        if !(0.0..=1.0).contains(&self.impulse_prob) {
            return Err(AtemError::config("impulse_prob must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// Ambient background level at time `t`, in the same nV/m² unit as `b`.
pub fn background(t: f64, b: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(AtemError::config(format!(
            "background noise needs t > 0, got {t}"
        )));
    }
    Ok(b * (t / 1e-3).powf(-0.5))
}

/// What `synth_noise` actually did, kept alongside the noisy record so runs
/// can be audited and replayed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoiseProvenance {
    /// Background level used for this sounding, nV/m² at 1 ms.
    pub b_level: f64,
    /// Gates where the signal was exactly zero and the multiplicative form
    /// degenerates; these received purely additive background noise.
    pub additive_fallback_gates: Vec<usize>,
}

/// Applies the per-gate noise law. The sounding must be in nV/m² so the
/// background-to-signal ratio is dimensionless.
pub fn synth_noise<R: Rng>(
    s: &Sounding,
    cfg: &NoiseConfig,
    rng: &mut R,
) -> Result<(Sounding, NoiseProvenance)> {
    cfg.validate()?;
    if s.unit != Normalization::NanovoltPerSquareMeter {
        return Err(AtemError::config(
            "synth_noise needs soundings in nV/m²; convert before adding noise",
        ));
    }
    let b = match cfg.b_level {
        Some(b) => b,
        None => rng.gen_range(cfg.b_range.0..=cfg.b_range.1),
    };
    let mut out = s.clone();
    let mut fallback = Vec::new();
    for (k, (t, v)) in s.gate_times.iter().zip(s.dbdt.iter()).enumerate() {
        let n = background(*t, b)?;
        let eps: f64 = StandardNormal.sample(rng);
        if *v == 0.0 {
            out.dbdt[k] = eps * n;
            fallback.push(k);
        } else {
            let ratio = n / v;
            out.dbdt[k] = v + eps * (cfg.std_uniform.powi(2) + ratio * ratio).sqrt() * v;
        }
        if cfg.impulse_prob > 0.0 && rng.gen::<f64>() < cfg.impulse_prob {
            let amp = rng.gen_range(10.0..=100.0) * n;
            let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            out.dbdt[k] += sign * amp;
        }
    }
    if let Some(sigma) = cfg.gaussian_sigma {
        add_gaussian_in_place(&mut out, sigma, rng)?;
    }
    Ok((
        out,
        NoiseProvenance {
            b_level: b,
            additive_fallback_gates: fallback,
        },
    ))
}

pub fn add_gaussian<R: Rng>(s: &Sounding, sigma: f64, rng: &mut R) -> Result<Sounding> {
    let mut out = s.clone();
    add_gaussian_in_place(&mut out, sigma, rng)?;
    Ok(out)
}

fn add_gaussian_in_place<R: Rng>(s: &mut Sounding, sigma: f64, rng: &mut R) -> Result<()> {
    if sigma < 0.0 {
        return Err(AtemError::config("gaussian sigma must be nonnegative"));
    }
    for v in s.dbdt.iter_mut() {
        let eps: f64 = StandardNormal.sample(rng);
        *v += sigma * eps;
    }
    Ok(())
}

/// A library of recorded noise traces aligned to the gate table.
#[derive(Debug, Clone)]
pub struct RecordedNoise {
    pub traces: Vec<Vec<f64>>,
}

impl RecordedNoise {
    /// Loads one trace per CSV row (headerless).
    pub fn load(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_path(path)?;
        let mut traces = Vec::new();
        for (idx, row) in reader.records().enumerate() {
            let row = row?;
            let trace: Vec<f64> = row
                .iter()
                .map(|f| {
                    f.trim().parse::<f64>().map_err(|e| {
                        AtemError::config(format!("{}: row {}: {e}", path.display(), idx + 1))
                    })
                })
                .collect::<Result<_>>()?;
            traces.push(trace);
        }
        Ok(RecordedNoise { traces })
    }

    /// Adds one randomly chosen trace, scaled by a uniform draw from
    /// `scale_range`; returns the trace index and scale for provenance.
    pub fn inject<R: Rng>(
        &self,
        s: &Sounding,
        scale_range: (f64, f64),
        rng: &mut R,
    ) -> Result<(Sounding, usize, f64)> {
        if self.traces.is_empty() {
            return Err(AtemError::config("recorded-noise library is empty"));
        }
        let idx = rng.gen_range(0..self.traces.len());
        let trace = &self.traces[idx];
        if trace.len() != s.dbdt.len() {
            return Err(AtemError::config(format!(
                "noise trace {} has {} samples but the sounding has {} gates",
                idx,
                trace.len(),
                s.dbdt.len()
            )));
        }
        let scale = Uniform::new_inclusive(scale_range.0, scale_range.1).sample(rng);
        let mut out = s.clone();
        for (v, n) in out.dbdt.iter_mut().zip(trace) {
            *v += scale * n;
        }
        Ok((out, idx, scale))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modelgen::rng_for_stream;

    fn sounding(times: &[f64], dbdt: &[f64]) -> Sounding {
        Sounding {
            gate_times: times.to_vec(),
            dbdt: dbdt.to_vec(),
            height: 40.0,
            unit: Normalization::NanovoltPerSquareMeter,
        }
    }

    #[test]
    fn background_anchors_at_one_millisecond() {
        assert_eq!(background(1e-3, 2.7).unwrap(), 2.7);
        assert!((background(4e-3, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((background(0.25e-3, 3.0).unwrap() - 6.0).abs() < 1e-12);
        assert!(background(0.0, 1.0).is_err());
    }

    #[test]
    fn zero_noise_settings_return_the_signal_unchanged() {
        let s = sounding(&[1e-4, 1e-3], &[120.0, -3.5]);
        let cfg = NoiseConfig {
            std_uniform: 0.0,
            b_level: Some(0.0),
            ..Default::default()
        };
        let mut rng = rng_for_stream(0, 0);
        let (noisy, prov) = synth_noise(&s, &cfg, &mut rng).unwrap();
        assert_eq!(noisy.dbdt, s.dbdt);
        assert_eq!(prov.b_level, 0.0);
        assert!(prov.additive_fallback_gates.is_empty());
    }

    #[test]
    fn per_gate_std_matches_the_closed_form_within_two_percent() {
        let times = [1e-4, 5e-4, 2e-3, 8e-3];
        let signal = [300.0, 40.0, 4.0, 0.6];
        let s = sounding(&times, &signal);
        let cfg = NoiseConfig {
            b_level: Some(3.0),
            ..Default::default()
        };
        let mut rng = rng_for_stream(13, 0);
        let draws = 100_000;
        let mut sum = vec![0.0; 4];
        let mut sumsq = vec![0.0; 4];
        for _ in 0..draws {
            let (noisy, _) = synth_noise(&s, &cfg, &mut rng).unwrap();
            for k in 0..4 {
                let d = noisy.dbdt[k] - signal[k];
                sum[k] += d;
                sumsq[k] += d * d;
            }
        }
        for k in 0..4 {
            let n = background(times[k], 3.0).unwrap();
            let want = signal[k].abs() * (0.03_f64.powi(2) + (n / signal[k]).powi(2)).sqrt();
            let mean = sum[k] / draws as f64;
            let var = sumsq[k] / draws as f64 - mean * mean;
            let got = var.sqrt();
            assert!(
                ((got - want) / want).abs() < 0.02,
                "gate {k}: std {got} vs {want}"
            );
            // zero mean within 3 standard errors
            let se = got / (draws as f64).sqrt();
            assert!(mean.abs() < 3.0 * se, "gate {k}: mean {mean}, se {se}");
        }
    }

    #[test]
    fn weak_signal_gates_are_background_dominated() {
        let t = 8e-3;
        let small = 0.01; // STD·|s| = 3e-4 << n ≈ 1.06
        let s = sounding(&[t], &[small]);
        let cfg = NoiseConfig {
            b_level: Some(3.0),
            ..Default::default()
        };
        let n = background(t, 3.0).unwrap();
        let mut rng = rng_for_stream(17, 0);
        let draws = 100_000;
        let mut sumsq = 0.0;
        for _ in 0..draws {
            let (noisy, _) = synth_noise(&s, &cfg, &mut rng).unwrap();
            let d = noisy.dbdt[0] - small;
            sumsq += d * d;
        }
        let got = (sumsq / draws as f64).sqrt();
        assert!(((got - n) / n).abs() < 0.05, "std {got} vs background {n}");
    }

    #[test]
    fn zero_signal_gate_uses_the_additive_fallback_and_is_flagged() {
        let s = sounding(&[1e-3, 2e-3], &[5.0, 0.0]);
        let cfg = NoiseConfig {
            b_level: Some(2.0),
            ..Default::default()
        };
        let mut rng = rng_for_stream(19, 0);
        let (noisy, prov) = synth_noise(&s, &cfg, &mut rng).unwrap();
        assert_eq!(prov.additive_fallback_gates, vec![1]);
        assert!(noisy.dbdt[1].is_finite());
    }

    #[test]
    fn gates_are_mutually_independent() {
        let s = sounding(&[1e-3, 2e-3], &[10.0, 5.0]);
        let cfg = NoiseConfig {
            b_level: Some(2.0),
            ..Default::default()
        };
        let mut rng = rng_for_stream(23, 0);
        let draws = 100_000;
        let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for _ in 0..draws {
            let (noisy, _) = synth_noise(&s, &cfg, &mut rng).unwrap();
            let (x, y) = (noisy.dbdt[0] - 10.0, noisy.dbdt[1] - 5.0);
            sx += x;
            sy += y;
            sxx += x * x;
            syy += y * y;
            sxy += x * y;
        }
        let n = draws as f64;
        let r = (sxy / n - sx * sy / (n * n))
            / ((sxx / n - (sx / n).powi(2)) * (syy / n - (sy / n).powi(2))).sqrt();
        assert!(r.abs() < 0.02, "cross-gate correlation {r}");
    }

    #[test]
    fn gaussian_noise_has_the_requested_sigma() {
        let s = sounding(&[1e-3], &[0.0]);
        let mut rng = rng_for_stream(29, 0);
        let draws = 100_000;
        let mut sumsq = 0.0;
        for _ in 0..draws {
            let noisy = add_gaussian(&s, 2.5, &mut rng).unwrap();
            sumsq += noisy.dbdt[0] * noisy.dbdt[0];
        }
        let got = (sumsq / draws as f64).sqrt();
        assert!(((got - 2.5) / 2.5).abs() < 0.01, "sigma {got}");
        assert_eq!(add_gaussian(&s, 0.0, &mut rng).unwrap().dbdt, s.dbdt);
    }

    #[test]
    fn noise_is_reproducible_per_seed_and_differs_across_seeds() {
        let s = sounding(&[1e-3, 2e-3], &[10.0, 5.0]);
        let cfg = NoiseConfig::default();
        let (a, _) = synth_noise(&s, &cfg, &mut rng_for_stream(7, 0)).unwrap();
        let (b, _) = synth_noise(&s, &cfg, &mut rng_for_stream(7, 0)).unwrap();
        let (c, _) = synth_noise(&s, &cfg, &mut rng_for_stream(8, 0)).unwrap();
        assert_eq!(a.dbdt, b.dbdt);
        assert_ne!(a.dbdt, c.dbdt);
    }

    #[test]
    fn recorded_traces_inject_additively_and_cover_the_library() {
        let s = sounding(&[1e-3, 2e-3], &[10.0, 5.0]);
        let zero = RecordedNoise {
            traces: vec![vec![0.0, 0.0]],
        };
        let mut rng = rng_for_stream(31, 0);
        let (out, _, _) = zero.inject(&s, (1.0, 1.0), &mut rng).unwrap();
        assert_eq!(out.dbdt, s.dbdt);

        let one = RecordedNoise {
            traces: vec![vec![1.5, -0.5]],
        };
        let (out, idx, scale) = one.inject(&s, (1.0, 1.0), &mut rng).unwrap();
        assert_eq!(idx, 0);
        assert_eq!(scale, 1.0);
        assert_eq!(out.dbdt, vec![11.5, 4.5]);

        let lib = RecordedNoise {
            traces: (0..5).map(|i| vec![i as f64, 0.0]).collect(),
        };
        let mut seen = [false; 5];
        for _ in 0..1000 {
            let (_, idx, _) = lib.inject(&s, (0.5, 2.0), &mut rng).unwrap();
            seen[idx] = true;
        }
        assert!(seen.iter().all(|s| *s), "all traces drawn at least once");

        let empty = RecordedNoise { traces: vec![] };
        assert!(empty.inject(&s, (1.0, 1.0), &mut rng).is_err());
    }

    #[test]
    fn recorded_noise_csv_loads_row_per_trace() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("noise.csv");
        std::fs::write(&path, "0.1,-0.2,0.3\n1.0,2.0,3.0\n").unwrap();
        let lib = RecordedNoise::load(&path).unwrap();
        assert_eq!(lib.traces, vec![vec![0.1, -0.2, 0.3], vec![1.0, 2.0, 3.0]]);
    }
}
