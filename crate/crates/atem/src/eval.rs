//! Evaluation: the root-mean-square percentage error used throughout for
//! data and model comparisons, factor-swapping diagnostics, end-to-end
//! consistency summaries, and export of inverted soundings as gridded
//! sections and depth slices.
//!
//! Conventions: comparisons between soundings happen on signed-log values
//! (the network's native data domain), comparisons between models on log
//! resistivity, with linear-resistivity variants reported alongside since
//! ratios of raw resistivities weight conductors very differently.

use std::path::Path;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::autodiff::Tape;
use crate::error::{AtemError, Result};
use crate::model::LayeredModel;
use crate::network::{
    decode_model_batch, decode_signal_batch, encode_batch, signed_log, NetConfig, ParamStore,
};
use crate::system::Sounding;
use crate::training::{PhysicsContext, TrainSample};

/// Chunk size for batched network passes while evaluating.
const EVAL_CHUNK: usize = 32;

/// RMSPE of predictions against truths, in percent:
/// sqrt(mean(((p−t)/t)²))·100. Entries with a truth of exactly zero carry
/// an undefined relative error; they are left out and counted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rmspe {
    pub percent: f64,
    /// Entries skipped because the truth value was exactly zero.
    pub n_zero_truth: usize,
    /// Entries actually averaged.
    pub n_used: usize,
}

pub fn rmspe(predictions: &[f64], truths: &[f64]) -> Result<Rmspe> {
    if predictions.len() != truths.len() {
        return Err(AtemError::config(format!(
            "rmspe needs equally many predictions and truths, got {} and {}",
            predictions.len(),
            truths.len()
        )));
    }
    let mut sum = 0.0;
    let mut n_used = 0usize;
    let mut n_zero = 0usize;
    for (p, t) in predictions.iter().zip(truths) {
        if *t == 0.0 {
            n_zero += 1;
            continue;
        }
        let r = (p - t) / t;
        sum += r * r;
        n_used += 1;
    }
    if n_used == 0 {
        return Err(AtemError::config(
            "rmspe is undefined: every truth entry is zero",
        ));
    }
    Ok(Rmspe {
        percent: (sum / n_used as f64).sqrt() * 100.0,
        n_zero_truth: n_zero,
        n_used,
    })
}

/// Convenience for the common "median over per-item RMSPEs" summary.
pub fn median(values: &mut [f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(AtemError::config("median of an empty set"));
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("non-NaN"));
    let n = values.len();
    Ok(if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    })
}

/// Equal-width histogram from 0 to the largest observed value; the last
/// bin's upper edge is inclusive so every sample lands somewhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// `n_bins + 1` monotone edges.
    pub bin_edges: Vec<f64>,
    pub counts: Vec<usize>,
}

pub fn histogram(values: &[f64], n_bins: usize) -> Result<Histogram> {
    if n_bins == 0 {
        return Err(AtemError::config("histogram needs at least one bin"));
    }
    if values.is_empty() {
        return Err(AtemError::config("histogram of an empty set"));
    }
    let mut hi = values.iter().cloned().fold(0.0_f64, f64::max);
    if !hi.is_finite() {
        return Err(AtemError::numerical("histogram input is not finite"));
    }
    if hi == 0.0 {
        hi = 1.0;
    }
    let width = hi / n_bins as f64;
    let bin_edges: Vec<f64> = (0..=n_bins).map(|i| i as f64 * width).collect();
    let mut counts = vec![0usize; n_bins];
    for v in values {
        let k = ((v / width) as usize).min(n_bins - 1);
        counts[k] += 1;
    }
    Ok(Histogram { bin_edges, counts })
}

/// Summary of one per-sample error distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub median_percent: f64,
    pub per_sample_percent: Vec<f64>,
    /// Total entries excluded across samples because a truth value was
    /// exactly zero.
    pub n_zero_truth_excluded: usize,
    pub histogram: Histogram,
}

fn summarize(per_sample: Vec<Rmspe>, n_bins: usize) -> Result<Metrics> {
    let mut percents: Vec<f64> = per_sample.iter().map(|r| r.percent).collect();
    let hist = histogram(&percents, n_bins)?;
    Ok(Metrics {
        median_percent: median(&mut percents.clone())?,
        n_zero_truth_excluded: per_sample.iter().map(|r| r.n_zero_truth).sum(),
        histogram: hist,
        per_sample_percent: percents,
    })
}

pub fn write_histogram_csv(path: &Path, h: &Histogram) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["bin_left", "bin_right", "count"])?;
    for (i, c) in h.counts.iter().enumerate() {
        w.write_record([
            h.bin_edges[i].to_string(),
            h.bin_edges[i + 1].to_string(),
            c.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Per-sounding factor pairs (signal row, noise row) for a whole set,
/// evaluated without gradients in fixed-size chunks.
fn encode_values(
    net: &ParamStore,
    cfg: &NetConfig,
    xs: &[Sounding],
) -> Result<(Array2<f64>, Array2<f64>)> {
    let mut zs = Array2::zeros((xs.len(), cfg.d_z));
    let mut zn = Array2::zeros((xs.len(), cfg.d_z));
    for (c, chunk) in xs.chunks(EVAL_CHUNK).enumerate() {
        let tape = Tape::new();
        let p = net.bind(&tape, false)?;
        let refs: Vec<&Sounding> = chunk.iter().collect();
        let (s, n) = encode_batch(&tape, cfg, &p, &refs)?;
        let (sv, nv) = (s.value(), n.value());
        for i in 0..chunk.len() {
            for j in 0..cfg.d_z {
                zs[[c * EVAL_CHUNK + i, j]] = sv[[i, j]];
                zn[[c * EVAL_CHUNK + i, j]] = nv[[i, j]];
            }
        }
    }
    Ok((zs, zn))
}

/// Decoded soundings (rows) for given factor rows, gate table, and heights.
fn decode_signal_values(
    net: &ParamStore,
    cfg: &NetConfig,
    zs: &Array2<f64>,
    zn: &Array2<f64>,
    gate_times: &[f64],
    heights: &[f64],
) -> Result<Array2<f64>> {
    let b = heights.len();
    let g = cfg.n_gates;
    let mut out = Array2::zeros((b, g));
    for start in (0..b).step_by(EVAL_CHUNK) {
        let end = (start + EVAL_CHUNK).min(b);
        let tape = Tape::new();
        let p = net.bind(&tape, false)?;
        let zs_c = tape.constant(zs.slice(ndarray::s![start..end, ..]).to_owned().into_dyn())?;
        let zn_c = tape.constant(zn.slice(ndarray::s![start..end, ..]).to_owned().into_dyn())?;
        let dec = decode_signal_batch(&tape, cfg, &p, zs_c, zn_c, gate_times, &heights[start..end])?;
        let dv = dec.value();
        for i in 0..end - start {
            for j in 0..g {
                out[[start + i, j]] = dv[[i * g + j, 0]];
            }
        }
    }
    Ok(out)
}

/// Decoded log-resistivity columns (rows) for given signal-factor rows.
fn decode_model_values(net: &ParamStore, cfg: &NetConfig, zs: &Array2<f64>) -> Result<Array2<f64>> {
    let b = zs.nrows();
    let l = cfg.n_layers_out;
    let mut out = Array2::zeros((b, l));
    for start in (0..b).step_by(EVAL_CHUNK) {
        let end = (start + EVAL_CHUNK).min(b);
        let tape = Tape::new();
        let p = net.bind(&tape, false)?;
        let zs_c = tape.constant(zs.slice(ndarray::s![start..end, ..]).to_owned().into_dyn())?;
        let dec = decode_model_batch(cfg, &p, zs_c)?;
        let dv = dec.value();
        for i in 0..end - start {
            for j in 0..l {
                out[[start + i, j]] = dv[[i * l + j, 0]];
            }
        }
    }
    Ok(out)
}

fn shared_gate_times(samples: &[TrainSample]) -> Result<Vec<f64>> {
    let first = &samples[0].gate_times_s;
    for s in samples {
        if s.gate_times_s != *first {
            return Err(AtemError::config(
                "evaluation set mixes different gate tables",
            ));
        }
    }
    Ok(first.clone())
}

fn signed_log_rows(samples: &[TrainSample], pick_clean: bool) -> Array2<f64> {
    let g = samples[0].gate_times_s.len();
    Array2::from_shape_fn((samples.len(), g), |(i, j)| {
        let v = if pick_clean {
            samples[i].clean_nv_m2[j]
        } else {
            samples[i].noisy_nv_m2[j]
        };
        signed_log(v)
    })
}

fn row_rmspe(pred: &Array2<f64>, truth: &Array2<f64>) -> Result<Vec<Rmspe>> {
    (0..pred.nrows())
        .map(|i| {
            rmspe(
                pred.row(i).as_slice().expect("contiguous row"),
                truth.row(i).as_slice().expect("contiguous row"),
            )
        })
        .collect()
}

/// Reconstruction quality for every pairing of signal and noise factors
/// taken from the noisy and clean encodings of the same sounding. Factor
/// sources are named in the fields: the decoder should produce the clean
/// sounding whenever the noise factor comes from the clean encoding, and
/// the noisy sounding whenever it comes from the noisy one, regardless of
/// where the signal factor was read.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwapReport {
    pub n_samples: usize,
    /// Signal factor from the noisy encoding, noise factor from the clean
    /// one, compared against the clean sounding — the denoising path.
    pub denoise: Metrics,
    /// Both factors from the clean encoding, against the clean sounding.
    pub reconstruct_clean: Metrics,
    /// Signal factor from the clean encoding, noise factor from the noisy
    /// one, compared against the noisy sounding.
    pub renoise: Metrics,
    /// Both factors from the noisy encoding, against the noisy sounding.
    pub reconstruct_noisy: Metrics,
}

pub fn swap_test(
    samples: &[TrainSample],
    net: &ParamStore,
    cfg: &NetConfig,
    n_bins: usize,
) -> Result<SwapReport> {
    if samples.is_empty() {
        return Err(AtemError::config("empty evaluation set"));
    }
    let gate_times = shared_gate_times(samples)?;
    let heights: Vec<f64> = samples.iter().map(|s| s.height_m).collect();
    let noisy: Vec<Sounding> = samples.iter().map(|s| s.noisy()).collect();
    let clean: Vec<Sounding> = samples.iter().map(|s| s.clean()).collect();
    let (zs_noisy, zn_noisy) = encode_values(net, cfg, &noisy)?;
    let (zs_clean, zn_clean) = encode_values(net, cfg, &clean)?;
    let target_clean = signed_log_rows(samples, true);
    let target_noisy = signed_log_rows(samples, false);

    let metric = |zs: &Array2<f64>, zn: &Array2<f64>, target: &Array2<f64>| -> Result<Metrics> {
        let dec = decode_signal_values(net, cfg, zs, zn, &gate_times, &heights)?;
        summarize(row_rmspe(&dec, target)?, n_bins)
    };
    Ok(SwapReport {
        n_samples: samples.len(),
        denoise: metric(&zs_noisy, &zn_clean, &target_clean)?,
        reconstruct_clean: metric(&zs_clean, &zn_clean, &target_clean)?,
        renoise: metric(&zs_clean, &zn_noisy, &target_noisy)?,
        reconstruct_noisy: metric(&zs_noisy, &zn_noisy, &target_noisy)?,
    })
}

/// Agreement between the resistivity columns decoded from clean and noisy
/// encodings of the same sounding, each against the generating model, plus
/// the forward response of the noisy-path column against the clean data.
/// Model-space scores are reported on log resistivity (primary) and on
/// linear resistivity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub n_samples: usize,
    pub model_clean_log: Metrics,
    pub model_noisy_log: Metrics,
    /// Column from the noisy encoding against the column from the clean one.
    pub model_pair_log: Metrics,
    pub model_clean_linear: Metrics,
    pub model_noisy_linear: Metrics,
    pub model_pair_linear: Metrics,
    /// Signed-log forward response of the noisy-path column vs clean data.
    pub data_refit: Metrics,
}

pub fn consistency_test(
    samples: &[TrainSample],
    net: &ParamStore,
    cfg: &NetConfig,
    physics: &PhysicsContext,
    n_bins: usize,
) -> Result<ConsistencyReport> {
    if samples.is_empty() {
        return Err(AtemError::config("empty evaluation set"));
    }
    if physics.n_layers() != cfg.n_layers_out {
        return Err(AtemError::config(format!(
            "network predicts {} layers but the forward grid has {}",
            cfg.n_layers_out,
            physics.n_layers()
        )));
    }
    shared_gate_times(samples)?;
    let noisy: Vec<Sounding> = samples.iter().map(|s| s.noisy()).collect();
    let clean: Vec<Sounding> = samples.iter().map(|s| s.clean()).collect();
    let (zs_noisy, _) = encode_values(net, cfg, &noisy)?;
    let (zs_clean, _) = encode_values(net, cfg, &clean)?;
    let m_noisy = decode_model_values(net, cfg, &zs_noisy)?;
    let m_clean = decode_model_values(net, cfg, &zs_clean)?;
    let truth_log = Array2::from_shape_fn((samples.len(), cfg.n_layers_out), |(i, j)| {
        samples[i].resistivity_ohm_m[j].ln()
    });
    let linear = |a: &Array2<f64>| a.mapv(f64::exp);

    let mut refit = Vec::with_capacity(samples.len());
    for (i, s) in samples.iter().enumerate() {
        let col: Vec<f64> = m_noisy.row(i).to_vec();
        let resp = physics.respond(&col, s.height_m)?;
        let pred: Vec<f64> = resp.iter().map(|v| signed_log(*v)).collect();
        let truth: Vec<f64> = s.clean_nv_m2.iter().map(|v| signed_log(*v)).collect();
        refit.push(rmspe(&pred, &truth)?);
    }

    Ok(ConsistencyReport {
        n_samples: samples.len(),
        model_clean_log: summarize(row_rmspe(&m_clean, &truth_log)?, n_bins)?,
        model_noisy_log: summarize(row_rmspe(&m_noisy, &truth_log)?, n_bins)?,
        model_pair_log: summarize(row_rmspe(&m_noisy, &m_clean)?, n_bins)?,
        model_clean_linear: summarize(row_rmspe(&linear(&m_clean), &linear(&truth_log))?, n_bins)?,
        model_noisy_linear: summarize(row_rmspe(&linear(&m_noisy), &linear(&truth_log))?, n_bins)?,
        model_pair_linear: summarize(row_rmspe(&linear(&m_noisy), &linear(&m_clean))?, n_bins)?,
        data_refit: summarize(refit, n_bins)?,
    })
}

/// Where one sounding sits in a survey: along-line distance for section
/// plots, map coordinates for depth slices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoundingPosition {
    pub line_id: String,
    pub distance_m: f64,
    pub x: f64,
    pub y: f64,
    pub elevation_m: f64,
}

/// One survey line's inverted resistivity columns on a shared depth grid.
/// Columns are independent soundings in along-line order; nothing is
/// smoothed laterally.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionGrid {
    pub line_id: String,
    pub positions: Vec<SoundingPosition>,
    /// Transceiver height above ground per sounding, m.
    pub heights_m: Vec<f64>,
    /// Top depth of every layer, m; first entry 0.
    pub layer_tops: Vec<f64>,
    /// Bottom depth of every layer, m. The basement has no physical bottom;
    /// it is drawn with the thickness of the deepest resolved layer.
    pub layer_bottoms: Vec<f64>,
    /// `resistivity[column][layer]`, ohm·m.
    pub resistivity: Vec<Vec<f64>>,
}

impl SectionGrid {
    pub fn n_columns(&self) -> usize {
        self.positions.len()
    }

    pub fn n_layers(&self) -> usize {
        self.layer_tops.len()
    }
}

/// Stacks per-sounding models into a section. All models must share one
/// layer grid; positions must belong to the named line, be ordered by
/// strictly increasing distance (duplicates rejected), and line up
/// one-to-one with models and heights.
pub fn assemble_section(
    line_id: &str,
    models: &[LayeredModel],
    heights: &[f64],
    positions: &[SoundingPosition],
) -> Result<SectionGrid> {
    if models.is_empty() {
        return Err(AtemError::config("cannot assemble an empty section"));
    }
    if models.len() != positions.len() || models.len() != heights.len() {
        return Err(AtemError::config(format!(
            "{} models, {} heights, {} positions — counts must match",
            models.len(),
            heights.len(),
            positions.len()
        )));
    }
    let thicknesses = &models[0].thicknesses;
    for m in models {
        m.validate()?;
        if m.thicknesses != *thicknesses {
            return Err(AtemError::config(
                "all models in a section must share one layer grid",
            ));
        }
    }
    for p in positions {
        if p.line_id != line_id {
            return Err(AtemError::config(format!(
                "position on line {} mixed into section {}",
                p.line_id, line_id
            )));
        }
    }
    for w in positions.windows(2) {
        if w[1].distance_m == w[0].distance_m {
            return Err(AtemError::config(format!(
                "duplicate sounding position at {} m on line {}",
                w[0].distance_m, line_id
            )));
        }
        if w[1].distance_m < w[0].distance_m {
            return Err(AtemError::config(format!(
                "positions on line {line_id} must be ordered by distance"
            )));
        }
    }
    let mut layer_tops = vec![0.0];
    for t in thicknesses {
        layer_tops.push(layer_tops.last().unwrap() + t);
    }
    let mut layer_bottoms = layer_tops[1..].to_vec();
    let basement_draw = thicknesses.last().copied().unwrap_or(1.0);
    layer_bottoms.push(layer_tops.last().unwrap() + basement_draw);
    Ok(SectionGrid {
        line_id: line_id.to_string(),
        positions: positions.to_vec(),
        heights_m: heights.to_vec(),
        layer_tops,
        layer_bottoms,
        resistivity: models.iter().map(|m| m.resistivities.clone()).collect(),
    })
}

/// Writes sections as one flat CSV, one row per (sounding, layer). Values
/// are printed with shortest round-trip formatting, so re-parsing them
/// recovers the originals exactly.
pub fn write_section_csv(path: &Path, sections: &[SectionGrid]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "line_id",
        "distance_m",
        "elevation_m",
        "depth_top_m",
        "depth_bottom_m",
        "resistivity_ohm_m",
    ])?;
    for sec in sections {
        for (c, pos) in sec.positions.iter().enumerate() {
            for l in 0..sec.n_layers() {
                w.write_record([
                    sec.line_id.clone(),
                    pos.distance_m.to_string(),
                    pos.elevation_m.to_string(),
                    sec.layer_tops[l].to_string(),
                    sec.layer_bottoms[l].to_string(),
                    sec.resistivity[c][l].to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// One map point of a constant-depth slice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlicePoint {
    pub x: f64,
    pub y: f64,
    pub resistivity_ohm_m: f64,
}

/// Extracts, for every column of every section, the resistivity of the
/// layer whose [top, bottom) interval contains `depth`. The basement
/// counts down to the bottom of the resolved column only; deeper requests
/// are errors.
pub fn depth_slice(sections: &[SectionGrid], depth: f64) -> Result<Vec<SlicePoint>> {
    if !(depth >= 0.0) || !depth.is_finite() {
        return Err(AtemError::config(format!(
            "slice depth must be non-negative, got {depth}"
        )));
    }
    let mut out = Vec::new();
    for sec in sections {
        let deepest = *sec.layer_tops.last().expect("non-empty grid");
        if depth > deepest {
            return Err(AtemError::config(format!(
                "slice depth {depth} m lies below the resolved column (basement top {deepest} m) of line {}",
                sec.line_id
            )));
        }
        let layer = sec
            .layer_tops
            .iter()
            .rposition(|top| *top <= depth)
            .expect("layer_tops starts at 0");
        for (c, pos) in sec.positions.iter().enumerate() {
            out.push(SlicePoint {
                x: pos.x,
                y: pos.y,
                resistivity_ohm_m: sec.resistivity[c][layer],
            });
        }
    }
    Ok(out)
}

pub fn write_depth_slice_csv(path: &Path, points: &[SlicePoint]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "y", "resistivity_ohm_m"])?;
    for p in points {
        w.write_record([
            p.x.to_string(),
            p.y.to_string(),
            p.resistivity_ohm_m.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{Forward1D, TransformProfile};
    use crate::modelgen::rng_for_stream;
    use crate::network::init_net_params;
    use crate::noise::NoiseConfig;
    use crate::system::{Normalization, SystemConfig, Waveform};
    use crate::training::make_pair;
    use rand::Rng;

    fn tiny_system() -> SystemConfig {
        let n = 8;
        let ratio = (5e-3_f64 / 1e-4).powf(1.0 / (n - 1) as f64);
        SystemConfig {
            tx_radius: 10.0,
            tx_height: 35.0,
            waveform: Waveform::StepOff { current: 1.0 },
            gate_centers: (0..n).map(|i| 1e-4 * ratio.powi(i as i32)).collect(),
            gate_widths: vec![0.0; n],
            ..SystemConfig::default()
        }
    }

    fn tiny_net() -> NetConfig {
        NetConfig {
            d_model: 16,
            n_blocks_encoder: 1,
            n_blocks_decoder: 1,
            n_heads: 2,
            d_ff: 32,
            d_z: 4,
            n_gates: 8,
            n_layers_out: 3,
        }
    }

    fn tiny_ctx() -> PhysicsContext {
        PhysicsContext {
            forward: Forward1D::with_profile(TransformProfile::training()),
            system: tiny_system(),
            thicknesses: vec![15.0, 40.0],
        }
    }

    fn tiny_samples(n: usize, seed: u64) -> Vec<TrainSample> {
        let ctx = tiny_ctx();
        let noise = NoiseConfig::default();
        (0..n)
            .map(|i| {
                let mut rng = rng_for_stream(seed, i as u64);
                let rho: Vec<f64> = (0..3).map(|_| 10f64.powf(rng.gen_range(0.5..3.0))).collect();
                let model = LayeredModel::new(rho, ctx.thicknesses.clone()).unwrap();
                make_pair(i as u64, &model, &ctx.system, &ctx.forward, Some(&noise), &mut rng)
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn uniform_ten_percent_overshoot_scores_ten() {
        let truths = [1.0, 2.0, 30.0, -4.0];
        let preds: Vec<f64> = truths.iter().map(|t| 1.1 * t).collect();
        let r = rmspe(&preds, &truths).unwrap();
        assert!((r.percent - 10.0).abs() < 1e-9, "{}", r.percent);
        assert_eq!(r.n_zero_truth, 0);
        assert_eq!(r.n_used, 4);
    }

    #[test]
    fn mixed_over_and_undershoot_matches_the_hand_value() {
        // (110−100)/100 = 0.1, (180−200)/200 = −0.1 → rms 0.1 → 10%.
        let r = rmspe(&[110.0, 180.0], &[100.0, 200.0]).unwrap();
        assert!((r.percent - 10.0).abs() < 1e-9, "{}", r.percent);
    }

    #[test]
    fn scaling_both_inputs_leaves_the_score_unchanged() {
        let truths = [3.0, -7.0, 11.0];
        let preds = [3.3, -6.5, 12.0];
        let a = rmspe(&preds, &truths).unwrap().percent;
        let scaled_p: Vec<f64> = preds.iter().map(|v| v * 1e6).collect();
        let scaled_t: Vec<f64> = truths.iter().map(|v| v * 1e6).collect();
        let b = rmspe(&scaled_p, &scaled_t).unwrap().percent;
        assert!((a - b).abs() < 1e-9 * a);
    }

    #[test]
    fn zero_truths_are_excluded_and_counted() {
        let r = rmspe(&[1.1, 5.0, 2.2], &[1.0, 0.0, 2.0]).unwrap();
        assert_eq!(r.n_zero_truth, 1);
        assert_eq!(r.n_used, 2);
        assert!((r.percent - 10.0).abs() < 1e-9);
        assert!(rmspe(&[1.0], &[0.0]).is_err());
    }

    #[test]
    fn median_handles_odd_and_even_lengths() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]).unwrap(), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 3.0, 2.0]).unwrap(), 2.5);
        assert!(median(&mut []).is_err());
    }

    #[test]
    fn histogram_counts_cover_every_sample() {
        let values = [0.0, 1.0, 2.5, 9.9, 10.0, 10.0];
        let h = histogram(&values, 4).unwrap();
        assert_eq!(h.counts.iter().sum::<usize>(), values.len());
        assert_eq!(h.bin_edges.len(), 5);
        assert_eq!(h.bin_edges[0], 0.0);
        assert_eq!(h.bin_edges[4], 10.0);
        // Top-edge values land in the last bin, not outside.
        assert_eq!(h.counts[3], 3);
        // Degenerate all-zero input still produces a well-formed histogram.
        let h0 = histogram(&[0.0, 0.0], 3).unwrap();
        assert_eq!(h0.counts.iter().sum::<usize>(), 2);
        assert!(histogram(&[], 3).is_err());
    }

    #[test]
    fn swap_report_is_reproducible_and_untrained_errors_are_large() {
        let samples = tiny_samples(7, 11);
        let cfg = tiny_net();
        let net = init_net_params(&cfg, 5);
        let a = swap_test(&samples, &net, &cfg, 10).unwrap();
        let b = swap_test(&samples, &net, &cfg, 10).unwrap();
        assert_eq!(a, b, "same inputs must give a bitwise identical report");
        assert_eq!(a.n_samples, 7);
        for m in [&a.denoise, &a.reconstruct_clean, &a.renoise, &a.reconstruct_noisy] {
            assert_eq!(m.per_sample_percent.len(), 7);
            assert_eq!(m.histogram.counts.iter().sum::<usize>(), 7);
            // Sanity floor: an untrained network cannot reconstruct data.
            assert!(m.median_percent > 10.0, "median {}", m.median_percent);
        }
    }

    #[test]
    fn consistency_report_covers_every_sample_and_is_reproducible() {
        let samples = tiny_samples(6, 23);
        let cfg = tiny_net();
        let net = init_net_params(&cfg, 9);
        let ctx = tiny_ctx();
        let a = consistency_test(&samples, &net, &cfg, &ctx, 8).unwrap();
        let b = consistency_test(&samples, &net, &cfg, &ctx, 8).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_samples, 6);
        for m in [
            &a.model_clean_log,
            &a.model_noisy_log,
            &a.model_pair_log,
            &a.model_clean_linear,
            &a.model_noisy_linear,
            &a.model_pair_linear,
            &a.data_refit,
        ] {
            assert_eq!(m.per_sample_percent.len(), 6);
            assert_eq!(m.histogram.counts.iter().sum::<usize>(), 6);
        }
        // A mismatched layer grid must be rejected, not silently forwarded.
        let bad_ctx = PhysicsContext {
            thicknesses: vec![15.0],
            ..tiny_ctx()
        };
        assert!(consistency_test(&samples, &net, &cfg, &bad_ctx, 8).is_err());
    }

    fn demo_positions(n: usize, line: &str) -> Vec<SoundingPosition> {
        (0..n)
            .map(|i| SoundingPosition {
                line_id: line.to_string(),
                distance_m: 25.0 * i as f64,
                x: 5000.0 + 25.0 * i as f64,
                y: 200.0 + i as f64,
                elevation_m: 310.0 - i as f64,
            })
            .collect()
    }

    #[test]
    fn a_single_sounding_becomes_a_one_column_grid() {
        let m = LayeredModel::new(vec![50.0, 500.0, 5.0], vec![10.0, 20.0]).unwrap();
        let sec = assemble_section("L1", &[m.clone()], &[40.0], &demo_positions(1, "L1")).unwrap();
        assert_eq!(sec.n_columns(), 1);
        assert_eq!(sec.resistivity[0], m.resistivities);
        assert_eq!(sec.layer_tops, vec![0.0, 10.0, 30.0]);
        assert_eq!(sec.layer_bottoms, vec![10.0, 30.0, 50.0]);
    }

    #[test]
    fn sections_keep_every_sounding_and_reject_bad_positions() {
        let models: Vec<LayeredModel> = (0..5)
            .map(|i| {
                LayeredModel::new(vec![10.0 + i as f64, 100.0, 1000.0], vec![10.0, 20.0]).unwrap()
            })
            .collect();
        let heights = vec![30.0; 5];
        let sec = assemble_section("L2", &models, &heights, &demo_positions(5, "L2")).unwrap();
        assert_eq!(sec.n_columns(), 5);

        let mut dup = demo_positions(5, "L2");
        dup[3].distance_m = dup[2].distance_m;
        assert!(assemble_section("L2", &models, &heights, &dup).is_err());

        let mut unsorted = demo_positions(5, "L2");
        unsorted.swap(1, 2);
        assert!(assemble_section("L2", &models, &heights, &unsorted).is_err());

        let wrong_line = demo_positions(5, "L3");
        assert!(assemble_section("L2", &models, &heights, &wrong_line).is_err());
    }

    #[test]
    fn section_csv_round_trips_every_value_exactly() {
        let models: Vec<LayeredModel> = (0..3)
            .map(|i| {
                LayeredModel::new(
                    vec![0.1 + 0.2 + i as f64, 123.456_789_012, 1999.999_9],
                    vec![3.0, 7.5],
                )
                .unwrap()
            })
            .collect();
        let sec =
            assemble_section("L7", &models, &[31.5; 3], &demo_positions(3, "L7")).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("section.csv");
        write_section_csv(&path, &[sec.clone()]).unwrap();

        let mut reader = csv::Reader::from_path(&path).unwrap();
        let mut rows = Vec::new();
        for rec in reader.records() {
            let rec = rec.unwrap();
            rows.push((
                rec[0].to_string(),
                rec[1].parse::<f64>().unwrap(),
                rec[4].parse::<f64>().unwrap(),
                rec[5].parse::<f64>().unwrap(),
            ));
        }
        assert_eq!(rows.len(), 3 * 3, "one row per sounding per layer");
        for (c, pos) in sec.positions.iter().enumerate() {
            for l in 0..sec.n_layers() {
                let row = &rows[c * sec.n_layers() + l];
                assert_eq!(row.0, "L7");
                assert_eq!(row.1, pos.distance_m, "distance must round-trip bitwise");
                assert_eq!(row.2, sec.layer_bottoms[l]);
                assert_eq!(row.3, sec.resistivity[c][l], "resistivity must round-trip");
            }
        }
    }

    #[test]
    fn depth_slices_pick_the_containing_layer() {
        let models: Vec<LayeredModel> = (0..4)
            .map(|_| LayeredModel::new(vec![100.0, 10.0, 1000.0], vec![12.0, 25.0]).unwrap())
            .collect();
        let sec = assemble_section("L9", &models, &[30.0; 4], &demo_positions(4, "L9")).unwrap();

        // 27 m lies in the second layer, [12, 37).
        let pts = depth_slice(&[sec.clone()], 27.0).unwrap();
        assert_eq!(pts.len(), 4);
        for p in &pts {
            assert_eq!(p.resistivity_ohm_m, 10.0);
        }
        // Interface depths belong to the layer that starts there.
        assert_eq!(depth_slice(&[sec.clone()], 12.0).unwrap()[0].resistivity_ohm_m, 10.0);
        // The basement top is reachable, anything deeper is not.
        assert_eq!(depth_slice(&[sec.clone()], 37.0).unwrap()[0].resistivity_ohm_m, 1000.0);
        assert!(depth_slice(&[sec.clone()], 37.1).is_err());
        assert!(depth_slice(&[sec], -1.0).is_err());
    }
}
