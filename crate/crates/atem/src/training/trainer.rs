//! The epoch loop: shuffled mini-batches, the physics-weight ramp,
//! periodic validation, and checkpoints that carry the network, the
//! variational estimator, and both optimizers so an interrupted run
//! resumes to the exact same trajectory.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::data::TrainSample;
use super::optim::{AdamW, AdamWConfig};
use super::physics::PhysicsContext;
use super::step::{training_step, LossBreakdown};
use super::{physics_weighting, TrainConfig};
use crate::error::{AtemError, Result};
use crate::eval::{median, rmspe};
use crate::modelgen::rng_for_stream;
use crate::network::{
    decode_model_batch, encode_batch, init_club_params, init_net_params, load_checkpoint,
    require_matching_config, save_checkpoint, NetConfig, ParamStore,
};
use crate::system::Sounding;

/// Shuffle streams must never collide with the per-model generation
/// streams, which are small indices.
const SHUFFLE_STREAM_BASE: u64 = 1 << 32;

const OPT_PREFIX: &str = "optim";
const OPT_Q_PREFIX: &str = "optim_q";

/// Everything the loop owns between steps.
pub struct TrainerState {
    pub net: ParamStore,
    pub club: ParamStore,
    pub opt: AdamW,
    pub opt_q: AdamW,
    /// Optimization steps taken so far.
    pub step: u64,
    /// Completed epochs; training resumes here.
    pub epoch: u64,
}

impl TrainerState {
    pub fn fresh(net_cfg: &NetConfig, cfg: &TrainConfig) -> Result<Self> {
        let opt = AdamW::new(AdamWConfig {
            lr: cfg.lr,
            weight_decay: cfg.weight_decay,
            ..AdamWConfig::default()
        })?;
        // The estimator is a likelihood fit, not a generalizing model; it
        // gets no weight decay.
        let opt_q = AdamW::new(AdamWConfig {
            lr: cfg.club_lr,
            weight_decay: 0.0,
            ..AdamWConfig::default()
        })?;
        Ok(TrainerState {
            net: init_net_params(net_cfg, cfg.seed),
            club: init_club_params(net_cfg, cfg.seed.wrapping_add(1)),
            opt,
            opt_q,
            step: 0,
            epoch: 0,
        })
    }

    /// Rebuilds the full state from a checkpoint written by `save`.
    pub fn load(path: &Path, net_cfg: &NetConfig, cfg: &TrainConfig) -> Result<Self> {
        let (header, merged) = load_checkpoint(path)?;
        require_matching_config(&header, net_cfg)?;
        let mut net = ParamStore::default();
        let mut club = ParamStore::default();
        for (name, value) in &merged.tensors {
            if name.starts_with("club.") {
                club.insert(name, value.clone());
            } else if !name.starts_with(&format!("{OPT_PREFIX}."))
                && !name.starts_with(&format!("{OPT_Q_PREFIX}."))
            {
                net.insert(name, value.clone());
            }
        }
        let opt = AdamW::from_state_tensors(
            AdamWConfig {
                lr: cfg.lr,
                weight_decay: cfg.weight_decay,
                ..AdamWConfig::default()
            },
            OPT_PREFIX,
            &merged.tensors,
        )?;
        let opt_q = AdamW::from_state_tensors(
            AdamWConfig {
                lr: cfg.club_lr,
                weight_decay: 0.0,
                ..AdamWConfig::default()
            },
            OPT_Q_PREFIX,
            &merged.tensors,
        )?;
        Ok(TrainerState {
            net,
            club,
            opt,
            opt_q,
            step: header.step,
            epoch: header.epoch,
        })
    }

    /// Writes one checkpoint holding network, estimator, and optimizer
    /// state side by side, plus the survey description inversion will need.
    pub fn save(&self, path: &Path, net_cfg: &NetConfig, ctx: &PhysicsContext) -> Result<()> {
        let mut merged = self.net.clone();
        for (name, value) in &self.club.tensors {
            merged.insert(name, value.clone());
        }
        for (name, value) in self.opt.state_tensors(OPT_PREFIX) {
            merged.insert(&name, value);
        }
        for (name, value) in self.opt_q.state_tensors(OPT_Q_PREFIX) {
            merged.insert(&name, value);
        }
        save_checkpoint(
            path,
            net_cfg,
            self.step,
            self.epoch,
            Some((&ctx.system, &ctx.thicknesses)),
            &merged,
        )
    }
}

/// Batch-averaged loss components of one epoch.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EpochMeans {
    pub l_physic: f64,
    pub l_clean: f64,
    pub l_noise: f64,
    pub l_rho: f64,
    pub l_mi: f64,
    pub total: f64,
    pub physics_misfit: f64,
    pub grad_norm: f64,
    /// Fraction of steps where clipping fired.
    pub clip_fraction: f64,
}

impl EpochMeans {
    fn accumulate(&mut self, b: &LossBreakdown) {
        self.l_physic += b.l_physic;
        self.l_clean += b.l_clean;
        self.l_noise += b.l_noise;
        self.l_rho += b.l_rho;
        self.l_mi += b.l_mi;
        self.total += b.total;
        self.physics_misfit += b.physics_misfit;
        self.grad_norm += b.grad_norm;
        self.clip_fraction += if b.clipped { 1.0 } else { 0.0 };
    }

    fn divide(&mut self, n: f64) {
        self.l_physic /= n;
        self.l_clean /= n;
        self.l_noise /= n;
        self.l_rho /= n;
        self.l_mi /= n;
        self.total /= n;
        self.physics_misfit /= n;
        self.grad_norm /= n;
        self.clip_fraction /= n;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: u64,
    pub lambda_physic: f64,
    pub means: EpochMeans,
    /// Median model error on the validation set, percent; present on
    /// validation epochs when a validation set exists.
    pub val_rmspe: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    pub epochs: Vec<EpochRecord>,
    pub best_epoch: Option<u64>,
    pub best_val_rmspe: Option<f64>,
    pub steps: u64,
    pub last_checkpoint: PathBuf,
    pub best_checkpoint: Option<PathBuf>,
}

/// Median RMSPE between decoded and true log-resistivity columns,
/// computed from the noisy soundings in stacked chunks.
pub fn validation_rmspe(
    samples: &[TrainSample],
    net: &ParamStore,
    net_cfg: &NetConfig,
) -> Result<f64> {
    if samples.is_empty() {
        return Err(AtemError::config("empty validation set"));
    }
    let mut per_sample = Vec::with_capacity(samples.len());
    for chunk in samples.chunks(32) {
        let noisy: Vec<Sounding> = chunk.iter().map(|s| s.noisy()).collect();
        let refs: Vec<&Sounding> = noisy.iter().collect();
        let tape = crate::autodiff::Tape::new();
        let p = net.bind(&tape, false)?;
        let (zs, _) = encode_batch(&tape, net_cfg, &p, &refs)?;
        let m = decode_model_batch(net_cfg, &p, zs)?;
        let l = net_cfg.n_layers_out;
        let values = m.value();
        for (i, s) in chunk.iter().enumerate() {
            let pred: Vec<f64> = (0..l).map(|r| values[[i * l + r, 0]]).collect();
            per_sample.push(rmspe(&pred, &s.log_rho())?.percent);
        }
    }
    median(&mut per_sample)
}

fn metrics_writer(path: &Path, resume: bool) -> Result<std::fs::File> {
    let exists = path.exists();
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    if !resume || !exists {
        if exists && !resume {
            // Fresh run over an old file: truncate.
            file = OpenOptions::new().write(true).truncate(true).open(path)?;
        }
        writeln!(
            file,
            "step,epoch,lambda_physic,l_physic,l_clean,l_noise,l_rho,l_mi,total,physics_misfit,grad_norm,clipped"
        )?;
    }
    Ok(file)
}

/// Runs (or resumes) the full training loop, writing `last.ckpt`,
/// `best.ckpt`, and `metrics.csv` under `out_dir`.
pub fn train(
    train_set: &[TrainSample],
    val_set: &[TrainSample],
    net_cfg: &NetConfig,
    cfg: &TrainConfig,
    ctx: &PhysicsContext,
    out_dir: &Path,
    resume: Option<&Path>,
) -> Result<TrainReport> {
    cfg.validate()?;
    net_cfg.validate()?;
    if train_set.is_empty() {
        return Err(AtemError::config("empty training set"));
    }
    std::fs::create_dir_all(out_dir)?;
    let mut state = match resume {
        Some(path) => TrainerState::load(path, net_cfg, cfg)?,
        None => TrainerState::fresh(net_cfg, cfg)?,
    };
    let last_path = out_dir.join("last.ckpt");
    let best_path = out_dir.join("best.ckpt");
    let mut metrics = metrics_writer(&out_dir.join("metrics.csv"), resume.is_some())?;

    let mut report = TrainReport {
        epochs: Vec::new(),
        best_epoch: None,
        best_val_rmspe: None,
        steps: state.step,
        last_checkpoint: last_path.clone(),
        best_checkpoint: None,
    };

    for epoch in state.epoch..cfg.epochs {
        let lambda = physics_weighting(epoch, cfg.physics_ramp_epochs);
        let mut order: Vec<usize> = (0..train_set.len()).collect();
        order.shuffle(&mut rng_for_stream(cfg.seed, SHUFFLE_STREAM_BASE + epoch));
        // Partial trailing batches are dropped so every step sees the same
        // batch size — unless the whole set is smaller than one batch.
        let usable = if train_set.len() >= cfg.batch_size {
            train_set.len() - train_set.len() % cfg.batch_size
        } else {
            train_set.len()
        };
        let mut means = EpochMeans::default();
        let mut n_batches = 0.0;
        for chunk in order[..usable].chunks(cfg.batch_size) {
            let batch: Vec<TrainSample> = chunk.iter().map(|&i| train_set[i].clone()).collect();
            let breakdown = training_step(
                &batch,
                &mut state.net,
                &mut state.club,
                &mut state.opt,
                &mut state.opt_q,
                net_cfg,
                cfg,
                ctx,
                lambda,
            )?;
            state.step += 1;
            means.accumulate(&breakdown);
            n_batches += 1.0;
            writeln!(
                metrics,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                state.step,
                epoch,
                lambda,
                breakdown.l_physic,
                breakdown.l_clean,
                breakdown.l_noise,
                breakdown.l_rho,
                breakdown.l_mi,
                breakdown.total,
                breakdown.physics_misfit,
                breakdown.grad_norm,
                u8::from(breakdown.clipped),
            )?;
        }
        if n_batches > 0.0 {
            means.divide(n_batches);
        }
        metrics.flush()?;

        let is_last = epoch + 1 == cfg.epochs;
        let val_rmspe = if !val_set.is_empty() && ((epoch + 1) % cfg.val_every == 0 || is_last) {
            Some(validation_rmspe(val_set, &state.net, net_cfg)?)
        } else {
            None
        };

        state.epoch = epoch + 1;
        state.save(&last_path, net_cfg, ctx)?;
        if let Some(v) = val_rmspe {
            if report.best_val_rmspe.map_or(true, |b| v < b) {
                report.best_val_rmspe = Some(v);
                report.best_epoch = Some(epoch);
                state.save(&best_path, net_cfg, ctx)?;
                report.best_checkpoint = Some(best_path.clone());
            }
        }
        report.epochs.push(EpochRecord {
            epoch,
            lambda_physic: lambda,
            means,
            val_rmspe,
        });
        report.steps = state.step;
    }
    Ok(report)
}
