//! One optimization step of the disentangling objective: encode the noisy
//! and clean soundings of a batch, decode every factor combination back to
//! data, decode models from both signal factors, tie the noisy-path model
//! to the measured data through the forward operator, penalize mutual
//! information between the factors, update the network, and then refit the
//! variational estimator on the fresh factor values.

use std::collections::BTreeMap;

use ndarray::{Array2, ArrayD};
use serde::{Deserialize, Serialize};

use super::data::TrainSample;
use super::optim::{clip_global_norm, AdamW};
use super::physics::{forward_signed_log, PhysicsContext};
use super::TrainConfig;
use crate::autodiff::{Gradients, Tape, Var};
use crate::error::{AtemError, Result};
use crate::network::{
    club_loglik, club_mi_upper, decode_model_batch, decode_signal_batch, encode_batch, signed_log,
    Binding, NetConfig, ParamStore,
};
use crate::system::Sounding;

/// The loss components of one step. `l_physic` is the contribution that
/// entered the total (already multiplied by the physics schedule weight);
/// `l_mi` is the raw mutual-information estimate in nats, which enters the
/// total scaled by `lambda_mi`. So up to summation order,
/// total = l_physic + l_clean + l_noise + l_rho + lambda_mi·l_mi.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossBreakdown {
    pub l_physic: f64,
    pub l_clean: f64,
    pub l_noise: f64,
    pub l_rho: f64,
    pub l_mi: f64,
    pub total: f64,
    /// Unweighted signed-log data misfit of the forward-modeled
    /// prediction; 0 while the physics term is off.
    pub physics_misfit: f64,
    /// Euclidean norm of the parameter gradient before clipping.
    pub grad_norm: f64,
    pub clipped: bool,
}

pub(crate) struct BatchGraph<'t> {
    pub total: Var<'t>,
    pub l_clean: Var<'t>,
    pub l_noise: Var<'t>,
    pub l_rho: Var<'t>,
    /// Unweighted physics misfit, present when the schedule weight is
    /// nonzero.
    pub l_physic_raw: Option<Var<'t>>,
    pub l_mi: Option<Var<'t>>,
    /// Noisy-path factors, reused to refit the variational estimator.
    pub zs_noisy: Var<'t>,
    pub zn_noisy: Var<'t>,
}

fn stack_signed_log<'t>(tape: &'t Tape, soundings: &[Sounding]) -> Result<Var<'t>> {
    let g = soundings[0].dbdt.len();
    let values =
        Array2::from_shape_fn((soundings.len() * g, 1), |(r, _)| {
            signed_log(soundings[r / g].dbdt[r % g])
        });
    tape.constant(values.into_dyn())
}

/// Builds the full loss graph for one batch. Checked invariants: all
/// samples share one gate table, sample models match the predicted column
/// length, and the mutual-information term sees at least two samples.
#[allow(clippy::too_many_arguments)]
pub(crate) fn batch_graph<'t>(
    tape: &'t Tape,
    batch: &[TrainSample],
    p: &Binding<'t>,
    q: &Binding<'t>,
    net_cfg: &NetConfig,
    ctx: &PhysicsContext,
    lambda_physic: f64,
    lambda_mi: f64,
    physics_both_paths: bool,
) -> Result<BatchGraph<'t>> {
    let b = batch.len();
    if b == 0 {
        return Err(AtemError::config("empty training batch"));
    }
    if lambda_mi > 0.0 && b < 2 {
        return Err(AtemError::config(
            "the mutual-information penalty needs at least two samples per batch",
        ));
    }
    let l_out = net_cfg.n_layers_out;
    for s in batch {
        if s.resistivity_ohm_m.len() != l_out {
            return Err(AtemError::config(format!(
                "model {} has {} layers but the network predicts {}",
                s.model_id,
                s.resistivity_ohm_m.len(),
                l_out
            )));
        }
    }
    if lambda_physic > 0.0 && ctx.n_layers() != l_out {
        return Err(AtemError::config(format!(
            "physics context has {} layers but the network predicts {}",
            ctx.n_layers(),
            l_out
        )));
    }

    let noisy: Vec<Sounding> = batch.iter().map(|s| s.noisy()).collect();
    let clean: Vec<Sounding> = batch.iter().map(|s| s.clean()).collect();
    let heights: Vec<f64> = batch.iter().map(|s| s.height_m).collect();
    let gate_times = &batch[0].gate_times_s;

    // One stacked encoder pass over noisy-then-clean soundings.
    let all: Vec<&Sounding> = noisy.iter().chain(clean.iter()).collect();
    let (zs_all, zn_all) = encode_batch(tape, net_cfg, p, &all)?;
    let zs1 = zs_all.slice_axis(0, 0, b)?; // noisy-path signal factor
    let zs2 = zs_all.slice_axis(0, b, 2 * b)?; // clean-path signal factor
    let zn1 = zn_all.slice_axis(0, 0, b)?;
    let zn2 = zn_all.slice_axis(0, b, 2 * b)?;

    // One stacked decoder pass over the four factor pairings, ordered
    // (s,s̄)→s, (n,s̄)→s, (s,n̄)→n, (n,n̄)→n where the first letter is the
    // encoding the signal factor came from.
    let zs_dec = tape.concat(0, &[zs2, zs1, zs2, zs1])?;
    let zn_dec = tape.concat(0, &[zn2, zn2, zn1, zn1])?;
    let heights4: Vec<f64> = heights
        .iter()
        .cycle()
        .take(4 * b)
        .copied()
        .collect();
    let decoded = decode_signal_batch(tape, net_cfg, p, zs_dec, zn_dec, gate_times, &heights4)?;
    let g = net_cfg.n_gates;
    let s_target = stack_signed_log(tape, &clean)?;
    let n_target = stack_signed_log(tape, &noisy)?;
    let quarter = b * g;
    let l_clean = decoded
        .slice_axis(0, 0, quarter)?
        .mse(s_target)?
        .add(decoded.slice_axis(0, quarter, 2 * quarter)?.mse(s_target)?)?;
    let l_noise = decoded
        .slice_axis(0, 2 * quarter, 3 * quarter)?
        .mse(n_target)?
        .add(decoded.slice_axis(0, 3 * quarter, 4 * quarter)?.mse(n_target)?)?;

    // Model decoding from both signal factors in one stacked pass; the
    // noisy path comes first and doubles as the physics-loss input.
    let m_all = decode_model_batch(net_cfg, p, tape.concat(0, &[zs1, zs2])?)?;
    let m_noisy = m_all.slice_axis(0, 0, b * l_out)?;
    let m_clean = m_all.slice_axis(0, b * l_out, 2 * b * l_out)?;
    let log_rho_target = {
        let v = Array2::from_shape_fn((b * l_out, 1), |(r, _)| {
            batch[r / l_out].resistivity_ohm_m[r % l_out].ln()
        });
        tape.constant(v.into_dyn())?
    };
    let l_rho = m_noisy
        .mse(log_rho_target)?
        .add(m_clean.mse(log_rho_target)?)?;

    let mut total = l_clean.add(l_noise)?.add(l_rho)?;

    let l_physic_raw = if lambda_physic > 0.0 {
        let mut responses = Vec::with_capacity(b);
        for (i, h) in heights.iter().enumerate() {
            let col = m_noisy.slice_axis(0, i * l_out, (i + 1) * l_out)?;
            responses.push(forward_signed_log(tape, col, ctx, *h)?);
        }
        let mut raw = tape.concat(0, &responses)?.mse(s_target)?;
        if physics_both_paths {
            let mut responses2 = Vec::with_capacity(b);
            for (i, h) in heights.iter().enumerate() {
                let col = m_clean.slice_axis(0, i * l_out, (i + 1) * l_out)?;
                responses2.push(forward_signed_log(tape, col, ctx, *h)?);
            }
            raw = raw.add(tape.concat(0, &responses2)?.mse(s_target)?)?;
        }
        total = total.add(raw.scale(lambda_physic))?;
        Some(raw)
    } else {
        None
    };

    let l_mi = if lambda_mi > 0.0 {
        let mi = club_mi_upper(q, zs1, zn1)?;
        total = total.add(mi.scale(lambda_mi))?;
        Some(mi)
    } else {
        None
    };

    Ok(BatchGraph {
        total,
        l_clean,
        l_noise,
        l_rho,
        l_physic_raw,
        l_mi,
        zs_noisy: zs1,
        zn_noisy: zn1,
    })
}

pub(crate) fn collect_grads(
    binding: &Binding<'_>,
    grads: &mut Gradients,
) -> BTreeMap<String, ArrayD<f64>> {
    binding
        .iter()
        .filter_map(|(name, var)| grads.take(*var).map(|g| (name.clone(), g)))
        .collect()
}

fn check_finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(AtemError::numerical(format!(
            "loss component {name} became non-finite ({value}); aborting the step"
        )))
    }
}

/// Runs one full training step: network update from the combined loss,
/// then `k_q` maximum-likelihood refits of the variational estimator on
/// the just-computed factor values with the network frozen.
#[allow(clippy::too_many_arguments)]
pub fn training_step(
    batch: &[TrainSample],
    net: &mut ParamStore,
    club: &mut ParamStore,
    opt: &mut AdamW,
    opt_q: &mut AdamW,
    net_cfg: &NetConfig,
    cfg: &TrainConfig,
    ctx: &PhysicsContext,
    lambda_physic: f64,
) -> Result<LossBreakdown> {
    let (breakdown, zs_val, zn_val) = {
        let tape = Tape::new();
        let p = net.bind(&tape, true)?;
        let q = club.bind(&tape, false)?;
        let graph = batch_graph(
            &tape,
            batch,
            &p,
            &q,
            net_cfg,
            ctx,
            lambda_physic,
            cfg.lambda_mi,
            cfg.physics_both_paths,
        )?;
        let l_clean = check_finite("l_clean", graph.l_clean.scalar_value())?;
        let l_noise = check_finite("l_noise", graph.l_noise.scalar_value())?;
        let l_rho = check_finite("l_rho", graph.l_rho.scalar_value())?;
        let physics_misfit = match graph.l_physic_raw {
            Some(v) => check_finite("l_physic", v.scalar_value())?,
            None => 0.0,
        };
        let l_mi = match graph.l_mi {
            Some(v) => check_finite("l_mi", v.scalar_value())?,
            None => 0.0,
        };
        let total = check_finite("total", graph.total.scalar_value())?;

        let mut grads = tape.backward(graph.total)?;
        let mut gmap = collect_grads(&p, &mut grads);
        let (grad_norm, clipped) = clip_global_norm(&mut gmap, cfg.clip_norm)?;
        opt.step(net, &gmap)?;
        (
            LossBreakdown {
                l_physic: lambda_physic * physics_misfit,
                l_clean,
                l_noise,
                l_rho,
                l_mi,
                total,
                physics_misfit,
                grad_norm,
                clipped,
            },
            graph.zs_noisy.value(),
            graph.zn_noisy.value(),
        )
    };

    if cfg.lambda_mi > 0.0 {
        for _ in 0..cfg.k_q {
            let tape = Tape::new();
            let pq = club.bind(&tape, true)?;
            let zs = tape.constant(zs_val.clone())?;
            let zn = tape.constant(zn_val.clone())?;
            let nll = club_loglik(&pq, zs, zn)?.neg();
            let mut grads = tape.backward(nll)?;
            let mut gmap = collect_grads(&pq, &mut grads);
            clip_global_norm(&mut gmap, cfg.clip_norm)?;
            opt_q.step(club, &gmap)?;
        }
    }
    Ok(breakdown)
}
