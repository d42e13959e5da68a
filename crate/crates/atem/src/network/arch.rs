//! The disentangling architecture: token embedding, pre-norm attention
//! blocks, the encoder that splits a sounding into a signal factor and a
//! noise factor, and the two decoders that map factors back to data and
//! down to a resistivity model.

use ndarray::{Array2, ArrayD};

use super::params::Binding;
use super::NetConfig;
use crate::autodiff::{Tape, Var};
use crate::error::{AtemError, Result};
use crate::system::Sounding;

/// Reference amplitude of the signed-log transform, nV/m².
pub const SIGNED_LOG_X0: f64 = 1e-3;

/// Compresses the ~6-decade dynamic range of dB/dt into a trainable scale
/// while keeping the sign: x → sign(x)·ln(1 + |x|/x₀).
pub fn signed_log(x: f64) -> f64 {
    x.signum() * (x.abs() / SIGNED_LOG_X0).ln_1p()
}

pub fn signed_log_inv(y: f64) -> f64 {
    y.signum() * SIGNED_LOG_X0 * (y.abs().exp_m1())
}

/// Derivative of `signed_log`; even in x and always positive.
pub fn signed_log_deriv(x: f64) -> f64 {
    1.0 / (SIGNED_LOG_X0 + x.abs())
}

/// Fixed sinusoidal embedding of log gate time, one row per gate.
pub fn time_embedding(cfg: &NetConfig, gate_times: &[f64]) -> Array2<f64> {
    let d = cfg.d_model;
    let mut out = Array2::zeros((gate_times.len(), d));
    for (g, t) in gate_times.iter().enumerate() {
        let lt = t.ln();
        for i in 0..d / 2 {
            let w = (10_000.0_f64).powf(-2.0 * i as f64 / d as f64);
            out[(g, 2 * i)] = (lt * w).sin();
            out[(g, 2 * i + 1)] = (lt * w).cos();
        }
    }
    out
}

fn linear<'t>(x: Var<'t>, p: &Binding<'t>, w: &str, b: &str) -> Result<Var<'t>> {
    x.matmul(p.get(w)?)?.add(p.get(b)?)
}

fn layer_norm_affine<'t>(x: Var<'t>, p: &Binding<'t>, gain: &str, bias: &str) -> Result<Var<'t>> {
    x.layer_norm(1e-5)?.mul(p.get(gain)?)?.add(p.get(bias)?)
}

/// Height track mapped through a learned two-layer net to one d_model row
/// that is added to every token. Heights are normalized so the operational
/// band [25, 100] m covers [0, 1].
fn height_embedding<'t>(
    tape: &'t Tape,
    p: &Binding<'t>,
    height: f64,
) -> Result<Var<'t>> {
    let h01 = (height - 25.0) / 75.0;
    let h = tape.constant(ArrayD::from_elem(ndarray::IxDyn(&[1, 1]), h01))?;
    let hidden = linear(h, p, "emb.h_w1", "emb.h_b1")?.gelu();
    linear(hidden, p, "emb.h_w2", "emb.h_b2")
}

/// Query tokens shared by the encoder and the signal decoder: sinusoidal
/// time embedding plus the broadcast height embedding.
pub(crate) fn time_height_tokens<'t>(
    tape: &'t Tape,
    cfg: &NetConfig,
    p: &Binding<'t>,
    gate_times: &[f64],
    height: f64,
) -> Result<Var<'t>> {
    let te = tape.constant(time_embedding(cfg, gate_times).into_dyn())?;
    let he = height_embedding(tape, p, height)?;
    te.add(he)
}

/// Embeds a sounding into one token per gate: signed-log amplitude
/// projected to d_model, plus the time and height embeddings.
pub fn embed_input<'t>(
    tape: &'t Tape,
    cfg: &NetConfig,
    p: &Binding<'t>,
    x: &Sounding,
) -> Result<Var<'t>> {
    if x.gate_times.len() != cfg.n_gates {
        return Err(AtemError::config(format!(
            "sounding has {} gates but the network is configured for {}",
            x.gate_times.len(),
            cfg.n_gates
        )));
    }
    let values = Array2::from_shape_fn((cfg.n_gates, 1), |(g, _)| signed_log(x.dbdt[g]));
    let v = tape.constant(values.into_dyn())?;
    let value_tokens = v.matmul(p.get("emb.value_w")?)?;
    value_tokens.add(time_height_tokens(tape, cfg, p, &x.gate_times, x.height)?)
}

/// Multi-head bidirectional self-attention. Also returns the per-head
/// attention matrices so tests can check their row normalization.
fn multi_head_attention<'t>(
    x: Var<'t>,
    cfg: &NetConfig,
    p: &Binding<'t>,
    prefix: &str,
) -> Result<(Var<'t>, Vec<Var<'t>>)> {
    let tape = x.tape();
    let dh = cfg.d_model / cfg.n_heads;
    let q = linear(x, p, &format!("{prefix}.attn.wq"), &format!("{prefix}.attn.bq"))?;
    let k = linear(x, p, &format!("{prefix}.attn.wk"), &format!("{prefix}.attn.bk"))?;
    let v = linear(x, p, &format!("{prefix}.attn.wv"), &format!("{prefix}.attn.bv"))?;
    let mut heads = Vec::with_capacity(cfg.n_heads);
    let mut attns = Vec::with_capacity(cfg.n_heads);
    for h in 0..cfg.n_heads {
        let (lo, hi) = (h * dh, (h + 1) * dh);
        let qh = q.slice_axis(1, lo, hi)?;
        let kh = k.slice_axis(1, lo, hi)?;
        let vh = v.slice_axis(1, lo, hi)?;
        let scores = qh
            .matmul(kh.transpose()?)?
            .scale(1.0 / (dh as f64).sqrt());
        let attn = scores.softmax(1)?;
        attns.push(attn);
        heads.push(attn.matmul(vh)?);
    }
    let joined = tape.concat(1, &heads)?;
    let out = linear(joined, p, &format!("{prefix}.attn.wo"), &format!("{prefix}.attn.bo"))?;
    Ok((out, attns))
}

/// One pre-norm residual block: x + Attn(LN(x)), then + FFN(LN(·)).
pub fn block_forward<'t>(
    x: Var<'t>,
    cfg: &NetConfig,
    p: &Binding<'t>,
    prefix: &str,
) -> Result<Var<'t>> {
    let normed = layer_norm_affine(x, p, &format!("{prefix}.ln1_g"), &format!("{prefix}.ln1_b"))?;
    let (attn_out, _) = multi_head_attention(normed, cfg, p, prefix)?;
    let x = x.add(attn_out)?;
    let normed = layer_norm_affine(x, p, &format!("{prefix}.ln2_g"), &format!("{prefix}.ln2_b"))?;
    let hidden = linear(normed, p, &format!("{prefix}.ffn.w1"), &format!("{prefix}.ffn.b1"))?.gelu();
    let ffn_out = linear(hidden, p, &format!("{prefix}.ffn.w2"), &format!("{prefix}.ffn.b2"))?;
    x.add(ffn_out)
}

#[cfg(test)]
pub(crate) fn attention_for_test<'t>(
    x: Var<'t>,
    cfg: &NetConfig,
    p: &Binding<'t>,
    prefix: &str,
) -> Result<Vec<Var<'t>>> {
    Ok(multi_head_attention(x, cfg, p, prefix)?.1)
}

/// Runs the encoder and splits the pooled representation into the signal
/// factor and the noise factor.
pub fn encode<'t>(
    tape: &'t Tape,
    cfg: &NetConfig,
    p: &Binding<'t>,
    x: &Sounding,
) -> Result<(Var<'t>, Var<'t>)> {
    let mut tokens = embed_input(tape, cfg, p, x)?;
    for k in 0..cfg.n_blocks_encoder {
        tokens = block_forward(tokens, cfg, p, &format!("enc.b{k}"))?;
    }
    let tokens = layer_norm_affine(tokens, p, "enc.ln_f_g", "enc.ln_f_b")?;
    let pooled = tokens.mean_axis_keep(0)?;
    let z_s = linear(pooled, p, "enc.zs_w", "enc.zs_b")?;
    let z_n = linear(pooled, p, "enc.zn_w", "enc.zn_b")?;
    Ok((z_s, z_n))
}

/// Decodes a factor pair back to a sounding in the signed-log domain (one
/// value per gate). The factor pair conditions the decoder by a learned
/// projection broadcast-added onto time-and-height query tokens.
pub fn decode_signal<'t>(
    tape: &'t Tape,
    cfg: &NetConfig,
    p: &Binding<'t>,
    z_s: Var<'t>,
    z_n: Var<'t>,
    gate_times: &[f64],
    height: f64,
) -> Result<Var<'t>> {
    if gate_times.len() != cfg.n_gates {
        return Err(AtemError::config(format!(
            "decoder queried with {} gates but configured for {}",
            gate_times.len(),
            cfg.n_gates
        )));
    }
    let factors = tape.concat(1, &[z_s, z_n])?;
    let cond = linear(factors, p, "gs.cond_w", "gs.cond_b")?;
    let mut tokens = time_height_tokens(tape, cfg, p, gate_times, height)?.add(cond)?;
    for k in 0..cfg.n_blocks_decoder {
        tokens = block_forward(tokens, cfg, p, &format!("gs.b{k}"))?;
    }
    let tokens = layer_norm_affine(tokens, p, "gs.ln_f_g", "gs.ln_f_b")?;
    linear(tokens, p, "gs.out_w", "gs.out_b")
}

/// Bounds of the model decoder output in log-resistivity, slightly wider
/// than the generating range [1, 2000] ohm·m.
pub fn log_rho_bounds() -> (f64, f64) {
    (1.0_f64.ln() - 0.5, 2000.0_f64.ln() + 0.5)
}

/// Decodes the signal factor into a log-resistivity column, one entry per
/// output layer, hard-clamped to `log_rho_bounds`.
pub fn decode_model<'t>(
    cfg: &NetConfig,
    p: &Binding<'t>,
    z_s: Var<'t>,
) -> Result<Var<'t>> {
    let cond = linear(z_s, p, "gr.cond_w", "gr.cond_b")?;
    let indices: Vec<usize> = (0..cfg.n_layers_out).collect();
    let mut tokens = p.get("gr.queries")?.lookup(&indices)?.add(cond)?;
    for k in 0..cfg.n_blocks_decoder {
        tokens = block_forward(tokens, cfg, p, &format!("gr.b{k}"))?;
    }
    let tokens = layer_norm_affine(tokens, p, "gr.ln_f_g", "gr.ln_f_b")?;
    let out = linear(tokens, p, "gr.out_w", "gr.out_b")?;
    let (lo, hi) = log_rho_bounds();
    Ok(out.clamp(lo, hi))
}

// ---------------------------------------------------------------------------
// Batched variants. A whole batch is stacked into one (B·S × d_model) token
// matrix so projections and feedforward layers run as a few large matrix
// products; attention alone is applied per sample (block-diagonal) because
// tokens must never attend across soundings. Results match the per-sample
// functions to rounding (reduction orders differ), and each path is
// individually deterministic.
// ---------------------------------------------------------------------------

/// 0/1 matrix that repeats each of `b` rows `s` times.
fn expansion<'t>(tape: &'t Tape, b: usize, s: usize) -> Result<Var<'t>> {
    let e = Array2::from_shape_fn((b * s, b), |(r, c)| if r / s == c { 1.0 } else { 0.0 });
    tape.constant(e.into_dyn())
}

/// Averaging matrix inverse to `expansion`: per-sample mean over `s` rows.
fn pooler<'t>(tape: &'t Tape, b: usize, s: usize) -> Result<Var<'t>> {
    let p = Array2::from_shape_fn((b, b * s), |(r, c)| {
        if c / s == r {
            1.0 / s as f64
        } else {
            0.0
        }
    });
    tape.constant(p.into_dyn())
}

fn block_forward_batch<'t>(
    x: Var<'t>,
    n_samples: usize,
    cfg: &NetConfig,
    p: &Binding<'t>,
    prefix: &str,
) -> Result<Var<'t>> {
    let tape = x.tape();
    let rows = x.shape()[0];
    let s = rows / n_samples;
    let dh = cfg.d_model / cfg.n_heads;
    let normed = layer_norm_affine(x, p, &format!("{prefix}.ln1_g"), &format!("{prefix}.ln1_b"))?;
    let q = linear(normed, p, &format!("{prefix}.attn.wq"), &format!("{prefix}.attn.bq"))?;
    let k = linear(normed, p, &format!("{prefix}.attn.wk"), &format!("{prefix}.attn.bk"))?;
    let v = linear(normed, p, &format!("{prefix}.attn.wv"), &format!("{prefix}.attn.bv"))?;
    let mut sample_outs = Vec::with_capacity(n_samples);
    for b in 0..n_samples {
        let (lo, hi) = (b * s, (b + 1) * s);
        let qs = q.slice_axis(0, lo, hi)?;
        let ks = k.slice_axis(0, lo, hi)?;
        let vs = v.slice_axis(0, lo, hi)?;
        let mut heads = Vec::with_capacity(cfg.n_heads);
        for h in 0..cfg.n_heads {
            let (cl, ch) = (h * dh, (h + 1) * dh);
            let qh = qs.slice_axis(1, cl, ch)?;
            let kh = ks.slice_axis(1, cl, ch)?;
            let vh = vs.slice_axis(1, cl, ch)?;
            let attn = qh
                .matmul(kh.transpose()?)?
                .scale(1.0 / (dh as f64).sqrt())
                .softmax(1)?;
            heads.push(attn.matmul(vh)?);
        }
        sample_outs.push(tape.concat(1, &heads)?);
    }
    let joined = tape.concat(0, &sample_outs)?;
    let attn_out = linear(joined, p, &format!("{prefix}.attn.wo"), &format!("{prefix}.attn.bo"))?;
    let x = x.add(attn_out)?;
    let normed = layer_norm_affine(x, p, &format!("{prefix}.ln2_g"), &format!("{prefix}.ln2_b"))?;
    let hidden = linear(normed, p, &format!("{prefix}.ffn.w1"), &format!("{prefix}.ffn.b1"))?.gelu();
    let ffn_out = linear(hidden, p, &format!("{prefix}.ffn.w2"), &format!("{prefix}.ffn.b2"))?;
    x.add(ffn_out)
}

fn check_batch_gate_tables(cfg: &NetConfig, xs: &[&Sounding]) -> Result<Vec<f64>> {
    let first = xs
        .first()
        .ok_or_else(|| AtemError::config("empty batch"))?;
    if first.gate_times.len() != cfg.n_gates {
        return Err(AtemError::config(format!(
            "sounding has {} gates but the network is configured for {}",
            first.gate_times.len(),
            cfg.n_gates
        )));
    }
    for x in xs {
        if x.gate_times != first.gate_times {
            return Err(AtemError::config(
                "batched soundings must share one gate table",
            ));
        }
    }
    Ok(first.gate_times.clone())
}

/// Encodes a batch in one stacked pass; returns factor matrices with one
/// row per sounding.
pub fn encode_batch<'t>(
    tape: &'t Tape,
    cfg: &NetConfig,
    p: &Binding<'t>,
    xs: &[&Sounding],
) -> Result<(Var<'t>, Var<'t>)> {
    let times = check_batch_gate_tables(cfg, xs)?;
    let b = xs.len();
    let g = cfg.n_gates;
    let values = Array2::from_shape_fn((b * g, 1), |(r, _)| signed_log(xs[r / g].dbdt[r % g]));
    let value_tokens = tape.constant(values.into_dyn())?.matmul(p.get("emb.value_w")?)?;
    let te_one = time_embedding(cfg, &times);
    let te = Array2::from_shape_fn((b * g, cfg.d_model), |(r, c)| te_one[(r % g, c)]);
    let te = tape.constant(te.into_dyn())?;
    let heights = Array2::from_shape_fn((b, 1), |(r, _)| (xs[r].height - 25.0) / 75.0);
    let he = linear(tape.constant(heights.into_dyn())?, p, "emb.h_w1", "emb.h_b1")?
        .gelu();
    let he = linear(he, p, "emb.h_w2", "emb.h_b2")?;
    let expand = expansion(tape, b, g)?;
    let mut tokens = value_tokens.add(te)?.add(expand.matmul(he)?)?;
    for k in 0..cfg.n_blocks_encoder {
        tokens = block_forward_batch(tokens, b, cfg, p, &format!("enc.b{k}"))?;
    }
    let tokens = layer_norm_affine(tokens, p, "enc.ln_f_g", "enc.ln_f_b")?;
    let pooled = pooler(tape, b, g)?.matmul(tokens)?;
    let z_s = linear(pooled, p, "enc.zs_w", "enc.zs_b")?;
    let z_n = linear(pooled, p, "enc.zn_w", "enc.zn_b")?;
    Ok((z_s, z_n))
}

/// Decodes a batch of factor pairs to stacked signed-log soundings,
/// (B·n_gates × 1). All samples share `gate_times`; `heights` is per
/// sample.
pub fn decode_signal_batch<'t>(
    tape: &'t Tape,
    cfg: &NetConfig,
    p: &Binding<'t>,
    z_s: Var<'t>,
    z_n: Var<'t>,
    gate_times: &[f64],
    heights: &[f64],
) -> Result<Var<'t>> {
    let b = heights.len();
    if gate_times.len() != cfg.n_gates {
        return Err(AtemError::config(format!(
            "decoder queried with {} gates but configured for {}",
            gate_times.len(),
            cfg.n_gates
        )));
    }
    if z_s.shape() != vec![b, cfg.d_z] || z_n.shape() != vec![b, cfg.d_z] {
        return Err(AtemError::config(format!(
            "factor batches {:?}/{:?} do not match {} heights",
            z_s.shape(),
            z_n.shape(),
            b
        )));
    }
    let g = cfg.n_gates;
    let factors = tape.concat(1, &[z_s, z_n])?;
    let cond = linear(factors, p, "gs.cond_w", "gs.cond_b")?;
    let hcol = Array2::from_shape_fn((b, 1), |(r, _)| (heights[r] - 25.0) / 75.0);
    let he = linear(tape.constant(hcol.into_dyn())?, p, "emb.h_w1", "emb.h_b1")?.gelu();
    let he = linear(he, p, "emb.h_w2", "emb.h_b2")?;
    let te_one = time_embedding(cfg, gate_times);
    let te = Array2::from_shape_fn((b * g, cfg.d_model), |(r, c)| te_one[(r % g, c)]);
    let te = tape.constant(te.into_dyn())?;
    let expand = expansion(tape, b, g)?;
    let mut tokens = te.add(expand.matmul(he.add(cond)?)?)?;
    for k in 0..cfg.n_blocks_decoder {
        tokens = block_forward_batch(tokens, b, cfg, p, &format!("gs.b{k}"))?;
    }
    let tokens = layer_norm_affine(tokens, p, "gs.ln_f_g", "gs.ln_f_b")?;
    linear(tokens, p, "gs.out_w", "gs.out_b")
}

/// Decodes a batch of signal factors to stacked log-resistivity columns,
/// (B·n_layers_out × 1).
pub fn decode_model_batch<'t>(
    cfg: &NetConfig,
    p: &Binding<'t>,
    z_s: Var<'t>,
) -> Result<Var<'t>> {
    let tape = z_s.tape();
    let b = z_s.shape()[0];
    let l = cfg.n_layers_out;
    let cond = linear(z_s, p, "gr.cond_w", "gr.cond_b")?;
    let indices: Vec<usize> = (0..b * l).map(|r| r % l).collect();
    let queries = p.get("gr.queries")?.lookup(&indices)?;
    let expand = expansion(tape, b, l)?;
    let mut tokens = queries.add(expand.matmul(cond)?)?;
    for k in 0..cfg.n_blocks_decoder {
        tokens = block_forward_batch(tokens, b, cfg, p, &format!("gr.b{k}"))?;
    }
    let tokens = layer_norm_affine(tokens, p, "gr.ln_f_g", "gr.ln_f_b")?;
    let out = linear(tokens, p, "gr.out_w", "gr.out_b")?;
    let (lo, hi) = log_rho_bounds();
    Ok(out.clamp(lo, hi))
}
