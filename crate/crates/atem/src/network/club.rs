//! Contrastive log-ratio upper bound on the mutual information between the
//! signal factor and the noise factor.
//!
//! A diagonal-Gaussian conditional q(Z_n | Z_s) — mean and log-variance
//! each from a small two-layer network — is fitted by maximum likelihood;
//! the bound is then the mean conditional log-density on matched pairs
//! minus its mean over all cross pairs. Log-variances are clamped to
//! [−8, 8] to keep densities finite while q is still poorly fitted.

use super::params::Binding;
use crate::autodiff::Var;
use crate::error::{AtemError, Result};

const LOGVAR_RANGE: (f64, f64) = (-8.0, 8.0);

/// Mean and clamped log-variance of q(Z_n | Z_s) for a batch of signal
/// factors (rows).
fn conditional<'t>(p: &Binding<'t>, z_s: Var<'t>) -> Result<(Var<'t>, Var<'t>)> {
    let mean = z_s
        .matmul(p.get("club.mean_w1")?)?
        .add(p.get("club.mean_b1")?)?
        .gelu()
        .matmul(p.get("club.mean_w2")?)?
        .add(p.get("club.mean_b2")?)?;
    let logvar = z_s
        .matmul(p.get("club.lv_w1")?)?
        .add(p.get("club.lv_b1")?)?
        .gelu()
        .matmul(p.get("club.lv_w2")?)?
        .add(p.get("club.lv_b2")?)?
        .clamp(LOGVAR_RANGE.0, LOGVAR_RANGE.1);
    Ok((mean, logvar))
}

fn batch_of(z: &Var<'_>, what: &str) -> Result<usize> {
    let shape = z.shape();
    if shape.len() != 2 {
        return Err(AtemError::config(format!(
            "{what}: expected a batch matrix, got shape {shape:?}"
        )));
    }
    Ok(shape[0])
}

/// Mean conditional log-likelihood of matched pairs, the objective that
/// fits q. The additive Gaussian constant is dropped — it cancels in the
/// bound and does not move the optimum.
pub fn club_loglik<'t>(p: &Binding<'t>, z_s: Var<'t>, z_n: Var<'t>) -> Result<Var<'t>> {
    let b = batch_of(&z_s, "club_loglik")?;
    if b < 1 || batch_of(&z_n, "club_loglik")? != b {
        return Err(AtemError::config("club_loglik: batch shapes disagree"));
    }
    let (mean, logvar) = conditional(p, z_s)?;
    let prec = logvar.neg().exp();
    let diff = z_n.sub(mean)?;
    // per element: (z−μ)²·e^{−v} + v, summed and averaged over the batch
    let quad = diff.mul(diff)?.mul(prec)?.add(logvar)?;
    Ok(quad.sum().scale(-0.5 / b as f64))
}

/// The mutual-information upper-bound estimate over a batch of factor
/// pairs: matched-pair log-likelihood minus the all-pairs average.
pub fn club_mi_upper<'t>(p: &Binding<'t>, z_s: Var<'t>, z_n: Var<'t>) -> Result<Var<'t>> {
    let b = batch_of(&z_s, "club_mi_upper")?;
    if b < 2 {
        return Err(AtemError::config(
            "club_mi_upper needs a batch of at least 2 (the cross-pair term is undefined otherwise)",
        ));
    }
    if batch_of(&z_n, "club_mi_upper")? != b {
        return Err(AtemError::config("club_mi_upper: batch shapes disagree"));
    }
    let (mean, logvar) = conditional(p, z_s)?;
    let prec = logvar.neg().exp();

    let diff = z_n.sub(mean)?;
    let matched = diff
        .mul(diff)?
        .mul(prec)?
        .add(logvar)?
        .sum()
        .scale(-0.5 / b as f64);

    // Cross-pair quadratic forms, all at once:
    //   Q_ij = Σ_d (z_jd − μ_id)² e^{−v_id} + Σ_d v_id
    // expanded into three matrix products over the batch.
    let z_sq = z_n.mul(z_n)?;
    let term_zz = prec.matmul(z_sq.transpose()?)?;
    let term_cross = mean.mul(prec)?.matmul(z_n.transpose()?)?.scale(-2.0);
    let mu_sq = mean.mul(mean)?.mul(prec)?.sum_axis_keep(1)?;
    let v_row = logvar.sum_axis_keep(1)?;
    let all_pairs = term_zz
        .add(term_cross)?
        .add(mu_sq)?
        .add(v_row)?
        .sum()
        .scale(-0.5 / (b * b) as f64);

    matched.sub(all_pairs)
}
