//! Differentiable bridge between the network and the layered-earth forward
//! model: evaluates the forward response of a predicted log-resistivity
//! column and exposes it on the tape as a custom operation whose backward
//! pass contracts incoming gradients with the model's sensitivity matrix.

use ndarray::{Array2, ArrayD};

use crate::autodiff::{Tape, Var};
use crate::error::{AtemError, Result};
use crate::forward::Forward1D;
use crate::model::LayeredModel;
use crate::network::{signed_log, signed_log_deriv};
use crate::system::SystemConfig;

/// Everything needed to run the forward model on network output: the
/// engine, the acquisition system (heights are overridden per sounding),
/// and the fixed layer thicknesses of the predicted column.
#[derive(Debug, Clone)]
pub struct PhysicsContext {
    pub forward: Forward1D,
    pub system: SystemConfig,
    /// Thickness of every predicted layer but the basement half-space, m.
    pub thicknesses: Vec<f64>,
}

impl PhysicsContext {
    pub fn n_layers(&self) -> usize {
        self.thicknesses.len() + 1
    }

    pub fn at_height(&self, height: f64) -> SystemConfig {
        let mut sys = self.system.clone();
        sys.tx_height = height;
        sys
    }

    /// Plain (non-taped) forward response of a log-resistivity column, in
    /// the system's output units.
    pub fn respond(&self, log_rho: &[f64], height: f64) -> Result<Vec<f64>> {
        let model = self.model_from_log_rho(log_rho)?;
        let sounding = self.forward.forward(&model, &self.at_height(height))?;
        Ok(sounding.dbdt)
    }

    pub fn model_from_log_rho(&self, log_rho: &[f64]) -> Result<LayeredModel> {
        if log_rho.len() != self.n_layers() {
            return Err(AtemError::config(format!(
                "expected {} layers, got {}",
                self.n_layers(),
                log_rho.len()
            )));
        }
        LayeredModel::new(log_rho.iter().map(|x| x.exp()).collect(), self.thicknesses.clone())
    }
}

/// Signed-log forward response of a log-resistivity column as a tape node,
/// (n_gates × 1). The sensitivity matrix is computed once up front; the
/// backward pass applies the chain rule through the signed-log compression:
/// ∂y_g/∂logρ_l = sl'(d_g)·J_gl, so the input gradient is (sl'∘J)ᵀ·g.
pub fn forward_signed_log<'t>(
    tape: &'t Tape,
    log_rho: Var<'t>,
    ctx: &PhysicsContext,
    height: f64,
) -> Result<Var<'t>> {
    let shape = log_rho.shape();
    if shape != vec![ctx.n_layers(), 1] {
        return Err(AtemError::config(format!(
            "log-resistivity column must be ({} × 1), got {:?}",
            ctx.n_layers(),
            shape
        )));
    }
    let values: Vec<f64> = log_rho.value().iter().copied().collect();
    let model = ctx.model_from_log_rho(&values)?;
    let sys = ctx.at_height(height);
    let (sounding, jac) = ctx.forward.forward_with_jacobian(&model, &sys)?;
    let n_gates = sounding.dbdt.len();
    let y = Array2::from_shape_fn((n_gates, 1), |(g, _)| signed_log(sounding.dbdt[g]));
    // Rows of the sensitivity matrix rescaled by the signed-log slope at
    // the response value; captured by the backward closure.
    let mut jac_sl = jac;
    for (g, d) in sounding.dbdt.iter().enumerate() {
        let w = signed_log_deriv(*d);
        for l in 0..jac_sl.ncols() {
            jac_sl[(g, l)] *= w;
        }
    }
    tape.custom_op(
        &[log_rho],
        y.into_dyn(),
        move |_inputs, _value, grad: &ArrayD<f64>| {
            let g = grad
                .view()
                .into_dimensionality::<ndarray::Ix2>()
                .map_err(|_| AtemError::config("physics gradient must be a column"))?;
            let gin = jac_sl.t().dot(&g);
            Ok(vec![gin.into_dyn()])
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::TransformProfile;
    use crate::system::Waveform;

    fn small_system(n_gates: usize) -> SystemConfig {
        let ratio = (5e-3_f64 / 1e-4).powf(1.0 / (n_gates - 1) as f64);
        SystemConfig {
            tx_radius: 10.0,
            tx_height: 35.0,
            waveform: Waveform::StepOff { current: 1.0 },
            gate_centers: (0..n_gates).map(|i| 1e-4 * ratio.powi(i as i32)).collect(),
            gate_widths: vec![0.0; n_gates],
            ..SystemConfig::default()
        }
    }

    fn small_ctx() -> PhysicsContext {
        PhysicsContext {
            forward: Forward1D::with_profile(TransformProfile::training()),
            system: small_system(8),
            thicknesses: vec![15.0, 40.0],
        }
    }

    #[test]
    fn value_matches_the_plain_forward_model() {
        let ctx = small_ctx();
        let log_rho = [100.0_f64.ln(), 10.0_f64.ln(), 300.0_f64.ln()];
        let tape = Tape::new();
        let col = tape
            .leaf(
                ArrayD::from_shape_vec(ndarray::IxDyn(&[3, 1]), log_rho.to_vec()).unwrap(),
                true,
            )
            .unwrap();
        let y = forward_signed_log(&tape, col, &ctx, 35.0).unwrap();
        let plain = ctx.respond(&log_rho, 35.0).unwrap();
        for (g, d) in plain.iter().enumerate() {
            assert_eq!(y.value()[[g, 0]], signed_log(*d));
        }
    }

    #[test]
    fn directional_derivative_matches_finite_differences() {
        let ctx = small_ctx();
        let base = [100.0_f64.ln(), 10.0_f64.ln(), 300.0_f64.ln()];
        let dir = [0.6, -0.3, 0.9];
        let eval = |x: &[f64]| -> f64 {
            // Scalar probe: a fixed weighted sum of the signed-log response.
            ctx.respond(x, 35.0)
                .unwrap()
                .iter()
                .enumerate()
                .map(|(g, d)| (g as f64 + 1.0) * signed_log(*d))
                .sum()
        };
        let tape = Tape::new();
        let col = tape
            .leaf(
                ArrayD::from_shape_vec(ndarray::IxDyn(&[3, 1]), base.to_vec()).unwrap(),
                true,
            )
            .unwrap();
        let y = forward_signed_log(&tape, col, &ctx, 35.0).unwrap();
        let weights = tape
            .constant(
                ArrayD::from_shape_vec(
                    ndarray::IxDyn(&[8, 1]),
                    (0..8).map(|g| g as f64 + 1.0).collect(),
                )
                .unwrap(),
            )
            .unwrap();
        let loss = y.mul(weights).unwrap().sum();
        let grads = tape.backward(loss).unwrap();
        let g = grads.get(col).unwrap();
        let analytic: f64 = (0..3).map(|l| g[[l, 0]] * dir[l]).sum();

        let h = 1e-5;
        let plus: Vec<f64> = base.iter().zip(&dir).map(|(x, d)| x + h * d).collect();
        let minus: Vec<f64> = base.iter().zip(&dir).map(|(x, d)| x - h * d).collect();
        let fd = (eval(&plus) - eval(&minus)) / (2.0 * h);
        let rel = (analytic - fd).abs() / fd.abs().max(1e-12);
        assert!(rel < 1e-3, "analytic {analytic} vs fd {fd}, rel {rel}");
    }

    #[test]
    fn wrong_column_length_is_rejected() {
        let ctx = small_ctx();
        let tape = Tape::new();
        let col = tape
            .leaf(ArrayD::zeros(ndarray::IxDyn(&[2, 1])), true)
            .unwrap();
        assert!(forward_signed_log(&tape, col, &ctx, 35.0).is_err());
    }
}
