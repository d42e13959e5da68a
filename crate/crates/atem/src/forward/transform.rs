use num_complex::Complex64;

use crate::error::{AtemError, Result};
use crate::forward::filters::DigitalFilter;
use crate::forward::spline::CubicSpline;

/// Frequency-domain response table on a log-uniform angular-frequency grid.
/// `values[i]` is the spectrum of the unit-current step-off dB_z/dt — the
/// negated secondary B_z per ampere of transmitter current — at `omegas[i]`.
#[derive(Debug, Clone)]
pub struct FreqResponse {
    pub omegas: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl FreqResponse {
    pub fn validate(&self) -> Result<()> {
        if self.omegas.len() != self.values.len() || self.omegas.is_empty() {
            return Err(AtemError::numerical("frequency table shape mismatch"));
        }
        for w in self.omegas.windows(2) {
            if !(w[1] > w[0]) {
                return Err(AtemError::numerical("omegas must increase strictly"));
            }
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(AtemError::numerical("non-finite frequency response"));
        }
        Ok(())
    }
}

/// How the tabulated Im-part is interpolated between frequency nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableInterp {
    /// Cubic spline of Im F against ln ω. Needs the table at least as dense
    /// as the sine filter; the default, accuracy-first choice.
    Value,
    /// Cubic spline of ln(Im F) against ln ω, with a relative floor guarding
    /// the log. Tolerates ~4 nodes per decade because Im F is near power-law
    /// in ω; used by the throughput-first profile inside training.
    LogLog,
}

/// Sampler for the step-off response f(t) = −(2/π) ∫ Im F(ω) sin(ωt) dω,
/// evaluated by a digital sine-transform filter over the tabulated spectrum.
/// Valid only inside the time band the table was built for.
pub struct StepResponse {
    sine: &'static DigitalFilter,
    spline: CubicSpline,
    interp: TableInterp,
    ln_w_min: f64,
    ln_w_max: f64,
    t_min: f64,
    t_max: f64,
}

impl StepResponse {
    /// `im_f` are Im F values on the log-uniform grid `ln_omegas`.
    pub fn new(
        sine: &'static DigitalFilter,
        ln_omegas: Vec<f64>,
        im_f: &[f64],
        interp: TableInterp,
        t_min: f64,
        t_max: f64,
    ) -> Result<Self> {
        let ln_w_min = ln_omegas[0];
        let ln_w_max = ln_omegas[ln_omegas.len() - 1];
        let spline = match interp {
            TableInterp::Value => CubicSpline::natural(ln_omegas, im_f.to_vec())?,
            TableInterp::LogLog => {
                // Im F > 0 for any lossy model; ripple from the Hankel filter
                // can flip the sign only at negligible magnitude, which the
                // relative floor absorbs.
                let peak = im_f.iter().cloned().fold(0.0, f64::max);
                if !(peak > 0.0) {
                    return Err(AtemError::numerical(
                        "spectrum has no positive imaginary part; cannot fit log-log table",
                    ));
                }
                let floor = 1e-13 * peak;
                let logs: Vec<f64> = im_f.iter().map(|v| v.max(floor).ln()).collect();
                CubicSpline::natural(ln_omegas, logs)?
            }
        };
        Ok(StepResponse {
            sine,
            spline,
            interp,
            ln_w_min,
            ln_w_max,
            t_min,
            t_max,
        })
    }

    /// Time band this sampler is valid for.
    pub fn band(&self) -> (f64, f64) {
        (self.t_min, self.t_max)
    }

    /// Step-off dB_z/dt per unit transmitter current at time `t`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        // Tolerate tiny excursions from quadrature-node rounding.
        if !(t >= self.t_min * (1.0 - 1e-9) && t <= self.t_max * (1.0 + 1e-9)) {
            return Err(AtemError::numerical(format!(
                "step response requested at t = {:.6e} s outside the valid band \
                 [{:.6e}, {:.6e}] s of the frequency sampling",
                t, self.t_min, self.t_max
            )));
        }
        let ln_t = t.ln();
        let mut acc = 0.0;
        for (b, w) in self.sine.base.iter().zip(self.sine.weights) {
            let x = b.ln() - ln_t; // ln omega of this filter tap
            if x < self.ln_w_min || x > self.ln_w_max {
                continue; // spectrum treated as zero outside its table
            }
            let im_f = match self.interp {
                TableInterp::Value => self.spline.eval(x),
                TableInterp::LogLog => self.spline.eval(x).exp(),
            };
            acc += w * im_f;
        }
        Ok(-(2.0 / std::f64::consts::PI) * acc / t)
    }
}
