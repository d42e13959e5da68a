//! Classical reference inversion: a late-time apparent-resistivity
//! starting model and a damped Gauss-Newton minimization of the
//! noise-weighted data misfit plus a first-difference smoothness penalty
//! on log resistivity.

use nalgebra::{Cholesky, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{AtemError, Result};
use crate::forward::Forward1D;
use crate::model::LayeredModel;
use crate::noise::background;
use crate::system::{Normalization, Sounding, SystemConfig};

/// Vacuum permeability, H/m.
const MU_0: f64 = 1.256_637_061_435_917_3e-6;

/// Resistivity bounds of the inverted column, ohm·m.
const RHO_BOUNDS: (f64, f64) = (1.0, 2000.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegConfig {
    /// Smoothness weight on first differences of log resistivity.
    pub alpha: f64,
    /// Factor applied to `alpha` when an iteration stalls (no step length
    /// lowers the objective).
    pub alpha_reduction: f64,
    pub max_iter: usize,
    /// Stop when χ² (mean squared weighted residual) falls below this.
    pub target_misfit: f64,
    /// Levenberg-style diagonal added to the normal equations.
    pub damping: f64,
}

impl Default for RegConfig {
    fn default() -> Self {
        RegConfig {
            alpha: 10.0,
            alpha_reduction: 0.5,
            max_iter: 25,
            target_misfit: 1.0,
            damping: 1e-4,
        }
    }
}

impl RegConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(AtemError::config(format!("alpha must be positive, got {}", self.alpha)));
        }
        if !(self.alpha_reduction > 0.0 && self.alpha_reduction <= 1.0) {
            return Err(AtemError::config(format!(
                "alpha_reduction must lie in (0, 1], got {}",
                self.alpha_reduction
            )));
        }
        if self.max_iter == 0 {
            return Err(AtemError::config("max_iter must be positive"));
        }
        if !(self.target_misfit > 0.0) {
            return Err(AtemError::config("target_misfit must be positive"));
        }
        if !(self.damping >= 0.0) {
            return Err(AtemError::config("damping must be non-negative"));
        }
        Ok(())
    }
}

/// Per-gate noise standard deviations under the background-plus-relative
/// law, evaluated on the observed values: σ = sqrt(std² + (n/d)²)·|d|,
/// falling back to the pure background level where a gate reads exactly
/// zero.
pub fn data_weights(data: &Sounding, b_level: f64, std_uniform: f64) -> Result<Vec<f64>> {
    if data.unit != Normalization::NanovoltPerSquareMeter {
        return Err(AtemError::config(
            "noise-based weighting is defined on nV/m² data",
        ));
    }
    data.gate_times
        .iter()
        .zip(&data.dbdt)
        .map(|(t, d)| {
            let n = background(*t, b_level)?;
            let sigma = if *d == 0.0 {
                n
            } else {
                (std_uniform.powi(2) + (n / d).powi(2)).sqrt() * d.abs()
            };
            if !(sigma > 0.0) {
                return Err(AtemError::config(
                    "noise law produced a non-positive standard deviation",
                ));
            }
            Ok(sigma)
        })
        .collect()
}

/// Starting model from late-time half-space theory. Each usable gate gives
/// an apparent resistivity via |dB/dt| = I a² μ₀^{5/2} σ^{3/2} / (20 √π t^{5/2})
/// and a diffusion depth sqrt(2 t ρ_a/μ₀); log resistivity is interpolated
/// against depth onto the requested layer grid and clamped to the model
/// bounds. If no gate is usable the start is a flagged uniform 100 ohm·m.
pub fn apparent_resistivity_init(
    data: &Sounding,
    sys: &SystemConfig,
    thicknesses: &[f64],
) -> (LayeredModel, bool) {
    let n_layers = thicknesses.len() + 1;
    let current = sys.waveform.peak_current();
    let a = sys.tx_radius;
    let to_si = match data.unit {
        Normalization::NanovoltPerSquareMeter => 1e-9,
        Normalization::PerDipoleMoment => current * std::f64::consts::PI * a * a,
    };
    let mut points: Vec<(f64, f64)> = Vec::new(); // (depth, ln rho_a)
    for (t, v) in data.gate_times.iter().zip(&data.dbdt) {
        // The late-time lobe of dB_z/dt is negative in our convention
        // (decaying positive voltage −dB/dt); only a clearly nonzero
        // amplitude carries apparent-resistivity information.
        let amp_si = v.abs() * to_si;
        if !(amp_si > 0.0) || !t.is_finite() {
            continue;
        }
        let sigma_a = (amp_si * 20.0 * std::f64::consts::PI.sqrt() * t.powf(2.5)
            / (current * a * a * MU_0.powf(2.5)))
        .powf(2.0 / 3.0);
        if !(sigma_a > 0.0) || !sigma_a.is_finite() {
            continue;
        }
        let rho_a = (1.0 / sigma_a).clamp(RHO_BOUNDS.0, RHO_BOUNDS.1);
        let depth = (2.0 * t * rho_a / MU_0).sqrt();
        points.push((depth, rho_a.ln()));
    }
    let wrap = |rows: Vec<f64>| LayeredModel {
        resistivities: rows,
        thicknesses: thicknesses.to_vec(),
    };
    if points.is_empty() {
        return (wrap(vec![100.0; n_layers]), true);
    }
    points.sort_by(|p, q| p.0.partial_cmp(&q.0).expect("finite depths"));

    // Layer reference depths: midpoints, with the basement pinned at the
    // last interface.
    let mut tops = vec![0.0];
    for th in thicknesses {
        tops.push(tops.last().unwrap() + th);
    }
    let centers: Vec<f64> = (0..n_layers)
        .map(|l| {
            if l + 1 < tops.len() {
                0.5 * (tops[l] + tops[l + 1])
            } else {
                tops[l]
            }
        })
        .collect();

    let interp = |depth: f64| -> f64 {
        if depth <= points[0].0 {
            return points[0].1;
        }
        if depth >= points[points.len() - 1].0 {
            return points[points.len() - 1].1;
        }
        let k = points.partition_point(|p| p.0 < depth);
        let (d0, v0) = points[k - 1];
        let (d1, v1) = points[k];
        if d1 == d0 {
            return 0.5 * (v0 + v1);
        }
        v0 + (v1 - v0) * (depth - d0) / (d1 - d0)
    };
    let rows = centers
        .iter()
        .map(|d| interp(*d).exp().clamp(RHO_BOUNDS.0, RHO_BOUNDS.1))
        .collect();
    (wrap(rows), false)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    /// Mean squared weighted residual after this iteration.
    pub chi2: f64,
    /// Full objective (data term + smoothness term) after this iteration.
    pub objective: f64,
    pub alpha: f64,
    /// Line-search step length of the accepted update; 0 for the starting
    /// point and for stalled iterations.
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InversionResult {
    pub model: LayeredModel,
    pub chi2: f64,
    pub converged: bool,
    /// Misfit rose for three consecutive iterations; the best iterate was
    /// returned instead of the last.
    pub diverged: bool,
    /// The apparent-resistivity start was unusable (all-zero data) and a
    /// uniform model was used instead.
    pub init_fallback: bool,
    pub iterations: Vec<IterationRecord>,
}

struct Objective<'a> {
    fwd: &'a Forward1D,
    sys: &'a SystemConfig,
    thicknesses: &'a [f64],
    data: &'a [f64],
    weights: &'a [f64],
    diff: DMatrix<f64>,
}

impl Objective<'_> {
    fn model(&self, x: &DVector<f64>) -> Result<LayeredModel> {
        LayeredModel::new(
            x.iter().map(|v| v.exp()).collect(),
            self.thicknesses.to_vec(),
        )
    }

    /// Weighted residual vector r_i = (F_i − d_i)/σ_i.
    fn residual(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        let sounding = self.fwd.forward(&self.model(x)?, self.sys)?;
        Ok(DVector::from_iterator(
            self.data.len(),
            sounding
                .dbdt
                .iter()
                .zip(self.data)
                .zip(self.weights)
                .map(|((f, d), w)| (f - d) / w),
        ))
    }

    fn chi2(&self, r: &DVector<f64>) -> f64 {
        r.norm_squared() / self.data.len() as f64
    }

    fn phi(&self, r: &DVector<f64>, x: &DVector<f64>, alpha: f64) -> f64 {
        r.norm_squared() + alpha * (&self.diff * x).norm_squared()
    }
}

/// First-difference operator on the log-resistivity column.
fn first_difference(n: usize) -> DMatrix<f64> {
    let mut d = DMatrix::zeros(n.saturating_sub(1), n);
    for i in 0..n.saturating_sub(1) {
        d[(i, i)] = -1.0;
        d[(i, i + 1)] = 1.0;
    }
    d
}

/// Damped Gauss-Newton descent on the weighted data misfit with a
/// first-difference smoothness penalty, starting from `start` (ohm·m).
/// Runs until the misfit target, the iteration cap, or a persistent rise
/// in misfit (divergence), whichever comes first.
pub fn gauss_newton_invert(
    fwd: &Forward1D,
    sys: &SystemConfig,
    thicknesses: &[f64],
    data: &Sounding,
    weights: &[f64],
    start: &[f64],
    cfg: &RegConfig,
) -> Result<InversionResult> {
    cfg.validate()?;
    let n_layers = thicknesses.len() + 1;
    if start.len() != n_layers {
        return Err(AtemError::config(format!(
            "starting model has {} layers, grid needs {}",
            start.len(),
            n_layers
        )));
    }
    if weights.len() != data.dbdt.len() {
        return Err(AtemError::config(format!(
            "{} weights for {} gates",
            weights.len(),
            data.dbdt.len()
        )));
    }
    let obj = Objective {
        fwd,
        sys,
        thicknesses,
        data: &data.dbdt,
        weights,
        diff: first_difference(n_layers),
    };
    let (lo, hi) = (RHO_BOUNDS.0.ln(), RHO_BOUNDS.1.ln());
    let clamp_x = |x: &mut DVector<f64>| {
        for v in x.iter_mut() {
            *v = v.clamp(lo, hi);
        }
    };

    let mut x = DVector::from_iterator(n_layers, start.iter().map(|r| r.ln()));
    clamp_x(&mut x);
    let mut alpha = cfg.alpha;
    let mut r = obj.residual(&x)?;
    let mut chi2 = obj.chi2(&r);
    let mut records = vec![IterationRecord {
        iteration: 0,
        chi2,
        objective: obj.phi(&r, &x, alpha),
        alpha,
        step: 0.0,
    }];

    let mut best_x = x.clone();
    let mut best_chi2 = chi2;
    let mut rising = 0usize;
    let mut diverged = false;
    let mut converged = chi2 <= cfg.target_misfit;

    let mut iter = 0;
    while !converged && iter < cfg.max_iter {
        iter += 1;
        let model = obj.model(&x)?;
        let jac = fwd.jacobian(&model, sys)?; // d dbdt / d ln rho
        let mut jw = DMatrix::zeros(data.dbdt.len(), n_layers);
        for i in 0..data.dbdt.len() {
            for l in 0..n_layers {
                jw[(i, l)] = jac[[i, l]] / weights[i];
            }
        }
        let dtd = obj.diff.transpose() * &obj.diff;
        let grad = jw.transpose() * &r + alpha * (&dtd * &x);
        let mut damping = cfg.damping;
        let step = loop {
            let mut lhs = jw.transpose() * &jw + alpha * &dtd;
            for i in 0..n_layers {
                lhs[(i, i)] += damping;
            }
            match Cholesky::new(lhs) {
                Some(ch) => break ch.solve(&(-&grad)),
                None => {
                    damping = if damping == 0.0 { 1e-8 } else { damping * 10.0 };
                    if damping > 1e8 {
                        return Err(AtemError::numerical(
                            "normal equations stayed singular under maximal damping",
                        ));
                    }
                }
            }
        };

        // Backtracking line search on the full objective.
        let phi0 = obj.phi(&r, &x, alpha);
        let mut accepted = None;
        let mut s = 1.0;
        for _ in 0..9 {
            let mut cand = &x + s * &step;
            clamp_x(&mut cand);
            if let Ok(rc) = obj.residual(&cand) {
                if obj.phi(&rc, &cand, alpha) < phi0 {
                    accepted = Some((cand, rc, s));
                    break;
                }
            }
            s *= 0.5;
        }
        match accepted {
            Some((nx, nr, s)) => {
                x = nx;
                r = nr;
                chi2 = obj.chi2(&r);
                records.push(IterationRecord {
                    iteration: iter,
                    chi2,
                    objective: obj.phi(&r, &x, alpha),
                    alpha,
                    step: s,
                });
            }
            None => {
                // Stall: relax the smoothness constraint and try again.
                if cfg.alpha_reduction < 1.0 && alpha > 1e-10 {
                    alpha *= cfg.alpha_reduction;
                    records.push(IterationRecord {
                        iteration: iter,
                        chi2,
                        objective: obj.phi(&r, &x, alpha),
                        alpha,
                        step: 0.0,
                    });
                    continue;
                }
                break;
            }
        }
        if chi2 <= cfg.target_misfit {
            converged = true;
        }
        if chi2 < best_chi2 {
            best_chi2 = chi2;
            best_x = x.clone();
            rising = 0;
        } else {
            rising += 1;
            if rising >= 3 {
                diverged = true;
                break;
            }
        }
    }

    let final_x = if diverged { best_x } else { x };
    let final_chi2 = if diverged { best_chi2 } else { chi2 };
    Ok(InversionResult {
        model: LayeredModel {
            resistivities: final_x.iter().map(|v| v.exp()).collect(),
            thicknesses: thicknesses.to_vec(),
        },
        chi2: final_chi2,
        converged: final_chi2 <= cfg.target_misfit,
        diverged,
        init_fallback: false,
        iterations: records,
    })
}

/// Full pipeline: apparent-resistivity start, then Gauss-Newton.
pub fn invert_sounding(
    fwd: &Forward1D,
    sys: &SystemConfig,
    thicknesses: &[f64],
    data: &Sounding,
    weights: &[f64],
    cfg: &RegConfig,
) -> Result<InversionResult> {
    let (start, fallback) = apparent_resistivity_init(data, sys, thicknesses);
    let mut result =
        gauss_newton_invert(fwd, sys, thicknesses, data, weights, &start.resistivities, cfg)?;
    result.init_fallback = fallback;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::TransformProfile;
    use crate::system::{Normalization, Waveform};

    fn test_system(n_gates: usize) -> SystemConfig {
        let ratio = (8e-3_f64 / 1e-4).powf(1.0 / (n_gates - 1) as f64);
        SystemConfig {
            tx_radius: 10.0,
            tx_height: 0.0,
            waveform: Waveform::StepOff { current: 1.0 },
            gate_centers: (0..n_gates).map(|i| 1e-4 * ratio.powi(i as i32)).collect(),
            gate_widths: vec![0.0; n_gates],
            ..SystemConfig::default()
        }
    }

    fn geometric_thicknesses(n_layers: usize, first: f64, ratio: f64) -> Vec<f64> {
        (0..n_layers - 1).map(|i| first * ratio.powi(i as i32)).collect()
    }

    #[test]
    fn half_space_data_give_a_start_within_twenty_percent() {
        let fwd = Forward1D::with_profile(TransformProfile::accurate());
        let sys = test_system(14);
        let data = fwd.forward(&LayeredModel::half_space(100.0), &sys).unwrap();
        let th = geometric_thicknesses(12, 4.0, 1.35);
        let (start, fallback) = apparent_resistivity_init(&data, &sys, &th);
        assert!(!fallback);
        for rho in &start.resistivities {
            assert!(
                (rho / 100.0 - 1.0).abs() < 0.2,
                "start value {rho} deviates more than 20% from 100"
            );
        }
    }

    #[test]
    fn extreme_amplitudes_stay_inside_the_resistivity_bounds() {
        let sys = test_system(8);
        for scale in [1e-12, 1e12] {
            let data = Sounding {
                gate_times: sys.gate_centers.clone(),
                dbdt: sys.gate_centers.iter().map(|t| -scale / t).collect(),
                height: 0.0,
                unit: Normalization::NanovoltPerSquareMeter,
            };
            let (start, fallback) = apparent_resistivity_init(&data, &sys, &[10.0, 20.0, 40.0]);
            assert!(!fallback);
            for rho in &start.resistivities {
                assert!((1.0..=2000.0).contains(rho), "start value {rho} out of bounds");
            }
        }
    }

    #[test]
    fn all_zero_data_fall_back_to_a_flagged_uniform_start() {
        let sys = test_system(6);
        let data = Sounding {
            gate_times: sys.gate_centers.clone(),
            dbdt: vec![0.0; 6],
            height: 0.0,
            unit: Normalization::NanovoltPerSquareMeter,
        };
        let (start, fallback) = apparent_resistivity_init(&data, &sys, &[10.0, 20.0]);
        assert!(fallback);
        assert_eq!(start.resistivities, vec![100.0, 100.0, 100.0]);
        assert_eq!(start.thicknesses, vec![10.0, 20.0]);
    }

    #[test]
    fn starting_at_the_truth_with_clean_data_converges_immediately() {
        let fwd = Forward1D::with_profile(TransformProfile::training());
        let sys = test_system(12);
        let truth = vec![120.0, 30.0, 500.0, 500.0];
        let th = vec![20.0, 40.0, 80.0];
        let data = fwd
            .forward(&LayeredModel::new(truth.clone(), th.clone()).unwrap(), &sys)
            .unwrap();
        let weights = data_weights(&data, 1.0, 0.03).unwrap();
        let res = gauss_newton_invert(&fwd, &sys, &th, &data, &weights, &truth, &RegConfig::default())
            .unwrap();
        assert!(res.converged);
        assert_eq!(res.iterations.len(), 1, "no steps should be needed");
        assert!(res.chi2 < 1e-10, "chi2 {}", res.chi2);
    }

    #[test]
    fn infinite_smoothing_flattens_the_model() {
        let fwd = Forward1D::with_profile(TransformProfile::training());
        let sys = test_system(12);
        let th = geometric_thicknesses(8, 5.0, 1.5);
        let truth = LayeredModel::new(
            vec![300.0, 300.0, 20.0, 20.0, 20.0, 700.0, 700.0, 700.0],
            th.clone(),
        )
        .unwrap();
        let data = fwd.forward(&truth, &sys).unwrap();
        let weights = data_weights(&data, 1.0, 0.03).unwrap();
        let res = invert_sounding(
            &fwd,
            &sys,
            &th,
            &data,
            &weights,
            &RegConfig {
                alpha: 1e12,
                alpha_reduction: 1.0,
                max_iter: 15,
                ..RegConfig::default()
            },
        )
        .unwrap();
        let logs: Vec<f64> = res.model.resistivities.iter().map(|r| r.ln()).collect();
        let spread = logs.iter().cloned().fold(f64::MIN, f64::max)
            - logs.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 0.1, "log-resistivity spread {spread}");
    }

    #[test]
    fn the_objective_never_rises_across_accepted_iterations() {
        let fwd = Forward1D::with_profile(TransformProfile::training());
        let sys = test_system(14);
        let th = geometric_thicknesses(10, 4.0, 1.4);
        let truth = LayeredModel::new(
            vec![80.0, 80.0, 15.0, 15.0, 200.0, 200.0, 600.0, 600.0, 600.0, 600.0],
            th.clone(),
        )
        .unwrap();
        let data = fwd.forward(&truth, &sys).unwrap();
        let weights = data_weights(&data, 2.0, 0.03).unwrap();
        let res = invert_sounding(
            &fwd,
            &sys,
            &th,
            &data,
            &weights,
            &RegConfig {
                alpha: 5.0,
                alpha_reduction: 1.0, // keep one fixed objective
                max_iter: 12,
                target_misfit: 1e-12,
                ..RegConfig::default()
            },
        )
        .unwrap();
        let accepted: Vec<&IterationRecord> =
            res.iterations.iter().filter(|r| r.step > 0.0 || r.iteration == 0).collect();
        for pair in accepted.windows(2) {
            assert!(
                pair[1].objective <= pair[0].objective * (1.0 + 1e-12),
                "objective rose from {} to {}",
                pair[0].objective,
                pair[1].objective
            );
        }
    }

    #[test]
    fn clean_three_layer_data_are_fit_to_under_one_percent() {
        let fwd = Forward1D::with_profile(TransformProfile::training());
        let sys = test_system(16);
        let th = geometric_thicknesses(12, 4.0, 1.4);
        let truth = LayeredModel::new(vec![100.0, 10.0, 500.0], vec![50.0, 50.0]).unwrap();
        let data = fwd.forward(&truth, &sys).unwrap();
        let weights = data_weights(&data, 1.0, 0.03).unwrap();
        let res = invert_sounding(
            &fwd,
            &sys,
            &th,
            &data,
            &weights,
            &RegConfig {
                alpha: 1.0,
                alpha_reduction: 0.5,
                max_iter: 25,
                target_misfit: 1e-4,
                ..RegConfig::default()
            },
        )
        .unwrap();
        let refit = fwd.forward(&res.model, &sys).unwrap();
        let err = crate::eval::rmspe(&refit.dbdt, &data.dbdt).unwrap().percent;
        assert!(err < 1.0, "data refit error {err}%");
    }
}
