//! AdamW with decoupled weight decay and global-norm gradient clipping.
//! Moment tensors live in ordered maps keyed by parameter name so update
//! order — and therefore every trained bit — is reproducible, and so the
//! whole state can ride along inside a checkpoint.

use std::collections::BTreeMap;

use ndarray::ArrayD;
use serde::{Deserialize, Serialize};

use crate::error::{AtemError, Result};
use crate::network::ParamStore;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdamWConfig {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    /// Decoupled decay: parameters shrink by `lr·weight_decay` per step
    /// independently of the gradient moments.
    pub weight_decay: f64,
}

impl Default for AdamWConfig {
    fn default() -> Self {
        AdamWConfig {
            lr: 1e-4,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            weight_decay: 0.01,
        }
    }
}

impl AdamWConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lr > 0.0) || !self.lr.is_finite() {
            return Err(AtemError::config(format!("lr must be positive, got {}", self.lr)));
        }
        for (name, b) in [("beta1", self.beta1), ("beta2", self.beta2)] {
            if !(0.0..1.0).contains(&b) {
                return Err(AtemError::config(format!("{name} must lie in [0,1), got {b}")));
            }
        }
        if !(self.eps > 0.0) {
            return Err(AtemError::config("eps must be positive"));
        }
        if self.weight_decay < 0.0 {
            return Err(AtemError::config("weight_decay must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct AdamW {
    cfg: AdamWConfig,
    t: u64,
    m: BTreeMap<String, ArrayD<f64>>,
    v: BTreeMap<String, ArrayD<f64>>,
}

impl AdamW {
    pub fn new(cfg: AdamWConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(AdamW {
            cfg,
            t: 0,
            m: BTreeMap::new(),
            v: BTreeMap::new(),
        })
    }

    pub fn config(&self) -> &AdamWConfig {
        &self.cfg
    }

    pub fn steps_taken(&self) -> u64 {
        self.t
    }

    /// Applies one update. Every gradient must match its parameter's shape;
    /// parameters without a gradient entry are only weight-decayed.
    pub fn step(
        &mut self,
        params: &mut ParamStore,
        grads: &BTreeMap<String, ArrayD<f64>>,
    ) -> Result<()> {
        for name in grads.keys() {
            if !params.tensors.contains_key(name) {
                return Err(AtemError::config(format!(
                    "gradient for unknown parameter {name}"
                )));
            }
        }
        self.t += 1;
        let t = self.t as i32;
        let (b1, b2) = (self.cfg.beta1, self.cfg.beta2);
        let bc1 = 1.0 - b1.powi(t);
        let bc2 = 1.0 - b2.powi(t);
        for (name, p) in params.tensors.iter_mut() {
            if self.cfg.weight_decay > 0.0 {
                p.mapv_inplace(|x| x - self.cfg.lr * self.cfg.weight_decay * x);
            }
            let Some(g) = grads.get(name) else { continue };
            if g.shape() != p.shape() {
                return Err(AtemError::config(format!(
                    "gradient shape {:?} does not match parameter {name} {:?}",
                    g.shape(),
                    p.shape()
                )));
            }
            let m = self
                .m
                .entry(name.clone())
                .or_insert_with(|| ArrayD::zeros(p.raw_dim()));
            let v = self
                .v
                .entry(name.clone())
                .or_insert_with(|| ArrayD::zeros(p.raw_dim()));
            azip_update(m, v, p, g, b1, b2, bc1, bc2, self.cfg.lr, self.cfg.eps);
        }
        Ok(())
    }

    /// Serializes moments and the step counter as named tensors under
    /// `prefix` for embedding in a checkpoint.
    pub fn state_tensors(&self, prefix: &str) -> BTreeMap<String, ArrayD<f64>> {
        let mut out = BTreeMap::new();
        out.insert(
            format!("{prefix}.t"),
            ArrayD::from_elem(ndarray::IxDyn(&[]), self.t as f64),
        );
        for (name, m) in &self.m {
            out.insert(format!("{prefix}.m.{name}"), m.clone());
        }
        for (name, v) in &self.v {
            out.insert(format!("{prefix}.v.{name}"), v.clone());
        }
        out
    }

    /// Rebuilds an optimizer from tensors previously produced by
    /// `state_tensors` with the same prefix. Missing state means a fresh
    /// optimizer.
    pub fn from_state_tensors(
        cfg: AdamWConfig,
        prefix: &str,
        tensors: &BTreeMap<String, ArrayD<f64>>,
    ) -> Result<Self> {
        let mut opt = AdamW::new(cfg)?;
        let t_key = format!("{prefix}.t");
        if let Some(t) = tensors.get(&t_key) {
            let t = t
                .first()
                .copied()
                .ok_or_else(|| AtemError::config(format!("{t_key} is empty")))?;
            opt.t = t as u64;
        }
        let m_prefix = format!("{prefix}.m.");
        let v_prefix = format!("{prefix}.v.");
        for (name, value) in tensors {
            if let Some(stripped) = name.strip_prefix(&m_prefix) {
                opt.m.insert(stripped.to_string(), value.clone());
            } else if let Some(stripped) = name.strip_prefix(&v_prefix) {
                opt.v.insert(stripped.to_string(), value.clone());
            }
        }
        Ok(opt)
    }
}

#[allow(clippy::too_many_arguments)]
fn azip_update(
    m: &mut ArrayD<f64>,
    v: &mut ArrayD<f64>,
    p: &mut ArrayD<f64>,
    g: &ArrayD<f64>,
    b1: f64,
    b2: f64,
    bc1: f64,
    bc2: f64,
    lr: f64,
    eps: f64,
) {
    ndarray::Zip::from(p)
        .and(m)
        .and(v)
        .and(g)
        .for_each(|p, m, v, &g| {
            *m = b1 * *m + (1.0 - b1) * g;
            *v = b2 * *v + (1.0 - b2) * g * g;
            let m_hat = *m / bc1;
            let v_hat = *v / bc2;
            *p -= lr * m_hat / (v_hat.sqrt() + eps);
        });
}

/// Rescales all gradients so their joint Euclidean norm is at most
/// `max_norm`. Returns the pre-clip norm and whether clipping fired.
pub fn clip_global_norm(
    grads: &mut BTreeMap<String, ArrayD<f64>>,
    max_norm: f64,
) -> Result<(f64, bool)> {
    let mut sq = 0.0;
    for g in grads.values() {
        for x in g.iter() {
            if !x.is_finite() {
                return Err(AtemError::numerical("non-finite gradient"));
            }
            sq += x * x;
        }
    }
    let norm = sq.sqrt();
    if norm > max_norm && norm > 0.0 {
        let scale = max_norm / norm;
        for g in grads.values_mut() {
            g.mapv_inplace(|x| x * scale);
        }
        Ok((norm, true))
    } else {
        Ok((norm, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::IxDyn;

    fn store_with(name: &str, values: &[f64]) -> ParamStore {
        let mut s = ParamStore::default();
        s.insert(
            name,
            ArrayD::from_shape_vec(IxDyn(&[values.len(), 1]), values.to_vec()).unwrap(),
        );
        s
    }

    #[test]
    fn first_step_without_decay_moves_by_the_learning_rate() {
        // With bias correction the very first Adam update is lr·g/(|g|+eps),
        // i.e. a signed step of almost exactly lr.
        let mut store = store_with("w", &[1.0, -2.0]);
        let cfg = AdamWConfig {
            lr: 0.1,
            weight_decay: 0.0,
            ..AdamWConfig::default()
        };
        let mut opt = AdamW::new(cfg).unwrap();
        let mut grads = BTreeMap::new();
        grads.insert(
            "w".to_string(),
            ArrayD::from_shape_vec(IxDyn(&[2, 1]), vec![0.5, -3.0]).unwrap(),
        );
        opt.step(&mut store, &grads).unwrap();
        let w = store.get("w").unwrap();
        assert!((w[[0, 0]] - (1.0 - 0.1)).abs() < 1e-6);
        assert!((w[[1, 0]] - (-2.0 + 0.1)).abs() < 1e-6);
    }

    #[test]
    fn weight_decay_shrinks_parameters_even_with_zero_gradient() {
        let mut store = store_with("w", &[10.0]);
        let cfg = AdamWConfig {
            lr: 0.01,
            weight_decay: 0.5,
            ..AdamWConfig::default()
        };
        let mut opt = AdamW::new(cfg).unwrap();
        let grads = BTreeMap::new();
        opt.step(&mut store, &grads).unwrap();
        let w = store.get("w").unwrap();
        assert!((w[[0, 0]] - 10.0 * (1.0 - 0.01 * 0.5)).abs() < 1e-12);
    }

    #[test]
    fn adam_converges_on_a_quadratic_bowl() {
        let mut store = store_with("w", &[5.0, -4.0]);
        let cfg = AdamWConfig {
            lr: 0.05,
            weight_decay: 0.0,
            ..AdamWConfig::default()
        };
        let mut opt = AdamW::new(cfg).unwrap();
        for _ in 0..2000 {
            let w = store.get("w").unwrap().clone();
            let mut grads = BTreeMap::new();
            grads.insert("w".to_string(), w.mapv(|x| 2.0 * x));
            opt.step(&mut store, &grads).unwrap();
        }
        let w = store.get("w").unwrap();
        assert!(w[[0, 0]].abs() < 1e-3 && w[[1, 0]].abs() < 1e-3, "{w:?}");
    }

    #[test]
    fn clipping_caps_the_global_norm_and_preserves_direction() {
        let mut grads = BTreeMap::new();
        grads.insert(
            "a".to_string(),
            ArrayD::from_shape_vec(IxDyn(&[2, 1]), vec![3.0, 0.0]).unwrap(),
        );
        grads.insert(
            "b".to_string(),
            ArrayD::from_shape_vec(IxDyn(&[1, 1]), vec![4.0]).unwrap(),
        );
        let (norm, clipped) = clip_global_norm(&mut grads, 1.0).unwrap();
        assert!((norm - 5.0).abs() < 1e-12);
        assert!(clipped);
        let a = &grads["a"];
        let b = &grads["b"];
        let new_norm = (a[[0, 0]].powi(2) + a[[1, 0]].powi(2) + b[[0, 0]].powi(2)).sqrt();
        assert!((new_norm - 1.0).abs() < 1e-12);
        assert!((a[[0, 0]] / b[[0, 0]] - 3.0 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn small_gradients_pass_through_unclipped() {
        let mut grads = BTreeMap::new();
        grads.insert(
            "a".to_string(),
            ArrayD::from_shape_vec(IxDyn(&[1, 1]), vec![0.3]).unwrap(),
        );
        let (norm, clipped) = clip_global_norm(&mut grads, 1.0).unwrap();
        assert!((norm - 0.3).abs() < 1e-12);
        assert!(!clipped);
        assert_eq!(grads["a"][[0, 0]], 0.3);
    }

    #[test]
    fn state_round_trips_through_tensors() {
        let mut store = store_with("w", &[1.0, 2.0, 3.0]);
        let cfg = AdamWConfig::default();
        let mut opt = AdamW::new(cfg).unwrap();
        let mut grads = BTreeMap::new();
        for k in 0..5 {
            grads.insert(
                "w".to_string(),
                ArrayD::from_shape_vec(IxDyn(&[3, 1]), vec![0.1 * k as f64, -0.2, 0.3]).unwrap(),
            );
            opt.step(&mut store, &grads).unwrap();
        }
        let state = opt.state_tensors("opt");
        let restored = AdamW::from_state_tensors(cfg, "opt", &state).unwrap();
        assert_eq!(restored.steps_taken(), 5);

        // Continuing either instance must produce identical parameters.
        let mut store2 = store.clone();
        let mut opt2 = restored;
        let mut opt1 = opt;
        grads.insert(
            "w".to_string(),
            ArrayD::from_shape_vec(IxDyn(&[3, 1]), vec![0.05, 0.0, -0.4]).unwrap(),
        );
        opt1.step(&mut store, &grads).unwrap();
        opt2.step(&mut store2, &grads).unwrap();
        assert_eq!(store.get("w").unwrap(), store2.get("w").unwrap());
    }

    #[test]
    fn mismatched_gradient_shape_is_rejected() {
        let mut store = store_with("w", &[1.0]);
        let mut opt = AdamW::new(AdamWConfig::default()).unwrap();
        let mut grads = BTreeMap::new();
        grads.insert(
            "w".to_string(),
            ArrayD::from_shape_vec(IxDyn(&[2, 1]), vec![1.0, 2.0]).unwrap(),
        );
        assert!(opt.step(&mut store, &grads).is_err());
    }
}
