//! Random layered-earth generation for training data, plus loading of
//! externally supplied model files.
//!
//! All models share one geometric depth grid so that downstream networks see
//! a constant output dimension. Resistivity profiles come from a mixture of
//! three structural styles — smoothly varying, blocky, and
//! thin-conductor-in-background — which together give broad coverage of the
//! log-resistivity range while staying geologically plausible.

use std::io::BufRead;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Uniform};
use serde::{Deserialize, Serialize};

use crate::error::{AtemError, Result};
use crate::model::LayeredModel;

/// First-layer thickness of the geometric grid, in metres. The growth ratio
/// is then solved so the stack reaches `max_depth` exactly.
const FIRST_THICKNESS: f64 = 3.0;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelGenConfig {
    /// Number of layers including the basement half-space.
    pub n_layers: usize,
    /// Depth of the deepest interface, m.
    pub max_depth: f64,
    /// Bounds of the resistivity range, ohm·m.
    pub rho_min: f64,
    pub rho_max: f64,
    /// Adjacent-layer correlation of the smooth style's log-resistivity
    /// chain; 0 gives independent layers.
    pub vertical_correlation: f64,
    /// Probabilities of the {smooth, blocky, thin-conductor} styles.
    pub structure_mix: [f64; 3],
    pub seed: u64,
}

impl Default for ModelGenConfig {
    fn default() -> Self {
        ModelGenConfig {
            n_layers: 30,
            max_depth: 500.0,
            rho_min: 1.0,
            rho_max: 2000.0,
            vertical_correlation: 0.9,
            structure_mix: [0.5, 0.3, 0.2],
            seed: 0,
        }
    }
}

impl ModelGenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_layers < 1 {
            return Err(AtemError::config("n_layers must be at least 1"));
        }
        if !(self.max_depth > 0.0) {
            return Err(AtemError::config("max_depth must be positive"));
        }
        if !(0.0 < self.rho_min && self.rho_min < self.rho_max) {
            return Err(AtemError::config(format!(
                "need 0 < rho_min < rho_max, got {} and {}",
                self.rho_min, self.rho_max
            )));
        }
        if !(0.0..1.0).contains(&self.vertical_correlation) {
            return Err(AtemError::config(
                "vertical_correlation must lie in [0, 1)",
            ));
        }
        let sum: f64 = self.structure_mix.iter().sum();
        if self.structure_mix.iter().any(|p| *p < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(AtemError::config(format!(
                "structure_mix must be nonnegative and sum to 1, got {:?}",
                self.structure_mix
            )));
        }
        Ok(())
    }
}

/// Interface depths shared by every generated model.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthGrid {
    pub interfaces: Vec<f64>,
}

impl DepthGrid {
    pub fn thicknesses(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.interfaces
            .iter()
            .map(|d| {
                let t = d - prev;
                prev = *d;
                t
            })
            .collect()
    }
}

/// Builds the geometric depth grid: thicknesses `FIRST_THICKNESS · r^k` with
/// the ratio `r` solved so the cumulative depth lands on `max_depth`. With a
/// single interface the sum does not depend on the ratio, so the interface
/// simply sits at the first-layer thickness.
pub fn layer_depths(cfg: &ModelGenConfig) -> Result<DepthGrid> {
    cfg.validate()?;
    let m = cfg.n_layers - 1;
    if m == 0 {
        return Ok(DepthGrid { interfaces: vec![] });
    }
    if m == 1 {
        return Ok(DepthGrid {
            interfaces: vec![FIRST_THICKNESS.min(cfg.max_depth)],
        });
    }
    let total = |r: f64| -> f64 {
        // direct sum; the closed form degenerates at r = 1
        let mut acc = 0.0;
        let mut t = FIRST_THICKNESS;
        for _ in 0..m {
            acc += t;
            t *= r;
        }
        acc
    };
    let (mut lo, mut hi) = (1e-6, 1.0_f64);
    if total(1.0) <= cfg.max_depth {
        lo = 1.0;
        hi = 2.0;
        while total(hi) < cfg.max_depth {
            hi *= 2.0;
            if hi > 1e6 {
                return Err(AtemError::config(
                    "depth grid ratio solve diverged; max_depth too large for n_layers",
                ));
            }
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if total(mid) < cfg.max_depth {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = 0.5 * (lo + hi);
    let mut interfaces = Vec::with_capacity(m);
    let mut depth = 0.0;
    let mut t = FIRST_THICKNESS;
    for _ in 0..m {
        depth += t;
        interfaces.push(depth);
        t *= r;
    }
    // land the last interface exactly despite accumulated rounding
    *interfaces.last_mut().unwrap() = cfg.max_depth;
    Ok(DepthGrid { interfaces })
}

/// Independent RNG stream for worker `stream`; streams never overlap because
/// the cipher treats the stream id as a separate counter block.
pub fn rng_for_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws transmitter heights uniformly over the operational band.
pub fn sample_height<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(25.0..=100.0)
}

pub struct ModelGenerator {
    cfg: ModelGenConfig,
    thicknesses: Vec<f64>,
}

impl ModelGenerator {
    pub fn new(cfg: ModelGenConfig) -> Result<Self> {
        let grid = layer_depths(&cfg)?;
        Ok(ModelGenerator {
            thicknesses: grid.thicknesses(),
            cfg,
        })
    }

    pub fn depth_grid(&self) -> DepthGrid {
        let mut interfaces = Vec::with_capacity(self.thicknesses.len());
        let mut d = 0.0;
        for t in &self.thicknesses {
            d += t;
            interfaces.push(d);
        }
        DepthGrid { interfaces }
    }

    pub fn config(&self) -> &ModelGenConfig {
        &self.cfg
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> LayeredModel {
        let n = self.cfg.n_layers;
        let (lo, hi) = (self.cfg.rho_min.ln(), self.cfg.rho_max.ln());
        let style = {
            let u: f64 = rng.gen();
            if u < self.cfg.structure_mix[0] {
                0
            } else if u < self.cfg.structure_mix[0] + self.cfg.structure_mix[1] {
                1
            } else {
                2
            }
        };
        let mut log_rho = vec![0.0; n];
        match style {
            0 => {
                // stationary first-order chain in log rho: fixed mean and
                // marginal spread so the ensemble covers the whole range
                let mean = 0.5 * (lo + hi);
                let sd = 0.25 * (hi - lo);
                let phi = self.cfg.vertical_correlation;
                let innov = Normal::new(0.0, sd * (1.0 - phi * phi).sqrt()).unwrap();
                let mut x = Normal::new(mean, sd).unwrap().sample(rng);
                for v in log_rho.iter_mut() {
                    *v = x;
                    x = mean + phi * (x - mean) + innov.sample(rng);
                }
            }
            1 => {
                // a few uniform blocks
                let n_seg = rng.gen_range(2..=5.min(n.max(2)));
                let mut cuts: Vec<usize> = (0..n_seg - 1)
                    .map(|_| rng.gen_range(1..n.max(2)))
                    .collect();
                cuts.push(0);
                cuts.push(n);
                cuts.sort_unstable();
                let level = Uniform::new_inclusive(lo, hi);
                for w in cuts.windows(2) {
                    let v = level.sample(rng);
                    for item in log_rho.iter_mut().take(w[1]).skip(w[0]) {
                        *item = v;
                    }
                }
            }
            _ => {
                // resistive-ish background hosting one conductive layer
                let bg = rng.gen_range((0.5 * (lo + hi))..=hi);
                let target = rng.gen_range(0..n);
                let cond = rng.gen_range(lo..=(bg - (10.0_f64).ln()).max(lo + 0.1));
                for (k, v) in log_rho.iter_mut().enumerate() {
                    *v = if k == target { cond } else { bg };
                }
            }
        }
        let resistivities = log_rho
            .iter()
            .map(|v| v.clamp(lo, hi).exp())
            .collect();
        LayeredModel::new(resistivities, self.thicknesses.clone()).expect("generated model valid")
    }
}

/// Reads layered models from a JSONL file (records with `resistivity_ohm_m`
/// and optional `thickness_m`) or a headerless CSV of per-row resistivities.
/// CSV rows receive the default depth grid for their layer count. Rows that
/// violate model invariants are rejected with their 1-based index.
pub fn load_models(path: &Path) -> Result<Vec<LayeredModel>> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase();
    if ext == "jsonl" || ext == "json" {
        load_models_jsonl(path)
    } else {
        load_models_csv(path)
    }
}

#[derive(Deserialize)]
struct ModelRecord {
    #[allow(dead_code)]
    #[serde(default)]
    model_id: Option<u64>,
    resistivity_ohm_m: Vec<f64>,
    #[serde(default)]
    thickness_m: Option<Vec<f64>>,
}

fn default_thicknesses_for(n_layers: usize) -> Result<Vec<f64>> {
    let cfg = ModelGenConfig {
        n_layers,
        ..Default::default()
    };
    Ok(layer_depths(&cfg)?.thicknesses())
}

fn load_models_jsonl(path: &Path) -> Result<Vec<LayeredModel>> {
    let file = std::fs::File::open(path)?;
    let mut out = Vec::new();
    for (idx, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ModelRecord = serde_json::from_str(&line)
            .map_err(|e| AtemError::config(format!("{}: row {}: {e}", path.display(), idx + 1)))?;
        let thicknesses = match rec.thickness_m {
            Some(t) => t,
            None => default_thicknesses_for(rec.resistivity_ohm_m.len())?,
        };
        let model = LayeredModel::new(rec.resistivity_ohm_m, thicknesses).map_err(|e| {
            AtemError::config(format!("{}: row {}: {e}", path.display(), idx + 1))
        })?;
        out.push(model);
    }
    Ok(out)
}

fn load_models_csv(path: &Path) -> Result<Vec<LayeredModel>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_path(path)?;
    let mut out = Vec::new();
    for (idx, row) in reader.records().enumerate() {
        let row = row?;
        let rho: Vec<f64> = row
            .iter()
            .map(|f| {
                f.trim().parse::<f64>().map_err(|e| {
                    AtemError::config(format!("{}: row {}: {e}", path.display(), idx + 1))
                })
            })
            .collect::<Result<_>>()?;
        let model = LayeredModel::new(rho, default_thicknesses_for(row.len())?).map_err(|e| {
            AtemError::config(format!("{}: row {}: {e}", path.display(), idx + 1))
        })?;
        out.push(model);
    }
    Ok(out)
}
