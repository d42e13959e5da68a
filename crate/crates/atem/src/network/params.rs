//! Named parameter storage, deterministic initialization, tape binding, and
//! the checkpoint file format.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use ndarray::{ArrayD, IxDyn};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::NetConfig;
use crate::autodiff::{Tape, Var};
use crate::error::{AtemError, Result};

/// All tensors of a model component, keyed by hierarchical names. The map
/// is ordered, so iteration (and therefore optimizer traversal and
/// serialization) is deterministic.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamStore {
    pub tensors: BTreeMap<String, ArrayD<f64>>,
}

impl ParamStore {
    pub fn insert(&mut self, name: &str, value: ArrayD<f64>) {
        self.tensors.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Result<&ArrayD<f64>> {
        self.tensors
            .get(name)
            .ok_or_else(|| AtemError::config(format!("unknown parameter {name}")))
    }

    pub fn n_scalars(&self) -> usize {
        self.tensors.values().map(|t| t.len()).sum()
    }

    /// Places every tensor on the tape; with `trainable` the returned
    /// handles collect gradients.
    pub fn bind<'t>(&self, tape: &'t Tape, trainable: bool) -> Result<Binding<'t>> {
        let mut vars = BTreeMap::new();
        for (name, value) in &self.tensors {
            vars.insert(name.clone(), tape.leaf(value.clone(), trainable)?);
        }
        Ok(Binding { vars })
    }
}

/// Tape handles for one `ParamStore`, valid for a single forward/backward
/// pass.
pub struct Binding<'t> {
    vars: BTreeMap<String, Var<'t>>,
}

impl<'t> Binding<'t> {
    pub fn get(&self, name: &str) -> Result<Var<'t>> {
        self.vars
            .get(name)
            .copied()
            .ok_or_else(|| AtemError::config(format!("unknown parameter {name}")))
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.vars.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Var<'t>)> {
        self.vars.iter()
    }
}

fn randn(shape: &[usize], sd: f64, rng: &mut ChaCha8Rng) -> ArrayD<f64> {
    ArrayD::from_shape_fn(IxDyn(shape), |_| {
        let e: f64 = rng.sample(StandardNormal);
        sd * e
    })
}

fn zeros(shape: &[usize]) -> ArrayD<f64> {
    ArrayD::zeros(IxDyn(shape))
}

fn ones(shape: &[usize]) -> ArrayD<f64> {
    ArrayD::from_elem(IxDyn(shape), 1.0)
}

fn init_block(store: &mut ParamStore, prefix: &str, cfg: &NetConfig, rng: &mut ChaCha8Rng) {
    let d = cfg.d_model;
    let f = cfg.d_ff;
    let sd = 0.02;
    store.insert(&format!("{prefix}.ln1_g"), ones(&[1, d]));
    store.insert(&format!("{prefix}.ln1_b"), zeros(&[1, d]));
    for w in ["wq", "wk", "wv", "wo"] {
        store.insert(&format!("{prefix}.attn.{w}"), randn(&[d, d], sd, rng));
    }
    for b in ["bq", "bk", "bv", "bo"] {
        store.insert(&format!("{prefix}.attn.{b}"), zeros(&[1, d]));
    }
    store.insert(&format!("{prefix}.ln2_g"), ones(&[1, d]));
    store.insert(&format!("{prefix}.ln2_b"), zeros(&[1, d]));
    store.insert(&format!("{prefix}.ffn.w1"), randn(&[d, f], sd, rng));
    store.insert(&format!("{prefix}.ffn.b1"), zeros(&[1, f]));
    store.insert(&format!("{prefix}.ffn.w2"), randn(&[f, d], sd, rng));
    store.insert(&format!("{prefix}.ffn.b2"), zeros(&[1, d]));
}

/// Builds the full parameter set of encoder, signal decoder, and model
/// decoder, reproducibly from a seed.
pub fn init_net_params(cfg: &NetConfig, seed: u64) -> ParamStore {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut store = ParamStore::default();
    let d = cfg.d_model;
    let z = cfg.d_z;
    let sd = 0.02;

    // shared input embedding: value branch is bias-free so that a zero
    // signal contributes exactly nothing to the token
    store.insert("emb.value_w", randn(&[1, d], sd, &mut rng));
    store.insert("emb.h_w1", randn(&[1, d], sd, &mut rng));
    store.insert("emb.h_b1", zeros(&[1, d]));
    store.insert("emb.h_w2", randn(&[d, d], sd, &mut rng));
    store.insert("emb.h_b2", zeros(&[1, d]));

    for k in 0..cfg.n_blocks_encoder {
        init_block(&mut store, &format!("enc.b{k}"), cfg, &mut rng);
    }
    store.insert("enc.ln_f_g", ones(&[1, d]));
    store.insert("enc.ln_f_b", zeros(&[1, d]));
    store.insert("enc.zs_w", randn(&[d, z], sd, &mut rng));
    store.insert("enc.zs_b", zeros(&[1, z]));
    store.insert("enc.zn_w", randn(&[d, z], sd, &mut rng));
    store.insert("enc.zn_b", zeros(&[1, z]));

    store.insert("gs.cond_w", randn(&[2 * z, d], sd, &mut rng));
    store.insert("gs.cond_b", zeros(&[1, d]));
    for k in 0..cfg.n_blocks_decoder {
        init_block(&mut store, &format!("gs.b{k}"), cfg, &mut rng);
    }
    store.insert("gs.ln_f_g", ones(&[1, d]));
    store.insert("gs.ln_f_b", zeros(&[1, d]));
    store.insert("gs.out_w", randn(&[d, 1], sd, &mut rng));
    store.insert("gs.out_b", zeros(&[1, 1]));

    store.insert("gr.cond_w", randn(&[z, d], sd, &mut rng));
    store.insert("gr.cond_b", zeros(&[1, d]));
    store.insert("gr.queries", randn(&[cfg.n_layers_out, d], sd, &mut rng));
    for k in 0..cfg.n_blocks_decoder {
        init_block(&mut store, &format!("gr.b{k}"), cfg, &mut rng);
    }
    store.insert("gr.ln_f_g", ones(&[1, d]));
    store.insert("gr.ln_f_b", zeros(&[1, d]));
    store.insert("gr.out_w", randn(&[d, 1], sd, &mut rng));
    store.insert("gr.out_b", zeros(&[1, 1]));

    store
}

/// Parameters of the variational conditional q(Z_n | Z_s): a two-layer mean
/// network and a two-layer log-variance network.
pub fn init_club_params(cfg: &NetConfig, seed: u64) -> ParamStore {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut store = ParamStore::default();
    let z = cfg.d_z;
    let sd = 0.1;
    for net in ["mean", "lv"] {
        store.insert(&format!("club.{net}_w1"), randn(&[z, z], sd, &mut rng));
        store.insert(&format!("club.{net}_b1"), zeros(&[1, z]));
        store.insert(&format!("club.{net}_w2"), randn(&[z, z], sd, &mut rng));
        store.insert(&format!("club.{net}_b2"), zeros(&[1, z]));
    }
    store
}

const CHECKPOINT_MAGIC: &[u8; 8] = b"ATEMCK01";
pub const CHECKPOINT_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckpointHeader {
    pub version: u32,
    pub net_config: NetConfig,
    pub step: u64,
    pub epoch: u64,
    /// Acquisition description the network was trained against; present in
    /// pipeline checkpoints so inversion needs no separate config file.
    #[serde(default)]
    pub system: Option<crate::system::SystemConfig>,
    /// Layer thicknesses of the predicted resistivity column, m.
    #[serde(default)]
    pub thicknesses: Option<Vec<f64>>,
    tensor_index: Vec<TensorMeta>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TensorMeta {
    name: String,
    shape: Vec<usize>,
}

/// Writes a checkpoint: magic, length-prefixed JSON header (config, step,
/// tensor index), then raw little-endian doubles in index order. The write
/// goes to a sibling temp file first and is renamed into place so a crash
/// never leaves a truncated checkpoint behind.
pub fn save_checkpoint(
    path: &Path,
    cfg: &NetConfig,
    step: u64,
    epoch: u64,
    survey: Option<(&crate::system::SystemConfig, &[f64])>,
    tensors: &ParamStore,
) -> Result<()> {
    let header = CheckpointHeader {
        version: CHECKPOINT_FORMAT_VERSION,
        net_config: cfg.clone(),
        step,
        epoch,
        system: survey.map(|(s, _)| s.clone()),
        thicknesses: survey.map(|(_, t)| t.to_vec()),
        tensor_index: tensors
            .tensors
            .iter()
            .map(|(name, t)| TensorMeta {
                name: name.clone(),
                shape: t.shape().to_vec(),
            })
            .collect(),
    };
    let header_json = serde_json::to_vec(&header)?;
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
        f.write_all(CHECKPOINT_MAGIC)?;
        f.write_all(&(header_json.len() as u32).to_le_bytes())?;
        f.write_all(&header_json)?;
        for t in tensors.tensors.values() {
            for v in t.iter() {
                f.write_all(&v.to_le_bytes())?;
            }
        }
        f.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_checkpoint(path: &Path) -> Result<(CheckpointHeader, ParamStore)> {
    let mut f = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut magic = [0u8; 8];
    f.read_exact(&mut magic)?;
    if &magic != CHECKPOINT_MAGIC {
        return Err(AtemError::config(format!(
            "{} is not a checkpoint file",
            path.display()
        )));
    }
    let mut len = [0u8; 4];
    f.read_exact(&mut len)?;
    let mut header_json = vec![0u8; u32::from_le_bytes(len) as usize];
    f.read_exact(&mut header_json)?;
    let header: CheckpointHeader = serde_json::from_slice(&header_json)?;
    if header.version != CHECKPOINT_FORMAT_VERSION {
        return Err(AtemError::config(format!(
            "checkpoint format version {} unsupported (expected {})",
            header.version, CHECKPOINT_FORMAT_VERSION
        )));
    }
    let mut store = ParamStore::default();
    for meta in &header.tensor_index {
        let n: usize = meta.shape.iter().product();
        let mut values = Vec::with_capacity(n);
        let mut buf = [0u8; 8];
        for _ in 0..n {
            f.read_exact(&mut buf)?;
            values.push(f64::from_le_bytes(buf));
        }
        let t = ArrayD::from_shape_vec(IxDyn(&meta.shape), values)
            .map_err(|e| AtemError::config(format!("checkpoint tensor {}: {e}", meta.name)))?;
        store.insert(&meta.name, t);
    }
    Ok((header, store))
}

/// Guards inference/resume against a checkpoint built for a different
/// architecture.
pub fn require_matching_config(header: &CheckpointHeader, expected: &NetConfig) -> Result<()> {
    if &header.net_config != expected {
        return Err(AtemError::config(format!(
            "checkpoint architecture {:?} does not match configured {:?}",
            header.net_config, expected
        )));
    }
    Ok(())
}
