use serde::{Deserialize, Serialize};

use crate::error::{AtemError, Result};

/// Transmitter current waveform for one shut-off event. Time is in seconds
/// relative to the end of the ramp: the current reaches zero at t = 0 and the
/// receiver gates open at t > 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Waveform {
    /// Ideal step shut-off: current `current` for t < 0, zero afterwards.
    StepOff { current: f64 },
    /// Piecewise-linear current given by `(time, current)` vertices with
    /// strictly increasing times. The last vertex must be `(0, 0)`; the
    /// current is held constant before the first vertex.
    PiecewiseLinear { vertices: Vec<(f64, f64)> },
}

impl Waveform {
    pub fn validate(&self) -> Result<()> {
        match self {
            Waveform::StepOff { current } => {
                if !current.is_finite() || *current == 0.0 {
                    return Err(AtemError::config(format!(
                        "step-off current must be finite and nonzero, got {current}"
                    )));
                }
            }
            Waveform::PiecewiseLinear { vertices } => {
                if vertices.len() < 2 {
                    return Err(AtemError::config(
                        "piecewise-linear waveform needs at least two vertices",
                    ));
                }
                for w in vertices.windows(2) {
                    if !(w[1].0 > w[0].0) {
                        return Err(AtemError::config(format!(
                            "waveform times must increase strictly: {} then {}",
                            w[0].0, w[1].0
                        )));
                    }
                }
                if vertices.iter().any(|(t, i)| !t.is_finite() || !i.is_finite()) {
                    return Err(AtemError::config("waveform vertices must be finite"));
                }
                let last = vertices[vertices.len() - 1];
                if last.0 != 0.0 || last.1 != 0.0 {
                    return Err(AtemError::config(format!(
                        "waveform must end at vertex (0, 0); got ({}, {})",
                        last.0, last.1
                    )));
                }
                if vertices.iter().all(|(_, i)| *i == 0.0) {
                    return Err(AtemError::config("waveform carries no current"));
                }
            }
        }
        Ok(())
    }

    /// Peak transmitter current in A, used for dipole-moment normalization.
    pub fn peak_current(&self) -> f64 {
        match self {
            Waveform::StepOff { current } => current.abs(),
            Waveform::PiecewiseLinear { vertices } => vertices
                .iter()
                .map(|(_, i)| i.abs())
                .fold(0.0, f64::max),
        }
    }

    /// Earliest vertex time (0 for an ideal step). Negative for real ramps.
    pub fn ramp_start(&self) -> f64 {
        match self {
            Waveform::StepOff { .. } => 0.0,
            Waveform::PiecewiseLinear { vertices } => vertices[0].0,
        }
    }

    /// Linear segments as `(t_start, t_end, dI/dt)`, skipping flat stretches.
    pub fn segments(&self) -> Vec<(f64, f64, f64)> {
        match self {
            Waveform::StepOff { .. } => Vec::new(),
            Waveform::PiecewiseLinear { vertices } => vertices
                .windows(2)
                .filter_map(|w| {
                    let slope = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
                    if slope == 0.0 {
                        None
                    } else {
                        Some((w[0].0, w[1].0, slope))
                    }
                })
                .collect(),
        }
    }
}

/// Output unit for dB_z/dt data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Induced voltage per receiver area, nV/m² (numerically dB_z/dt · 1e9).
    #[default]
    NanovoltPerSquareMeter,
    /// dB_z/dt divided by the transmitter dipole moment I₀·π·a², V/(A·m⁴).
    PerDipoleMoment,
}

/// Acquisition geometry, waveform, and gating of an airborne TEM system with
/// a horizontal circular transmitter loop and a coincident-axis receiver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SystemConfig {
    /// Transmitter loop radius in m.
    pub tx_radius: f64,
    /// Transmitter height above ground in m.
    pub tx_height: f64,
    /// Receiver height minus transmitter height in m (0 = coincident).
    pub rx_vertical_offset: f64,
    pub waveform: Waveform,
    /// Gate-center times in s after ramp end, strictly increasing.
    pub gate_centers: Vec<f64>,
    /// Gate widths in s; 0 means an instantaneous sample at the center.
    pub gate_widths: Vec<f64>,
    /// Repetition base frequency in Hz (metadata; one transient is modeled).
    pub base_frequency: f64,
    pub normalization: Normalization,
}

impl Default for SystemConfig {
    /// A mid-sized helicopter system: 5 m rigid loop at 40 m height, 250 A
    /// triangular pulse with a 0.55 ms ramp-off, and 30 logarithmic gates
    /// from 50 µs to 10 ms whose widths are 20% of the local gate spacing.
    fn default() -> Self {
        let n = 30;
        let (t0, t1) = (5e-5_f64, 1e-2_f64);
        let ratio = (t1 / t0).powf(1.0 / (n - 1) as f64);
        let gate_centers: Vec<f64> = (0..n).map(|i| t0 * ratio.powi(i)).collect();
        let gate_widths = gate_centers.iter().map(|c| 0.2 * c * (ratio - 1.0)).collect();
        SystemConfig {
            tx_radius: 5.0,
            tx_height: 40.0,
            rx_vertical_offset: 0.0,
            waveform: Waveform::PiecewiseLinear {
                vertices: vec![(-1.1e-3, 0.0), (-5.5e-4, 250.0), (0.0, 0.0)],
            },
            gate_centers,
            gate_widths,
            base_frequency: 25.0,
            normalization: Normalization::default(),
        }
    }
}

impl SystemConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tx_radius > 0.0) || !self.tx_radius.is_finite() {
            return Err(AtemError::config(format!(
                "tx_radius must be positive, got {}",
                self.tx_radius
            )));
        }
        if !(self.tx_height >= 0.0) || !self.tx_height.is_finite() {
            return Err(AtemError::config(format!(
                "tx_height must be non-negative, got {}",
                self.tx_height
            )));
        }
        if self.rx_height() < 0.0 {
            return Err(AtemError::config("receiver sits below the ground surface"));
        }
        self.waveform.validate()?;
        if self.gate_centers.is_empty() {
            return Err(AtemError::config("need at least one gate"));
        }
        if self.gate_widths.len() != self.gate_centers.len() {
            return Err(AtemError::config(format!(
                "{} gate widths for {} gate centers",
                self.gate_widths.len(),
                self.gate_centers.len()
            )));
        }
        for w in self.gate_centers.windows(2) {
            if !(w[1] > w[0]) {
                return Err(AtemError::config(format!(
                    "gate centers must increase strictly: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        for (c, w) in self.gate_centers.iter().zip(&self.gate_widths) {
            if !c.is_finite() || !w.is_finite() || *w < 0.0 {
                return Err(AtemError::config(format!(
                    "bad gate (center {c}, width {w})"
                )));
            }
            if c - 0.5 * w <= 0.0 {
                return Err(AtemError::config(format!(
                    "gate at {c} s opens at or before the ramp end"
                )));
            }
        }
        if !(self.base_frequency > 0.0) {
            return Err(AtemError::config("base_frequency must be positive"));
        }
        Ok(())
    }

    /// Receiver height above ground in m.
    pub fn rx_height(&self) -> f64 {
        self.tx_height + self.rx_vertical_offset
    }

    /// Gate `(open, close)` times; open == close for instantaneous gates.
    pub fn gate_edges(&self) -> Vec<(f64, f64)> {
        self.gate_centers
            .iter()
            .zip(&self.gate_widths)
            .map(|(c, w)| (c - 0.5 * w, c + 0.5 * w))
            .collect()
    }

    /// Time span over which the step response must be known to synthesize all
    /// gates: convolution with the ramp reaches back `|ramp_start|` beyond the
    /// last gate edge.
    pub fn step_time_span(&self) -> (f64, f64) {
        let edges = self.gate_edges();
        let t_lo = edges.first().map(|e| e.0).unwrap_or(1e-6);
        let t_hi = edges.last().map(|e| e.1).unwrap_or(1e-2) - self.waveform.ramp_start();
        (t_lo, t_hi)
    }

    /// Factor converting dB_z/dt in T/s to the configured output unit.
    pub fn unit_scale(&self) -> f64 {
        match self.normalization {
            Normalization::NanovoltPerSquareMeter => 1e9,
            Normalization::PerDipoleMoment => {
                1.0 / (self.waveform.peak_current()
                    * std::f64::consts::PI
                    * self.tx_radius
                    * self.tx_radius)
            }
        }
    }
}

/// One measured or synthesized sounding: gate times in s, dB_z/dt per gate in
/// the unit recorded in `unit`, and the transmitter height in m.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sounding {
    pub gate_times: Vec<f64>,
    pub dbdt: Vec<f64>,
    pub height: f64,
    #[serde(default)]
    pub unit: Normalization,
}

impl Sounding {
    pub fn validate(&self) -> Result<()> {
        if self.gate_times.len() != self.dbdt.len() {
            return Err(AtemError::config(format!(
                "{} gate times but {} dbdt values",
                self.gate_times.len(),
                self.dbdt.len()
            )));
        }
        if self.gate_times.is_empty() {
            return Err(AtemError::config("empty sounding"));
        }
        for w in self.gate_times.windows(2) {
            if !(w[1] > w[0]) {
                return Err(AtemError::config(format!(
                    "gate times must increase strictly: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if !self.height.is_finite() || self.height < 0.0 {
            return Err(AtemError::config(format!("bad height {}", self.height)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let sys = SystemConfig::default();
        sys.validate().unwrap();
        assert_eq!(sys.gate_centers.len(), 30);
        assert!((sys.gate_centers[0] - 5e-5).abs() < 1e-12);
        assert!((sys.gate_centers[29] - 1e-2).abs() < 1e-9);
        assert_eq!(sys.waveform.peak_current(), 250.0);
    }

    #[test]
    fn waveform_must_end_at_zero() {
        let w = Waveform::PiecewiseLinear {
            vertices: vec![(-1e-3, 250.0), (0.0, 10.0)],
        };
        assert!(w.validate().is_err());
        let w = Waveform::PiecewiseLinear {
            vertices: vec![(-1e-3, 250.0), (-1e-4, 0.0)],
        };
        assert!(w.validate().is_err());
    }

    #[test]
    fn segments_skip_flat_tops() {
        let w = Waveform::PiecewiseLinear {
            vertices: vec![(-2e-3, 0.0), (-1.5e-3, 100.0), (-5e-4, 100.0), (0.0, 0.0)],
        };
        let segs = w.segments();
        assert_eq!(segs.len(), 2);
        assert!((segs[0].2 - 200_000.0).abs() < 1e-6);
        assert!((segs[1].2 + 200_000.0).abs() < 1e-6);
    }

    #[test]
    fn gates_must_open_after_ramp_end() {
        let mut sys = SystemConfig::default();
        sys.gate_centers[0] = 1e-6;
        sys.gate_widths[0] = 1e-5;
        assert!(sys.validate().is_err());
    }

    #[test]
    fn unit_scales() {
        let mut sys = SystemConfig::default();
        assert_eq!(sys.unit_scale(), 1e9);
        sys.normalization = Normalization::PerDipoleMoment;
        let moment = 250.0 * std::f64::consts::PI * 25.0;
        assert!((sys.unit_scale() - 1.0 / moment).abs() < 1e-18);
    }
}
