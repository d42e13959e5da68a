use serde::{Deserialize, Serialize};

use crate::error::{AtemError, Result};

/// Horizontally layered resistivity model: `resistivities[l]` in ohm·m for
/// layers top-down, `thicknesses[l]` in m for all but the last layer, which
/// extends to infinity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayeredModel {
    pub resistivities: Vec<f64>,
    pub thicknesses: Vec<f64>,
}

impl LayeredModel {
    pub fn new(resistivities: Vec<f64>, thicknesses: Vec<f64>) -> Result<Self> {
        let m = LayeredModel {
            resistivities,
            thicknesses,
        };
        m.validate()?;
        Ok(m)
    }

    /// Uniform half-space.
    pub fn half_space(rho: f64) -> Self {
        LayeredModel {
            resistivities: vec![rho],
            thicknesses: vec![],
        }
    }

    pub fn n_layers(&self) -> usize {
        self.resistivities.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.resistivities.is_empty() {
            return Err(AtemError::config("model needs at least one layer"));
        }
        if self.thicknesses.len() + 1 != self.resistivities.len() {
            return Err(AtemError::config(format!(
                "expected {} thicknesses for {} layers, got {}",
                self.resistivities.len() - 1,
                self.resistivities.len(),
                self.thicknesses.len()
            )));
        }
        if let Some(r) = self
            .resistivities
            .iter()
            .find(|r| !r.is_finite() || **r <= 0.0)
        {
            return Err(AtemError::config(format!("non-positive resistivity {r}")));
        }
        if let Some(d) = self.thicknesses.iter().find(|d| !d.is_finite() || **d <= 0.0) {
            return Err(AtemError::config(format!("non-positive thickness {d}")));
        }
        Ok(())
    }

    /// Conductivities in S/m, top-down.
    pub fn conductivities(&self) -> Vec<f64> {
        self.resistivities.iter().map(|r| 1.0 / r).collect()
    }

    /// Interface depths in m (length `n_layers - 1`).
    pub fn interface_depths(&self) -> Vec<f64> {
        let mut depth = 0.0;
        self.thicknesses
            .iter()
            .map(|d| {
                depth += d;
                depth
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(LayeredModel::new(vec![], vec![]).is_err());
        assert!(LayeredModel::new(vec![100.0, 10.0], vec![]).is_err());
        assert!(LayeredModel::new(vec![100.0], vec![5.0]).is_err());
        assert!(LayeredModel::new(vec![-1.0], vec![]).is_err());
        assert!(LayeredModel::new(vec![100.0, 0.0], vec![5.0]).is_err());
        assert!(LayeredModel::new(vec![100.0, 10.0], vec![-5.0]).is_err());
        assert!(LayeredModel::new(vec![100.0, 10.0], vec![5.0]).is_ok());
    }

    #[test]
    fn interface_depths_accumulate() {
        let m = LayeredModel::new(vec![1.0, 2.0, 3.0], vec![10.0, 20.0]).unwrap();
        assert_eq!(m.interface_depths(), vec![10.0, 30.0]);
    }
}
