//! Log-spaced digital filters for the Hankel (J1) and sine transforms.
//!
//! A transform g(r) = ∫₀^∞ K(λ) B(λr) dλ with a Bessel-type kernel B turns
//! into a discrete convolution on the logarithmic axis: sampling K at
//! `base[j] / r` and summing against fixed weights,
//!
//! ```text
//!     g(r) ≈ (1/r) · Σ_j weights[j] · K(base[j] / r).
//! ```
//!
//! The tables are produced offline by band-limited inversion of the kernel's
//! Mellin-domain response (`tools/gen_filters.py`), validated there against
//! closed-form transform pairs, and frozen into `filter_tables.rs`. Each
//! transform ships in two lengths; evaluating both and comparing is the
//! standard convergence check for filter adequacy.

/// One fixed log-spaced filter: abscissae `base[j] = e^{jΔ}` (j centered on
/// zero) and the matching weights.
#[derive(Debug)]
pub struct DigitalFilter {
    /// Log spacing Δ between abscissae.
    pub spacing: f64,
    /// Abscissae, strictly increasing, geometric with ratio e^Δ.
    pub base: &'static [f64],
    /// Convolution weights, same length as `base`.
    pub weights: &'static [f64],
}

impl DigitalFilter {
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    /// Apply the filter: (1/r) Σ_j W_j K(base_j / r).
    pub fn apply(&self, r: f64, mut kernel: impl FnMut(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for (b, w) in self.base.iter().zip(self.weights) {
            acc += w * kernel(b / r);
        }
        acc / r
    }
}

include!("filter_tables.rs");

#[cfg(test)]
mod tests {
    use super::*;

    // Closed-form pairs used to re-verify the frozen tables at build level.
    // The generator checks the same identities in Python before writing the
    // tables; this guards against corruption of the checked-in data.

    #[test]
    fn hankel_j1_loop_identity() {
        // ∫ λ e^{-cλ} J1(λr) dλ = r / (r² + c²)^{3/2}  (free-space loop field)
        for &(c, r) in &[(0.3, 1.0), (1.0, 0.05), (3.0, 10.0), (10.0, 2.0), (60.0, 10.0)] {
            let got = HANKEL_J1_201.apply(r, |lam| lam * (-c * lam).exp());
            let want = r / (r * r + c * c).powf(1.5);
            let rel = ((got - want) / want).abs();
            assert!(rel < 1e-5, "c={c} r={r}: rel err {rel:.3e}");
        }
    }

    #[test]
    fn hankel_j1_gaussian_pair() {
        // ∫ λ² e^{-cλ²} J1(λr) dλ = r/(4c²) e^{-r²/(4c)}
        for &(c, r) in &[(0.5, 1.0), (2.0, 2.0), (0.5, 2.5)] {
            let got = HANKEL_J1_201.apply(r, |lam| lam * lam * (-c * lam * lam).exp());
            let want = r / (4.0 * c * c) * (-r * r / (4.0 * c)).exp();
            let rel = ((got - want) / want).abs();
            assert!(rel < 1e-4, "c={c} r={r}: rel err {rel:.3e}");
        }
    }

    #[test]
    fn sine_lorentzian_pair() {
        // ∫ ω e^{-cω} sin(ωt) dω = 2ct / (c² + t²)²
        for &(c, t) in &[(0.3, 1.0), (1.0, 0.02), (3.0, 30.0)] {
            let got = SINE_361.apply(t, |om| om * (-c * om).exp());
            let want = 2.0 * c * t / (c * c + t * t).powi(2);
            let rel = ((got - want) / want).abs();
            assert!(rel < 1e-5, "c={c} t={t}: rel err {rel:.3e}");
        }
    }

    #[test]
    fn sine_short_filter_within_coarser_tolerance() {
        for &(c, t) in &[(0.3, 1.0), (1.0, 0.02), (3.0, 30.0)] {
            let got = SINE_241.apply(t, |om| om * (-c * om).exp());
            let want = 2.0 * c * t / (c * c + t * t).powi(2);
            let rel = ((got - want) / want).abs();
            assert!(rel < 1e-3, "c={c} t={t}: rel err {rel:.3e}");
        }
    }

    #[test]
    fn abscissae_are_geometric() {
        for f in [&HANKEL_J1_201, &HANKEL_J1_101, &SINE_361, &SINE_241] {
            assert_eq!(f.base.len(), f.weights.len());
            let ratio = f.spacing.exp();
            for pair in f.base.windows(2) {
                let r = pair[1] / pair[0];
                assert!((r / ratio - 1.0).abs() < 1e-12);
            }
        }
    }
}
