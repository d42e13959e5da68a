//! Adaptive-quadrature backend for the forward operator: the same physics as
//! the digital-filter pipeline, evaluated by direct numerical integration
//! with its own Bessel evaluation, interval subdivision, and tail
//! acceleration. Slow but filter-free — the cross-check the fast path is
//! validated against.

use num_complex::Complex64;

use crate::error::{AtemError, Result};
use crate::forward::convolve::{convolve_waveform, gate_integrate, gauss_legendre};
use crate::forward::rte::{rte_kernel, MU0};
use crate::model::LayeredModel;
use crate::system::{Sounding, SystemConfig};

/// J0 by power series below 20 and the large-argument asymptotic expansion
/// above; worst relative error near the switch is ~1e-9.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 20.0 {
        let q = -0.25 * ax * ax;
        let mut term = 1.0;
        let mut sum = 1.0;
        for m in 1..80 {
            term *= q / ((m * m) as f64);
            sum += term;
            if term.abs() < 1e-17 * sum.abs() + 1e-300 {
                break;
            }
        }
        sum
    } else {
        asymptotic(ax, 0.0)
    }
}

/// J1, same construction as `bessel_j0`.
pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    let val = if ax < 20.0 {
        let q = -0.25 * ax * ax;
        let mut term = 0.5 * ax;
        let mut sum = term;
        for m in 1..80 {
            term *= q / ((m * (m + 1)) as f64);
            sum += term;
            if term.abs() < 1e-17 * sum.abs() + 1e-300 {
                break;
            }
        }
        sum
    } else {
        asymptotic(ax, 4.0)
    };
    if x < 0.0 {
        -val
    } else {
        val
    }
}

/// Stokes expansion sqrt(2/πx)·[P cos χ − Q sin χ], χ = x − (2ν+1)π/4, with
/// μ = 4ν² and the standard P/Q series truncated once terms stop shrinking.
fn asymptotic(x: f64, mu: f64) -> f64 {
    let inv8x = 1.0 / (8.0 * x);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut num = 1.0;
    let mut k = 0u32;
    let mut prev = f64::INFINITY;
    loop {
        // factor (μ − (2k+1)²) / (k+1) · 1/(8x), alternating into P and Q
        let odd = (2 * k + 1) as f64;
        num *= (mu - odd * odd) / ((k + 1) as f64) * inv8x;
        let mag = num.abs();
        if mag >= prev || mag < 1e-18 || k > 20 {
            break;
        }
        prev = mag;
        match k % 4 {
            0 => q += num,
            1 => p -= num,
            2 => q -= num,
            _ => p += num,
        }
        k += 1;
    }
    let chi = x - (if mu == 0.0 { 1.0 } else { 3.0 }) * std::f64::consts::FRAC_PI_4;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// k-th positive zero of J1 (k = 1 → 3.8317…), McMahon seed plus Newton.
pub fn j1_zero(k: usize) -> f64 {
    let beta = (k as f64 + 0.25) * std::f64::consts::PI;
    let mut x = beta - 3.0 / (8.0 * beta);
    for _ in 0..40 {
        let f = bessel_j1(x);
        let df = bessel_j0(x) - f / x;
        let dx = f / df;
        x -= dx;
        if dx.abs() < 1e-14 {
            break;
        }
    }
    x
}

/// Complex-valued adaptive quadrature: bisect until the embedded 12/24-point
/// Gauss estimates agree to `rel_tol` locally.
fn adaptive_complex<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    a: f64,
    b: f64,
    rel_tol: f64,
    depth: usize,
) -> Complex64 {
    fn gl_apply<F: FnMut(f64) -> Complex64>(
        f: &mut F,
        a: f64,
        b: f64,
        nodes: &[f64],
        weights: &[f64],
    ) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in nodes.iter().zip(weights) {
            acc += *w * f(mid + half * x);
        }
        acc * half
    }
    let (n12, w12) = gauss_legendre(12);
    let (n24, w24) = gauss_legendre(24);
    // explicit worklist instead of recursion
    let mut total = Complex64::new(0.0, 0.0);
    let mut stack = vec![(a, b, depth)];
    while let Some((a, b, depth)) = stack.pop() {
        let coarse = gl_apply(f, a, b, &n12, &w12);
        let fine = gl_apply(f, a, b, &n24, &w24);
        let err = (fine - coarse).norm();
        if err <= rel_tol * fine.norm() + 1e-300 || depth == 0 {
            total += fine;
        } else {
            let mid = 0.5 * (a + b);
            stack.push((a, mid, depth - 1));
            stack.push((mid, b, depth - 1));
        }
    }
    total
}

/// Iterated Aitken extrapolation of the partial sums of a (near-)alternating
/// series; returns the accelerated limit.
fn aitken_limit(terms: &[f64]) -> f64 {
    let mut s: Vec<f64> = Vec::with_capacity(terms.len());
    let mut acc = 0.0;
    for t in terms {
        acc += t;
        s.push(acc);
    }
    while s.len() >= 3 {
        let mut next = Vec::with_capacity(s.len() - 2);
        for i in 0..s.len() - 2 {
            let (s0, s1, s2) = (s[i], s[i + 1], s[i + 2]);
            let denom = (s2 - s1) - (s1 - s0);
            if denom.abs() < 1e-300 {
                next.push(s2);
            } else {
                next.push(s2 - (s2 - s1) * (s2 - s1) / denom);
            }
        }
        s = next;
    }
    *s.last().unwrap_or(&acc)
}

/// Secondary H_z on the axis of a circular loop of radius `a` at height `h`,
/// receiver at height `z`, per unit transmitter current:
/// (a/2) ∫ rTE(λ,ω) e^{−λ(z+h)} λ J1(λa) dλ, integrated between consecutive
/// Bessel zeros with Aitken acceleration of the oscillatory tail.
pub fn hz_quadrature(model: &LayeredModel, sys: &SystemConfig, omega: f64, rel_tol: f64) -> Complex64 {
    let sigma = model.conductivities();
    let d = &model.thicknesses;
    let a = sys.tx_radius;
    let zh = sys.tx_height + sys.rx_height();
    let mut integrand = |lam: f64| -> Complex64 {
        if lam <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        rte_kernel(&sigma, d, omega, lam) * ((-lam * zh).exp() * lam * bessel_j1(lam * a))
    };
    // Head: from 0 to the first Bessel zero, where the integrand shape is set
    // by rTE's rise rather than by the oscillation.
    let mut total = adaptive_complex(&mut integrand, 0.0, j1_zero(1) / a, rel_tol, 24);
    // Oscillatory part: one lobe per interval between zeros.
    let (n16, w16) = gauss_legendre(16);
    let lobe = |k: usize| -> Complex64 {
        let (lo, hi) = (j1_zero(k) / a, j1_zero(k + 1) / a);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in n16.iter().zip(&w16) {
            acc += *w * integrand(mid + half * x);
        }
        acc * half
    };
    let direct_max = 60;
    let tail_len = 24;
    let mut k = 1;
    let mut scale = total.norm();
    while k <= direct_max {
        let seg = lobe(k);
        total += seg;
        scale = scale.max(seg.norm());
        k += 1;
        if seg.norm() < 1e-12 * scale {
            return (a / 2.0) * total;
        }
    }
    // Remaining tail decays like a power law with alternating lobes.
    let re: Vec<f64> = (k..k + tail_len).map(|j| lobe(j).re).collect();
    let im: Vec<f64> = (k..k + tail_len).map(|j| lobe(j).im).collect();
    total += Complex64::new(aitken_limit(&re), aitken_limit(&im));
    (a / 2.0) * total
}

/// Step-off dB_z/dt per unit current by direct sine-transform integration of
/// the quadrature-evaluated spectrum: f(t) = −(2/π) ∫ Im F(ω) sin(ωt) dω
/// with Im F = −μ₀ Im H_z, split at the sine half-periods.
pub fn step_response_quadrature(
    model: &LayeredModel,
    sys: &SystemConfig,
    t: f64,
    rel_tol: f64,
) -> Result<f64> {
    let inner_tol = (rel_tol * 0.1).max(1e-11);
    let im_f = |omega: f64| -> f64 {
        if omega <= 0.0 {
            return 0.0;
        }
        -MU0 * hz_quadrature(model, sys, omega, inner_tol).im
    };
    let pi_t = std::f64::consts::PI / t;
    let mut head_f = |omega: f64| Complex64::new(im_f(omega) * (omega * t).sin(), 0.0);
    let mut total = adaptive_complex(&mut head_f, 0.0, pi_t, rel_tol, 24).re;
    let (n16, w16) = gauss_legendre(16);
    let mut lobe = |k: usize| -> f64 {
        let (lo, hi) = (k as f64 * pi_t, (k + 1) as f64 * pi_t);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = 0.0;
        for (x, w) in n16.iter().zip(&w16) {
            let omega = mid + half * x;
            acc += *w * im_f(omega) * (omega * t).sin();
        }
        acc * half
    };
    let direct_max = 40;
    let tail_len = 24;
    let mut scale: f64 = total.abs();
    let mut k = 1;
    while k <= direct_max {
        let seg = lobe(k);
        total += seg;
        scale = scale.max(seg.abs());
        k += 1;
        if seg.abs() < 1e-12 * scale {
            break;
        }
    }
    if k > direct_max {
        let tail: Vec<f64> = (k..k + tail_len).map(&mut lobe).collect();
        let before: f64 = total;
        total = before + aitken_limit(&tail);
    }
    let f = -(2.0 / std::f64::consts::PI) * total;
    if !f.is_finite() {
        return Err(AtemError::numerical(format!(
            "quadrature step response diverged at t = {t:.3e} s"
        )));
    }
    Ok(f)
}

/// Full forward pipeline on the quadrature backend: step response by direct
/// integration, then the same waveform convolution and gate averaging as the
/// fast path. Orders of magnitude slower; meant for validation runs.
pub fn forward_oracle(model: &LayeredModel, sys: &SystemConfig, rel_tol: f64) -> Result<Sounding> {
    model.validate()?;
    sys.validate()?;
    let step_f = |u: f64| step_response_quadrature(model, sys, u, rel_tol);
    let edges = sys.gate_edges();
    let mut dbdt_at = |t: f64| -> Result<f64> {
        Ok(convolve_waveform(step_f, &sys.waveform, &[t], 8)?[0])
    };
    let values = gate_integrate(&mut dbdt_at, &edges, 4)?;
    let scale = sys.unit_scale();
    Ok(Sounding {
        gate_times: sys.gate_centers.clone(),
        dbdt: values.iter().map(|v| v * scale).collect(),
        height: sys.tx_height,
        unit: sys.normalization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bessel_values_match_references() {
        // Reference values from standard tables (15 significant digits).
        let cases_j0 = [
            (0.5, 0.9384698072408129),
            (1.0, 0.7651976865579666),
            (5.0, -0.1775967713143383),
            (19.5, 0.1788538270401729),
            (20.5, 0.1150969602536748),
            (50.0, 0.0558123276692518),
        ];
        for (x, want) in cases_j0 {
            let got = bessel_j0(x);
            assert!((got - want).abs() < 2e-9, "J0({x}) = {got}, want {want}");
        }
        let cases_j1 = [
            (0.5, 0.2422684576748739),
            (1.0, 0.4400505857449335),
            (5.0, -0.3275791375914652),
            (19.5, -0.0208770701480975),
            (20.5, 0.1362546881933957),
            (50.0, -0.0975118281251751),
        ];
        for (x, want) in cases_j1 {
            let got = bessel_j1(x);
            assert!((got - want).abs() < 2e-9, "J1({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn j1_zeros_are_zeros() {
        let known_first = 3.8317059702075123;
        assert!((j1_zero(1) - known_first).abs() < 1e-10);
        for k in [1, 2, 7, 30, 100] {
            let z = j1_zero(k);
            assert!(bessel_j1(z).abs() < 1e-10, "J1(zero {k}) = {}", bessel_j1(z));
            assert!(z > j1_zero(k.saturating_sub(1).max(1)) - 1e-9);
        }
    }

    #[test]
    fn lipschitz_hankel_identity_checks_the_lambda_quadrature() {
        // ∫ e^{−cλ} λ J1(λ a) dλ = a / (c² + a²)^{3/2}: run the same segment
        // + Aitken machinery on this closed-form case via a stub integrand.
        let a = 10.0f64;
        let c = 7.0f64;
        let mut integrand =
            |lam: f64| Complex64::new((-c * lam).exp() * lam * bessel_j1(lam * a), 0.0);
        let mut total = adaptive_complex(&mut integrand, 0.0, j1_zero(1) / a, 1e-11, 24);
        let (n16, w16) = gauss_legendre(16);
        let lobe = |k: usize| -> Complex64 {
            let (lo, hi) = (j1_zero(k) / a, j1_zero(k + 1) / a);
            let (half, mid) = (0.5 * (hi - lo), 0.5 * (hi + lo));
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, w) in n16.iter().zip(&w16) {
                acc += *w * integrand(mid + half * x);
            }
            acc * half
        };
        for k in 1..=60 {
            total += lobe(k);
        }
        let re: Vec<f64> = (61..61 + 24).map(|j| lobe(j).re).collect();
        total += Complex64::new(aitken_limit(&re), 0.0);
        let want = a / (c * c + a * a).powf(1.5);
        assert!(
            ((total.re - want) / want).abs() < 1e-8,
            "got {}, want {want}",
            total.re
        );
    }

    #[test]
    fn aitken_accelerates_alternating_tails() {
        // Σ (−1)^{k+1} / k^{3/2} from k=1: value = (1 − 2^{-1/2}) ζ(3/2)
        //  = 0.7651470246254080; feed only 30 terms.
        let terms: Vec<f64> = (1..=30)
            .map(|k| if k % 2 == 1 { 1.0 } else { -1.0 } / (k as f64).powf(1.5))
            .collect();
        let got = aitken_limit(&terms);
        let want = 0.7651470246254080;
        assert!((got - want).abs() < 1e-9, "got {got}");
    }
}
