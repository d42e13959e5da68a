use crate::error::Result;
use crate::system::Waveform;

/// Gauss-Legendre nodes and weights on [-1, 1], found by Newton iteration on
/// the Legendre polynomial from the usual cosine initial guesses.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // P_n(x) and its derivative via the three-term recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// ∫ g(u) du over [u0, u1] by fixed-order Gauss-Legendre on a log abscissa,
/// which suits the near-power-law decays integrated here.
fn integrate_log<F: FnMut(f64) -> Result<f64>>(
    mut g: F,
    u0: f64,
    u1: f64,
    nodes: &[f64],
    weights: &[f64],
) -> Result<f64> {
    debug_assert!(u0 > 0.0 && u1 > u0);
    let (v0, v1) = (u0.ln(), u1.ln());
    let half = 0.5 * (v1 - v0);
    let mid = 0.5 * (v1 + v0);
    let mut acc = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        let u = (mid + half * x).exp();
        acc += w * g(u)? * u; // du = u dv
    }
    Ok(acc * half)
}

/// dB_z/dt at the requested times for the given transmitter waveform,
/// as the convolution of dI/dt with the unit step-off response `step_f`: a
/// sum over linear current segments, each contributing −slope·∫ f(u) du over
/// the segment's image [t−τ_end, t−τ_start]. An ideal step reduces to
/// I₀·f(t) with no quadrature at all.
pub fn convolve_waveform<F: FnMut(f64) -> Result<f64>>(
    mut step_f: F,
    waveform: &Waveform,
    times: &[f64],
    gl_order: usize,
) -> Result<Vec<f64>> {
    match waveform {
        Waveform::StepOff { current } => {
            times.iter().map(|&t| Ok(current * step_f(t)?)).collect()
        }
        Waveform::PiecewiseLinear { .. } => {
            let segments = waveform.segments();
            let (nodes, weights) = gauss_legendre(gl_order);
            times
                .iter()
                .map(|&t| {
                    let mut acc = 0.0;
                    for &(tau0, tau1, slope) in &segments {
                        let part =
                            integrate_log(&mut step_f, t - tau1, t - tau0, &nodes, &weights)?;
                        acc -= slope * part;
                    }
                    Ok(acc)
                })
                .collect()
        }
    }
}

/// Average a continuous dB/dt sampler over each gate window; zero-width
/// gates sample the center directly.
pub fn gate_integrate<F: FnMut(f64) -> Result<f64>>(
    mut dbdt: F,
    edges: &[(f64, f64)],
    gl_order: usize,
) -> Result<Vec<f64>> {
    let (nodes, weights) = gauss_legendre(gl_order);
    edges
        .iter()
        .map(|&(t0, t1)| {
            if t1 <= t0 {
                dbdt(0.5 * (t0 + t1))
            } else {
                let half = 0.5 * (t1 - t0);
                let mid = 0.5 * (t1 + t0);
                let mut acc = 0.0;
                for (x, w) in nodes.iter().zip(&weights) {
                    acc += w * dbdt(mid + half * x)?;
                }
                Ok(0.5 * acc) // weights sum to 2; average needs 1/(t1-t0)·half
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in [2, 8, 24] {
            let (x, w) = gauss_legendre(n);
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-14, "order {n} weight sum {total}");
            let x2: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi * xi).sum();
            assert!((x2 - 2.0 / 3.0).abs() < 1e-14);
            // degree 2n-1 is still exact: use x^(2n-1) (odd => 0)
            let odd: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(2 * n as i32 - 1)).sum();
            assert!(odd.abs() < 1e-14);
        }
    }

    #[test]
    fn log_quadrature_handles_power_laws() {
        let (nodes, weights) = gauss_legendre(24);
        // ∫ u^{-5/2} du from 1e-4 to 1e-2 = [u^{-3/2}/(-3/2)]
        let got = integrate_log(|u| Ok(u.powf(-2.5)), 1e-4, 1e-2, &nodes, &weights).unwrap();
        let want = (1e-4f64.powf(-1.5) - 1e-2f64.powf(-1.5)) / 1.5;
        assert!(((got - want) / want).abs() < 1e-10);
    }

    #[test]
    fn gate_average_of_constant_is_identity() {
        let got = gate_integrate(|_| Ok(3.25), &[(1e-4, 2e-4), (5e-4, 5e-4)], 8).unwrap();
        assert!((got[0] - 3.25).abs() < 1e-14);
        assert!((got[1] - 3.25).abs() < 1e-14);
    }

    #[test]
    fn gate_average_of_power_law_matches_closed_form() {
        // mean of t^{-5/2} over [t0, t1] = (t0^{-3/2} - t1^{-3/2}) / (1.5 (t1-t0))
        let (t0, t1) = (9e-4, 1.1e-3);
        let got = gate_integrate(|t| Ok(t.powf(-2.5)), &[(t0, t1)], 8).unwrap()[0];
        let want = (t0.powf(-1.5) - t1.powf(-1.5)) / (1.5 * (t1 - t0));
        assert!(((got - want) / want).abs() < 1e-6, "got {got} want {want}");
    }

    #[test]
    fn zero_width_gate_equals_direct_sample() {
        let f = |t: f64| Ok(t * t + 1.0);
        let got = gate_integrate(f, &[(2e-3, 2e-3)], 8).unwrap()[0];
        assert!((got - (2e-3f64 * 2e-3 + 1.0)).abs() < 1e-15);
    }
}
