use num_complex::Complex64;

/// Vacuum permeability, H/m.
pub const MU0: f64 = 4.0e-7 * std::f64::consts::PI;

/// tanh(u·d) with the argument's real part capped: beyond ~20 the value is 1
/// to machine precision and the explicit cap avoids overflow in cosh/sinh for
/// thick, conductive layers at high frequency.
#[inline]
fn tanh_guarded(z: Complex64) -> Complex64 {
    if z.re > 20.0 {
        Complex64::new(1.0, 0.0)
    } else {
        z.tanh()
    }
}

/// One step of the admittance recursion: layer with intrinsic admittance
/// `yhat` and tanh factor `th` on top of a stack presenting admittance `y`.
/// Written as a ratio of bounded quantities; no raw layer exponentials.
#[inline]
fn admittance_step(yhat: Complex64, th: Complex64, y: Complex64) -> Complex64 {
    yhat * (y + yhat * th) / (yhat + y * th)
}

#[inline]
fn intrinsic(lambda: f64, iwm: Complex64, sigma: f64) -> (Complex64, Complex64) {
    let u = (Complex64::new(lambda * lambda, 0.0) + iwm * sigma).sqrt();
    (u, u / iwm)
}

/// TE-mode reflection coefficient of a layered half-space seen from above,
/// quasi-static (displacement currents neglected), e^{+iωt} time factor.
/// `sigma` are layer conductivities top-down, `d` the thicknesses of all but
/// the last layer. Built bottom-up so each step stays O(1) in magnitude.
pub fn rte_kernel(sigma: &[f64], d: &[f64], omega: f64, lambda: f64) -> Complex64 {
    let iwm = Complex64::new(0.0, omega * MU0);
    let nl = sigma.len();
    let (_, mut y) = intrinsic(lambda, iwm, sigma[nl - 1]);
    for l in (0..nl - 1).rev() {
        let (u, yhat) = intrinsic(lambda, iwm, sigma[l]);
        let th = tanh_guarded(u * d[l]);
        y = admittance_step(yhat, th, y);
    }
    let y0 = lambda / iwm;
    (y0 - y) / (y0 + y)
}

/// Scratch space for re-evaluating `rte_kernel` with one layer's conductivity
/// changed, reusing everything below and beside that layer. `fill` performs a
/// plain evaluation while recording per-layer intermediates; `perturbed` then
/// reproduces, operation for operation, what a full recursion with the
/// altered conductivity would compute — so finite-difference columns built on
/// it are identical to ones built on fresh forward calls.
pub struct RteCache {
    n_layers: usize,
    /// Per layer: intrinsic admittance, tanh factor, and the admittance of
    /// the stack from that layer downwards.
    yhat: Vec<Complex64>,
    th: Vec<Complex64>,
    ysub: Vec<Complex64>,
}

impl RteCache {
    pub fn new(n_layers: usize) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        RteCache {
            n_layers,
            yhat: vec![zero; n_layers],
            th: vec![zero; n_layers],
            ysub: vec![zero; n_layers],
        }
    }

    pub fn fill(&mut self, sigma: &[f64], d: &[f64], omega: f64, lambda: f64) -> Complex64 {
        debug_assert_eq!(sigma.len(), self.n_layers);
        let iwm = Complex64::new(0.0, omega * MU0);
        let nl = self.n_layers;
        let (u, yhat) = intrinsic(lambda, iwm, sigma[nl - 1]);
        let _ = u;
        self.yhat[nl - 1] = yhat;
        self.ysub[nl - 1] = yhat;
        let mut y = yhat;
        for l in (0..nl - 1).rev() {
            let (u, yhat) = intrinsic(lambda, iwm, sigma[l]);
            let th = tanh_guarded(u * d[l]);
            y = admittance_step(yhat, th, y);
            self.yhat[l] = yhat;
            self.th[l] = th;
            self.ysub[l] = y;
        }
        let y0 = lambda / iwm;
        (y0 - y) / (y0 + y)
    }

    /// Reflection coefficient with layer `j`'s conductivity replaced by
    /// `sigma_j`, all other layers as in the last `fill`.
    pub fn perturbed(
        &self,
        j: usize,
        sigma_j: f64,
        d: &[f64],
        omega: f64,
        lambda: f64,
    ) -> Complex64 {
        let iwm = Complex64::new(0.0, omega * MU0);
        let nl = self.n_layers;
        let (u, yhat_j) = intrinsic(lambda, iwm, sigma_j);
        let mut y = if j == nl - 1 {
            yhat_j
        } else {
            let th = tanh_guarded(u * d[j]);
            admittance_step(yhat_j, th, self.ysub[j + 1])
        };
        for l in (0..j).rev() {
            y = admittance_step(self.yhat[l], self.th[l], y);
        }
        let y0 = lambda / iwm;
        (y0 - y) / (y0 + y)
    }
}
