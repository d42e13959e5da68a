//! The differentiable primitive set: elementwise arithmetic with
//! row/column broadcasting, matrix products, shape surgery, reductions,
//! softmax, layer norm, gelu, embedding lookup, and mean-squared error.
//! Each operation computes its value eagerly and registers a closure that
//! maps the upstream gradient to one gradient per parent.

use ndarray::{concatenate, Array2, ArrayD, Axis, Ix2, IxDyn, Slice};

use super::{BackwardFn, Tape, Var};
use crate::error::{AtemError, Result};

fn broadcast_shape(a: &[usize], b: &[usize], op: &str) -> Result<Vec<usize>> {
    let n = a.len().max(b.len());
    if n > 2 {
        return Err(AtemError::config(format!(
            "{op}: tensors of rank {} and {} exceed the supported rank 2",
            a.len(),
            b.len()
        )));
    }
    let from_right = |s: &[usize], i: usize| -> usize {
        if i < s.len() {
            s[s.len() - 1 - i]
        } else {
            1
        }
    };
    let mut out = vec![0; n];
    for i in 0..n {
        let (x, y) = (from_right(a, i), from_right(b, i));
        if x == y || x == 1 || y == 1 {
            out[n - 1 - i] = x.max(y);
        } else {
            return Err(AtemError::config(format!(
                "{op}: shapes {a:?} and {b:?} are not broadcast-compatible"
            )));
        }
    }
    Ok(out)
}

fn bcast(a: &ArrayD<f64>, shape: &[usize]) -> ArrayD<f64> {
    if a.shape() == shape {
        a.clone()
    } else {
        a.broadcast(IxDyn(shape)).expect("validated broadcast").to_owned()
    }
}

/// Sums an upstream gradient down to the shape of a broadcast operand.
fn reduce_to(g: &ArrayD<f64>, shape: &[usize]) -> ArrayD<f64> {
    if g.shape() == shape {
        return g.clone();
    }
    if shape.is_empty() {
        return ArrayD::from_elem(IxDyn(&[]), g.sum());
    }
    let mut out = g.clone();
    while out.ndim() > shape.len() {
        out = out.sum_axis(Axis(0));
    }
    for ax in 0..shape.len() {
        if shape[ax] == 1 && out.shape()[ax] != 1 {
            out = out.sum_axis(Axis(ax)).insert_axis(Axis(ax));
        }
    }
    out
}

fn as2(a: &ArrayD<f64>, op: &str) -> Result<Array2<f64>> {
    a.view()
        .into_dimensionality::<Ix2>()
        .map(|v| v.to_owned())
        .map_err(|_| {
            AtemError::config(format!("{op}: expected a matrix, got shape {:?}", a.shape()))
        })
}

impl<'t> Var<'t> {
    fn binary(
        self,
        other: Var<'t>,
        value: ArrayD<f64>,
        backward: BackwardFn,
    ) -> Var<'t> {
        let needs = self.needs_grad() || other.needs_grad();
        self.tape
            .push(value, vec![self.idx, other.idx], Some(backward), needs)
    }

    fn unary(self, value: ArrayD<f64>, backward: BackwardFn) -> Var<'t> {
        let needs = self.needs_grad();
        self.tape.push(value, vec![self.idx], Some(backward), needs)
    }

    pub fn add(self, other: Var<'t>) -> Result<Var<'t>> {
        let (a, b) = (self.value(), other.value());
        let shape = broadcast_shape(a.shape(), b.shape(), "add")?;
        let value = bcast(&a, &shape) + bcast(&b, &shape);
        let (sa, sb) = (a.shape().to_vec(), b.shape().to_vec());
        Ok(self.binary(
            other,
            value,
            Box::new(move |g| Ok(vec![reduce_to(g, &sa), reduce_to(g, &sb)])),
        ))
    }

    pub fn sub(self, other: Var<'t>) -> Result<Var<'t>> {
        let (a, b) = (self.value(), other.value());
        let shape = broadcast_shape(a.shape(), b.shape(), "sub")?;
        let value = bcast(&a, &shape) - bcast(&b, &shape);
        let (sa, sb) = (a.shape().to_vec(), b.shape().to_vec());
        Ok(self.binary(
            other,
            value,
            Box::new(move |g| Ok(vec![reduce_to(g, &sa), reduce_to(&(-g), &sb)])),
        ))
    }

    pub fn mul(self, other: Var<'t>) -> Result<Var<'t>> {
        let (a, b) = (self.value(), other.value());
        let shape = broadcast_shape(a.shape(), b.shape(), "mul")?;
        let (af, bf) = (bcast(&a, &shape), bcast(&b, &shape));
        let value = &af * &bf;
        let (sa, sb) = (a.shape().to_vec(), b.shape().to_vec());
        Ok(self.binary(
            other,
            value,
            Box::new(move |g| {
                Ok(vec![reduce_to(&(g * &bf), &sa), reduce_to(&(g * &af), &sb)])
            }),
        ))
    }

    pub fn div(self, other: Var<'t>) -> Result<Var<'t>> {
        let (a, b) = (self.value(), other.value());
        let shape = broadcast_shape(a.shape(), b.shape(), "div")?;
        let (af, bf) = (bcast(&a, &shape), bcast(&b, &shape));
        let value = &af / &bf;
        let (sa, sb) = (a.shape().to_vec(), b.shape().to_vec());
        Ok(self.binary(
            other,
            value,
            Box::new(move |g| {
                let ga = g / &bf;
                let gb = -(g * &af) / (&bf * &bf);
                Ok(vec![reduce_to(&ga, &sa), reduce_to(&gb, &sb)])
            }),
        ))
    }

    pub fn neg(self) -> Var<'t> {
        let value = -self.value();
        self.unary(value, Box::new(move |g| Ok(vec![-g])))
    }

    /// Multiplication by a compile-time constant (no gradient for the
    /// constant).
    pub fn scale(self, c: f64) -> Var<'t> {
        let value = self.value() * c;
        self.unary(value, Box::new(move |g| Ok(vec![g * c])))
    }

    pub fn matmul(self, other: Var<'t>) -> Result<Var<'t>> {
        let a = as2(&self.value(), "matmul")?;
        let b = as2(&other.value(), "matmul")?;
        if a.ncols() != b.nrows() {
            return Err(AtemError::config(format!(
                "matmul: inner dimensions disagree, {:?} vs {:?}",
                a.shape(),
                b.shape()
            )));
        }
        let value = a.dot(&b).into_dyn();
        Ok(self.binary(
            other,
            value,
            Box::new(move |g| {
                let g2 = as2(g, "matmul backward")?;
                let ga = g2.dot(&b.t()).into_dyn();
                let gb = a.t().dot(&g2).into_dyn();
                Ok(vec![ga, gb])
            }),
        ))
    }

    pub fn transpose(self) -> Result<Var<'t>> {
        let a = as2(&self.value(), "transpose")?;
        let value = a.t().to_owned().into_dyn();
        Ok(self.unary(
            value,
            Box::new(move |g| {
                let g2 = as2(g, "transpose backward")?;
                Ok(vec![g2.t().to_owned().into_dyn()])
            }),
        ))
    }

    /// Rows or columns `lo..hi` along `axis` of a matrix.
    pub fn slice_axis(self, axis: usize, lo: usize, hi: usize) -> Result<Var<'t>> {
        let a = self.value();
        if a.ndim() != 2 || axis > 1 {
            return Err(AtemError::config(format!(
                "slice: expected matrix and axis 0/1, got shape {:?}, axis {axis}",
                a.shape()
            )));
        }
        if lo >= hi || hi > a.shape()[axis] {
            return Err(AtemError::config(format!(
                "slice: range {lo}..{hi} out of bounds for axis {axis} of shape {:?}",
                a.shape()
            )));
        }
        let value = a
            .slice_axis(Axis(axis), Slice::from(lo..hi))
            .to_owned();
        let in_shape = a.shape().to_vec();
        Ok(self.unary(
            value,
            Box::new(move |g| {
                let mut out = ArrayD::zeros(IxDyn(&in_shape));
                out.slice_axis_mut(Axis(axis), Slice::from(lo..hi))
                    .assign(g);
                Ok(vec![out])
            }),
        ))
    }

    pub fn sum(self) -> Var<'t> {
        let a = self.value();
        let shape = a.shape().to_vec();
        let value = ArrayD::from_elem(IxDyn(&[]), a.sum());
        self.unary(
            value,
            Box::new(move |g| {
                let gs = g.iter().next().copied().unwrap();
                Ok(vec![ArrayD::from_elem(IxDyn(&shape), gs)])
            }),
        )
    }

    pub fn mean(self) -> Var<'t> {
        let n = self.value().len() as f64;
        self.sum().scale(1.0 / n)
    }

    /// Sum along one axis of a matrix, keeping the axis with length 1 so the
    /// result broadcasts back naturally.
    pub fn sum_axis_keep(self, axis: usize) -> Result<Var<'t>> {
        let a = self.value();
        if a.ndim() != 2 || axis > 1 {
            return Err(AtemError::config(format!(
                "sum_axis: expected matrix and axis 0/1, got shape {:?}, axis {axis}",
                a.shape()
            )));
        }
        let value = a.sum_axis(Axis(axis)).insert_axis(Axis(axis));
        let in_shape = a.shape().to_vec();
        Ok(self.unary(
            value,
            Box::new(move |g| Ok(vec![bcast(g, &in_shape)])),
        ))
    }

    pub fn mean_axis_keep(self, axis: usize) -> Result<Var<'t>> {
        let n = self.value().shape()[axis] as f64;
        Ok(self.sum_axis_keep(axis)?.scale(1.0 / n))
    }

    /// Numerically stable softmax along `axis` of a matrix.
    pub fn softmax(self, axis: usize) -> Result<Var<'t>> {
        let a = self.value();
        if a.ndim() != 2 || axis > 1 {
            return Err(AtemError::config(format!(
                "softmax: expected matrix and axis 0/1, got shape {:?}, axis {axis}",
                a.shape()
            )));
        }
        let mut value = a.clone();
        for mut lane in value.lanes_mut(Axis(axis)) {
            let max = lane.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            lane.mapv_inplace(|v| (v - max).exp());
            let total = lane.sum();
            lane.mapv_inplace(|v| v / total);
        }
        let y = value.clone();
        Ok(self.unary(
            value,
            Box::new(move |g| {
                // dx = y ⊙ (g − Σ_axis g⊙y)
                let s = (g * &y).sum_axis(Axis(axis)).insert_axis(Axis(axis));
                let s = bcast(&s, y.shape());
                Ok(vec![&y * &(g - &s)])
            }),
        ))
    }

    /// Per-row standardization over the last axis (no learned affine part;
    /// compose with `mul`/`add` against parameter rows for gain and bias).
    pub fn layer_norm(self, eps: f64) -> Result<Var<'t>> {
        let a = as2(&self.value(), "layer_norm")?;
        let n = a.ncols() as f64;
        let mut y = a.clone();
        let mut inv = Vec::with_capacity(a.nrows());
        for mut row in y.rows_mut() {
            let mu = row.sum() / n;
            let var = row.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / n;
            let s = 1.0 / (var + eps).sqrt();
            inv.push(s);
            row.mapv_inplace(|v| (v - mu) * s);
        }
        let value = y.clone().into_dyn();
        Ok(self.unary(
            value,
            Box::new(move |g| {
                let g2 = as2(g, "layer_norm backward")?;
                let mut out = Array2::<f64>::zeros(g2.raw_dim());
                for (i, ((grow, yrow), orow)) in g2
                    .rows()
                    .into_iter()
                    .zip(y.rows())
                    .zip(out.rows_mut().into_iter())
                    .enumerate()
                {
                    let mut orow = orow;
                    let gm = grow.sum() / n;
                    let gym = grow
                        .iter()
                        .zip(yrow.iter())
                        .map(|(g, y)| g * y)
                        .sum::<f64>()
                        / n;
                    for ((o, g), y) in orow.iter_mut().zip(grow.iter()).zip(yrow.iter()) {
                        *o = inv[i] * (g - gm - y * gym);
                    }
                }
                Ok(vec![out.into_dyn()])
            }),
        ))
    }

    /// Gaussian-error linear unit in its tanh form.
    pub fn gelu(self) -> Var<'t> {
        const C: f64 = 0.7978845608028654; // sqrt(2/pi)
        const K: f64 = 0.044715;
        let x = self.value();
        let value = x.mapv(|v| 0.5 * v * (1.0 + (C * (v + K * v * v * v)).tanh()));
        self.unary(
            value,
            Box::new(move |g| {
                let d = x.mapv(|v| {
                    let t = (C * (v + K * v * v * v)).tanh();
                    0.5 * (1.0 + t) + 0.5 * v * (1.0 - t * t) * C * (1.0 + 3.0 * K * v * v)
                });
                Ok(vec![g * &d])
            }),
        )
    }

    pub fn tanh(self) -> Var<'t> {
        let value = self.value().mapv(f64::tanh);
        let y = value.clone();
        self.unary(
            value,
            Box::new(move |g| Ok(vec![g * &y.mapv(|v| 1.0 - v * v)])),
        )
    }

    pub fn exp(self) -> Var<'t> {
        let value = self.value().mapv(f64::exp);
        let y = value.clone();
        self.unary(value, Box::new(move |g| Ok(vec![g * &y])))
    }

    /// Hard clamp; the gradient passes through inside [lo, hi] and is zero
    /// outside.
    pub fn clamp(self, lo: f64, hi: f64) -> Var<'t> {
        let x = self.value();
        let value = x.mapv(|v| v.clamp(lo, hi));
        self.unary(
            value,
            Box::new(move |g| {
                let mask = x.mapv(|v| if (lo..=hi).contains(&v) { 1.0 } else { 0.0 });
                Ok(vec![g * &mask])
            }),
        )
    }

    /// Gathers rows of an embedding table; gradients scatter-add back.
    pub fn lookup(self, indices: &[usize]) -> Result<Var<'t>> {
        let table = as2(&self.value(), "embedding_lookup")?;
        let (v, d) = (table.nrows(), table.ncols());
        for &i in indices {
            if i >= v {
                return Err(AtemError::config(format!(
                    "embedding_lookup: index {i} out of range for table with {v} rows"
                )));
            }
        }
        let mut value = Array2::<f64>::zeros((indices.len(), d));
        for (r, &i) in indices.iter().enumerate() {
            value.row_mut(r).assign(&table.row(i));
        }
        let indices = indices.to_vec();
        Ok(self.unary(
            value.into_dyn(),
            Box::new(move |g| {
                let g2 = as2(g, "embedding_lookup backward")?;
                let mut out = Array2::<f64>::zeros((v, d));
                for (r, &i) in indices.iter().enumerate() {
                    let mut row = out.row_mut(i);
                    row += &g2.row(r);
                }
                Ok(vec![out.into_dyn()])
            }),
        ))
    }

    /// Mean squared error against a same-shape tensor, as a scalar.
    pub fn mse(self, other: Var<'t>) -> Result<Var<'t>> {
        let (a, b) = (self.value(), other.value());
        if a.shape() != b.shape() {
            return Err(AtemError::config(format!(
                "mse: shapes {:?} and {:?} differ",
                a.shape(),
                b.shape()
            )));
        }
        let n = a.len() as f64;
        let diff = &a - &b;
        let value = ArrayD::from_elem(IxDyn(&[]), diff.iter().map(|v| v * v).sum::<f64>() / n);
        Ok(self.binary(
            other,
            value,
            Box::new(move |g| {
                let gs = g.iter().next().copied().unwrap();
                let ga = &diff * (2.0 * gs / n);
                Ok(vec![ga.clone(), -ga])
            }),
        ))
    }
}

impl Tape {
    /// Concatenates matrices along `axis`; the backward pass splits the
    /// gradient back at the same offsets.
    pub fn concat<'t>(&'t self, axis: usize, parts: &[Var<'t>]) -> Result<Var<'t>> {
        if parts.is_empty() {
            return Err(AtemError::config("concat of zero tensors"));
        }
        let values: Vec<ArrayD<f64>> = parts.iter().map(|v| v.value()).collect();
        for v in &values {
            if v.ndim() != 2 {
                return Err(AtemError::config(format!(
                    "concat: expected matrices, got shape {:?}",
                    v.shape()
                )));
            }
        }
        if axis > 1 {
            return Err(AtemError::config("concat: axis must be 0 or 1"));
        }
        let views: Vec<_> = values.iter().map(|v| v.view()).collect();
        let value = concatenate(Axis(axis), &views)
            .map_err(|e| AtemError::config(format!("concat: {e}")))?;
        let sizes: Vec<usize> = values.iter().map(|v| v.shape()[axis]).collect();
        let needs = parts.iter().any(|v| v.needs_grad());
        let backward: BackwardFn = Box::new(move |g| {
            let mut out = Vec::with_capacity(sizes.len());
            let mut off = 0;
            for s in &sizes {
                out.push(
                    g.slice_axis(Axis(axis), Slice::from(off..off + s))
                        .to_owned(),
                );
                off += s;
            }
            Ok(out)
        });
        Ok(self.push(
            value,
            parts.iter().map(|v| v.idx).collect(),
            Some(backward),
            needs,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::arr2;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn randn(shape: &[usize], rng: &mut ChaCha8Rng) -> ArrayD<f64> {
        ArrayD::from_shape_fn(IxDyn(shape), |_| rng.sample(StandardNormal))
    }

    /// Central-difference check of the tape gradient of a scalar-valued
    /// builder with respect to every input, using step 1e-6.
    fn fd_check<F>(build: F, inputs: &[ArrayD<f64>], tol: f64)
    where
        F: for<'t> Fn(&'t Tape, &[Var<'t>]) -> Result<Var<'t>>,
    {
        let eval = |points: &[ArrayD<f64>]| -> f64 {
            let tape = Tape::new();
            let vars: Vec<Var> = points
                .iter()
                .map(|p| tape.leaf(p.clone(), true).unwrap())
                .collect();
            build(&tape, &vars).unwrap().scalar_value()
        };
        let tape = Tape::new();
        let vars: Vec<Var> = inputs
            .iter()
            .map(|p| tape.leaf(p.clone(), true).unwrap())
            .collect();
        let loss = build(&tape, &vars).unwrap();
        let grads = tape.backward(loss).unwrap();
        let h = 1e-6;
        for (k, input) in inputs.iter().enumerate() {
            let ad = grads
                .get(vars[k])
                .unwrap_or_else(|| panic!("missing gradient for input {k}"));
            let mut fd = input.clone();
            for idx in 0..input.len() {
                let mut plus = inputs.to_vec();
                let mut minus = inputs.to_vec();
                plus[k].as_slice_mut().unwrap()[idx] += h;
                minus[k].as_slice_mut().unwrap()[idx] -= h;
                fd.as_slice_mut().unwrap()[idx] = (eval(&plus) - eval(&minus)) / (2.0 * h);
            }
            let num = (ad - &fd).iter().map(|v| v * v).sum::<f64>().sqrt();
            let den = fd.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-8);
            assert!(
                num / den < tol,
                "input {k}: gradient mismatch {:.3e} (ad {ad:?} vs fd {fd:?})",
                num / den
            );
        }
    }

    /// loss = Σ out ⊙ R with a fixed random projection, turning any output
    /// into a scalar so whole-VJP correctness is exercised.
    fn project<'t>(out: Var<'t>, seed: u64) -> Result<Var<'t>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = randn(&out.shape(), &mut rng);
        let r = out.tape().constant(r)?;
        Ok(out.mul(r)?.sum())
    }

    #[test]
    fn square_has_derivative_two_x() {
        let tape = Tape::new();
        let x = tape
            .leaf(ArrayD::from_elem(IxDyn(&[]), 3.0), true)
            .unwrap();
        let y = x.mul(x).unwrap();
        let grads = tape.backward(y).unwrap();
        assert_eq!(grads.get(x).unwrap().iter().next().unwrap(), &6.0);
    }

    #[test]
    fn addition_accumulates_gradients() {
        let tape = Tape::new();
        let a = tape
            .leaf(ArrayD::from_elem(IxDyn(&[]), 1.5), true)
            .unwrap();
        let y = a.add(a).unwrap();
        let grads = tape.backward(y).unwrap();
        assert_eq!(grads.get(a).unwrap().iter().next().unwrap(), &2.0);
    }

    #[test]
    fn disconnected_leaf_gets_no_gradient() {
        let tape = Tape::new();
        let a = tape
            .leaf(ArrayD::from_elem(IxDyn(&[]), 1.0), true)
            .unwrap();
        let b = tape
            .leaf(ArrayD::from_elem(IxDyn(&[]), 2.0), true)
            .unwrap();
        let y = a.mul(a).unwrap();
        let grads = tape.backward(y).unwrap();
        assert!(grads.get(b).is_none());
    }

    #[test]
    fn non_scalar_loss_is_rejected() {
        let tape = Tape::new();
        let a = tape
            .leaf(randn(&[2, 2], &mut ChaCha8Rng::seed_from_u64(0)), true)
            .unwrap();
        assert!(tape.backward(a).is_err());
    }

    #[test]
    fn shape_mismatch_reports_both_shapes() {
        let tape = Tape::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let a = tape.leaf(randn(&[2, 3], &mut rng), false).unwrap();
        let b = tape.leaf(randn(&[4, 5], &mut rng), false).unwrap();
        let err = a.add(b).unwrap_err().to_string();
        assert!(err.contains("[2, 3]") && err.contains("[4, 5]"), "{err}");
    }

    #[test]
    fn elementwise_arithmetic_gradients_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = randn(&[3, 4], &mut rng);
        let b = randn(&[3, 4], &mut rng) + 3.0; // keep divisors away from 0
        let row = randn(&[1, 4], &mut rng);
        let col = randn(&[3, 1], &mut rng) + 3.0;
        fd_check(
            |_t, v| project(v[0].add(v[1])?, 10),
            &[a.clone(), b.clone()],
            1e-5,
        );
        fd_check(
            |_t, v| project(v[0].sub(v[1])?, 11),
            &[a.clone(), row.clone()],
            1e-5,
        );
        fd_check(
            |_t, v| project(v[0].mul(v[1])?, 12),
            &[a.clone(), col.clone()],
            1e-5,
        );
        fd_check(
            |_t, v| project(v[0].div(v[1])?, 13),
            &[a.clone(), b.clone()],
            1e-5,
        );
        fd_check(
            |_t, v| project(v[0].div(v[1])?, 14),
            &[a.clone(), col.clone()],
            1e-5,
        );
        fd_check(|_t, v| project(v[0].neg(), 15), &[a.clone()], 1e-5);
        fd_check(|_t, v| project(v[0].scale(-2.5), 16), &[a], 1e-5);
    }

    #[test]
    fn matrix_ops_gradients_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = randn(&[3, 4], &mut rng);
        let b = randn(&[4, 2], &mut rng);
        fd_check(
            |_t, v| project(v[0].matmul(v[1])?, 20),
            &[a.clone(), b],
            1e-5,
        );
        fd_check(|_t, v| project(v[0].transpose()?, 21), &[a.clone()], 1e-5);
        fd_check(
            |_t, v| project(v[0].slice_axis(1, 1, 3)?, 22),
            &[a.clone()],
            1e-5,
        );
        fd_check(
            |t, v| project(t.concat(0, &[v[0], v[1]])?, 23),
            &[a.clone(), randn(&[2, 4], &mut rng)],
            1e-5,
        );
        fd_check(
            |t, v| project(t.concat(1, &[v[0], v[1]])?, 24),
            &[a.clone(), randn(&[3, 2], &mut rng)],
            1e-5,
        );
        fd_check(|_t, v| project(v[0].lookup(&[2, 0, 2, 1])?, 25), &[a], 1e-5);
    }

    #[test]
    fn reduction_gradients_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = randn(&[3, 5], &mut rng);
        fd_check(|_t, v| Ok(v[0].sum()), &[a.clone()], 1e-5);
        fd_check(|_t, v| Ok(v[0].mean()), &[a.clone()], 1e-5);
        fd_check(
            |_t, v| project(v[0].sum_axis_keep(0)?, 30),
            &[a.clone()],
            1e-5,
        );
        fd_check(
            |_t, v| project(v[0].mean_axis_keep(1)?, 31),
            &[a.clone()],
            1e-5,
        );
        fd_check(
            |_t, v| v[0].mse(v[1]),
            &[a.clone(), randn(&[3, 5], &mut rng)],
            1e-5,
        );
    }

    #[test]
    fn nonlinearity_gradients_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = randn(&[3, 5], &mut rng);
        fd_check(|_t, v| project(v[0].softmax(1)?, 40), &[a.clone()], 1e-5);
        fd_check(|_t, v| project(v[0].softmax(0)?, 41), &[a.clone()], 1e-5);
        fd_check(
            |_t, v| project(v[0].layer_norm(1e-5)?, 42),
            &[a.clone()],
            1e-5,
        );
        fd_check(|_t, v| project(v[0].gelu(), 43), &[a.clone()], 1e-5);
        fd_check(|_t, v| project(v[0].tanh(), 44), &[a.clone()], 1e-5);
        fd_check(|_t, v| project(v[0].exp(), 45), &[a.clone()], 1e-5);
        // clamp: keep points away from the kinks
        let c = a.mapv(|v| if v.abs() < 0.2 { v + 0.5 } else { v });
        fd_check(|_t, v| project(v[0].clamp(-1.0, 1.0), 46), &[c], 1e-5);
    }

    #[test]
    fn softmax_lanes_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tape = Tape::new();
        let a = tape.leaf(randn(&[4, 7], &mut rng) * 30.0, false).unwrap();
        let y = a.softmax(1).unwrap().value();
        for row in as2(&y, "test").unwrap().rows() {
            assert!((row.sum() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn custom_square_matches_the_builtin_path_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x0 = randn(&[2, 3], &mut rng);
        let builtin = {
            let tape = Tape::new();
            let x = tape.leaf(x0.clone(), true).unwrap();
            let loss = x.mul(x).unwrap().sum();
            let grads = tape.backward(loss).unwrap();
            grads.get(x).unwrap().clone()
        };
        let custom = {
            let tape = Tape::new();
            let x = tape.leaf(x0.clone(), true).unwrap();
            let y = tape
                .custom_op(&[x], x0.mapv(|v| v * v), |ins, _out, g| {
                    Ok(vec![g * &(&ins[0] * 2.0)])
                })
                .unwrap();
            let loss = y.sum();
            let grads = tape.backward(loss).unwrap();
            grads.get(x).unwrap().clone()
        };
        assert_eq!(builtin, custom);
    }

    #[test]
    fn zero_vjp_produces_zero_upstream_gradients() {
        let tape = Tape::new();
        let x = tape
            .leaf(arr2(&[[1.0, 2.0], [3.0, 4.0]]).into_dyn(), true)
            .unwrap();
        let y = tape
            .custom_op(&[x], arr2(&[[5.0, 5.0], [5.0, 5.0]]).into_dyn(), |ins, _o, _g| {
                Ok(vec![ArrayD::zeros(ins[0].raw_dim())])
            })
            .unwrap();
        let loss = y.sum();
        let grads = tape.backward(loss).unwrap();
        assert!(grads.get(x).unwrap().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn custom_op_rejects_misshapen_backward_output() {
        let tape = Tape::new();
        let x = tape
            .leaf(arr2(&[[1.0, 2.0]]).into_dyn(), true)
            .unwrap();
        let y = tape
            .custom_op(&[x], arr2(&[[1.0, 4.0]]).into_dyn(), |_ins, _o, _g| {
                Ok(vec![ArrayD::zeros(IxDyn(&[3, 3]))])
            })
            .unwrap();
        let err = tape.backward(y.sum()).unwrap_err().to_string();
        assert!(err.contains("[3, 3]"), "{err}");
    }

    #[test]
    fn composed_graph_gradients_are_bitwise_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x0 = randn(&[4, 6], &mut rng);
        let w0 = randn(&[6, 6], &mut rng);
        let run = || {
            let tape = Tape::new();
            let x = tape.leaf(x0.clone(), true).unwrap();
            let w = tape.leaf(w0.clone(), true).unwrap();
            let h = x.matmul(w).unwrap().gelu().layer_norm(1e-5).unwrap();
            let y = h.softmax(1).unwrap().mul(h).unwrap().mean();
            let grads = tape.backward(y).unwrap();
            (grads.get(x).unwrap().clone(), grads.get(w).unwrap().clone())
        };
        let (gx1, gw1) = run();
        let (gx2, gw2) = run();
        assert_eq!(gx1, gx2);
        assert_eq!(gw1, gw2);
    }

    #[test]
    fn composed_graph_gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = randn(&[4, 6], &mut rng);
        let w = randn(&[6, 6], &mut rng);
        fd_check(
            |_t, v| {
                let h = v[0].matmul(v[1])?.gelu().layer_norm(1e-5)?;
                Ok(h.softmax(1)?.mul(h)?.mean())
            },
            &[x, w],
            1e-4,
        );
    }
}
