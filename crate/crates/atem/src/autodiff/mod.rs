//! Reverse-mode automatic differentiation over dense double-precision
//! tensors.
//!
//! A [`Tape`] records operations as they execute (define-by-run); calling
//! [`Tape::backward`] on a scalar walks the record once in reverse and
//! accumulates gradients into every leaf created with `requires_grad`.
//! Tensors are 0-dimensional scalars or 2-D matrices — nothing in this
//! project needs higher rank, and restricting broadcasting to the last two
//! axes keeps every backward rule short enough to audit by eye.
//!
//! The primitives live in [`ops`] as methods on [`Var`]. Operators that are
//! not differentiable compositions of primitives (the layered-earth forward
//! map, in particular) enter the graph through [`Tape::custom_op`] with a
//! caller-supplied vector–Jacobian product.

mod ops;

use std::cell::RefCell;

use ndarray::{ArrayD, IxDyn};

use crate::error::{AtemError, Result};

type BackwardFn = Box<dyn Fn(&ArrayD<f64>) -> Result<Vec<ArrayD<f64>>>>;

struct Node {
    value: ArrayD<f64>,
    parents: Vec<usize>,
    backward: Option<BackwardFn>,
    /// True when this node is a gradient leaf or depends on one; backward
    /// skips everything else.
    needs_grad: bool,
}

#[derive(Default)]
pub struct Tape {
    nodes: RefCell<Vec<Node>>,
}

/// Handle to a tensor on a tape. Copyable — it is just an index.
#[derive(Clone, Copy)]
pub struct Var<'t> {
    tape: &'t Tape,
    idx: usize,
}

impl std::fmt::Debug for Var<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Var")
            .field("idx", &self.idx)
            .field("shape", &self.shape())
            .finish()
    }
}

impl Tape {
    pub fn new() -> Self {
        Tape::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn push(
        &self,
        value: ArrayD<f64>,
        parents: Vec<usize>,
        backward: Option<BackwardFn>,
        needs_grad: bool,
    ) -> Var<'_> {
        let mut nodes = self.nodes.borrow_mut();
        nodes.push(Node {
            value,
            parents,
            backward,
            needs_grad,
        });
        Var {
            tape: self,
            idx: nodes.len() - 1,
        }
    }

    /// Introduces an input tensor. Gradients are only tracked through it
    /// when `requires_grad` is set.
    pub fn leaf(&self, value: ArrayD<f64>, requires_grad: bool) -> Result<Var<'_>> {
        if value.ndim() > 2 {
            return Err(AtemError::config(format!(
                "tensors are scalars or matrices; got {} dimensions",
                value.ndim()
            )));
        }
        if !value.iter().all(|v| v.is_finite()) {
            return Err(AtemError::numerical("leaf tensor contains non-finite values"));
        }
        Ok(self.push(value, vec![], None, requires_grad))
    }

    /// A tensor that never receives gradients.
    pub fn constant(&self, value: ArrayD<f64>) -> Result<Var<'_>> {
        self.leaf(value, false)
    }

    pub fn scalar(&self, v: f64) -> Result<Var<'_>> {
        self.leaf(ArrayD::from_elem(IxDyn(&[]), v), false)
    }

    /// Inserts an externally computed operation with a caller-supplied
    /// vector–Jacobian product. `vjp(inputs, output, grad_out)` must return
    /// one gradient per input, shaped like that input.
    pub fn custom_op<F>(
        &self,
        inputs: &[Var<'_>],
        value: ArrayD<f64>,
        vjp: F,
    ) -> Result<Var<'_>>
    where
        F: Fn(&[ArrayD<f64>], &ArrayD<f64>, &ArrayD<f64>) -> Result<Vec<ArrayD<f64>>> + 'static,
    {
        if !value.iter().all(|v| v.is_finite()) {
            return Err(AtemError::numerical("custom op produced non-finite values"));
        }
        let nodes = self.nodes.borrow();
        let input_values: Vec<ArrayD<f64>> = inputs.iter().map(|v| nodes[v.idx].value.clone()).collect();
        let input_shapes: Vec<Vec<usize>> =
            input_values.iter().map(|v| v.shape().to_vec()).collect();
        let needs_grad = inputs.iter().any(|v| nodes[v.idx].needs_grad);
        drop(nodes);
        let out_value = value.clone();
        let backward: BackwardFn = Box::new(move |g| {
            let grads = vjp(&input_values, &value, g)?;
            if grads.len() != input_shapes.len() {
                return Err(AtemError::config(format!(
                    "custom op backward returned {} gradients for {} inputs",
                    grads.len(),
                    input_shapes.len()
                )));
            }
            for (g, shape) in grads.iter().zip(&input_shapes) {
                if g.shape() != &shape[..] {
                    return Err(AtemError::config(format!(
                        "custom op gradient shape {:?} does not match input shape {:?}",
                        g.shape(),
                        shape
                    )));
                }
            }
            Ok(grads)
        });
        Ok(self.push(
            out_value,
            inputs.iter().map(|v| v.idx).collect(),
            Some(backward),
            needs_grad,
        ))
    }

    /// Reverse pass from a scalar loss. Returns the gradient of the loss
    /// with respect to every tensor that tracks gradients; repeated uses of
    /// a tensor accumulate additively.
    pub fn backward(&self, loss: Var<'_>) -> Result<Gradients> {
        let nodes = self.nodes.borrow();
        if nodes[loss.idx].value.len() != 1 {
            return Err(AtemError::config(format!(
                "backward needs a scalar loss, got shape {:?}",
                nodes[loss.idx].value.shape()
            )));
        }
        let mut grads: Vec<Option<ArrayD<f64>>> = vec![None; nodes.len()];
        grads[loss.idx] = Some(ArrayD::from_elem(nodes[loss.idx].value.raw_dim(), 1.0));
        for idx in (0..=loss.idx).rev() {
            if grads[idx].is_none() || !nodes[idx].needs_grad {
                continue;
            }
            let Some(backward) = nodes[idx].backward.as_ref() else {
                continue;
            };
            let g = grads[idx].as_ref().unwrap();
            let parent_grads = backward(g)?;
            debug_assert_eq!(parent_grads.len(), nodes[idx].parents.len());
            for (p, pg) in nodes[idx].parents.iter().zip(parent_grads) {
                if !nodes[*p].needs_grad {
                    continue;
                }
                match &mut grads[*p] {
                    Some(acc) => *acc += &pg,
                    slot => *slot = Some(pg),
                }
            }
        }
        Ok(Gradients { grads })
    }
}

/// The result of a backward pass, indexed by the tape handles.
#[derive(Debug)]
pub struct Gradients {
    grads: Vec<Option<ArrayD<f64>>>,
}

impl Gradients {
    /// Gradient of the loss with respect to `var`; `None` when the loss
    /// does not depend on it (or it does not track gradients).
    pub fn get(&self, var: Var<'_>) -> Option<&ArrayD<f64>> {
        self.grads.get(var.idx).and_then(|g| g.as_ref())
    }

    pub fn take(&mut self, var: Var<'_>) -> Option<ArrayD<f64>> {
        self.grads.get_mut(var.idx).and_then(|g| g.take())
    }
}

impl<'t> Var<'t> {
    pub fn value(&self) -> ArrayD<f64> {
        self.tape.nodes.borrow()[self.idx].value.clone()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.tape.nodes.borrow()[self.idx].value.shape().to_vec()
    }

    /// The single element of a scalar tensor.
    pub fn scalar_value(&self) -> f64 {
        let nodes = self.tape.nodes.borrow();
        debug_assert_eq!(nodes[self.idx].value.len(), 1);
        nodes[self.idx].value.iter().next().copied().unwrap()
    }

    pub fn tape(&self) -> &'t Tape {
        self.tape
    }

    fn needs_grad(&self) -> bool {
        self.tape.nodes.borrow()[self.idx].needs_grad
    }
}
