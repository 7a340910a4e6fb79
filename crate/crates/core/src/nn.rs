//! Multilayer perceptron with hand-written reverse-mode gradients.
//!
//! Batches are row-major (`batch x dim`) and a layer computes
//! `act(x W + b)` with `W` of shape `in_dim x out_dim`. The backward
//! pass is validated against central finite differences in the tests;
//! both routes are kept public so the cross-check stays available.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Per-layer activation function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Activation {
    Relu,
    /// Negative-side slope; 0.2 everywhere in this crate.
    LeakyRelu(f64),
    Identity,
}

impl Activation {
    #[inline]
    fn apply(&self, z: f64) -> f64 {
        match *self {
            Activation::Relu => {
                if z > 0.0 {
                    z
                } else {
                    0.0
                }
            }
            Activation::LeakyRelu(slope) => {
                if z > 0.0 {
                    z
                } else {
                    slope * z
                }
            }
            Activation::Identity => z,
        }
    }

    /// Derivative as a function of the pre-activation value. At z == 0
    /// the subgradient 0 (Relu) / slope (LeakyRelu) is used, matching
    /// `apply` so the two stay consistent.
    #[inline]
    fn derivative(&self, z: f64) -> f64 {
        match *self {
            Activation::Relu => {
                if z > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::LeakyRelu(slope) => {
                if z > 0.0 {
                    1.0
                } else {
                    slope
                }
            }
            Activation::Identity => 1.0,
        }
    }
}

/// Conventional LeakyReLU slope used by the GAN literature.
pub const LEAKY_RELU_SLOPE: f64 = 0.2;

/// Weights, biases and activation schedule of an MLP.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpParams {
    pub layer_dims: Vec<usize>,
    pub weights: Vec<Matrix>,
    pub biases: Vec<Vec<f64>>,
    pub activations: Vec<Activation>,
}

impl MlpParams {
    /// Zero-initialized network with the given layer dimensions.
    pub fn zeros(layer_dims: &[usize], activations: &[Activation]) -> Result<Self> {
        if layer_dims.len() < 2 {
            return Err(Error::Contract(
                "an MLP needs at least an input and an output dimension".to_string(),
            ));
        }
        let layers = layer_dims.len() - 1;
        if activations.len() != layers {
            return Err(Error::Contract(format!(
                "{} layers but {} activations",
                layers,
                activations.len()
            )));
        }
        let weights = (0..layers)
            .map(|i| Matrix::zeros(layer_dims[i], layer_dims[i + 1]))
            .collect();
        let biases = (0..layers).map(|i| vec![0.0; layer_dims[i + 1]]).collect();
        Ok(MlpParams {
            layer_dims: layer_dims.to_vec(),
            weights,
            biases,
            activations: activations.to_vec(),
        })
    }

    /// Uniform init in `[-1/sqrt(fan_in), +1/sqrt(fan_in)]` for both
    /// weights and biases, drawn from the caller's RNG.
    pub fn init_uniform(
        layer_dims: &[usize],
        activations: &[Activation],
        rng: &mut impl Rng,
    ) -> Result<Self> {
        let mut params = MlpParams::zeros(layer_dims, activations)?;
        for layer in 0..params.weights.len() {
            let bound = 1.0 / (layer_dims[layer] as f64).sqrt();
            let w = &mut params.weights[layer];
            for r in 0..w.rows() {
                for c in 0..w.cols() {
                    w.set(r, c, rng.gen_range(-bound..=bound));
                }
            }
            for b in &mut params.biases[layer] {
                *b = rng.gen_range(-bound..=bound);
            }
        }
        Ok(params)
    }

    pub fn layer_count(&self) -> usize {
        self.weights.len()
    }

    pub fn input_dim(&self) -> usize {
        self.layer_dims[0]
    }

    pub fn output_dim(&self) -> usize {
        *self.layer_dims.last().expect("non-empty layer dims")
    }

    pub fn parameter_count(&self) -> usize {
        self.weights
            .iter()
            .map(|w| w.rows() * w.cols())
            .sum::<usize>()
            + self.biases.iter().map(|b| b.len()).sum::<usize>()
    }

    /// Largest absolute parameter value across all weights and biases.
    pub fn max_abs_param(&self) -> f64 {
        let w = self.weights.iter().map(Matrix::max_abs).fold(0.0, f64::max);
        let b = self
            .biases
            .iter()
            .flatten()
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
        w.max(b)
    }

    /// Clamps every weight and bias into `[-limit, limit]`.
    pub fn clip_all(&mut self, limit: f64) {
        for w in &mut self.weights {
            for v in w.as_mut_slice() {
                *v = v.clamp(-limit, limit);
            }
        }
        for b in &mut self.biases {
            for v in b {
                *v = v.clamp(-limit, limit);
            }
        }
    }

    pub fn check_finite(&self) -> Result<()> {
        for w in &self.weights {
            w.check_finite()?;
        }
        for b in &self.biases {
            if b.iter().any(|v| !v.is_finite()) {
                return Err(Error::Numeric("non-finite bias".to_string()));
            }
        }
        Ok(())
    }
}

/// Gradients of a scalar loss, shaped exactly like the owning
/// [`MlpParams`].
#[derive(Debug, Clone, PartialEq)]
pub struct GradientSet {
    pub weights: Vec<Matrix>,
    pub biases: Vec<Vec<f64>>,
}

impl GradientSet {
    pub fn zeros_like(params: &MlpParams) -> Self {
        GradientSet {
            weights: params
                .weights
                .iter()
                .map(|w| Matrix::zeros(w.rows(), w.cols()))
                .collect(),
            biases: params.biases.iter().map(|b| vec![0.0; b.len()]).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        let w = self.weights.iter().map(Matrix::max_abs).fold(0.0, f64::max);
        let b = self
            .biases
            .iter()
            .flatten()
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
        w.max(b)
    }
}

/// Intermediate values retained by [`mlp_forward`] for the backward pass.
#[derive(Debug, Clone)]
pub struct ForwardCache {
    /// Input to each layer (post-activation of the previous one).
    layer_inputs: Vec<Matrix>,
    /// Pre-activation `x W + b` of each layer.
    pre_activations: Vec<Matrix>,
    layer_dims: Vec<usize>,
    batch: usize,
}

/// Runs the network on a batch, returning the output and the cache
/// needed by [`mlp_backward`].
pub fn mlp_forward(params: &MlpParams, x: &Matrix) -> Result<(Matrix, ForwardCache)> {
    if x.cols() != params.input_dim() {
        return Err(Error::Dimension(format!(
            "input has {} columns, network expects {}",
            x.cols(),
            params.input_dim()
        )));
    }
    let mut layer_inputs = Vec::with_capacity(params.layer_count());
    let mut pre_activations = Vec::with_capacity(params.layer_count());
    let mut current = x.clone();
    for layer in 0..params.layer_count() {
        layer_inputs.push(current.clone());
        let mut z = current.matmul(&params.weights[layer])?;
        let bias = &params.biases[layer];
        for r in 0..z.rows() {
            let row = z.row_mut(r);
            for (v, b) in row.iter_mut().zip(bias) {
                *v += b;
            }
        }
        pre_activations.push(z.clone());
        let act = params.activations[layer];
        for v in z.as_mut_slice() {
            *v = act.apply(*v);
        }
        current = z;
    }
    let cache = ForwardCache {
        layer_inputs,
        pre_activations,
        layer_dims: params.layer_dims.clone(),
        batch: x.rows(),
    };
    Ok((current, cache))
}

/// Reverse-accumulation gradients for every weight and bias, plus the
/// gradient with respect to the network input (needed to chain the
/// critic's gradient back into the generator).
pub fn mlp_backward(
    params: &MlpParams,
    cache: &ForwardCache,
    loss_grad: &Matrix,
) -> Result<(GradientSet, Matrix)> {
    if cache.layer_dims != params.layer_dims
        || cache.layer_inputs.len() != params.layer_count()
    {
        return Err(Error::Contract(
            "forward cache does not match these parameters".to_string(),
        ));
    }
    if loss_grad.rows() != cache.batch || loss_grad.cols() != params.output_dim() {
        return Err(Error::Contract(format!(
            "loss gradient is {}x{}, expected {}x{}",
            loss_grad.rows(),
            loss_grad.cols(),
            cache.batch,
            params.output_dim()
        )));
    }

    let mut grads = GradientSet::zeros_like(params);
    let mut delta = loss_grad.clone();
    for layer in (0..params.layer_count()).rev() {
        let z = &cache.pre_activations[layer];
        let act = params.activations[layer];
        // dL/dz = dL/da * act'(z)
        let mut dz = delta;
        for (v, zv) in dz.as_mut_slice().iter_mut().zip(z.as_slice()) {
            *v *= act.derivative(*zv);
        }
        let input = &cache.layer_inputs[layer];
        grads.weights[layer] = input.transpose().matmul(&dz)?;
        let db = &mut grads.biases[layer];
        for r in 0..dz.rows() {
            for (acc, v) in db.iter_mut().zip(dz.row(r)) {
                *acc += v;
            }
        }
        delta = dz.matmul(&params.weights[layer].transpose())?;
    }
    Ok((grads, delta))
}

/// Central-difference gradient estimate; the independent oracle for
/// [`mlp_backward`].
pub fn finite_diff_grad(
    loss_fn: &mut dyn FnMut(&MlpParams) -> f64,
    params: &MlpParams,
    epsilon: f64,
) -> Result<GradientSet> {
    if epsilon <= 0.0 {
        return Err(Error::Contract("epsilon must be positive".to_string()));
    }
    let mut grads = GradientSet::zeros_like(params);
    let mut probe = params.clone();
    for layer in 0..params.layer_count() {
        for r in 0..params.weights[layer].rows() {
            for c in 0..params.weights[layer].cols() {
                let orig = probe.weights[layer].get(r, c);
                probe.weights[layer].set(r, c, orig + epsilon);
                let up = loss_fn(&probe);
                probe.weights[layer].set(r, c, orig - epsilon);
                let down = loss_fn(&probe);
                probe.weights[layer].set(r, c, orig);
                grads.weights[layer].set(r, c, (up - down) / (2.0 * epsilon));
            }
        }
        for i in 0..params.biases[layer].len() {
            let orig = probe.biases[layer][i];
            probe.biases[layer][i] = orig + epsilon;
            let up = loss_fn(&probe);
            probe.biases[layer][i] = orig - epsilon;
            let down = loss_fn(&probe);
            probe.biases[layer][i] = orig;
            grads.biases[layer][i] = (up - down) / (2.0 * epsilon);
        }
    }
    Ok(grads)
}

/// Max relative difference between two gradient sets, with an absolute
/// floor so near-zero entries do not blow the ratio up.
pub fn gradient_max_rel_error(a: &GradientSet, b: &GradientSet) -> f64 {
    let mut worst = 0.0f64;
    let mut cmp = |x: f64, y: f64| {
        let denom = x.abs().max(y.abs()).max(1e-6);
        worst = worst.max((x - y).abs() / denom);
    };
    for (wa, wb) in a.weights.iter().zip(&b.weights) {
        for (x, y) in wa.as_slice().iter().zip(wb.as_slice()) {
            cmp(*x, *y);
        }
    }
    for (ba, bb) in a.biases.iter().zip(&b.biases) {
        for (x, y) in ba.iter().zip(bb) {
            cmp(*x, *y);
        }
    }
    worst
}
