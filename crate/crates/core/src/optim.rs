//! RMSProp and momentum-SGD updates for MLP parameters and embedding
//! tables. State buffers mirror the parameter shapes exactly.

use crate::matrix::Matrix;
use crate::nn::{GradientSet, MlpParams};

pub const RMSPROP_DECAY: f64 = 0.9;
pub const RMSPROP_EPSILON: f64 = 1e-8;
pub const SGD_MOMENTUM: f64 = 0.9;

#[inline]
fn rmsprop_update(lr: f64, param: &mut f64, grad: f64, sq: &mut f64) {
    *sq = RMSPROP_DECAY * *sq + (1.0 - RMSPROP_DECAY) * grad * grad;
    *param -= lr * grad / (sq.sqrt() + RMSPROP_EPSILON);
}

/// RMSProp over a full MLP parameter set.
pub struct RmsPropMlp {
    learning_rate: f64,
    sq: GradientSet,
}

impl RmsPropMlp {
    pub fn new(params: &MlpParams, learning_rate: f64) -> Self {
        RmsPropMlp {
            learning_rate,
            sq: GradientSet::zeros_like(params),
        }
    }

    pub fn step(&mut self, params: &mut MlpParams, grads: &GradientSet) {
        for layer in 0..params.weights.len() {
            let w = params.weights[layer].as_mut_slice();
            let g = grads.weights[layer].as_slice();
            let s = self.sq.weights[layer].as_mut_slice();
            for i in 0..w.len() {
                rmsprop_update(self.learning_rate, &mut w[i], g[i], &mut s[i]);
            }
            let b = &mut params.biases[layer];
            let gb = &grads.biases[layer];
            let sb = &mut self.sq.biases[layer];
            for i in 0..b.len() {
                rmsprop_update(self.learning_rate, &mut b[i], gb[i], &mut sb[i]);
            }
        }
    }
}

/// RMSProp over a single matrix (the class embedding table).
pub struct RmsPropMatrix {
    learning_rate: f64,
    sq: Matrix,
}

impl RmsPropMatrix {
    pub fn new(param: &Matrix, learning_rate: f64) -> Self {
        RmsPropMatrix {
            learning_rate,
            sq: Matrix::zeros(param.rows(), param.cols()),
        }
    }

    pub fn step(&mut self, param: &mut Matrix, grad: &Matrix) {
        let p = param.as_mut_slice();
        let g = grad.as_slice();
        let s = self.sq.as_mut_slice();
        for i in 0..p.len() {
            rmsprop_update(self.learning_rate, &mut p[i], g[i], &mut s[i]);
        }
    }
}

/// Momentum SGD (`v = mu v + g; p -= lr v`) over an MLP parameter set.
pub struct SgdMomentumMlp {
    learning_rate: f64,
    momentum: f64,
    velocity: GradientSet,
}

impl SgdMomentumMlp {
    pub fn new(params: &MlpParams, learning_rate: f64) -> Self {
        SgdMomentumMlp {
            learning_rate,
            momentum: SGD_MOMENTUM,
            velocity: GradientSet::zeros_like(params),
        }
    }

    pub fn step(&mut self, params: &mut MlpParams, grads: &GradientSet) {
        for layer in 0..params.weights.len() {
            let w = params.weights[layer].as_mut_slice();
            let g = grads.weights[layer].as_slice();
            let v = self.velocity.weights[layer].as_mut_slice();
            for i in 0..w.len() {
                v[i] = self.momentum * v[i] + g[i];
                w[i] -= self.learning_rate * v[i];
            }
            let b = &mut params.biases[layer];
            let gb = &grads.biases[layer];
            let vb = &mut self.velocity.biases[layer];
            for i in 0..b.len() {
                vb[i] = self.momentum * vb[i] + gb[i];
                b[i] -= self.learning_rate * vb[i];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::Activation;

    #[test]
    fn rmsprop_moves_against_gradient() {
        let mut params = MlpParams::zeros(&[1, 1], &[Activation::Identity]).unwrap();
        let mut opt = RmsPropMlp::new(&params, 0.1);
        let mut grads = GradientSet::zeros_like(&params);
        grads.weights[0].set(0, 0, 1.0);
        opt.step(&mut params, &grads);
        assert!(params.weights[0].get(0, 0) < 0.0);
    }

    #[test]
    fn sgd_momentum_accumulates_velocity() {
        let mut params = MlpParams::zeros(&[1, 1], &[Activation::Identity]).unwrap();
        let mut opt = SgdMomentumMlp::new(&params, 1.0);
        let mut grads = GradientSet::zeros_like(&params);
        grads.weights[0].set(0, 0, 1.0);
        opt.step(&mut params, &grads);
        let after_one = params.weights[0].get(0, 0);
        assert_eq!(after_one, -1.0);
        opt.step(&mut params, &grads);
        // Second step applies v = 0.9 * 1 + 1 = 1.9.
        assert!((params.weights[0].get(0, 0) - (-2.9)).abs() < 1e-12);
    }

    #[test]
    fn zero_gradient_is_a_fixed_point() {
        let mut params = MlpParams::zeros(&[2, 2], &[Activation::Identity]).unwrap();
        params.weights[0].set(0, 0, 0.5);
        let before = params.clone();
        let grads = GradientSet::zeros_like(&params);
        let mut rms = RmsPropMlp::new(&params, 0.1);
        rms.step(&mut params, &grads);
        assert_eq!(params, before);
        let mut sgd = SgdMomentumMlp::new(&params, 0.1);
        sgd.step(&mut params, &grads);
        assert_eq!(params, before);
    }
}
