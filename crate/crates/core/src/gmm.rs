//! Ground-truth Gaussian mixture: the real data source of every
//! experiment, with exact sampling and log-density evaluation.

use crate::dataset::{Dataset, Origin};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::stage_rng;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

const LN_2PI: f64 = 1.8378770664093453; // ln(2*pi)

/// One mixture component with a diagonal covariance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GmmComponent {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    pub weight: f64,
}

/// Mixture of axis-aligned Gaussians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GmmSpec {
    pub components: Vec<GmmComponent>,
}

impl GmmSpec {
    pub fn new(components: Vec<GmmComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Contract("mixture needs at least one component".to_string()));
        }
        let d = components[0].mean.len();
        let weight_sum: f64 = components.iter().map(|c| c.weight).sum();
        if (weight_sum - 1.0).abs() > 1e-12 {
            return Err(Error::Contract(format!(
                "mixture weights sum to {weight_sum}, expected 1"
            )));
        }
        for (i, c) in components.iter().enumerate() {
            if c.mean.len() != d || c.std.len() != d {
                return Err(Error::Contract(format!(
                    "component {i} has inconsistent dimension"
                )));
            }
            if c.weight < 0.0 {
                return Err(Error::Contract(format!("component {i} has negative weight")));
            }
            if c.std.iter().any(|&s| s <= 0.0) {
                return Err(Error::Contract(format!(
                    "component {i} has a non-positive standard deviation"
                )));
            }
        }
        Ok(GmmSpec { components })
    }

    pub fn dim(&self) -> usize {
        self.components[0].mean.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Restriction of the mixture to a subset of components, with
    /// weights renormalized. Used to build disjoint-class task streams.
    pub fn restrict(&self, component_indices: &[usize]) -> Result<GmmSpec> {
        if component_indices.is_empty() {
            return Err(Error::Contract("restriction to no components".to_string()));
        }
        let total: f64 = component_indices
            .iter()
            .map(|&i| self.components[i].weight)
            .sum();
        let components = component_indices
            .iter()
            .map(|&i| {
                let mut c = self.components[i].clone();
                c.weight /= total;
                c
            })
            .collect();
        GmmSpec::new(components)
    }
}

/// The five-component 2-D mixture used as the reference distribution:
/// centers at the origin and the four (+-3, +-3) corners, mildly
/// anisotropic unit-scale spreads, equal weights.
pub fn default_gmm() -> GmmSpec {
    let means = [
        [0.0, 0.0],
        [3.0, 3.0],
        [-3.0, 3.0],
        [-3.0, -3.0],
        [3.0, -3.0],
    ];
    let stds = [
        [1.2, 1.0],
        [1.1, 0.9],
        [1.0, 1.2],
        [1.0, 1.1],
        [0.9, 1.0],
    ];
    let components = means
        .iter()
        .zip(&stds)
        .map(|(m, s)| GmmComponent {
            mean: m.to_vec(),
            std: s.to_vec(),
            weight: 0.2,
        })
        .collect();
    GmmSpec::new(components).expect("default mixture is valid")
}

/// Draws `n` labeled points; the label of each point is the index of the
/// component it was sampled from.
pub fn gmm_sample(spec: &GmmSpec, n: usize, seed: u64) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::Contract("sample count must be >= 1".to_string()));
    }
    let mut rng = stage_rng(seed, &[]);
    let d = spec.dim();
    let k = spec.component_count();
    let mut cdf = Vec::with_capacity(k);
    let mut acc = 0.0;
    for c in &spec.components {
        acc += c.weight;
        cdf.push(acc);
    }
    let mut data = Vec::with_capacity(n * d);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.gen();
        let comp = cdf.iter().position(|&c| u <= c).unwrap_or(k - 1);
        let component = &spec.components[comp];
        for j in 0..d {
            let z: f64 = rng.sample(StandardNormal);
            data.push(component.mean[j] + component.std[j] * z);
        }
        labels.push(comp);
    }
    let points = Matrix::from_vec(n, d, data)?;
    Ok(Dataset::labeled(points, labels, k)?.with_origin(Origin::Real))
}

/// Exact mixture log-density at `x`, evaluated with log-sum-exp.
pub fn gmm_logpdf(spec: &GmmSpec, x: &[f64]) -> Result<f64> {
    let d = spec.dim();
    if x.len() != d {
        return Err(Error::Dimension(format!(
            "point has dimension {}, mixture has {}",
            x.len(),
            d
        )));
    }
    let mut terms = Vec::with_capacity(spec.component_count());
    for c in &spec.components {
        let mut logp = c.weight.ln();
        for j in 0..d {
            let z = (x[j] - c.mean[j]) / c.std[j];
            logp += -0.5 * z * z - c.std[j].ln() - 0.5 * LN_2PI;
        }
        terms.push(logp);
    }
    Ok(log_sum_exp(&terms))
}

/// Numerically stable `ln(sum(exp(terms)))`.
pub(crate) fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    let sum: f64 = terms.iter().map(|&t| (t - m).exp()).sum();
    m + sum.ln()
}
