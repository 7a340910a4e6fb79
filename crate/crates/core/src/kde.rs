//! Gaussian kernel density estimation with per-dimension Scott
//! bandwidths.
//!
//! The KDE stands in for the generator's intractable likelihood when
//! evaluating the MLE bias/variance estimators, and renders the density
//! heatmaps. Queries are O(support size); fits on more than 10k points
//! keep an evenly-spaced subset of 5k support points so the estimators'
//! ~10^4-10^5 density queries stay affordable.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::gmm::log_sum_exp;
use crate::matrix::Matrix;

const LN_2PI: f64 = 1.8378770664093453;
const SUBSAMPLE_THRESHOLD: usize = 10_000;
const SUBSAMPLE_TARGET: usize = 5_000;

/// Product-kernel Gaussian KDE model.
#[derive(Debug, Clone, PartialEq)]
pub struct KdeModel {
    support_points: Matrix,
    bandwidth: Vec<f64>,
}

impl KdeModel {
    pub fn support_count(&self) -> usize {
        self.support_points.rows()
    }

    pub fn dim(&self) -> usize {
        self.support_points.cols()
    }

    pub fn bandwidth(&self) -> &[f64] {
        &self.bandwidth
    }
}

/// Fits a KDE with Scott's rule: `h_j = sigma_j * n^(-1/(d+4))` per
/// dimension, `sigma_j` being the (n-1)-denominator sample deviation.
pub fn kde_fit(data: &Dataset) -> Result<KdeModel> {
    let n = data.len();
    if n < 2 {
        return Err(Error::InsufficientData(
            "KDE needs at least two points".to_string(),
        ));
    }
    let d = data.dim();

    let mut mean = vec![0.0; d];
    for i in 0..n {
        for (m, v) in mean.iter_mut().zip(data.point(i)) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut var = vec![0.0; d];
    for i in 0..n {
        for j in 0..d {
            let c = data.point(i)[j] - mean[j];
            var[j] += c * c;
        }
    }
    let factor = (n as f64).powf(-1.0 / (d as f64 + 4.0));
    let mut bandwidth = Vec::with_capacity(d);
    for (j, v) in var.iter().enumerate() {
        let sigma = (v / (n - 1) as f64).sqrt();
        if sigma == 0.0 {
            return Err(Error::Numeric(format!(
                "dimension {j} is degenerate (zero variance), bandwidth undefined"
            )));
        }
        bandwidth.push(sigma * factor);
    }

    let support_points = if n > SUBSAMPLE_THRESHOLD {
        // Evenly spaced deterministic subset; sample order is i.i.d.
        // so this is an unbiased thinning.
        let indices: Vec<usize> = (0..SUBSAMPLE_TARGET)
            .map(|i| i * n / SUBSAMPLE_TARGET)
            .collect();
        data.select(&indices)?.points().clone()
    } else {
        data.points().clone()
    };

    Ok(KdeModel {
        support_points,
        bandwidth,
    })
}

/// Log density of the kernel mixture at `x`, via log-sum-exp over all
/// support points.
pub fn kde_logpdf(model: &KdeModel, x: &[f64]) -> Result<f64> {
    let d = model.dim();
    if x.len() != d {
        return Err(Error::Dimension(format!(
            "query has dimension {}, model has {d}",
            x.len()
        )));
    }
    let n = model.support_count();
    let log_norm: f64 = model
        .bandwidth
        .iter()
        .map(|h| h.ln() + 0.5 * LN_2PI)
        .sum();
    let mut terms = Vec::with_capacity(n);
    for i in 0..n {
        let row = model.support_points.row(i);
        let mut e = 0.0;
        for j in 0..d {
            let z = (x[j] - row[j]) / model.bandwidth[j];
            e += z * z;
        }
        terms.push(-0.5 * e);
    }
    Ok(log_sum_exp(&terms) - log_norm - (n as f64).ln())
}
