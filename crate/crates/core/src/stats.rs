//! Gaussian summaries: sample mean and unbiased covariance, pooled and
//! per class. These are the inputs to every Fréchet-distance variant.

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Fitted mean vector and covariance matrix of a point cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSummary {
    pub mean: Vec<f64>,
    pub cov: Matrix,
    pub sample_count: usize,
}

impl GaussianSummary {
    pub fn dim(&self) -> usize {
        self.mean.len()
    }
}

/// Sample mean and unbiased (`1/(N-1)`) covariance of all points.
pub fn fit_gaussian(data: &Dataset) -> Result<GaussianSummary> {
    fit_rows(data, None)
}

/// Per-class summaries, one entry per class `0..k`. Classes with fewer
/// than two members yield `None`; the caller decides whether that is
/// fatal. The class sample counts always sum to the dataset size.
pub fn fit_gaussian_per_class(data: &Dataset) -> Result<Vec<Option<GaussianSummary>>> {
    let k = data
        .class_count()
        .ok_or_else(|| Error::Contract("per-class fit needs labels".to_string()))?;
    let mut out = Vec::with_capacity(k);
    for class in 0..k {
        let indices = data.class_indices(class);
        if indices.len() < 2 {
            out.push(None);
        } else {
            out.push(Some(fit_rows(data, Some(&indices))?));
        }
    }
    Ok(out)
}

fn fit_rows(data: &Dataset, indices: Option<&[usize]>) -> Result<GaussianSummary> {
    let all: Vec<usize>;
    let rows: &[usize] = match indices {
        Some(idx) => idx,
        None => {
            all = (0..data.len()).collect();
            &all
        }
    };
    let n = rows.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!(
            "covariance needs at least 2 samples, got {n}"
        )));
    }
    let d = data.dim();
    let mut mean = vec![0.0; d];
    for &i in rows {
        for (m, v) in mean.iter_mut().zip(data.point(i)) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut cov = Matrix::zeros(d, d);
    let mut centered = vec![0.0; d];
    for &i in rows {
        for (c, (v, m)) in centered.iter_mut().zip(data.point(i).iter().zip(&mean)) {
            *c = v - m;
        }
        for a in 0..d {
            for b in a..d {
                let v = cov.get(a, b) + centered[a] * centered[b];
                cov.set(a, b, v);
            }
        }
    }
    let denom = (n - 1) as f64;
    for a in 0..d {
        for b in a..d {
            let v = cov.get(a, b) / denom;
            cov.set(a, b, v);
            cov.set(b, a, v);
        }
    }
    Ok(GaussianSummary {
        mean,
        cov,
        sample_count: n,
    })
}
