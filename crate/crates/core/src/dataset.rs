//! Labeled or unlabeled point clouds and their CSV wire format.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use rand::seq::SliceRandom;
use rand::Rng;
use std::fmt::Write as _;
use std::path::Path;

/// Where a dataset's points came from. Not serialized; used by the
/// replay runners to assert that downstream models only ever see
/// synthetic samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Real,
    Synthetic,
    Mixed,
    Unspecified,
}

impl Origin {
    fn combine(self, other: Origin) -> Origin {
        if self == other {
            self
        } else {
            Origin::Mixed
        }
    }
}

/// A point cloud in `R^d`, optionally labeled with classes `0..k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    points: Matrix,
    labels: Option<Vec<usize>>,
    class_count: Option<usize>,
    origin: Origin,
}

impl Dataset {
    /// Unlabeled dataset; `points` is `n x d` with `n >= 1`.
    pub fn unlabeled(points: Matrix) -> Result<Self> {
        if points.rows() == 0 {
            return Err(Error::Contract("a dataset needs at least one point".to_string()));
        }
        points.check_finite()?;
        Ok(Dataset {
            points,
            labels: None,
            class_count: None,
            origin: Origin::Unspecified,
        })
    }

    /// Labeled dataset with `class_count` classes; every label must lie
    /// in `[0, class_count)`. Classes may be empty.
    pub fn labeled(points: Matrix, labels: Vec<usize>, class_count: usize) -> Result<Self> {
        if points.rows() == 0 {
            return Err(Error::Contract("a dataset needs at least one point".to_string()));
        }
        if labels.len() != points.rows() {
            return Err(Error::Contract(format!(
                "{} labels for {} points",
                labels.len(),
                points.rows()
            )));
        }
        if class_count == 0 {
            return Err(Error::Contract("class_count must be >= 1".to_string()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= class_count) {
            return Err(Error::Contract(format!(
                "label {bad} out of range for {class_count} classes"
            )));
        }
        points.check_finite()?;
        Ok(Dataset {
            points,
            labels: Some(labels),
            class_count: Some(class_count),
            origin: Origin::Unspecified,
        })
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.points.rows()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn dim(&self) -> usize {
        self.points.cols()
    }

    pub fn points(&self) -> &Matrix {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        self.points.row(i)
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn class_count(&self) -> Option<usize> {
        self.class_count
    }

    pub fn is_labeled(&self) -> bool {
        self.labels.is_some()
    }

    /// Strips labels, keeping the points.
    pub fn without_labels(&self) -> Dataset {
        Dataset {
            points: self.points.clone(),
            labels: None,
            class_count: None,
            origin: self.origin,
        }
    }

    /// Indices of every point with the given label.
    pub fn class_indices(&self, class: usize) -> Vec<usize> {
        match &self.labels {
            Some(labels) => labels
                .iter()
                .enumerate()
                .filter_map(|(i, &l)| (l == class).then_some(i))
                .collect(),
            None => Vec::new(),
        }
    }

    /// Number of points per class (length `class_count`).
    pub fn class_histogram(&self) -> Vec<usize> {
        let k = self.class_count.unwrap_or(0);
        let mut counts = vec![0usize; k];
        if let Some(labels) = &self.labels {
            for &l in labels {
                counts[l] += 1;
            }
        }
        counts
    }

    /// New dataset holding the rows picked by `indices` (in order).
    pub fn select(&self, indices: &[usize]) -> Result<Dataset> {
        if indices.is_empty() {
            return Err(Error::Contract("cannot select an empty subset".to_string()));
        }
        let d = self.dim();
        let mut data = Vec::with_capacity(indices.len() * d);
        for &i in indices {
            if i >= self.len() {
                return Err(Error::Contract(format!("index {i} out of range")));
            }
            data.extend_from_slice(self.points.row(i));
        }
        let points = Matrix::from_vec(indices.len(), d, data)?;
        let labels = self
            .labels
            .as_ref()
            .map(|ls| indices.iter().map(|&i| ls[i]).collect());
        Ok(Dataset {
            points,
            labels,
            class_count: self.class_count,
            origin: self.origin,
        })
    }

    /// Concatenates two datasets; label presence and dimensions must
    /// agree.
    pub fn concat(&self, other: &Dataset) -> Result<Dataset> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "concat of {}-d and {}-d datasets",
                self.dim(),
                other.dim()
            )));
        }
        if self.is_labeled() != other.is_labeled() {
            return Err(Error::Contract(
                "cannot concat labeled with unlabeled data".to_string(),
            ));
        }
        let mut data = self.points.as_slice().to_vec();
        data.extend_from_slice(other.points.as_slice());
        let points = Matrix::from_vec(self.len() + other.len(), self.dim(), data)?;
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => {
                let mut l = a.clone();
                l.extend_from_slice(b);
                Some(l)
            }
            _ => None,
        };
        let class_count = match (self.class_count, other.class_count) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        Ok(Dataset {
            points,
            labels,
            class_count,
            origin: self.origin.combine(other.origin),
        })
    }

    /// Deterministic shuffled split into `(front, back)` where `front`
    /// holds `ceil(fraction * n)` points. Both halves keep the origin.
    pub fn split(&self, fraction: f64, rng: &mut impl Rng) -> Result<(Dataset, Dataset)> {
        if !(0.0..1.0).contains(&fraction) || fraction <= 0.0 {
            return Err(Error::Contract(format!(
                "split fraction {fraction} must lie in (0, 1)"
            )));
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.shuffle(rng);
        let cut = ((fraction * self.len() as f64).ceil() as usize).clamp(1, self.len() - 1);
        let front = self.select(&order[..cut])?;
        let back = self.select(&order[cut..])?;
        Ok((front, back))
    }

    /// Serializes to CSV: header `x0,..,x{d-1},label`, one row per
    /// point, floats with 17 significant digits, label `-1` when
    /// unlabeled. Round-trips bit-exactly through [`Dataset::read_csv`].
    pub fn to_csv(&self) -> String {
        let d = self.dim();
        let mut out = String::new();
        for j in 0..d {
            let _ = write!(out, "x{j},");
        }
        out.push_str("label\n");
        for i in 0..self.len() {
            for v in self.points.row(i) {
                let _ = write!(out, "{v:.16e},");
            }
            match &self.labels {
                Some(labels) => {
                    let _ = writeln!(out, "{}", labels[i]);
                }
                None => out.push_str("-1\n"),
            }
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    /// Parses the CSV format written by [`Dataset::to_csv`]. A file
    /// whose label column is all `-1` loads as unlabeled; otherwise the
    /// class count is the largest label plus one (override it with
    /// [`Dataset::read_csv_with_class_count`] when the sample may miss
    /// trailing classes).
    pub fn from_csv(text: &str) -> Result<Dataset> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Io("empty CSV".to_string()))?;
        let cols: Vec<&str> = header.split(',').collect();
        if cols.len() < 2 || cols[cols.len() - 1] != "label" {
            return Err(Error::Io(format!("unexpected CSV header `{header}`")));
        }
        let d = cols.len() - 1;
        for (j, c) in cols[..d].iter().enumerate() {
            if *c != format!("x{j}") {
                return Err(Error::Io(format!("unexpected CSV column `{c}`")));
            }
        }
        let mut data = Vec::new();
        let mut labels: Vec<i64> = Vec::new();
        for (lineno, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != d + 1 {
                return Err(Error::Io(format!(
                    "line {}: {} fields, expected {}",
                    lineno + 2,
                    fields.len(),
                    d + 1
                )));
            }
            for f in &fields[..d] {
                let v: f64 = f
                    .parse()
                    .map_err(|_| Error::Io(format!("line {}: bad float `{f}`", lineno + 2)))?;
                data.push(v);
            }
            let l: i64 = fields[d]
                .parse()
                .map_err(|_| Error::Io(format!("line {}: bad label", lineno + 2)))?;
            labels.push(l);
        }
        let n = labels.len();
        if n == 0 {
            return Err(Error::Io("CSV holds no data rows".to_string()));
        }
        let points = Matrix::from_vec(n, d, data)?;
        if labels.iter().all(|&l| l == -1) {
            Dataset::unlabeled(points)
        } else {
            if let Some(&bad) = labels.iter().find(|&&l| l < 0) {
                return Err(Error::Io(format!("negative label {bad} in labeled CSV")));
            }
            let labels: Vec<usize> = labels.into_iter().map(|l| l as usize).collect();
            let k = labels.iter().copied().max().unwrap_or(0) + 1;
            Dataset::labeled(points, labels, k)
        }
    }

    pub fn read_csv(path: &Path) -> Result<Dataset> {
        let text = std::fs::read_to_string(path)?;
        Dataset::from_csv(&text)
    }

    /// As [`Dataset::read_csv`], but forces the class count (the CSV
    /// format does not store it).
    pub fn read_csv_with_class_count(path: &Path, class_count: usize) -> Result<Dataset> {
        let ds = Dataset::read_csv(path)?;
        match ds.labels {
            Some(labels) => Dataset::labeled(ds.points, labels, class_count),
            None => Err(Error::Contract(
                "cannot assign a class count to unlabeled data".to_string(),
            )),
        }
    }
}
