use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymmetricMatrix};

/// Samples of one input series for one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries(Vec<f64>);

impl TimeSeries {
    /// Requires at least two samples, all finite. Fewer than two samples is
    /// reported as `SeriesTooShort` since no embedding (dim >= 2) fits.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::SeriesTooShort {
                len: values.len(),
                dim: 2,
                context: None,
            });
        }
        if let Some(i) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidSeries(format!(
                "non-finite sample {} at position {i}",
                values[i]
            )));
        }
        Ok(TimeSeries(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        TimeSeries::new(values)
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Embedding dimension and row lag.
///
/// Row `i` of the embedding starts at sample `i * lag` and spans `dim`
/// consecutive samples; `lag == 1` gives the fully overlapping windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingConfig {
    dim: usize,
    lag: usize,
}

impl EmbeddingConfig {
    pub fn new(dim: usize, lag: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidConfig(format!("dim must be at least 2, got {dim}")));
        }
        if lag < 1 || lag > dim {
            return Err(Error::InvalidConfig(format!(
                "lag must lie in [1, {dim}], got {lag}"
            )));
        }
        Ok(EmbeddingConfig { dim, lag })
    }

    /// `dim` with the default lag of 1.
    pub fn with_dim(dim: usize) -> Result<Self> {
        EmbeddingConfig::new(dim, 1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lag(&self) -> usize {
        self.lag
    }

    /// Number of embedding rows for a series of length `len`, or `None` when
    /// the series is shorter than one window.
    pub fn rows_for(&self, len: usize) -> Option<usize> {
        (len >= self.dim).then(|| (len - self.dim) / self.lag + 1)
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<usize> {
        self.rows_for(len).ok_or(Error::SeriesTooShort {
            len,
            dim: self.dim,
            context: None,
        })
    }
}

/// The time-delay embedding matrix of a series (`rows x dim`).
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix(Matrix);

impl EmbeddingMatrix {
    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.rows()
    }
}

pub fn embed_matrix(series: &TimeSeries, config: EmbeddingConfig) -> Result<EmbeddingMatrix> {
    let rows = config.check_len(series.len())?;
    let (dim, lag) = (config.dim(), config.lag());
    let z = series.values();
    let mut a = Matrix::zeros(rows, dim);
    for i in 0..rows {
        for j in 0..dim {
            a[(i, j)] = z[i * lag + j];
        }
    }
    Ok(EmbeddingMatrix(a))
}

/// `AᵀA` for the embedding of `series`, accumulated straight from the samples.
pub fn gram_matrix(series: &TimeSeries, config: EmbeddingConfig) -> Result<SymmetricMatrix> {
    let rows = config.check_len(series.len())?;
    let (dim, lag) = (config.dim(), config.lag());
    let z = series.values();
    Ok(SymmetricMatrix::from_upper(dim, |a, b| {
        let mut acc = 0.0;
        for i in 0..rows {
            let start = i * lag;
            acc += z[start + a] * z[start + b];
        }
        acc
    }))
}
