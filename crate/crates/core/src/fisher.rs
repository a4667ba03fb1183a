//! Fisher information of a symbol distribution along a control-parameter
//! sweep.
//!
//! Given an ensemble of symbol series at each grid value of a scalar
//! parameter, the per-symbol probabilities p_s(theta) are estimated with
//! additive smoothing and the Fisher information is assembled as
//!
//! ```text
//! F(theta) = sum_s (dp_s/dtheta)^2 / p_s(theta)
//! ```
//!
//! with central differences at interior grid points and one-sided first-order
//! differences at the two endpoints. The selected parameter value is the grid
//! point maximizing F; no interpolation between grid points is attempted,
//! since near a divergence the curve cannot be trusted to be smooth.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::trace::{AgentIndex, SymbolSeries};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FisherError {
    #[error("sweep grid has {points} point(s), need at least 3 for central differences")]
    GridTooSmall { points: usize },
    #[error("sweep grid must be strictly increasing and finite")]
    NonMonotonicGrid,
    #[error("empty ensemble: no symbols to estimate a distribution from")]
    EmptyEnsemble,
    #[error("ensembles mix alphabet sizes: {a} and {b}")]
    AlphabetMismatch { a: u8, b: u8 },
    #[error("smoothing constant must be finite and >= 0, got {beta}")]
    InvalidBeta { beta: f64 },
    #[error("probability of symbol {symbol} is not strictly positive (beta too small for unobserved symbols)")]
    NonPositiveProbability { symbol: u8 },
    #[error("probabilities sum to {sum}, expected 1 within 1e-12")]
    NotNormalized { sum: f64 },
    #[error("grid has {grid} point(s) but {dists} distribution(s) supplied")]
    DistributionCountMismatch { grid: usize, dists: usize },
}

/// Strictly increasing control-parameter grid with at least three points.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    thetas: Vec<f64>,
    label: String,
}

impl SweepGrid {
    pub fn new(thetas: Vec<f64>, label: impl Into<String>) -> Result<SweepGrid, FisherError> {
        if thetas.len() < 3 {
            return Err(FisherError::GridTooSmall {
                points: thetas.len(),
            });
        }
        if thetas.iter().any(|t| !t.is_finite())
            || thetas.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(FisherError::NonMonotonicGrid);
        }
        Ok(SweepGrid {
            thetas,
            label: label.into(),
        })
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

/// Smoothed empirical symbol distribution at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    probs: Vec<f64>,
    sample_count: usize,
    smoothing_beta: f64,
}

impl ProbVector {
    /// Builds the smoothed distribution `(count_s + beta) / (total + beta*A)`
    /// from per-symbol counts. Every probability must come out strictly
    /// positive, so `beta = 0` is only accepted when every symbol occurs.
    pub fn from_counts(counts: &[u64], beta: f64) -> Result<ProbVector, FisherError> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(FisherError::InvalidBeta { beta });
        }
        let total: u64 = counts.iter().sum();
        if counts.is_empty() || total == 0 {
            return Err(FisherError::EmptyEnsemble);
        }
        let denom = total as f64 + beta * counts.len() as f64;
        let probs: Vec<f64> = counts.iter().map(|&c| (c as f64 + beta) / denom).collect();
        if let Some(s) = probs.iter().position(|&p| p <= 0.0) {
            return Err(FisherError::NonPositiveProbability { symbol: s as u8 });
        }
        Ok(ProbVector {
            probs,
            sample_count: total as usize,
            smoothing_beta: beta,
        })
    }

    /// Wraps externally computed exact probabilities (no smoothing applied).
    pub fn from_probs(probs: Vec<f64>) -> Result<ProbVector, FisherError> {
        if let Some(s) = probs.iter().position(|&p| !p.is_finite() || p <= 0.0) {
            return Err(FisherError::NonPositiveProbability { symbol: s as u8 });
        }
        let sum: f64 = probs.iter().sum();
        if crate::math::abs(sum - 1.0) > 1e-12 {
            return Err(FisherError::NotNormalized { sum });
        }
        Ok(ProbVector {
            probs,
            sample_count: 0,
            smoothing_beta: 0.0,
        })
    }

    pub fn prob(&self, symbol: u8) -> f64 {
        self.probs[symbol as usize]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn alphabet_size(&self) -> usize {
        self.probs.len()
    }

    /// Number of pooled symbols behind the estimate (0 for exact inputs).
    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn smoothing_beta(&self) -> f64 {
        self.smoothing_beta
    }
}

/// Pools all series of one ensemble into a smoothed symbol distribution.
pub fn estimate_distribution(
    ensemble: &[SymbolSeries],
    beta: f64,
) -> Result<ProbVector, FisherError> {
    let first = ensemble.first().ok_or(FisherError::EmptyEnsemble)?;
    let alphabet = first.alphabet_size();
    for s in ensemble {
        if s.alphabet_size() != alphabet {
            return Err(FisherError::AlphabetMismatch {
                a: alphabet,
                b: s.alphabet_size(),
            });
        }
    }
    let mut counts = vec![0u64; alphabet as usize];
    for s in ensemble {
        for &sym in s.symbols() {
            counts[sym as usize] += 1;
        }
    }
    ProbVector::from_counts(&counts, beta)
}

/// Estimated Fisher information over a sweep grid, with the selected
/// maximizing grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct FisherCurve {
    grid: SweepGrid,
    values: Vec<f64>,
    theta_star_index: usize,
    hub: AgentIndex,
}

impl FisherCurve {
    pub fn grid(&self) -> &SweepGrid {
        &self.grid
    }

    /// Estimated F at each grid point, in 1/(parameter unit)^2.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The grid point maximizing F (lowest theta on ties).
    pub fn theta_star(&self) -> f64 {
        self.grid.thetas()[self.theta_star_index]
    }

    pub fn theta_star_index(&self) -> usize {
        self.theta_star_index
    }

    /// Agent whose symbol series the sweep was built from.
    pub fn hub(&self) -> AgentIndex {
        self.hub
    }
}

/// Assembles the Fisher curve from per-grid-point distributions.
pub fn fisher_curve_from_distributions(
    grid: SweepGrid,
    dists: &[ProbVector],
    hub: AgentIndex,
) -> Result<FisherCurve, FisherError> {
    if dists.len() != grid.len() {
        return Err(FisherError::DistributionCountMismatch {
            grid: grid.len(),
            dists: dists.len(),
        });
    }
    let alphabet = dists[0].alphabet_size();
    for d in dists {
        if d.alphabet_size() != alphabet {
            return Err(FisherError::AlphabetMismatch {
                a: alphabet as u8,
                b: d.alphabet_size() as u8,
            });
        }
    }

    let thetas = grid.thetas();
    let m = grid.len();
    let mut values = Vec::with_capacity(m);
    for mi in 0..m {
        // Central difference at interior points, one-sided at the endpoints.
        let (lo, hi) = if mi == 0 {
            (0, 1)
        } else if mi == m - 1 {
            (m - 2, m - 1)
        } else {
            (mi - 1, mi + 1)
        };
        let dtheta = thetas[hi] - thetas[lo];
        let mut f = 0.0;
        for s in 0..alphabet {
            let dp = (dists[hi].probs[s] - dists[lo].probs[s]) / dtheta;
            f += dp * dp / dists[mi].probs[s];
        }
        values.push(f);
    }

    let theta_star_index = argmax_lowest(&values);

    Ok(FisherCurve {
        grid,
        values,
        theta_star_index,
        hub,
    })
}

/// Index of the maximum value; the first (lowest-theta) index on ties.
fn argmax_lowest(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Estimates distributions for every grid point and assembles the curve.
///
/// `ensembles[m]` is the ensemble observed at `grid.thetas()[m]`.
pub fn fisher_curve(
    grid: SweepGrid,
    ensembles: &[Vec<SymbolSeries>],
    beta: f64,
    hub: AgentIndex,
) -> Result<FisherCurve, FisherError> {
    if ensembles.len() != grid.len() {
        return Err(FisherError::DistributionCountMismatch {
            grid: grid.len(),
            dists: ensembles.len(),
        });
    }
    let dists = ensembles
        .iter()
        .map(|e| estimate_distribution(e, beta))
        .collect::<Result<Vec<_>, _>>()?;
    fisher_curve_from_distributions(grid, &dists, hub)
}

/// The grid point maximizing the estimated Fisher information.
pub fn select_theta_star(curve: &FisherCurve) -> f64 {
    curve.theta_star()
}
