//! Smooth partitions of unity over box covers, and the norms glued with them.

use serde::{Deserialize, Serialize};

use super::NormCandidate;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisBox {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl AxisBox {
    pub fn new(min: Vec<f64>, max: Vec<f64>) -> Result<Self> {
        if min.len() != max.len() || min.is_empty() {
            return Err(Error::InvalidInput(format!(
                "box corners have lengths {} and {}",
                min.len(),
                max.len()
            )));
        }
        if min
            .iter()
            .zip(&max)
            .any(|(a, b)| !(a.is_finite() && b.is_finite() && a < b))
        {
            return Err(Error::InvalidInput(format!(
                "box {min:?}..{max:?} is empty"
            )));
        }
        Ok(Self { min, max })
    }

    pub fn dim(&self) -> usize {
        self.min.len()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(self.min.iter().zip(&self.max))
            .all(|(x, (a, b))| a <= x && x <= b)
    }

    pub fn contains_open(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(self.min.iter().zip(&self.max))
            .all(|(x, (a, b))| a < x && x < b)
    }

    /// `ln` of the product bump `Π exp(−1/(1−tᵢ²))`, `None` outside the open box.
    fn log_bump(&self, p: &[f64]) -> Option<f64> {
        let mut acc = 0.0;
        for (x, (a, b)) in p.iter().zip(self.min.iter().zip(&self.max)) {
            let t = (2.0 * x - (a + b)) / (b - a);
            let q = 1.0 - t * t;
            if q <= 0.0 {
                return None;
            }
            acc -= 1.0 / q;
        }
        Some(acc)
    }
}

#[derive(Debug, Clone)]
pub struct Chart {
    pub domain: AxisBox,
    pub norm: NormCandidate,
}

/// Finitely many box charts whose open interiors cover a closed base region.
#[derive(Debug, Clone)]
pub struct ChartCover {
    region: AxisBox,
    charts: Vec<Chart>,
}

impl ChartCover {
    pub fn new(region: AxisBox, charts: Vec<Chart>) -> Result<Self> {
        let Some(first) = charts.first() else {
            return Err(Error::InvalidInput(
                "a cover needs at least one chart".into(),
            ));
        };
        let m = first.norm.dimension();
        for c in &charts {
            if c.domain.dim() != region.dim() {
                return Err(Error::DimensionMismatch {
                    expected: region.dim(),
                    actual: c.domain.dim(),
                });
            }
            if c.norm.dimension() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    actual: c.norm.dimension(),
                });
            }
        }
        let cover = Self { region, charts };
        if let Some(p) = cover.uncovered_point() {
            return Err(Error::Uncovered(p));
        }
        Ok(cover)
    }

    pub fn region(&self) -> &AxisBox {
        &self.region
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    /// Coverage by open boxes is constant on every cell of the arrangement
    /// cut out by the box faces, so one representative per cell decides it.
    fn uncovered_point(&self) -> Option<Vec<f64>> {
        let axes: Vec<Vec<f64>> = (0..self.region.dim())
            .map(|k| {
                let (lo, hi) = (self.region.min[k], self.region.max[k]);
                let mut cuts = vec![lo, hi];
                for c in &self.charts {
                    for x in [c.domain.min[k], c.domain.max[k]] {
                        if lo < x && x < hi {
                            cuts.push(x);
                        }
                    }
                }
                cuts.sort_by(f64::total_cmp);
                cuts.dedup();
                let mut reps = Vec::with_capacity(2 * cuts.len());
                for w in cuts.windows(2) {
                    reps.push(w[0]);
                    reps.push(0.5 * (w[0] + w[1]));
                }
                reps.push(hi);
                reps
            })
            .collect();

        let mut idx = vec![0usize; axes.len()];
        loop {
            let p: Vec<f64> = idx.iter().zip(&axes).map(|(&i, a)| a[i]).collect();
            if !self.charts.iter().any(|c| c.domain.contains_open(&p)) {
                return Some(p);
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return None;
                }
                idx[k] += 1;
                if idx[k] < axes[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

/// Normalized bump weights, one per chart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionOfUnity {
    domains: Vec<AxisBox>,
}

pub fn build_partition(cover: &ChartCover) -> PartitionOfUnity {
    PartitionOfUnity {
        domains: cover.charts.iter().map(|c| c.domain.clone()).collect(),
    }
}

impl PartitionOfUnity {
    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    /// All weights at `p`; they sum to one.
    pub fn weights(&self, p: &[f64]) -> Result<Vec<f64>> {
        if let Some(d) = self.domains.first().filter(|d| d.dim() != p.len()) {
            return Err(Error::DimensionMismatch {
                expected: d.dim(),
                actual: p.len(),
            });
        }
        let logs: Vec<Option<f64>> = self.domains.iter().map(|d| d.log_bump(p)).collect();
        let Some(peak) = logs.iter().flatten().copied().reduce(f64::max) else {
            return Err(Error::Uncovered(p.to_vec()));
        };
        let raw: Vec<f64> = logs
            .iter()
            .map(|l| l.map_or(0.0, |l| (l - peak).exp()))
            .collect();
        let total: f64 = raw.iter().sum();
        Ok(raw.into_iter().map(|r| r / total).collect())
    }

    /// Weight of chart `alpha` at `p`; zero outside the chart.
    pub fn weight(&self, alpha: usize, p: &[f64]) -> Result<f64> {
        if alpha >= self.domains.len() {
            return Err(Error::InvalidInput(format!("no chart {alpha}")));
        }
        Ok(self.weights(p)?[alpha])
    }
}

/// `F(p, ·) = Σ h_α(p)·F^α(·)`.
pub fn assemble_norm(
    cover: &ChartCover,
    partition: &PartitionOfUnity,
    p: &[f64],
) -> Result<NormCandidate> {
    if partition.len() != cover.charts.len() {
        return Err(Error::InvalidInput(
            "partition was built for a different cover".into(),
        ));
    }
    let weights = partition.weights(p)?;
    let terms: Vec<(f64, NormCandidate)> = weights
        .into_iter()
        .zip(&cover.charts)
        .filter(|(w, _)| *w > 0.0)
        .map(|(w, c)| (w, c.norm.clone()))
        .collect();
    let label = terms
        .iter()
        .map(|(w, f)| format!("{w}*{}", f.label()))
        .collect::<Vec<_>>()
        .join(" + ");
    let m = cover.charts[0].norm.dimension();
    Ok(NormCandidate::new(m, label, move |v| {
        terms.iter().map(|(w, f)| w * f.eval(v)).sum()
    }))
}
