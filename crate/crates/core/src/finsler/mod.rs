//! Minkowski norms, their fundamental tensors and the geometry classification chain.
//!
//! The fundamental tensor is the Hessian of `E(y) = ½F(y)²`, computed with
//! central differences. A candidate passes when it is nonnegative,
//! 1-homogeneous and has a positive-definite fundamental tensor at every
//! sampled direction.

mod classify;
mod kahler;
mod partition;

pub use classify::{classify_geometry, Classification, GeometryClass};
pub use kahler::{
    kahler_check, named_metric, standard_complex_structure, KahlerReport, Lattice, MetricField,
    SubCheck, SubCheckFailure,
};
pub use partition::{assemble_norm, build_partition, AxisBox, Chart, ChartCover, PartitionOfUnity};

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Step for central differences, relative to `|y|`.
pub const DEFAULT_STEP: f64 = 1e-4;
pub const HOMOGENEITY_TOL: f64 = 1e-9;
pub const PD_THRESHOLD: f64 = 1e-6;
/// Entrywise tolerance for y-independence of `g_y`.
pub const RIEMANN_TOL: f64 = 1e-4;
pub const HOMOGENEITY_FACTORS: [f64; 3] = [0.5, 2.0, 10.0];

type NormFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A candidate norm `F` on `Rᵐ`.
#[derive(Clone)]
pub struct NormCandidate {
    dimension: usize,
    label: String,
    evaluate: Arc<NormFn>,
}

impl fmt::Debug for NormCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormCandidate")
            .field("dimension", &self.dimension)
            .field("label", &self.label)
            .finish()
    }
}

impl NormCandidate {
    pub fn new(
        dimension: usize,
        label: impl Into<String>,
        f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            dimension,
            label: label.into(),
            evaluate: Arc::new(f),
        }
    }

    pub fn euclidean(m: usize) -> Self {
        Self::new(m, "euclidean", |v| {
            v.iter().map(|x| x * x).sum::<f64>().sqrt()
        })
    }

    /// `(Σ vᵢ⁴)^{1/4}`.
    pub fn quartic_mean(m: usize) -> Self {
        Self::new(m, "quartic-mean", |v| {
            v.iter().map(|x| x.powi(4)).sum::<f64>().powf(0.25)
        })
    }

    /// The coordinate functional `v ↦ v_axis` (1-based); not a norm.
    pub fn linear_coordinate(m: usize, axis: usize) -> Result<Self> {
        if axis == 0 || axis > m {
            return Err(Error::AxisOutOfRange { axis, n: m });
        }
        Ok(Self::new(m, format!("linear:x{axis}"), move |v| {
            v[axis - 1]
        }))
    }

    /// `√(vᵀAv)` for a symmetric `A`, given row-major.
    pub fn quadratic(a: DMatrix<f64>) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() == 0 {
            return Err(Error::InvalidInput(format!(
                "quadratic form must be square, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        if (&a - a.transpose()).amax() > 1e-9 {
            return Err(Error::InvalidInput(
                "quadratic form must be symmetric".into(),
            ));
        }
        let m = a.nrows();
        let label = format!("quadratic:{}", format_matrix(&a));
        Ok(Self::new(m, label, move |v| {
            let mut s = 0.0;
            for i in 0..m {
                for j in 0..m {
                    s += v[i] * a[(i, j)] * v[j];
                }
            }
            s.sqrt()
        }))
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, v: &[f64]) -> f64 {
        (self.evaluate)(v)
    }
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn serialize_rows<S: serde::Serializer>(
    m: &DMatrix<f64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    rows(m).serialize(s)
}

fn serialize_opt_rows<S: serde::Serializer>(
    m: &Option<DMatrix<f64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    m.as_ref().map(rows).serialize(s)
}

pub(crate) fn format_matrix(a: &DMatrix<f64>) -> String {
    (0..a.nrows())
        .map(|i| {
            (0..a.ncols())
                .map(|j| a[(i, j)].to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// `g_y` sampled at one direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FundamentalTensorSample {
    pub y: Vec<f64>,
    #[serde(serialize_with = "serialize_rows")]
    pub matrix: DMatrix<f64>,
}

impl FundamentalTensorSample {
    pub fn min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.matrix.clone()).eigenvalues.min()
    }

    /// `g_y(u, v) = uᵀ g v`.
    pub fn bilinear(&self, u: &[f64], v: &[f64]) -> f64 {
        let u = DVector::from_column_slice(u);
        let v = DVector::from_column_slice(v);
        u.dot(&(&self.matrix * v))
    }
}

/// Central-difference Hessian of `½F²` at `y` with absolute step `h`, symmetrized.
pub fn fundamental_tensor(
    norm: &NormCandidate,
    y: &[f64],
    h: f64,
) -> Result<FundamentalTensorSample> {
    let m = norm.dimension;
    if y.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: y.len(),
        });
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "step must be positive, got {h}"
        )));
    }
    let len = y.iter().map(|x| x * x).sum::<f64>().sqrt();
    if len <= h {
        return Err(Error::Singular(y.to_vec()));
    }
    let energy = |p: &[f64]| 0.5 * norm.eval(p).powi(2);
    let shifted = |di: f64, i: usize, dj: f64, j: usize| {
        let mut p = y.to_vec();
        p[i] += di;
        p[j] += dj;
        energy(&p)
    };
    let e0 = energy(y);
    let mut g = DMatrix::zeros(m, m);
    for i in 0..m {
        let mut pp = y.to_vec();
        let mut pm = y.to_vec();
        pp[i] += h;
        pm[i] -= h;
        g[(i, i)] = (energy(&pp) - 2.0 * e0 + energy(&pm)) / (h * h);
        for j in 0..i {
            let v = (shifted(h, i, h, j) - shifted(h, i, -h, j) - shifted(-h, i, h, j)
                + shifted(-h, i, -h, j))
                / (4.0 * h * h);
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    Ok(FundamentalTensorSample {
        y: y.to_vec(),
        matrix: g,
    })
}

/// Deterministic unit directions whose components are all at least `0.05` in magnitude.
///
/// Keeping away from the coordinate hyperplanes matters for norms such as the
/// quartic mean, whose fundamental tensor degenerates wherever a component vanishes.
pub fn generic_directions(m: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(1e-3..=1.0).contains(&len) {
            continue;
        }
        let u: Vec<f64> = v.iter().map(|x| x / len).collect();
        if u.iter().all(|x| x.abs() >= 0.05) {
            out.push(u);
        }
    }
    out
}

/// `±eᵢ` for every axis.
pub fn axis_directions(m: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * m);
    for i in 0..m {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; m];
            e[i] = s;
            out.push(e);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinkowskiCheck {
    pub homogeneity_tol: f64,
    pub pd_threshold: f64,
    pub step: f64,
}

impl Default for MinkowskiCheck {
    fn default() -> Self {
        Self {
            homogeneity_tol: HOMOGENEITY_TOL,
            pd_threshold: PD_THRESHOLD,
            step: DEFAULT_STEP,
        }
    }
}

impl MinkowskiCheck {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            homogeneity_tol: tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleFailure {
    pub sample: Vec<f64>,
    pub property: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinkowskiReport {
    pub label: String,
    pub samples: usize,
    pub nonnegative: bool,
    pub homogeneous: bool,
    pub positive_definite: bool,
    pub passed: bool,
    pub max_homogeneity_residual: f64,
    pub min_eigenvalue: f64,
    pub failures: Vec<SampleFailure>,
}

/// Check nonnegativity, 1-homogeneity and positive-definiteness on sample directions.
pub fn check_minkowski_norm(
    norm: &NormCandidate,
    samples: &[Vec<f64>],
    cfg: &MinkowskiCheck,
) -> Result<MinkowskiReport> {
    if samples.is_empty() {
        return Err(Error::InvalidInput(
            "at least one sample direction is required".into(),
        ));
    }
    if cfg.homogeneity_tol.is_nan() || cfg.homogeneity_tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {}",
            cfg.homogeneity_tol
        )));
    }
    if let Some(s) = samples.iter().find(|s| s.len() != norm.dimension) {
        return Err(Error::DimensionMismatch {
            expected: norm.dimension,
            actual: s.len(),
        });
    }

    let mut failures = Vec::new();
    let mut nonnegative = true;
    let mut homogeneous = true;
    let mut positive_definite = true;
    let mut max_res: f64 = 0.0;
    let mut min_eig = f64::INFINITY;

    for v in samples {
        let fv = norm.eval(v);
        if !fv.is_finite() {
            failures.push(SampleFailure {
                sample: v.clone(),
                property: "evaluation",
                detail: format!("F(v) = {fv}"),
            });
            nonnegative = false;
            homogeneous = false;
            positive_definite = false;
            continue;
        }
        if fv < 0.0 {
            nonnegative = false;
            failures.push(SampleFailure {
                sample: v.clone(),
                property: "nonnegativity",
                detail: format!("F(v) = {fv}"),
            });
        }
        for lambda in HOMOGENEITY_FACTORS {
            let scaled: Vec<f64> = v.iter().map(|x| lambda * x).collect();
            let res = (norm.eval(&scaled) - lambda * fv).abs();
            max_res = max_res.max(res);
            if res.is_nan() || res > cfg.homogeneity_tol * (lambda * fv).max(1.0) {
                homogeneous = false;
                failures.push(SampleFailure {
                    sample: v.clone(),
                    property: "homogeneity",
                    detail: format!("|F({lambda}v) - {lambda}F(v)| = {res:e}"),
                });
            }
        }
        let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        match fundamental_tensor(norm, v, cfg.step * len) {
            Ok(g) => {
                let e = g.min_eigenvalue();
                if e.is_nan() {
                    positive_definite = false;
                    failures.push(SampleFailure {
                        sample: v.clone(),
                        property: "evaluation",
                        detail: "g_y has NaN entries".into(),
                    });
                    continue;
                }
                min_eig = min_eig.min(e);
                if e <= cfg.pd_threshold {
                    positive_definite = false;
                    failures.push(SampleFailure {
                        sample: v.clone(),
                        property: "positive-definiteness",
                        detail: format!("min eigenvalue of g_y = {e:e}"),
                    });
                }
            }
            Err(e) => {
                positive_definite = false;
                failures.push(SampleFailure {
                    sample: v.clone(),
                    property: "evaluation",
                    detail: e.to_string(),
                });
            }
        }
    }

    Ok(MinkowskiReport {
        label: norm.label.clone(),
        samples: samples.len(),
        nonnegative,
        homogeneous,
        positive_definite,
        passed: nonnegative && homogeneous && positive_definite,
        max_homogeneity_residual: max_res,
        min_eigenvalue: min_eig,
        failures,
    })
}

/// Whether `g_y` is independent of `y`, i.e. `F²` is a quadratic form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RiemannProbe {
    pub y_independent: bool,
    pub max_variation: f64,
    pub tol: f64,
    #[serde(serialize_with = "serialize_opt_rows")]
    pub metric: Option<DMatrix<f64>>,
}

pub fn riemann_probe(
    norm: &NormCandidate,
    samples: &[Vec<f64>],
    step: f64,
    tol: f64,
) -> Result<RiemannProbe> {
    let mut tensors = Vec::with_capacity(samples.len());
    for y in samples {
        let len = y.iter().map(|x| x * x).sum::<f64>().sqrt();
        tensors.push(fundamental_tensor(norm, y, step * len)?);
    }
    let Some(first) = tensors.first() else {
        return Err(Error::InvalidInput(
            "at least one sample direction is required".into(),
        ));
    };
    let max_variation = tensors
        .iter()
        .map(|g| (&g.matrix - &first.matrix).amax())
        .fold(0.0, f64::max);
    let y_independent = max_variation <= tol && max_variation.is_finite();
    Ok(RiemannProbe {
        y_independent,
        max_variation,
        tol,
        metric: y_independent.then(|| first.matrix.clone()),
    })
}
