//! Kähler checks for metrics on `R²ⁿ = Cⁿ`.
//!
//! Coordinates are ordered `(x¹, …, xⁿ, y¹, …, yⁿ)` and `J` is the standard
//! structure `J∂/∂xⁱ = ∂/∂yⁱ`, `J∂/∂yⁱ = −∂/∂xⁱ`. At each lattice point the
//! metric `g` must be symmetric positive definite and `J`-invariant, the form
//! `κ(X, Y) = g(X, JY)` must be antisymmetric, and `dκ` must vanish.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};

/// Sample lattice: `points` evenly spaced values per axis over `[min, max]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lattice {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub points: usize,
}

impl Lattice {
    pub fn new(min: Vec<f64>, max: Vec<f64>, points: usize) -> Result<Self> {
        if min.len() != max.len() || min.is_empty() {
            return Err(Error::InvalidInput(
                "lattice corners must have equal nonzero length".into(),
            ));
        }
        if points == 0 {
            return Err(Error::InvalidInput(
                "lattice needs at least one point per axis".into(),
            ));
        }
        if min
            .iter()
            .zip(&max)
            .any(|(a, b)| !(a.is_finite() && b.is_finite() && a <= b))
        {
            return Err(Error::InvalidInput(format!(
                "lattice box {min:?}..{max:?} is invalid"
            )));
        }
        Ok(Self { min, max, points })
    }

    /// Single-point lattice at `p`.
    pub fn at(p: Vec<f64>) -> Result<Self> {
        Self::new(p.clone(), p, 1)
    }

    pub fn dim(&self) -> usize {
        self.min.len()
    }

    /// Largest side length, or 1 for a degenerate lattice.
    pub fn scale(&self) -> f64 {
        let s = self
            .min
            .iter()
            .zip(&self.max)
            .map(|(a, b)| b - a)
            .fold(0.0, f64::max);
        if s > 0.0 {
            s
        } else {
            1.0
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        let d = self.dim();
        let total = self.points.pow(d as u32);
        (0..total).map(move |mut k| {
            (0..d)
                .map(|i| {
                    let j = k % self.points;
                    k /= self.points;
                    if self.points == 1 {
                        self.min[i]
                    } else {
                        self.min[i]
                            + (self.max[i] - self.min[i]) * j as f64 / (self.points - 1) as f64
                    }
                })
                .collect()
        })
    }
}

/// The standard almost-complex structure on `R²ⁿ` as a matrix acting on columns.
pub fn standard_complex_structure(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(n + i, i)] = 1.0;
        j[(i, n + i)] = -1.0;
    }
    j
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubCheckFailure {
    pub location: Vec<f64>,
    /// Basis labels such as `("e1", "e1")` for a pairwise check.
    pub witness: Option<(String, String)>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubCheck {
    pub passed: bool,
    pub max_residual: f64,
    pub failure: Option<SubCheckFailure>,
}

impl SubCheck {
    fn new() -> Self {
        Self {
            passed: true,
            max_residual: 0.0,
            failure: None,
        }
    }

    fn record(&mut self, residual: f64, tol: f64, fail: impl FnOnce() -> SubCheckFailure) {
        let residual = if residual.is_nan() {
            f64::INFINITY
        } else {
            residual
        };
        self.max_residual = self.max_residual.max(residual);
        if residual > tol {
            if self.passed {
                self.failure = Some(fail());
            }
            self.passed = false;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KahlerReport {
    pub complex_dim: usize,
    pub points_checked: usize,
    pub positive_definite: SubCheck,
    pub j_invariant: SubCheck,
    pub antisymmetric: SubCheck,
    pub closed: SubCheck,
    pub passed: bool,
    /// The Hermitian form `h = g + √−1·κ` is what is checked; identifying it with a
    /// Minkowski norm is taken as given.
    pub note: String,
}

fn label(a: usize) -> String {
    format!("e{}", a + 1)
}

/// First entry (row-major) of `m` whose magnitude exceeds `tol`, with the largest magnitude.
fn worst(m: &DMatrix<f64>, tol: f64) -> (f64, Option<(usize, usize)>) {
    let mut first = None;
    let mut max: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let v = m[(i, j)].abs();
            let v = if v.is_nan() { f64::INFINITY } else { v };
            max = max.max(v);
            if first.is_none() && v > tol {
                first = Some((i, j));
            }
        }
    }
    (max, first)
}

/// Run the four Kähler sub-checks over every lattice point.
///
/// `tol` bounds symmetry, `J`-invariance and antisymmetry residuals relative to
/// the metric's magnitude. Closedness uses central differences with step
/// `1e−4·scale` and tolerance `1e−6·scale`, where `scale` is the lattice size.
pub fn kahler_check<G>(metric: G, n: usize, grid: &Lattice, tol: f64) -> Result<KahlerReport>
where
    G: Fn(&[f64]) -> DMatrix<f64>,
{
    let dim = 2 * n;
    if n == 0 {
        return Err(Error::InvalidInput(
            "complex dimension must be at least 1".into(),
        ));
    }
    if grid.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: grid.dim(),
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let eval = |p: &[f64]| -> Result<DMatrix<f64>> {
        let g = metric(p);
        if g.nrows() != dim || g.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: g.nrows().max(g.ncols()),
            });
        }
        Ok(g)
    };
    let j = standard_complex_structure(n);
    let scale = grid.scale();
    let h = 1e-4 * scale;
    let closed_tol = 1e-6 * scale;

    let mut pd = SubCheck::new();
    let mut jinv = SubCheck::new();
    let mut anti = SubCheck::new();
    let mut closed = SubCheck::new();
    let mut count = 0;

    for p in grid.iter() {
        count += 1;
        let g = eval(&p)?;
        let mag = g.amax().max(1.0);

        let (asym, at) = worst(&(&g - g.transpose()), tol * mag);
        let eig = SymmetricEigen::new((&g + g.transpose()) * 0.5)
            .eigenvalues
            .min();
        let pd_res = if at.is_some() {
            asym
        } else if eig > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        pd.record(pd_res, tol * mag, || SubCheckFailure {
            location: p.clone(),
            witness: at.map(|(a, b)| (label(a), label(b))),
            detail: if at.is_some() {
                format!("g is not symmetric (residual {asym:e})")
            } else {
                format!("g is not positive definite (min eigenvalue {eig:e})")
            },
        });

        let jgj = j.transpose() * &g * &j;
        let (res, at) = worst(&(&jgj - &g), tol * mag);
        jinv.record(res, tol * mag, || {
            let (a, b) = at.unwrap_or((0, 0));
            SubCheckFailure {
                location: p.clone(),
                witness: Some((label(a), label(b))),
                detail: format!(
                    "g(J{0},J{1}) = {2} but g({0},{1}) = {3}",
                    label(a),
                    label(b),
                    jgj[(a, b)],
                    g[(a, b)]
                ),
            }
        });

        let kappa = &g * &j;
        let (res, at) = worst(&(&kappa + kappa.transpose()), tol * mag);
        anti.record(res, tol * mag, || {
            let (a, b) = at.unwrap_or((0, 0));
            SubCheckFailure {
                location: p.clone(),
                witness: Some((label(a), label(b))),
                detail: format!(
                    "κ({0},{1}) + κ({1},{0}) = {2}",
                    label(a),
                    label(b),
                    kappa[(a, b)] + kappa[(b, a)]
                ),
            }
        });

        if dim >= 3 {
            // ∂_a κ as a central difference of κ(p ± h e_a).
            let mut dk = Vec::with_capacity(dim);
            for a in 0..dim {
                let mut pp = p.clone();
                let mut pm = p.clone();
                pp[a] += h;
                pm[a] -= h;
                let d = (eval(&pp)? * &j - eval(&pm)? * &j) / (2.0 * h);
                dk.push(d);
            }
            for a in 0..dim {
                for b in a + 1..dim {
                    for c in b + 1..dim {
                        let v = dk[a][(b, c)] - dk[b][(a, c)] + dk[c][(a, b)];
                        closed.record(v.abs(), closed_tol, || SubCheckFailure {
                            location: p.clone(),
                            witness: None,
                            detail: format!("dκ({}, {}, {}) = {v:e}", label(a), label(b), label(c)),
                        });
                    }
                }
            }
        }
    }

    let passed = pd.passed && jinv.passed && anti.passed && closed.passed;
    Ok(KahlerReport {
        complex_dim: n,
        points_checked: count,
        positive_definite: pd,
        j_invariant: jinv,
        antisymmetric: anti,
        closed,
        passed,
        note: "checked object is the Hermitian form h = g + i·κ; its identification with the Minkowski norm is declared"
            .into(),
    })
}

pub type MetricField = Box<dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync>;

/// Built-in metric fields on `R²ⁿ`: `flat`, `conformal`, `fubini-study`.
///
/// `conformal` is `(1 + |p|²)·I`, Kähler only for `n = 1`. `fubini-study` is
/// the Fubini–Study metric in an affine chart, Kähler for every `n`.
pub fn named_metric(name: &str, n: usize) -> Option<MetricField> {
    let dim = 2 * n;
    match name {
        "flat" => Some(Box::new(move |_| DMatrix::identity(dim, dim))),
        "conformal" => Some(Box::new(move |p| {
            let r2: f64 = p.iter().map(|x| x * x).sum();
            DMatrix::identity(dim, dim) * (1.0 + r2)
        })),
        "fubini-study" => Some(Box::new(move |p| fubini_study(p, n))),
        _ => None,
    }
}

/// Real form of the Hermitian matrix `H = ((1+|z|²)δᵢⱼ − zᵢz̄ⱼ)/(1+|z|²)²`.
///
/// For `H = A + iB` the real metric is `[[A, −B], [B, A]]` in `(x, y)` blocks.
fn fubini_study(p: &[f64], n: usize) -> DMatrix<f64> {
    let (x, y) = p.split_at(n);
    let r2: f64 = p.iter().map(|v| v * v).sum();
    let s = 1.0 + r2;
    let mut g = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for k in 0..n {
            // zᵢz̄ₖ = (xᵢxₖ + yᵢyₖ) + i(yᵢxₖ − xᵢyₖ)
            let re = x[i] * x[k] + y[i] * y[k];
            let im = y[i] * x[k] - x[i] * y[k];
            let a = (if i == k { s } else { 0.0 } - re) / (s * s);
            let b = -im / (s * s);
            g[(i, k)] = a;
            g[(n + i, n + k)] = a;
            g[(i, n + k)] = -b;
            g[(n + i, k)] = b;
        }
    }
    g
}
