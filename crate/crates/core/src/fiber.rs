//! Dimension bookkeeping for principal fiber bundles over pseudo-manifolds.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfbSpec {
    pub dim_p: usize,
    pub dim_m: usize,
    pub group_dim: usize,
    /// Number of euclidean directions at the point of the total space.
    pub lambda_p: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PfbViolation {
    BaseDimensionZero,
    TotalNotLarger {
        dim_p: usize,
        dim_m: usize,
    },
    LambdaOutOfRange {
        lambda_p: usize,
        dim_p: usize,
    },
    FiberRatioNotInteger {
        dim_p: usize,
        dim_m: usize,
    },
    BaseLambdaNotInteger {
        lambda_p: usize,
        dim_m: usize,
        dim_p: usize,
    },
}

impl fmt::Display for PfbViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PfbViolation::BaseDimensionZero => write!(f, "dim M must be at least 1"),
            PfbViolation::TotalNotLarger { dim_p, dim_m } => {
                write!(f, "dim P = {dim_p} must exceed dim M = {dim_m}")
            }
            PfbViolation::LambdaOutOfRange { lambda_p, dim_p } => {
                write!(f, "lambda = {lambda_p} exceeds dim P = {dim_p}")
            }
            PfbViolation::FiberRatioNotInteger { dim_p, dim_m } => {
                write!(f, "mu = dim P / dim M = {dim_p}/{dim_m} is not an integer")
            }
            PfbViolation::BaseLambdaNotInteger {
                lambda_p,
                dim_m,
                dim_p,
            } => {
                write!(f, "lambda_M = {lambda_p}*{dim_m}/{dim_p} is not an integer")
            }
        }
    }
}

/// A spec that passed [`validate_pfb`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidPfb {
    spec: PfbSpec,
    mu: usize,
    lambda_m: usize,
}

impl ValidPfb {
    pub fn spec(&self) -> PfbSpec {
        self.spec
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn lambda_m(&self) -> usize {
        self.lambda_m
    }
}

pub fn validate_pfb(spec: PfbSpec) -> std::result::Result<ValidPfb, Vec<PfbViolation>> {
    let PfbSpec {
        dim_p,
        dim_m,
        lambda_p,
        ..
    } = spec;
    let mut errs = Vec::new();
    if dim_m == 0 {
        errs.push(PfbViolation::BaseDimensionZero);
    }
    if dim_p <= dim_m {
        errs.push(PfbViolation::TotalNotLarger { dim_p, dim_m });
    }
    if lambda_p > dim_p {
        errs.push(PfbViolation::LambdaOutOfRange { lambda_p, dim_p });
    }
    if dim_m > 0 && dim_p % dim_m != 0 {
        errs.push(PfbViolation::FiberRatioNotInteger { dim_p, dim_m });
    }
    if dim_p > 0 && (lambda_p * dim_m) % dim_p != 0 {
        errs.push(PfbViolation::BaseLambdaNotInteger {
            lambda_p,
            dim_m,
            dim_p,
        });
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    Ok(ValidPfb {
        spec,
        mu: dim_p / dim_m,
        lambda_m: lambda_p * dim_m / dim_p,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BundleDimensions {
    /// `dim T_pP = 2·dim P − λ_P`
    pub total_tangent: usize,
    /// `dim H_p = dim T_{π(p)}M = 2·dim M − λ_M`
    pub horizontal: usize,
    /// `dim V_p = (dim P − dim M)(2·dim P − λ_P) / dim P`
    pub vertical: usize,
    pub mu: usize,
    pub lambda_m: usize,
    /// `dim V_p = dim P − dim M`, which holds exactly at euclidean points.
    pub euclidean_point: bool,
}

pub fn vertical_dimension(pfb: &ValidPfb) -> Result<BundleDimensions> {
    let PfbSpec {
        dim_p,
        dim_m,
        lambda_p,
        ..
    } = pfb.spec;
    let num = (dim_p - dim_m) * (2 * dim_p - lambda_p);
    if num % dim_p != 0 {
        return Err(Error::Internal(format!(
            "dim V_p = {num}/{dim_p} is not an integer"
        )));
    }
    let vertical = num / dim_p;
    Ok(BundleDimensions {
        total_tangent: 2 * dim_p - lambda_p,
        horizontal: 2 * dim_m - pfb.lambda_m,
        vertical,
        mu: pfb.mu,
        lambda_m: pfb.lambda_m,
        euclidean_point: vertical == dim_p - dim_m,
    })
}

/// True iff every sampled point of the total space is euclidean.
pub fn is_classical_pfb(dim_p: usize, lambdas: &[usize]) -> Result<bool> {
    if lambdas.is_empty() {
        return Err(Error::InvalidInput("no sampled points".into()));
    }
    if let Some(&l) = lambdas.iter().find(|&&l| l > dim_p) {
        return Err(Error::InvalidInput(format!(
            "lambda = {l} exceeds dim P = {dim_p}"
        )));
    }
    Ok(lambdas.iter().all(|&l| l == dim_p))
}
