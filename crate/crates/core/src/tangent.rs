//! Tangent and cotangent spaces at a classified point.
//!
//! A euclidean axis contributes one two-sided derivative `∂/∂xⁱ`; every other
//! axis contributes the pair of one-sided derivatives `∂⁻/∂xⁱ`, `∂⁺/∂xⁱ`, so
//! with `s` euclidean axes the space has dimension `2n − s`.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::omega::{AxisClass, PointClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    TwoSided,
    Minus,
    Plus,
}

impl Side {
    fn mark(self) -> &'static str {
        match self {
            Side::TwoSided => "",
            Side::Minus => "⁻",
            Side::Plus => "⁺",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisVector {
    /// 1-based axis.
    pub axis: usize,
    pub side: Side,
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∂{}/∂x{}", self.side.mark(), self.axis)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Covector {
    pub axis: usize,
    pub side: Side,
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}x{}", self.side.mark(), self.axis)
    }
}

/// Ordered `(axis, side)` pairs: two-sided entries by axis, then `(−, +)` pairs by axis.
fn enumerate_basis(pclass: &PointClass) -> Vec<(usize, Side)> {
    let mut basis: Vec<(usize, Side)> = pclass
        .euclidean_axes()
        .into_iter()
        .map(|a| (a, Side::TwoSided))
        .collect();
    for (i, &t) in pclass.tags().iter().enumerate() {
        if t != AxisClass::Euclidean {
            basis.push((i + 1, Side::Minus));
            basis.push((i + 1, Side::Plus));
        }
    }
    basis
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentSpaceModel {
    pub n: usize,
    pub class: PointClass,
    pub euclidean_axes: Vec<usize>,
    pub basis: Vec<BasisVector>,
}

impl TangentSpaceModel {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Tangent vector with the given coefficients over [`Self::basis`].
    pub fn vector(&self, coefficients: &[f64]) -> Result<TangentVector> {
        if coefficients.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: coefficients.len(),
            });
        }
        Ok(TangentVector {
            coefficients: coefficients.to_vec(),
        })
    }

    pub fn zero(&self) -> TangentVector {
        TangentVector {
            coefficients: vec![0.0; self.dimension()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CotangentSpaceModel {
    pub n: usize,
    pub class: PointClass,
    pub euclidean_axes: Vec<usize>,
    pub basis: Vec<Covector>,
}

impl CotangentSpaceModel {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn tangent_space(pclass: &PointClass) -> TangentSpaceModel {
    TangentSpaceModel {
        n: pclass.dim(),
        class: pclass.clone(),
        euclidean_axes: pclass.euclidean_axes(),
        basis: enumerate_basis(pclass)
            .into_iter()
            .map(|(axis, side)| BasisVector { axis, side })
            .collect(),
    }
}

pub fn cotangent_space(pclass: &PointClass) -> CotangentSpaceModel {
    CotangentSpaceModel {
        n: pclass.dim(),
        class: pclass.clone(),
        euclidean_axes: pclass.euclidean_axes(),
        basis: enumerate_basis(pclass)
            .into_iter()
            .map(|(axis, side)| Covector { axis, side })
            .collect(),
    }
}

/// `cov(vec)`: 1 when axis and side agree, 0 otherwise (including `d⁺x(∂⁻/∂x)`).
pub fn pair(cov: Covector, vec: BasisVector) -> u8 {
    u8::from(cov.axis == vec.axis && cov.side == vec.side)
}

/// Pairing of elements drawn from the two models; the models must share a point class.
pub fn dual_pairing(
    cotangent: &CotangentSpaceModel,
    cov: Covector,
    tangent: &TangentSpaceModel,
    vec: BasisVector,
) -> Result<u8> {
    if cotangent.class != tangent.class {
        return Err(Error::ClassMismatch);
    }
    if !cotangent.basis.contains(&cov) || !tangent.basis.contains(&vec) {
        return Err(Error::InvalidInput(format!(
            "{cov} or {vec} is not a basis element at this point"
        )));
    }
    Ok(pair(cov, vec))
}

/// Full matrix `[cotangent.basis[i](tangent.basis[j])]`.
pub fn pairing_matrix(
    cotangent: &CotangentSpaceModel,
    tangent: &TangentSpaceModel,
) -> Result<Vec<Vec<u8>>> {
    if cotangent.class != tangent.class {
        return Err(Error::ClassMismatch);
    }
    Ok(cotangent
        .basis
        .iter()
        .map(|&c| tangent.basis.iter().map(|&v| pair(c, v)).collect())
        .collect())
}

/// Tangent vector as a coefficient tuple over an enumerated basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentVector {
    coefficients: Vec<f64>,
}

impl TangentVector {
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn checked_add(&self, other: &TangentVector) -> Result<TangentVector> {
        if self.coefficients.len() != other.coefficients.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coefficients.len(),
                actual: other.coefficients.len(),
            });
        }
        Ok(TangentVector {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `v(f) = Σ vᵢ ∂^{εᵢ}f(p)`, given the basis derivatives of `f` at the point.
    pub fn apply(&self, basis_derivatives: &[f64]) -> Result<f64> {
        if basis_derivatives.len() != self.coefficients.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coefficients.len(),
                actual: basis_derivatives.len(),
            });
        }
        Ok(self
            .coefficients
            .iter()
            .zip(basis_derivatives)
            .map(|(a, b)| a * b)
            .sum())
    }
}

impl Add for &TangentVector {
    type Output = TangentVector;

    /// Panics on mismatched dimensions; see [`TangentVector::checked_add`].
    fn add(self, rhs: &TangentVector) -> TangentVector {
        self.checked_add(rhs)
            .expect("tangent vectors from different spaces")
    }
}

impl Mul<f64> for &TangentVector {
    type Output = TangentVector;

    fn mul(self, k: f64) -> TangentVector {
        TangentVector {
            coefficients: self.coefficients.iter().map(|a| a * k).collect(),
        }
    }
}

impl Neg for &TangentVector {
    type Output = TangentVector;

    fn neg(self) -> TangentVector {
        self * -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names<T: fmt::Display>(v: &[T]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn all_euclidean_is_classical() {
        let c = PointClass::with_euclidean_axes(3, &[1, 2, 3]).unwrap();
        let t = tangent_space(&c);
        assert_eq!(t.dimension(), 3);
        assert_eq!(names(&t.basis), ["∂/∂x1", "∂/∂x2", "∂/∂x3"]);
        assert_eq!(names(&cotangent_space(&c).basis), ["dx1", "dx2", "dx3"]);
    }

    #[test]
    fn mixed_basis_order() {
        let c = PointClass::with_euclidean_axes(2, &[1]).unwrap();
        let t = tangent_space(&c);
        assert_eq!(t.dimension(), 3);
        assert_eq!(names(&t.basis), ["∂/∂x1", "∂⁻/∂x2", "∂⁺/∂x2"]);
        let ct = cotangent_space(&c);
        assert_eq!(names(&ct.basis), ["dx1", "d⁻x2", "d⁺x2"]);
    }

    #[test]
    fn no_euclidean_axes() {
        let c = PointClass::with_euclidean_axes(2, &[]).unwrap();
        assert_eq!(tangent_space(&c).dimension(), 4);
        let c = PointClass::new(vec![AxisClass::Hyperbolic; 4]).unwrap();
        assert_eq!(cotangent_space(&c).dimension(), 8);
    }

    #[test]
    fn pairing_examples() {
        let c = PointClass::with_euclidean_axes(2, &[1]).unwrap();
        let (t, ct) = (tangent_space(&c), cotangent_space(&c));
        let dx1 = Covector {
            axis: 1,
            side: Side::TwoSided,
        };
        let d1 = BasisVector {
            axis: 1,
            side: Side::TwoSided,
        };
        let dp2 = Covector {
            axis: 2,
            side: Side::Plus,
        };
        let p2 = BasisVector {
            axis: 2,
            side: Side::Plus,
        };
        let m2 = BasisVector {
            axis: 2,
            side: Side::Minus,
        };
        assert_eq!(dual_pairing(&ct, dx1, &t, d1), Ok(1));
        assert_eq!(dual_pairing(&ct, dp2, &t, p2), Ok(1));
        assert_eq!(dual_pairing(&ct, dp2, &t, m2), Ok(0));

        let other = tangent_space(&PointClass::with_euclidean_axes(2, &[2]).unwrap());
        assert_eq!(
            dual_pairing(&ct, dx1, &other, d1),
            Err(Error::ClassMismatch)
        );
        assert!(pairing_matrix(&ct, &other).is_err());
    }

    #[test]
    fn vector_space_ops() {
        let t = tangent_space(&PointClass::with_euclidean_axes(2, &[1]).unwrap());
        let u = t.vector(&[1.0, -2.0, 0.5]).unwrap();
        let v = t.vector(&[0.25, 4.0, -1.0]).unwrap();
        assert_eq!((&u + &t.zero()), u);
        assert_eq!((&u + &v).coefficients(), &[1.25, 2.0, -0.5]);
        assert_eq!((&u * 2.5).coefficients(), &[2.5, -5.0, 1.25]);
        assert_eq!((&u + &(-&u)), t.zero());
        assert!(t.vector(&[1.0]).is_err());
        assert_eq!(u.apply(&[1.0, 1.0, 2.0]).unwrap(), 0.0);
    }

    fn tag() -> impl Strategy<Value = AxisClass> {
        prop_oneof![
            Just(AxisClass::Elliptic),
            Just(AxisClass::Euclidean),
            Just(AxisClass::Hyperbolic)
        ]
    }

    proptest! {
        #[test]
        fn pairing_is_identity(tags in prop::collection::vec(tag(), 2..9)) {
            let c = PointClass::new(tags).unwrap();
            let s = c.euclidean_axes().len();
            let (t, ct) = (tangent_space(&c), cotangent_space(&c));
            prop_assert_eq!(t.dimension(), 2 * c.dim() - s);
            prop_assert_eq!(ct.dimension(), t.dimension());
            let m = pairing_matrix(&ct, &t).unwrap();
            for (i, row) in m.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    prop_assert_eq!(x, u8::from(i == j));
                }
            }
            prop_assert_eq!(tangent_space(&c), t);
        }
    }
}
