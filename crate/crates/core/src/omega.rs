//! Rotation charges and the direction transform.
//!
//! A charge `ω ∈ Rⁿ` sits at a point and rotates the direction angles of
//! every line passing through it. Components are reduced into `[0, 4π)`;
//! a reduced component equal to `2π` leaves its axis untouched.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TWO_PI: f64 = 2.0 * PI;
pub const FOUR_PI: f64 = 4.0 * PI;

/// Absolute tolerance used when comparing a reduced component with `2π`.
pub const EUCLIDEAN_TOL: f64 = 1e-12;

/// Tolerance on `Σ cos²θᵢ = 1` for a realizable direction.
pub const UNIT_TOL: f64 = 1e-9;

/// Reduce `x` into `[0, period)`.
///
/// `rem_euclid` can round up to exactly `period` for tiny negative inputs,
/// which is folded back to zero.
pub fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Per-axis charge vector, every component in `[0, 4π)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OmegaValue(Vec<f64>);

impl OmegaValue {
    /// Reduce raw charges mod 4π.
    ///
    /// Components within [`EUCLIDEAN_TOL`] of `2π` are snapped onto `2π` so
    /// that euclidean axes act as the exact identity.
    pub fn reduce(raw: &[f64]) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::Dimension(raw.len()));
        }
        let mut out = Vec::with_capacity(raw.len());
        for (i, &w) in raw.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "omega component {} is not finite ({w})",
                    i + 1
                )));
            }
            let r = wrap(w, FOUR_PI);
            out.push(if (r - TWO_PI).abs() <= EUCLIDEAN_TOL {
                TWO_PI
            } else {
                r
            });
        }
        Ok(Self(out))
    }

    /// The all-euclidean charge `(2π, …, 2π)`.
    pub fn euclidean(n: usize) -> Result<Self> {
        Self::reduce(&vec![TWO_PI; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn classify(&self) -> PointClass {
        PointClass(self.0.iter().map(|&w| AxisClass::of(w)).collect())
    }

    /// True when every axis is euclidean, i.e. the charge acts as the identity.
    pub fn is_euclidean(&self) -> bool {
        self.0
            .iter()
            .all(|&w| AxisClass::of(w) == AxisClass::Euclidean)
    }

    /// Angle added to direction angle `i` (0-based) by this charge, in `[0, 2π)`.
    pub fn deflection(&self, i: usize) -> f64 {
        axis_deflection(self.0[i])
    }
}

/// Class of a point along a single axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxisClass {
    Elliptic,
    Euclidean,
    Hyperbolic,
}

impl AxisClass {
    /// Classify a reduced component.
    pub fn of(w: f64) -> Self {
        if (w - TWO_PI).abs() <= EUCLIDEAN_TOL {
            AxisClass::Euclidean
        } else if w < TWO_PI {
            AxisClass::Elliptic
        } else {
            AxisClass::Hyperbolic
        }
    }
}

impl fmt::Display for AxisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AxisClass::Elliptic => "elliptic",
            AxisClass::Euclidean => "euclidean",
            AxisClass::Hyperbolic => "hyperbolic",
        };
        f.write_str(s)
    }
}

/// Per-axis classification of a point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointClass(Vec<AxisClass>);

impl PointClass {
    pub fn new(tags: Vec<AxisClass>) -> Result<Self> {
        if tags.len() < 2 {
            return Err(Error::Dimension(tags.len()));
        }
        Ok(Self(tags))
    }

    /// Class with the given 1-based axes euclidean and every other axis elliptic.
    pub fn with_euclidean_axes(n: usize, axes: &[usize]) -> Result<Self> {
        let mut tags = vec![AxisClass::Elliptic; n];
        for &a in axes {
            if a == 0 || a > n {
                return Err(Error::AxisOutOfRange { axis: a, n });
            }
            tags[a - 1] = AxisClass::Euclidean;
        }
        Self::new(tags)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn tags(&self) -> &[AxisClass] {
        &self.0
    }

    /// Tag of 1-based axis `axis`.
    pub fn axis(&self, axis: usize) -> Result<AxisClass> {
        if axis == 0 || axis > self.0.len() {
            return Err(Error::AxisOutOfRange {
                axis,
                n: self.0.len(),
            });
        }
        Ok(self.0[axis - 1])
    }

    /// 1-based indices of the euclidean axes, ascending.
    pub fn euclidean_axes(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &t)| t == AxisClass::Euclidean)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn is_euclidean(&self) -> bool {
        self.0.iter().all(|&t| t == AxisClass::Euclidean)
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(")")
    }
}

/// Direction angles against the coordinate axes, each in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DirectionAngles(Vec<f64>);

impl DirectionAngles {
    /// Angles treated as independent; no constraint on `Σ cos²θᵢ`.
    pub fn free(angles: &[f64]) -> Result<Self> {
        if angles.len() < 2 {
            return Err(Error::Dimension(angles.len()));
        }
        if let Some(a) = angles.iter().find(|a| !a.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "direction angle is not finite ({a})"
            )));
        }
        Ok(Self(angles.iter().map(|&a| wrap(a, TWO_PI)).collect()))
    }

    /// Angles `θᵢ = arccos(dᵢ)` of a unit vector.
    pub fn from_unit_vector(d: &[f64]) -> Result<Self> {
        if d.len() < 2 {
            return Err(Error::Dimension(d.len()));
        }
        let norm = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self(d.iter().map(|&x| x.clamp(-1.0, 1.0).acos()).collect()))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    pub fn cosines(&self) -> Vec<f64> {
        self.0.iter().map(|a| a.cos()).collect()
    }

    /// Whether `Σ cos²θᵢ = 1` within [`UNIT_TOL`].
    pub fn is_realizable(&self) -> bool {
        let s: f64 = self.0.iter().map(|a| a.cos().powi(2)).sum();
        (s - 1.0).abs() <= UNIT_TOL
    }
}

fn sigma(w: f64) -> f64 {
    // closed at 2π so a euclidean axis maps θ to θ
    if w <= TWO_PI + EUCLIDEAN_TOL {
        PI
    } else {
        0.0
    }
}

fn axis_deflection(w: f64) -> f64 {
    wrap(sigma(w) - w / 2.0, TWO_PI)
}

/// Apply `θᵢ ↦ θᵢ − ϑᵢ/2 + σᵢ`, normalized into `[0, 2π)`.
pub fn transform_direction(theta: &DirectionAngles, omega: &OmegaValue) -> Result<DirectionAngles> {
    if theta.dim() != omega.dim() {
        return Err(Error::DimensionMismatch {
            expected: omega.dim(),
            actual: theta.dim(),
        });
    }
    let out = theta
        .0
        .iter()
        .zip(&omega.0)
        .map(|(&t, &w)| {
            if AxisClass::of(w) == AxisClass::Euclidean {
                t
            } else {
                wrap(t - w / 2.0 + sigma(w), TWO_PI)
            }
        })
        .collect();
    Ok(DirectionAngles(out))
}

/// True iff every raw component is `2πk` with `k` odd.
pub fn is_identity_mapping(raw: &[f64]) -> Result<bool> {
    Ok(OmegaValue::reduce(raw)?.is_euclidean())
}

/// Smallest signed distance between two angles on the circle, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = wrap(a - b, TWO_PI);
    d.min(TWO_PI - d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        let w = OmegaValue::reduce(&[6.0 * PI, 2.0 * PI]).unwrap();
        assert_eq!(w.components(), &[TWO_PI, TWO_PI]);

        let w = OmegaValue::reduce(&[2.0 * PI, 2.0 * PI]).unwrap();
        assert_eq!(w.components(), &[TWO_PI, TWO_PI]);

        // 9π − 2·4π = π, −π/2 + 4π = 7π/2
        let w = OmegaValue::reduce(&[9.0 * PI, -PI / 2.0]).unwrap();
        assert_abs_diff_eq!(w.components()[0], PI, epsilon = 1e-12);
        assert_abs_diff_eq!(w.components()[1], 3.5 * PI, epsilon = 1e-12);
    }

    #[test]
    fn reduce_rejects_bad_input() {
        assert_eq!(OmegaValue::reduce(&[PI]), Err(Error::Dimension(1)));
        assert!(matches!(
            OmegaValue::reduce(&[PI, f64::NAN]),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            OmegaValue::reduce(&[f64::INFINITY, 0.0]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn tiny_negative_wraps_below_four_pi() {
        let w = OmegaValue::reduce(&[-1e-300, 0.0]).unwrap();
        assert!(w.components()[0] < FOUR_PI);
    }

    #[test]
    fn classify_examples() {
        use AxisClass::*;
        let c = OmegaValue::reduce(&[TWO_PI, TWO_PI]).unwrap().classify();
        assert_eq!(c.tags(), &[Euclidean, Euclidean]);
        let c = OmegaValue::reduce(&[PI / 2.0, 3.0 * PI])
            .unwrap()
            .classify();
        assert_eq!(c.tags(), &[Elliptic, Hyperbolic]);
        let c = OmegaValue::reduce(&[0.0, FOUR_PI - 1e-9])
            .unwrap()
            .classify();
        assert_eq!(c.tags(), &[Elliptic, Hyperbolic]);
    }

    fn t1(theta: f64, omega: f64) -> f64 {
        let th = DirectionAngles::free(&[theta, 0.0]).unwrap();
        let w = OmegaValue::reduce(&[omega, TWO_PI]).unwrap();
        transform_direction(&th, &w).unwrap().angles()[0]
    }

    #[test]
    fn transform_examples() {
        assert_abs_diff_eq!(t1(PI / 4.0, PI), 0.75 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(t1(PI / 2.0, 3.0 * PI), PI, epsilon = 1e-12);
        assert_abs_diff_eq!(t1(0.0, 0.0), PI, epsilon = 1e-12);

        let th = DirectionAngles::free(&[0.3, 1.1, 5.9]).unwrap();
        let w = OmegaValue::euclidean(3).unwrap();
        assert_eq!(transform_direction(&th, &w).unwrap(), th);
    }

    #[test]
    fn transform_dimension_mismatch() {
        let th = DirectionAngles::free(&[0.3, 1.1, 5.9]).unwrap();
        let w = OmegaValue::euclidean(2).unwrap();
        assert_eq!(
            transform_direction(&th, &w),
            Err(Error::DimensionMismatch {
                expected: 2,
                actual: 3
            })
        );
    }

    #[test]
    fn identity_mapping_examples() {
        assert!(is_identity_mapping(&[TWO_PI, TWO_PI]).unwrap());
        assert!(is_identity_mapping(&[6.0 * PI, TWO_PI]).unwrap());
        assert!(!is_identity_mapping(&[FOUR_PI, TWO_PI]).unwrap());
        assert!(is_identity_mapping(&[-TWO_PI, 10.0 * PI]).unwrap());
    }

    #[test]
    fn unit_vector_angles() {
        let h = 0.5f64.sqrt();
        let th = DirectionAngles::from_unit_vector(&[h, h]).unwrap();
        assert_abs_diff_eq!(th.angles()[0], PI / 4.0, epsilon = 1e-12);
        assert!(th.is_realizable());
        assert!(DirectionAngles::from_unit_vector(&[1.0, 1.0]).is_err());
        assert!(!DirectionAngles::free(&[0.0, 0.0]).unwrap().is_realizable());
    }

    proptest! {
        #[test]
        fn reduced_components_in_range(raw in prop::collection::vec(-1e4f64..1e4, 2..6)) {
            let w = OmegaValue::reduce(&raw).unwrap();
            for (&r, &x) in w.components().iter().zip(&raw) {
                prop_assert!((0.0..FOUR_PI).contains(&r));
                let k = ((x - r) / FOUR_PI).round();
                prop_assert!((x - r - k * FOUR_PI).abs() < 1e-9 * x.abs().max(1.0));
            }
        }

        #[test]
        fn rereduction_keeps_class(raw in prop::collection::vec(-100f64..100.0, 2..6)) {
            let w = OmegaValue::reduce(&raw).unwrap();
            let again = OmegaValue::reduce(w.components()).unwrap();
            prop_assert_eq!(w.classify(), again.classify());
        }

        #[test]
        fn transform_output_in_range(
            raw in prop::collection::vec(-50f64..50.0, 3),
            theta in prop::collection::vec(-20f64..20.0, 3),
        ) {
            let w = OmegaValue::reduce(&raw).unwrap();
            let th = DirectionAngles::free(&theta).unwrap();
            let out = transform_direction(&th, &w).unwrap();
            prop_assert!(out.angles().iter().all(|a| (0.0..TWO_PI).contains(a)));
        }

        #[test]
        fn deflection_independent_of_theta(
            raw in prop::collection::vec(-50f64..50.0, 2),
            a in 0f64..TWO_PI,
            b in 0f64..TWO_PI,
        ) {
            let w = OmegaValue::reduce(&raw).unwrap();
            let ta = transform_direction(&DirectionAngles::free(&[a, a]).unwrap(), &w).unwrap();
            let tb = transform_direction(&DirectionAngles::free(&[b, b]).unwrap(), &w).unwrap();
            for i in 0..2 {
                let da = wrap(ta.angles()[i] - a, TWO_PI);
                let db = wrap(tb.angles()[i] - b, TWO_PI);
                prop_assert!(circular_distance(da, db) < 1e-9);
                prop_assert!(circular_distance(da, w.deflection(i)) < 1e-9);
            }
        }
    }
}
