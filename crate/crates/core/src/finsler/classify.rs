use std::fmt;

use serde::Serialize;

use super::kahler::KahlerReport;
use super::{MinkowskiReport, RiemannProbe};
use crate::geodesics::DetectionReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeometryClass {
    SmarandachePseudoManifold,
    Finsler,
    Riemann,
    Kahler,
    NotClassified,
}

impl fmt::Display for GeometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryClass::SmarandachePseudoManifold => "SmarandachePseudoManifold",
            GeometryClass::Finsler => "Finsler",
            GeometryClass::Riemann => "Riemann",
            GeometryClass::Kahler => "Kahler",
            GeometryClass::NotClassified => "NotClassified",
        })
    }
}

impl GeometryClass {
    /// Every class this one is contained in, finest first.
    pub fn inclusions(self) -> &'static [&'static str] {
        match self {
            GeometryClass::Kahler => {
                &["Kähler", "pseudo-manifold geometry", "Smarandache geometry"]
            }
            GeometryClass::Riemann => &[
                "Riemann",
                "Finsler",
                "pseudo-manifold geometry",
                "Smarandache geometry",
            ],
            GeometryClass::Finsler => &[
                "Finsler",
                "pseudo-manifold geometry",
                "Smarandache geometry",
            ],
            GeometryClass::SmarandachePseudoManifold => {
                &["pseudo-manifold geometry", "Smarandache geometry"]
            }
            GeometryClass::NotClassified => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub class: GeometryClass,
    pub all_euclidean: bool,
    pub evidence: Vec<String>,
}

/// Place a space in the inclusion chain from its detection and norm reports.
///
/// Any denial wins. Otherwise every point is euclidean and the finest class
/// whose evidence holds is returned: Kähler needs a Hermitian `g_y`
/// (y-independent) that passes the Kähler checks, Riemann a y-independent
/// `g_y`, Finsler only a passing norm.
pub fn classify_geometry(
    detection: &DetectionReport,
    norm: &MinkowskiReport,
    riemann: &RiemannProbe,
    kahler: Option<&KahlerReport>,
) -> Classification {
    let mut evidence = Vec::new();
    if detection.denied {
        evidence.push(format!(
            "local-parallel axiom denied ({} witness pair(s))",
            detection.witnesses.len()
        ));
        return Classification {
            class: GeometryClass::SmarandachePseudoManifold,
            all_euclidean: false,
            evidence,
        };
    }
    if !detection.all_euclidean {
        evidence.push("non-euclidean points present without a denial witness".into());
        return Classification {
            class: GeometryClass::NotClassified,
            all_euclidean: false,
            evidence,
        };
    }
    evidence.push("all points euclidean".into());
    if !norm.passed {
        evidence.push(format!("norm '{}' fails the Minkowski checks", norm.label));
        return Classification {
            class: GeometryClass::NotClassified,
            all_euclidean: true,
            evidence,
        };
    }
    evidence.push(format!("norm '{}' passes the Minkowski checks", norm.label));
    if !riemann.y_independent {
        evidence.push(format!(
            "g_y varies with y (max variation {:.3e})",
            riemann.max_variation
        ));
        return Classification {
            class: GeometryClass::Finsler,
            all_euclidean: true,
            evidence,
        };
    }
    evidence.push(format!(
        "g_y independent of y (max variation {:.3e})",
        riemann.max_variation
    ));
    match kahler {
        Some(k) if k.passed => {
            evidence.push("Kähler checks pass".into());
            Classification {
                class: GeometryClass::Kahler,
                all_euclidean: true,
                evidence,
            }
        }
        Some(_) => {
            evidence.push("Kähler checks fail".into());
            Classification {
                class: GeometryClass::Riemann,
                all_euclidean: true,
                evidence,
            }
        }
        None => Classification {
            class: GeometryClass::Riemann,
            all_euclidean: true,
            evidence,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finsler::{
        check_minkowski_norm, generic_directions, kahler_check, riemann_probe, Lattice,
        MinkowskiCheck, NormCandidate, DEFAULT_STEP, RIEMANN_TOL,
    };
    use crate::geodesics::{detect_smarandache, Bounds, ChargedPoint, Scene};
    use crate::omega::OmegaValue;
    use nalgebra::DMatrix;
    use std::f64::consts::PI;

    fn scene(charges: Vec<ChargedPoint>) -> Scene {
        Scene::new(
            2,
            charges,
            0.1,
            Bounds::new(vec![-1.0; 2], vec![1.0; 2]).unwrap(),
        )
        .unwrap()
    }

    fn reports(f: &NormCandidate) -> (MinkowskiReport, RiemannProbe) {
        let s = generic_directions(f.dimension(), 16, 11);
        (
            check_minkowski_norm(f, &s, &MinkowskiCheck::default()).unwrap(),
            riemann_probe(f, &s, DEFAULT_STEP, RIEMANN_TOL).unwrap(),
        )
    }

    #[test]
    fn denial_wins() {
        let d = detect_smarandache(&scene(vec![ChargedPoint {
            position: vec![0.0, 0.0],
            omega: OmegaValue::reduce(&[PI, 2.0 * PI]).unwrap(),
        }]));
        let (n, r) = reports(&NormCandidate::euclidean(2));
        assert_eq!(
            classify_geometry(&d, &n, &r, None).class,
            GeometryClass::SmarandachePseudoManifold
        );
    }

    #[test]
    fn euclidean_norm_is_riemann() {
        let d = detect_smarandache(&scene(vec![]));
        let (n, r) = reports(&NormCandidate::euclidean(2));
        let c = classify_geometry(&d, &n, &r, None);
        assert_eq!(c.class, GeometryClass::Riemann);
        assert!(c.class.inclusions().contains(&"Finsler"));

        let grid = Lattice::at(vec![0.0, 0.0]).unwrap();
        let k = kahler_check(|_: &[f64]| DMatrix::identity(2, 2), 1, &grid, 1e-9).unwrap();
        assert_eq!(
            classify_geometry(&d, &n, &r, Some(&k)).class,
            GeometryClass::Kahler
        );
    }

    #[test]
    fn quartic_is_finsler() {
        let d = detect_smarandache(&scene(vec![]));
        let (n, r) = reports(&NormCandidate::quartic_mean(2));
        assert_eq!(
            classify_geometry(&d, &n, &r, None).class,
            GeometryClass::Finsler
        );
    }

    #[test]
    fn failing_norm_not_classified() {
        let d = detect_smarandache(&scene(vec![]));
        let (n, r) = reports(&NormCandidate::linear_coordinate(2, 1).unwrap());
        assert_eq!(
            classify_geometry(&d, &n, &r, None).class,
            GeometryClass::NotClassified
        );
    }
}
