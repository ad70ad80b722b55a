//! Discrete charged scenes over `(Rⁿ, ω)`.
//!
//! Every point not listed as a charge is euclidean. Rays travel in straight
//! segments and bend when they pass within `epsilon` of a charge.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::omega::{
    transform_direction, AxisClass, DirectionAngles, OmegaValue, PointClass, UNIT_TOL,
};

/// Cosine vectors shorter than this cannot be turned back into a direction.
pub const DEGENERATE_NORM: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChargedPoint {
    pub position: Vec<f64>,
    pub omega: OmegaValue,
}

/// Axis-aligned box `[min, max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl Bounds {
    pub fn new(min: Vec<f64>, max: Vec<f64>) -> Result<Self> {
        if min.len() != max.len() {
            return Err(Error::DimensionMismatch {
                expected: min.len(),
                actual: max.len(),
            });
        }
        for (i, (lo, hi)) in min.iter().zip(&max).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidInput(format!(
                    "bounds on axis {} are empty: [{lo}, {hi}]",
                    i + 1
                )));
            }
        }
        Ok(Self { min, max })
    }

    pub fn dim(&self) -> usize {
        self.min.len()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.iter()
            .zip(self.min.iter().zip(&self.max))
            .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    /// Distance along unit `d` from `p` (inside) to the box boundary.
    fn exit_distance(&self, p: &[f64], d: &[f64]) -> f64 {
        let mut t = f64::INFINITY;
        for i in 0..p.len() {
            let ti = if d[i] > 0.0 {
                (self.max[i] - p[i]) / d[i]
            } else if d[i] < 0.0 {
                (self.min[i] - p[i]) / d[i]
            } else {
                continue;
            };
            t = t.min(ti.max(0.0));
        }
        t
    }
}

/// The discrete model of `(Rⁿ, ω)`: finitely many charges on a euclidean background.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    dimension: usize,
    charges: Vec<ChargedPoint>,
    epsilon: f64,
    bounds: Bounds,
}

impl Scene {
    pub fn new(
        dimension: usize,
        charges: Vec<ChargedPoint>,
        epsilon: f64,
        bounds: Bounds,
    ) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::Dimension(dimension));
        }
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidInput(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        if bounds.dim() != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                actual: bounds.dim(),
            });
        }
        for c in &charges {
            if c.position.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    actual: c.position.len(),
                });
            }
            if c.omega.dim() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    actual: c.omega.dim(),
                });
            }
            if c.position.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "charge position {:?} is not finite",
                    c.position
                )));
            }
        }
        for i in 0..charges.len() {
            for j in i + 1..charges.len() {
                if distance(&charges[i].position, &charges[j].position) <= epsilon {
                    return Err(Error::ChargesTooClose {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(Self {
            dimension,
            charges,
            epsilon,
            bounds,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn charges(&self) -> &[ChargedPoint] {
        &self.charges
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub charge: usize,
    /// Index into [`RayTrace::vertices`] where the deflection happens.
    pub vertex: usize,
    pub incoming: DirectionAngles,
    /// Transformed angles before renormalization into a unit vector.
    pub outgoing: DirectionAngles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    BoundsExit,
    /// Stopped at the point where one more event than allowed would fire.
    EventLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RayTrace {
    pub vertices: Vec<Vec<f64>>,
    pub directions: Vec<Vec<f64>>,
    pub events: Vec<TraceEvent>,
    pub termination: Termination,
}

impl RayTrace {
    pub fn segments(&self) -> usize {
        self.directions.len()
    }

    /// Charge index that fired at vertex `v`, if any.
    pub fn event_at(&self, v: usize) -> Option<usize> {
        self.events.iter().find(|e| e.vertex == v).map(|e| e.charge)
    }
}

/// Propagate a ray through the scene.
///
/// The ray bends at the nearest forward charge whose perpendicular distance
/// to the current segment is at most `epsilon` (ties go to the lower index).
/// The bend vertex is the foot of that perpendicular. Each charge fires once.
pub fn trace_ray(
    scene: &Scene,
    origin: &[f64],
    direction: &[f64],
    max_events: usize,
) -> Result<RayTrace> {
    let n = scene.dimension;
    if origin.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: origin.len(),
        });
    }
    if direction.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: direction.len(),
        });
    }
    let norm = dot(direction, direction).sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit { norm });
    }
    if origin.iter().any(|x| !x.is_finite()) || !scene.bounds.contains(origin) {
        return Err(Error::OriginOutsideBounds(origin.to_vec()));
    }

    let mut pos = origin.to_vec();
    let mut dir: Vec<f64> = direction.iter().map(|x| x / norm).collect();
    let mut fired = vec![false; scene.charges.len()];
    let mut trace = RayTrace {
        vertices: vec![pos.clone()],
        directions: Vec::new(),
        events: Vec::new(),
        termination: Termination::BoundsExit,
    };

    loop {
        let t_exit = scene.bounds.exit_distance(&pos, &dir);
        let mut hit: Option<(usize, f64)> = None;
        for (k, c) in scene.charges.iter().enumerate() {
            if fired[k] {
                continue;
            }
            let v: Vec<f64> = c.position.iter().zip(&pos).map(|(a, b)| a - b).collect();
            let t = dot(&v, &dir);
            if t <= 0.0 || t > t_exit {
                continue;
            }
            let perp = (dot(&v, &v) - t * t).max(0.0).sqrt();
            if perp <= scene.epsilon && hit.is_none_or(|(_, bt)| t < bt) {
                hit = Some((k, t));
            }
        }

        let Some((k, t)) = hit else {
            let b = &scene.bounds;
            let end: Vec<f64> = (0..n)
                .map(|i| (pos[i] + t_exit * dir[i]).clamp(b.min[i], b.max[i]))
                .collect();
            trace.vertices.push(end);
            trace.directions.push(dir);
            return Ok(trace);
        };

        let foot: Vec<f64> = pos.iter().zip(&dir).map(|(p, d)| p + t * d).collect();
        trace.vertices.push(foot.clone());
        trace.directions.push(dir.clone());
        if trace.events.len() == max_events {
            trace.termination = Termination::EventLimit;
            return Ok(trace);
        }

        let incoming = DirectionAngles::from_unit_vector(&dir)?;
        let outgoing = transform_direction(&incoming, &scene.charges[k].omega)?;
        // Euclidean axes keep their cosine exactly; cos(acos(x)) is not x.
        let omega = &scene.charges[k].omega;
        let cos: Vec<f64> = outgoing
            .cosines()
            .into_iter()
            .zip(&dir)
            .zip(omega.classify().tags())
            .map(|((c, &d), &t)| if t == AxisClass::Euclidean { d } else { c })
            .collect();
        let len = dot(&cos, &cos).sqrt();
        if len < DEGENERATE_NORM {
            return Err(Error::DegenerateDirection {
                charge: k,
                norm: len,
            });
        }
        fired[k] = true;
        trace.events.push(TraceEvent {
            charge: k,
            vertex: trace.vertices.len() - 1,
            incoming,
            outgoing,
        });
        dir = cos.iter().map(|c| c / len).collect();
        pos = foot;
    }
}

/// A ray to be traced: origin and unit direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub origin: Vec<f64>,
    pub direction: Vec<f64>,
}

/// Trace many rays in parallel; results keep the input order.
pub fn trace_batch(scene: &Scene, rays: &[Ray], max_events: usize) -> Vec<Result<RayTrace>> {
    rays.par_iter()
        .map(|r| trace_ray(scene, &r.origin, &r.direction, max_events))
        .collect()
}

/// Number of lines through a point locally parallel to a line along one axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParallelCount {
    ExactlyOne,
    InfinitelyMany,
    Zero,
}

impl fmt::Display for ParallelCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParallelCount::ExactlyOne => "exactly one",
            ParallelCount::InfinitelyMany => "infinitely many",
            ParallelCount::Zero => "none",
        })
    }
}

/// Parallel count for a line along the 1-based `line_axis`.
pub fn count_local_parallels(pclass: &PointClass, line_axis: usize) -> Result<ParallelCount> {
    Ok(match pclass.axis(line_axis)? {
        AxisClass::Euclidean => ParallelCount::ExactlyOne,
        AxisClass::Elliptic => ParallelCount::InfinitelyMany,
        AxisClass::Hyperbolic => ParallelCount::Zero,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PointId {
    /// Any uncharged point of the scene.
    Background,
    Charge(usize),
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointId::Background => f.write_str("background"),
            PointId::Charge(i) => write!(f, "charge {i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessRule {
    MixedEuclideanNonEuclidean,
    TwoEllipticSameDirection,
    TwoHyperbolicSameDirection,
}

impl fmt::Display for WitnessRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessRule::MixedEuclideanNonEuclidean => "MixedEuclideanNonEuclidean",
            WitnessRule::TwoEllipticSameDirection => "TwoEllipticSameDirection",
            WitnessRule::TwoHyperbolicSameDirection => "TwoHyperbolicSameDirection",
        })
    }
}

/// Two points on which the parallel axiom behaves differently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub first: PointId,
    pub second: PointId,
    pub rule: WitnessRule,
    /// 1-based axis along which the behaviours differ.
    pub axis: usize,
    /// Parallel counts at `first` and `second` for a line along `axis`.
    pub behaviour: (ParallelCount, ParallelCount),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Euclidean,
    SmarandacheManifold,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Euclidean => "Euclidean",
            Verdict::SmarandacheManifold => "SmarandacheManifold",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub dimension: usize,
    pub denied: bool,
    /// True when no charge is non-euclidean, so every point of the scene is euclidean.
    pub all_euclidean: bool,
    pub witnesses: Vec<Witness>,
    pub verdict: Verdict,
    pub summary: String,
}

/// Check whether the local-parallel axiom is denied anywhere in the scene.
pub fn detect_smarandache(scene: &Scene) -> DetectionReport {
    let n = scene.dimension;
    let classes: Vec<PointClass> = scene.charges.iter().map(|c| c.omega.classify()).collect();
    let mut witnesses = Vec::new();

    // Euclidean points: the background plus every fully euclidean charge.
    let mut euclidean = vec![PointId::Background];
    euclidean.extend(
        classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_euclidean())
            .map(|(i, _)| PointId::Charge(i)),
    );

    for (i, c) in classes.iter().enumerate() {
        let Some(axis) = c.tags().iter().position(|&t| t != AxisClass::Euclidean) else {
            continue;
        };
        let other = count_from_tag(c.tags()[axis]);
        for &e in &euclidean {
            witnesses.push(Witness {
                first: e,
                second: PointId::Charge(i),
                rule: WitnessRule::MixedEuclideanNonEuclidean,
                axis: axis + 1,
                behaviour: (ParallelCount::ExactlyOne, other),
            });
        }
    }

    // Two elliptic points along an axis see infinitely many parallels at one
    // and none at the other for a line meeting both; likewise for hyperbolic.
    for axis in 0..n {
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                let (a, b) = (classes[i].tags()[axis], classes[j].tags()[axis]);
                let rule = match (a, b) {
                    (AxisClass::Elliptic, AxisClass::Elliptic) => {
                        WitnessRule::TwoEllipticSameDirection
                    }
                    (AxisClass::Hyperbolic, AxisClass::Hyperbolic) => {
                        WitnessRule::TwoHyperbolicSameDirection
                    }
                    _ => continue,
                };
                witnesses.push(Witness {
                    first: PointId::Charge(i),
                    second: PointId::Charge(j),
                    rule,
                    axis: axis + 1,
                    behaviour: (ParallelCount::InfinitelyMany, ParallelCount::Zero),
                });
            }
        }
    }

    let denied = !witnesses.is_empty();
    let all_euclidean = classes.iter().all(PointClass::is_euclidean);
    let verdict = if denied {
        Verdict::SmarandacheManifold
    } else {
        Verdict::Euclidean
    };
    let space = match n {
        2 => "plane geometry".to_string(),
        3 => "space geometry".to_string(),
        _ => format!("{n}-dimensional geometry"),
    };
    let summary = if denied {
        format!("(R^{n}, ω) is a Smarandache {space}: the local-parallel axiom is denied")
    } else {
        format!("(R^{n}, ω) is the Euclid {space}: every point is euclidean")
    };
    DetectionReport {
        dimension: n,
        denied,
        all_euclidean,
        witnesses,
        verdict,
        summary,
    }
}

fn count_from_tag(t: AxisClass) -> ParallelCount {
    match t {
        AxisClass::Euclidean => ParallelCount::ExactlyOne,
        AxisClass::Elliptic => ParallelCount::InfinitelyMany,
        AxisClass::Hyperbolic => ParallelCount::Zero,
    }
}

/// Declared smoothness order of the ω field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Smoothness {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Smoothness::Finite(r) => write!(f, "C^{r}"),
            Smoothness::Infinite => f.write_str("C^∞"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DifferentialReport {
    pub smoothness: Smoothness,
    /// Differential structure on the base: the identity chart of Rⁿ, always smooth.
    pub structure_condition: bool,
    /// Smoothness of ω as declared by the caller (r ≥ 1).
    pub omega_condition_declared: bool,
    /// Denial predicate evaluated on the scene.
    pub denial_condition: bool,
    pub detection: DetectionReport,
    pub warnings: Vec<String>,
    pub conclusion: String,
}

/// Evaluate the checkable conditions for a `C^r` differential Smarandache manifold.
pub fn validate_differential_structure(
    scene: &Scene,
    smoothness: Smoothness,
) -> DifferentialReport {
    let detection = detect_smarandache(scene);
    let omega_ok = !matches!(smoothness, Smoothness::Finite(0));
    let mut warnings = Vec::new();
    if !omega_ok {
        warnings.push("declared order r = 0; a differential structure needs r ≥ 1".to_string());
    }
    if !detection.all_euclidean {
        warnings.push(format!(
            "pointwise ω field is not continuous; {smoothness} smoothness is declarative only"
        ));
    }
    let conclusion = match (detection.denied, omega_ok) {
        (true, true) => {
            let order = match smoothness {
                Smoothness::Infinite => "smooth".to_string(),
                Smoothness::Finite(r) => format!("C^{r}"),
            };
            format!("{order} differential Smarandache manifold (declared smoothness)")
        }
        (true, false) => "Smarandache manifold without a differential structure".to_string(),
        (false, _) => "not Smarandache: denial condition fails".to_string(),
    };
    DifferentialReport {
        smoothness,
        structure_condition: true,
        omega_condition_declared: omega_ok,
        denial_condition: detection.denied,
        detection,
        warnings,
        conclusion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::TWO_PI;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn charge(pos: &[f64], omega: &[f64]) -> ChargedPoint {
        ChargedPoint {
            position: pos.to_vec(),
            omega: OmegaValue::reduce(omega).unwrap(),
        }
    }

    fn square(charges: Vec<ChargedPoint>) -> Scene {
        Scene::new(
            2,
            charges,
            0.1,
            Bounds::new(vec![-5.0, -5.0], vec![5.0, 5.0]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn empty_scene_straight_to_bounds() {
        let s = square(vec![]);
        let t = trace_ray(&s, &[0.0, 0.0], &[1.0, 0.0], 10).unwrap();
        assert_eq!(t.vertices, vec![vec![0.0, 0.0], vec![5.0, 0.0]]);
        assert!(t.events.is_empty());
        assert_eq!(t.termination, Termination::BoundsExit);
    }

    #[test]
    fn euclidean_charge_no_deflection() {
        let s = square(vec![charge(&[1.0, 0.0], &[TWO_PI, TWO_PI])]);
        let t = trace_ray(&s, &[-4.0, 0.0], &[1.0, 0.0], 10).unwrap();
        assert_eq!(t.events.len(), 1);
        assert_eq!(t.events[0].incoming, t.events[0].outgoing);
        assert_eq!(t.directions[0], t.directions[1]);
        assert_eq!(t.vertices.last().unwrap(), &vec![5.0, 0.0]);
    }

    #[test]
    fn diagonal_through_euclidean_unchanged() {
        let h = 0.5f64.sqrt();
        let s = square(vec![charge(&[0.0, 0.0], &[TWO_PI, TWO_PI])]);
        let t = trace_ray(&s, &[-1.0, -1.0], &[h, h], 10).unwrap();
        assert_eq!(t.directions.len(), 2);
        for (a, b) in t.directions[1].iter().zip([h, h]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn axis_ray_through_elliptic_is_degenerate() {
        // θ = (0, π/2) with ω = (π, 2π) gives θ' = (π/2, π/2): zero cosines.
        let s = square(vec![charge(&[1.0, 0.0], &[PI, TWO_PI])]);
        let err = trace_ray(&s, &[-4.0, 0.0], &[1.0, 0.0], 10).unwrap_err();
        assert!(matches!(err, Error::DegenerateDirection { charge: 0, .. }));
    }

    #[test]
    fn elliptic_charge_turns_diagonal() {
        let h = 0.5f64.sqrt();
        let s = square(vec![charge(&[0.0, 0.0], &[PI, TWO_PI])]);
        let t = trace_ray(&s, &[-1.0, -1.0], &[h, h], 10).unwrap();
        let e = &t.events[0];
        assert_abs_diff_eq!(e.outgoing.angles()[0], 0.75 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(e.outgoing.angles()[1], 0.25 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(t.directions[1][0], -h, epsilon = 1e-12);
        assert_abs_diff_eq!(t.directions[1][1], h, epsilon = 1e-12);
    }

    #[test]
    fn nearest_charge_fires_first_and_once() {
        let s = square(vec![
            charge(&[3.0, 0.05], &[TWO_PI, TWO_PI]),
            charge(&[1.0, 0.0], &[TWO_PI, TWO_PI]),
        ]);
        let t = trace_ray(&s, &[-4.0, 0.0], &[1.0, 0.0], 10).unwrap();
        let order: Vec<usize> = t.events.iter().map(|e| e.charge).collect();
        assert_eq!(order, vec![1, 0]);
        assert_abs_diff_eq!(t.vertices[1][0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.vertices[2][0], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn reversal_charge_fires_once() {
        // ω = (0, 0) reverses the diagonal; the charge must not fire again.
        let h = 0.5f64.sqrt();
        let s = square(vec![charge(&[0.0, 0.0], &[0.0, 0.0])]);
        let t = trace_ray(&s, &[-1.0, -1.0], &[h, h], 10).unwrap();
        assert_eq!(t.events.len(), 1);
        assert_abs_diff_eq!(t.directions[1][0], -h, epsilon = 1e-12);
        assert_abs_diff_eq!(t.vertices[2][0], -5.0, epsilon = 1e-12);
    }

    #[test]
    fn event_limit_truncates() {
        let s = square(vec![charge(&[1.0, 0.0], &[TWO_PI, TWO_PI])]);
        let t = trace_ray(&s, &[-4.0, 0.0], &[1.0, 0.0], 0).unwrap();
        assert_eq!(t.termination, Termination::EventLimit);
        assert!(t.events.is_empty());
        assert_eq!(t.vertices.len(), 2);
    }

    #[test]
    fn trace_input_errors() {
        let s = square(vec![]);
        assert!(matches!(
            trace_ray(&s, &[9.0, 0.0], &[1.0, 0.0], 1),
            Err(Error::OriginOutsideBounds(_))
        ));
        assert!(matches!(
            trace_ray(&s, &[0.0, 0.0], &[1.0, 1.0], 1),
            Err(Error::NotUnit { .. })
        ));
    }

    #[test]
    fn scene_rejects_close_charges() {
        let b = Bounds::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let r = Scene::new(
            2,
            vec![
                charge(&[0.0, 0.0], &[PI, PI]),
                charge(&[0.0, 0.0], &[PI, PI]),
            ],
            0.1,
            b,
        );
        assert_eq!(
            r,
            Err(Error::ChargesTooClose {
                first: 0,
                second: 1
            })
        );
        assert!(Bounds::new(vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn parallel_trichotomy() {
        let c = OmegaValue::reduce(&[TWO_PI, PI, 3.0 * PI])
            .unwrap()
            .classify();
        assert_eq!(
            count_local_parallels(&c, 1).unwrap(),
            ParallelCount::ExactlyOne
        );
        assert_eq!(
            count_local_parallels(&c, 2).unwrap(),
            ParallelCount::InfinitelyMany
        );
        assert_eq!(count_local_parallels(&c, 3).unwrap(), ParallelCount::Zero);
        assert_eq!(
            count_local_parallels(&c, 4),
            Err(Error::AxisOutOfRange { axis: 4, n: 3 })
        );
        assert!(count_local_parallels(&c, 0).is_err());
    }

    #[test]
    fn detection_examples() {
        let r = detect_smarandache(&square(vec![
            charge(&[0.0, 0.0], &[TWO_PI, TWO_PI]),
            charge(&[1.0, 0.0], &[PI, TWO_PI]),
        ]));
        assert!(r.denied);
        assert_eq!(r.verdict, Verdict::SmarandacheManifold);
        assert!(r
            .witnesses
            .iter()
            .any(|w| w.rule == WitnessRule::MixedEuclideanNonEuclidean
                && w.first == PointId::Charge(0)
                && w.second == PointId::Charge(1)));

        let r = detect_smarandache(&square(vec![]));
        assert!(!r.denied && r.all_euclidean);
        assert_eq!(r.verdict, Verdict::Euclidean);

        let r = detect_smarandache(&square(vec![
            charge(&[0.0, 0.0], &[PI, TWO_PI]),
            charge(&[1.0, 0.0], &[PI / 2.0, TWO_PI]),
        ]));
        let w: Vec<_> = r
            .witnesses
            .iter()
            .filter(|w| w.rule == WitnessRule::TwoEllipticSameDirection)
            .collect();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].axis, 1);

        let r = detect_smarandache(&square(vec![
            charge(&[0.0, 0.0], &[3.0 * PI, TWO_PI]),
            charge(&[1.0, 0.0], &[TWO_PI, 2.5 * PI]),
        ]));
        assert!(r
            .witnesses
            .iter()
            .all(|w| w.rule != WitnessRule::TwoHyperbolicSameDirection));
        let r = detect_smarandache(&square(vec![
            charge(&[0.0, 0.0], &[3.0 * PI, TWO_PI]),
            charge(&[1.0, 0.0], &[2.5 * PI, TWO_PI]),
        ]));
        assert!(r
            .witnesses
            .iter()
            .any(|w| w.rule == WitnessRule::TwoHyperbolicSameDirection && w.axis == 1));
    }

    #[test]
    fn differential_structure_reports() {
        let s = square(vec![charge(&[0.0, 0.0], &[PI, TWO_PI])]);
        let r = validate_differential_structure(&s, Smoothness::Infinite);
        assert!(r.denial_condition);
        assert!(r
            .conclusion
            .contains("differential Smarandache manifold (declared smoothness)"));

        let r = validate_differential_structure(&s, Smoothness::Finite(1));
        assert!(r.warnings.iter().any(|w| w.contains("not continuous")));

        let r = validate_differential_structure(&square(vec![]), Smoothness::Infinite);
        assert!(!r.denial_condition);
        assert!(r.conclusion.contains("not Smarandache"));
        assert!(r.warnings.is_empty());
    }
}
