//! CSV and SVG output for ray traces.

use std::fmt::Write as _;

use thiserror::Error;

use crate::geodesics::{RayTrace, Scene};
use crate::omega::AxisClass;

#[derive(Debug, Error, PartialEq)]
pub enum EmitError {
    #[error("SVG rendering needs a 2-dimensional scene, got dimension {0}")]
    UnsupportedRender(usize),
}

/// Fixed nine-decimal formatting; `-0.000000000` becomes `0.000000000`.
pub fn fmt_num(x: f64) -> String {
    let s = format!("{x:.9}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn angle(c: f64) -> f64 {
    c.clamp(-1.0, 1.0).acos()
}

/// One row per vertex; `theta` columns hold the direction angles of the
/// segment leaving the vertex (the final vertex repeats the last segment).
pub fn trace_csv(dimension: usize, traces: &[(usize, &RayTrace)]) -> String {
    let mut out = String::from("ray_id,segment");
    for i in 1..=dimension {
        let _ = write!(out, ",x{i}");
    }
    for i in 1..=dimension {
        let _ = write!(out, ",theta{i}");
    }
    out.push_str(",event_charge\n");

    for &(id, t) in traces {
        for (v, p) in t.vertices.iter().enumerate() {
            let dir = &t.directions[v.min(t.directions.len() - 1)];
            let _ = write!(out, "{id},{v}");
            for x in p {
                let _ = write!(out, ",{}", fmt_num(*x));
            }
            for c in dir {
                let _ = write!(out, ",{}", fmt_num(angle(*c)));
            }
            out.push(',');
            if let Some(k) = t.event_at(v) {
                let _ = write!(out, "{k}");
            }
            out.push('\n');
        }
    }
    out
}

fn class_colour(c: AxisClass) -> &'static str {
    match c {
        AxisClass::Elliptic => "#1f77b4",
        AxisClass::Euclidean => "#7f7f7f",
        AxisClass::Hyperbolic => "#d62728",
    }
}

/// Render a planar scene and its traces as SVG 1.1.
pub fn trace_svg(scene: &Scene, traces: &[(usize, &RayTrace)]) -> Result<String, EmitError> {
    if scene.dimension() != 2 {
        return Err(EmitError::UnsupportedRender(scene.dimension()));
    }
    let b = scene.bounds();
    let (x0, y0, x1, y1) = (b.min[0], b.min[1], b.max[0], b.max[1]);
    let (w, h) = (x1 - x0, y1 - y0);
    let stroke = fmt_num(w.max(h) / 400.0);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        fmt_num(x0),
        fmt_num(y0),
        fmt_num(w),
        fmt_num(h)
    );
    let _ = writeln!(
        s,
        "<g transform=\"translate(0,{}) scale(1,-1)\">",
        fmt_num(y0 + y1)
    );
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{stroke}\"/>",
        fmt_num(x0),
        fmt_num(y0),
        fmt_num(w),
        fmt_num(h)
    );
    for (k, c) in scene.charges().iter().enumerate() {
        let colour = class_colour(AxisClass::of(c.omega.components()[0]));
        let _ = writeln!(
            s,
            "<circle id=\"charge-{k}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{colour}\" fill-opacity=\"0.35\" stroke=\"{colour}\" stroke-width=\"{stroke}\"/>",
            fmt_num(c.position[0]),
            fmt_num(c.position[1]),
            fmt_num(scene.epsilon())
        );
    }
    for &(id, t) in traces {
        let pts: Vec<String> = t
            .vertices
            .iter()
            .map(|p| format!("{},{}", fmt_num(p[0]), fmt_num(p[1])))
            .collect();
        let _ = writeln!(
            s,
            "<polyline id=\"ray-{id}\" points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{stroke}\"/>",
            pts.join(" ")
        );
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}
