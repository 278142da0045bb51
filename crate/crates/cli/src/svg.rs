//! Wedge diagram of the nested cones in the `(H^c, H^{c-1}Σ)` plane.
//!
//! Every cone is spanned by `H^{c-1}Σ` (straight up) and `H^c - t·H^{c-1}Σ`.
//! Coordinates are floats for drawing only; the exact `t` is kept in
//! `data-slope`.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use relci::bundle::{ConeDescription, ConeLabel, CycleClass};

const SIZE: f64 = 400.0;
const RADIUS: f64 = 160.0;

fn label_name(label: ConeLabel) -> &'static str {
    match label {
        ConeLabel::Nef => "Nef",
        ConeLabel::Bridge => "Bridge",
        ConeLabel::Pseff => "Pseff",
    }
}

fn fill(label: ConeLabel) -> &'static str {
    match label {
        ConeLabel::Pseff => "#d9e7f5",
        ConeLabel::Bridge => "#9fc3e6",
        ConeLabel::Nef => "#4f8fcf",
    }
}

/// Screen point at distance `RADIUS` along `(p, q)`, with `q` pointing up.
fn endpoint(p: f64, q: f64) -> (f64, f64) {
    let norm = (p * p + q * q).sqrt();
    let c = SIZE / 2.0;
    (c + RADIUS * p / norm, c - RADIUS * q / norm)
}

/// `cones` in any order; they are drawn widest first. `class` is marked as
/// a ray when given.
pub fn cone_diagram(cones: &[ConeDescription], semistable: bool, class: Option<&CycleClass>) -> String {
    let mut sorted: Vec<&ConeDescription> = cones.iter().collect();
    sorted.sort_by_key(|c| std::cmp::Reverse(c.threshold()));
    let codim = cones.first().map_or(1, |c| c.codim);
    let mid = SIZE / 2.0;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"  <title>Cones in codimension {codim}</title>"#);
    let _ = writeln!(
        s,
        r##"  <line x1="0" y1="{mid}" x2="{SIZE}" y2="{mid}" stroke="#888" stroke-width="0.5"/>"##
    );
    let _ = writeln!(
        s,
        r##"  <line x1="{mid}" y1="0" x2="{mid}" y2="{SIZE}" stroke="#888" stroke-width="0.5"/>"##
    );
    for (i, cone) in sorted.iter().enumerate() {
        let t = cone.threshold();
        let tf = t.to_f64().unwrap_or(0.0);
        let (ux, uy) = endpoint(0.0, 1.0);
        let (vx, vy) = endpoint(1.0, -tf);
        let name = label_name(cone.label);
        let _ = writeln!(
            s,
            r##"  <path id="cone-{id}" class="wedge" data-label="{name}" data-slope="{t}" d="M {mid:.3} {mid:.3} L {ux:.3} {uy:.3} A {RADIUS} {RADIUS} 0 0 1 {vx:.3} {vy:.3} Z" fill="{fill}" fill-opacity="0.8" stroke="#1f3b57" stroke-width="1"/>"##,
            id = name.to_lowercase(),
            fill = fill(cone.label),
        );
        let _ = writeln!(
            s,
            r#"  <text x="{x:.3}" y="{y:.3}" font-family="sans-serif" font-size="12">{name} t={t}</text>"#,
            x = vx.min(SIZE - 90.0),
            y = (vy + 14.0 * i as f64).min(SIZE - 4.0),
        );
    }
    if let Some(class) = class {
        if let (Some(p), Some(q)) = (class.p.to_f64(), class.q.to_f64()) {
            let (x, y) = endpoint(p, q);
            let pos = class.ray_position().map(|t| t.to_string()).unwrap_or_else(|| "inf".into());
            let _ = writeln!(
                s,
                r##"  <line id="class" data-slope="{pos}" x1="{mid}" y1="{mid}" x2="{x:.3}" y2="{y:.3}" stroke="#c0392b" stroke-width="2"/>"##
            );
        }
    }
    let _ = writeln!(
        s,
        r#"  <text x="8" y="16" font-family="sans-serif" font-size="12">horizontal: H^{codim}, vertical: H^{}S</text>"#,
        codim - 1
    );
    if semistable {
        let _ = writeln!(
            s,
            r#"  <text id="legend-note" x="8" y="32" font-family="sans-serif" font-size="12">semistable bundle: the three cones coincide</text>"#
        );
    }
    s.push_str("</svg>\n");
    s
}
