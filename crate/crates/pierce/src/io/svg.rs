//! Deterministic SVG rendering of instances in the normalized disk frame:
//! the unit circle, bodies colored by family, and optionally the chords of a
//! configuration (with region labels) or the lines of a certificate. Output
//! is byte-stable for fixed inputs.

use std::fmt::Write as _;

use crate::geom::{normalize_to_disk, AffineMap, ConvexBody, LineEq, Point};
use crate::solver::{ChordConfig, PiercingCertificate};

const PALETTE: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

pub enum Overlay<'a> {
    None,
    Config(&'a ChordConfig),
    Certificate(&'a PiercingCertificate),
}

fn fmt(x: f64) -> String {
    let x = if x.abs() < 5e-6 { 0.0 } else { x };
    format!("{x:.5}")
}

/// Renders families (normalized into the unit disk) with an optional chord
/// or certificate overlay. When a certificate is given its own transform is
/// reused so the drawn lines coincide with the drawn bodies.
pub fn render_svg(families: &[Vec<ConvexBody>], overlay: Overlay) -> String {
    let transform: AffineMap = match &overlay {
        Overlay::Certificate(cert) => cert.transform,
        _ => normalize_to_disk(families)
            .map(|(map, _)| map)
            .unwrap_or_else(|_| AffineMap::identity()),
    };
    let mut svg = String::with_capacity(8192);
    svg.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.15 -1.15 2.3 2.3\" width=\"800\" height=\"800\">\n",
    );
    svg.push_str("<rect x=\"-1.15\" y=\"-1.15\" width=\"2.3\" height=\"2.3\" fill=\"white\"/>\n");
    svg.push_str("<g transform=\"scale(1,-1)\">\n");
    svg.push_str(
        "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#444444\" stroke-width=\"0.006\"/>\n",
    );

    for (fi, family) in families.iter().enumerate() {
        let color = PALETTE[fi % PALETTE.len()];
        for body in family {
            let mapped: Vec<Point> = body.vertices().iter().map(|v| transform.apply(v)).collect();
            match mapped.len() {
                1 => {
                    let _ = writeln!(
                        svg,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"0.012\" fill=\"{color}\"/>",
                        fmt(mapped[0].x),
                        fmt(mapped[0].y)
                    );
                }
                2 => {
                    let _ = writeln!(
                        svg,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"0.012\"/>",
                        fmt(mapped[0].x),
                        fmt(mapped[0].y),
                        fmt(mapped[1].x),
                        fmt(mapped[1].y)
                    );
                }
                _ => {
                    let pts: Vec<String> = mapped
                        .iter()
                        .map(|p| format!("{},{}", fmt(p.x), fmt(p.y)))
                        .collect();
                    let _ = writeln!(
                        svg,
                        "<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.35\" stroke=\"{color}\" stroke-width=\"0.006\"/>",
                        pts.join(" ")
                    );
                }
            }
        }
    }

    let mut labels: Vec<(String, Point)> = Vec::new();
    match overlay {
        Overlay::None => {}
        Overlay::Config(config) => {
            for chord in config.chords() {
                if chord.is_degenerate() {
                    continue;
                }
                let _ = writeln!(
                    svg,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"0.009\"/>",
                    fmt(chord.p.x),
                    fmt(chord.p.y),
                    fmt(chord.q.x),
                    fmt(chord.q.y)
                );
            }
            for i in 1..=config.n() {
                if let Some(poly) = config.region_polygon(i, 64) {
                    if poly.is_empty() {
                        continue;
                    }
                    let c = poly
                        .iter()
                        .fold(Point::new(0.0, 0.0), |acc, p| acc.add(p))
                        .scale(1.0 / poly.len() as f64);
                    labels.push((format!("R{i}"), c));
                }
            }
        }
        Overlay::Certificate(cert) => {
            for line in &cert.lines {
                let (mid, dir) = full_line_span(line);
                let a = mid.sub(&dir.scale(2.0));
                let b = mid.add(&dir.scale(2.0));
                let _ = writeln!(
                    svg,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000000\" stroke-width=\"0.009\" stroke-dasharray=\"0.05 0.02\"/>",
                    fmt(a.x),
                    fmt(a.y),
                    fmt(b.x),
                    fmt(b.y)
                );
            }
        }
    }
    svg.push_str("</g>\n");
    for (text, at) in labels {
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-size=\"0.09\" font-family=\"sans-serif\" text-anchor=\"middle\" fill=\"#000000\">{text}</text>",
            fmt(at.x),
            fmt(-at.y)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn full_line_span(line: &LineEq) -> (Point, Point) {
    let (p, d) = line.point_and_dir();
    (p, d)
}
