//! SVG rendering of walls in the `(s, t)` strip.
//!
//! The viewport is fixed at 1000×600 units for `s ∈ [0, 1]`, `t ∈ [0, 0.6]`.
//! Exact data is converted to floats here and nowhere else.

use std::fmt::Write;

use tiltstab::rational::{format_rational, to_f64};
use tiltstab::Wall;

pub const WIDTH: f64 = 1000.0;
pub const HEIGHT: f64 = 600.0;
const T_MAX: f64 = 0.6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotWall {
    pub label: String,
    pub wall: Wall,
}

impl PlotWall {
    /// Circles of positive radius and vertical lines; everything else has
    /// nothing to draw.
    pub fn drawable(&self) -> bool {
        matches!(self.wall, Wall::Circle { .. } | Wall::VerticalLine { .. })
    }
}

fn x(s: f64) -> f64 {
    s * WIDTH
}

fn y(t: f64) -> f64 {
    HEIGHT - t * (HEIGHT / T_MAX)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn render(walls: &[PlotWall]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="strip"><rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}"/></clipPath></defs>"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white" stroke="black"/>"#
    );
    for i in 0..=4 {
        let s = f64::from(i) / 4.0;
        let _ = writeln!(
            out,
            r#"<text class="tick" x="{:.6}" y="{:.6}" font-size="12">s={s}</text>"#,
            x(s) + 2.0,
            HEIGHT - 4.0
        );
    }
    out.push_str("<g clip-path=\"url(#strip)\" fill=\"none\" stroke=\"black\">\n");
    for w in walls {
        match &w.wall {
            Wall::Circle { center, radius_sq } => {
                let c = to_f64(center);
                let rho = to_f64(radius_sq).sqrt();
                let r_px = rho * WIDTH;
                let _ = writeln!(
                    out,
                    r#"<path class="wall-arc" d="M {:.6} {:.6} A {r_px:.6} {r_px:.6} 0 0 1 {:.6} {:.6}"/>"#,
                    x(c - rho),
                    y(0.0),
                    x(c + rho),
                    y(0.0)
                );
                let _ = writeln!(
                    out,
                    r#"<text class="wall-label" x="{:.6}" y="{:.6}" font-size="11" text-anchor="middle" stroke="none" fill="black">{} radius²={}</text>"#,
                    x(c),
                    y(rho) - 4.0,
                    escape(&w.label),
                    escape(&format_rational(radius_sq))
                );
            }
            Wall::VerticalLine { s0 } => {
                let sx = x(to_f64(s0));
                let _ = writeln!(
                    out,
                    r#"<line class="wall-line" x1="{sx:.6}" y1="0" x2="{sx:.6}" y2="{HEIGHT}" stroke-dasharray="6 4"/>"#
                );
                let _ = writeln!(
                    out,
                    r#"<text class="wall-label" x="{:.6}" y="14" font-size="11" stroke="none" fill="black">{} s={}</text>"#,
                    sx + 3.0,
                    escape(&w.label),
                    escape(&format_rational(s0))
                );
            }
            Wall::Empty | Wall::Everywhere => {}
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}
