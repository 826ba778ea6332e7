//! Plain SVG rendering of a 2-D distilled policy: cell regions and
//! boundaries sampled on a grid, codeword dots, and either an arrow field
//! (two action dimensions) or a signed colour map (one action dimension).

use std::fmt::Write as _;

use crate::distiller::DistilledPolicy;
use crate::envs::EnvSpec;
use crate::error::Result;

use super::grid::{quiver_data, require_2d, Grid};

const SIZE: f64 = 600.0;

struct Frame {
    lo: [f64; 2],
    span: [f64; 2],
}

impl Frame {
    fn px(&self, s: &[f64]) -> (f64, f64) {
        (
            (s[0] - self.lo[0]) / self.span[0] * SIZE,
            SIZE - (s[1] - self.lo[1]) / self.span[1] * SIZE,
        )
    }
}

/// Pastel colour per cell, hues spaced by the golden angle.
fn cell_fill(k: usize) -> String {
    let h = (k as f64 * 137.507_764) % 360.0 / 60.0;
    let (s, l) = (0.55, 0.85);
    let c = (1.0 - (2.0 * l - 1.0f64).abs()) * s;
    let x = c * (1.0 - (h % 2.0 - 1.0).abs());
    let (r, g, b) = match h as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let to = |v: f64| ((v + m) * 255.0).round() as u8;
    format!("#{:02x}{:02x}{:02x}", to(r), to(g), to(b))
}

fn force_fill(v: f64, bound: f64) -> String {
    let t = (v.abs() / bound).min(1.0);
    let fade = (255.0 * (1.0 - t)).round() as u8;
    if v >= 0.0 {
        format!("rgb(255,{fade},{fade})")
    } else {
        format!("rgb({fade},{fade},255)")
    }
}

pub fn render_svg(policy: &DistilledPolicy, spec: &EnvSpec, resolution: [usize; 2]) -> Result<String> {
    require_2d(spec)?;
    let grid: Grid = quiver_data(policy, spec, resolution)?;
    let frame = Frame {
        lo: [spec.state_bounds[0].low, spec.state_bounds[1].low],
        span: [spec.state_bounds[0].width(), spec.state_bounds[1].width()],
    };
    let [nx, ny] = resolution;
    let (cw, ch) = (SIZE / nx as f64, SIZE / ny as f64);
    let scalar = spec.action_dim() == 1;
    let bound = spec
        .action_bounds
        .first()
        .map_or(1.0, |b| b.low.abs().max(b.high.abs()));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, "<g stroke=\"none\">");
    for row in &grid.rows {
        let (cx, cy) = frame.px(&row.state);
        let fill = if scalar {
            force_fill(row.values[0], bound)
        } else {
            cell_fill(row.cell.unwrap_or(0))
        };
        let _ = writeln!(
            svg,
            r#"<rect x="{:.2}" y="{:.2}" width="{cw:.2}" height="{ch:.2}" fill="{fill}"/>"#,
            cx - cw / 2.0,
            cy - ch / 2.0
        );
    }
    svg.push_str("</g>\n<g stroke=\"black\" stroke-width=\"1.5\">\n");
    let cell = |i: usize, j: usize| grid.rows[j * nx + i].cell;
    for j in 0..ny {
        for i in 0..nx {
            let (cx, cy) = frame.px(&grid.rows[j * nx + i].state);
            if i + 1 < nx && cell(i, j) != cell(i + 1, j) {
                let x = cx + cw / 2.0;
                let _ = writeln!(
                    svg,
                    r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}"/>"#,
                    cy - ch / 2.0,
                    cy + ch / 2.0
                );
            }
            if j + 1 < ny && cell(i, j) != cell(i, j + 1) {
                let y = cy - ch / 2.0;
                let _ = writeln!(
                    svg,
                    r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}"/>"#,
                    cx - cw / 2.0,
                    cx + cw / 2.0
                );
            }
        }
    }
    svg.push_str("</g>\n");
    if !scalar && spec.action_dim() >= 2 {
        svg.push_str("<g stroke=\"#333\" stroke-width=\"1\">\n");
        let reach = 0.45 * cw.min(ch);
        for row in &grid.rows {
            let (cx, cy) = frame.px(&row.state);
            let (u, v) = (row.values[0], row.values[1]);
            let len = u.hypot(v);
            if len == 0.0 {
                continue;
            }
            let (ex, ey) = (cx + reach * u / len, cy - reach * v / len);
            let _ = writeln!(
                svg,
                r##"<line x1="{cx:.2}" y1="{cy:.2}" x2="{ex:.2}" y2="{ey:.2}"/><circle cx="{ex:.2}" cy="{ey:.2}" r="1.2" fill="#333"/>"##
            );
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("<g fill=\"black\">\n");
    for cw in policy.partition().iter() {
        let (x, y) = frame.px(cw.coords);
        let _ = writeln!(
            svg,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="4"><title>{}</title></circle>"#,
            cw.index
        );
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}
