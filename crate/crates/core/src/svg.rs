//! Deterministic SVG rendering of phase portraits.

use std::fmt::Write as _;

use crate::dynamics::Classification;
use crate::flow::Portrait;
use crate::trig::TorusPoint;

const ARROW_SPACING: f64 = 0.2;
const ARROW_SIZE: f64 = 6.0;

pub struct SvgOptions {
    pub size: f64,
    pub margin: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            size: 600.0,
            margin: 20.0,
        }
    }
}

struct Frame {
    size: f64,
    margin: f64,
}

impl Frame {
    /// θ₁ to the right, θ₂ upwards.
    fn map(&self, p: TorusPoint) -> (f64, f64) {
        (
            self.margin + p.theta1 * self.size,
            self.margin + (1.0 - p.theta2) * self.size,
        )
    }
}

fn marker(out: &mut String, x: f64, y: f64, c: Classification) {
    let r = 5.0;
    let _ = match c {
        Classification::Saddle => writeln!(
            out,
            r#"<path d="M{:.6} {:.6}L{:.6} {:.6}M{:.6} {:.6}L{:.6} {:.6}" stroke="black" stroke-width="2" class="saddle"/>"#,
            x - r,
            y - r,
            x + r,
            y + r,
            x - r,
            y + r,
            x + r,
            y - r
        ),
        Classification::Center => writeln!(
            out,
            r#"<circle cx="{x:.6}" cy="{y:.6}" r="{r:.6}" fill="none" stroke="black" stroke-width="2" class="center"/>"#
        ),
        Classification::SpiralAttractor | Classification::AttractingNode => writeln!(
            out,
            r##"<circle cx="{x:.6}" cy="{y:.6}" r="{r:.6}" fill="#1f5fbf" class="attractor"/>"##
        ),
        Classification::SpiralRepulsor | Classification::RepellingNode => writeln!(
            out,
            r##"<circle cx="{x:.6}" cy="{y:.6}" r="{r:.6}" fill="#c0392b" class="repulsor"/>"##
        ),
        Classification::Degenerate => writeln!(
            out,
            r#"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="gray" class="degenerate"/>"#,
            x - r,
            y - r,
            2.0 * r,
            2.0 * r
        ),
    };
}

/// Renders trajectories as polylines (split where they wrap around the torus),
/// arrowheads every fixed arc length, and critical-point markers.
pub fn render_portrait(
    portrait: &Portrait,
    markers: &[(TorusPoint, Classification)],
    opts: &SvgOptions,
) -> String {
    let frame = Frame {
        size: opts.size,
        margin: opts.margin,
    };
    let total = opts.size + 2.0 * opts.margin;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total:.6}" height="{total:.6}" viewBox="0 0 {total:.6} {total:.6}">"#
    );
    let _ = writeln!(
        out,
        "<title>{} flow: {}</title>",
        portrait.flow,
        escape(&portrait.field_descriptor)
    );
    let _ = writeln!(
        out,
        r#"<rect x="{m:.6}" y="{m:.6}" width="{s:.6}" height="{s:.6}" fill="white" stroke="black"/>"#,
        m = opts.margin,
        s = opts.size
    );

    for traj in &portrait.trajectories {
        let mut segments: Vec<Vec<TorusPoint>> = vec![Vec::new()];
        for w in traj.points.windows(2) {
            let (a, b) = (w[0].1, w[1].1);
            if segments.last().is_some_and(|s| s.is_empty()) {
                segments.last_mut().unwrap().push(a);
            }
            if (a.theta1 - b.theta1).abs() > 0.5 || (a.theta2 - b.theta2).abs() > 0.5 {
                segments.push(Vec::new());
                continue;
            }
            segments.last_mut().unwrap().push(b);
        }
        if traj.points.iter().all(|q| q.1 == traj.points[0].1) {
            let (x, y) = frame.map(traj.points[0].1);
            let _ = writeln!(
                out,
                r##"<circle cx="{x:.6}" cy="{y:.6}" r="1.500000" fill="#555555"/>"##
            );
            continue;
        }
        let mut arc = 0.0;
        for seg in segments.iter().filter(|s| s.len() >= 2) {
            let pts: Vec<String> = seg
                .iter()
                .map(|&p| {
                    let (x, y) = frame.map(p);
                    format!("{x:.6},{y:.6}")
                })
                .collect();
            let _ = writeln!(
                out,
                r##"<polyline points="{}" fill="none" stroke="#555555" stroke-width="0.8"/>"##,
                pts.join(" ")
            );
            for w in seg.windows(2) {
                let d = w[0].distance(w[1]);
                arc += d;
                if arc >= ARROW_SPACING && d > 0.0 {
                    arc = 0.0;
                    let (x0, y0) = frame.map(w[0]);
                    let (x1, y1) = frame.map(w[1]);
                    let (dx, dy) = (x1 - x0, y1 - y0);
                    let len = dx.hypot(dy);
                    let (ux, uy) = (dx / len, dy / len);
                    let (bx, by) = (x1 - ARROW_SIZE * ux, y1 - ARROW_SIZE * uy);
                    let h = ARROW_SIZE / 2.0;
                    let _ = writeln!(
                        out,
                        r##"<polygon points="{:.6},{:.6} {:.6},{:.6} {:.6},{:.6}" fill="#555555"/>"##,
                        x1,
                        y1,
                        bx - h * uy,
                        by + h * ux,
                        bx + h * uy,
                        by - h * ux
                    );
                }
            }
        }
    }

    for &(p, c) in markers {
        let (x, y) = frame.map(p);
        marker(&mut out, x, y, c);
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
