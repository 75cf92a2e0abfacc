//! Heatmap rendering of a sampled grid.
//!
//! Cells are colored by linear interpolation in RGB between [`LOW`] at
//! min u and [`HIGH`] at max u. The plot is clipped to the domain polygon
//! (0,1), (1,1), (1,0), (1/2,−1/2), (0,0).

use std::fmt::Write;

use parhyp_core::Sample;

pub const LOW: [u8; 3] = [0x3b, 0x4c, 0xc0];
pub const HIGH: [u8; 3] = [0xb4, 0x04, 0x26];

#[derive(Debug, Clone)]
pub struct SvgOptions {
    /// Pixels per unit length.
    pub scale: f64,
    pub title: Option<String>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            scale: 400.0,
            title: None,
        }
    }
}

const MARGIN_LEFT: f64 = 60.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;
const BAR_GAP: f64 = 30.0;
const BAR_WIDTH: f64 = 20.0;
const BAR_LABELS: f64 = 90.0;

fn hex(c: [u8; 3]) -> String {
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

/// Ramp color for t ∈ [0, 1].
pub fn ramp(t: f64) -> [u8; 3] {
    let t = t.clamp(0.0, 1.0);
    let mut c = [0u8; 3];
    for i in 0..3 {
        let v = LOW[i] as f64 + t * (HIGH[i] as f64 - LOW[i] as f64);
        c[i] = v.round() as u8;
    }
    c
}

fn value_range(samples: &[Sample]) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in samples.iter().filter(|s| s.u.is_finite()) {
        lo = lo.min(s.u);
        hi = hi.max(s.u);
    }
    (lo < hi).then_some((lo, hi))
}

/// Distinct rows in input order with the y-extent each row covers.
fn row_bands(samples: &[Sample]) -> Vec<(f64, f64, f64)> {
    let mut ys: Vec<f64> = Vec::new();
    for s in samples {
        if ys.last() != Some(&s.y) {
            ys.push(s.y);
        }
    }
    let n = ys.len();
    (0..n)
        .map(|i| {
            let up = if i > 0 {
                (ys[i - 1] + ys[i]) / 2.0
            } else if n > 1 {
                ys[0] + (ys[0] - ys[1]) / 2.0
            } else {
                ys[0] + 0.5
            };
            let down = if i + 1 < n {
                (ys[i] + ys[i + 1]) / 2.0
            } else if n > 1 {
                ys[i] - (ys[i - 1] - ys[i]) / 2.0
            } else {
                ys[0] - 0.5
            };
            (ys[i], up, down)
        })
        .collect()
}

fn column_step(samples: &[Sample], y: f64) -> f64 {
    let xs: Vec<f64> = samples.iter().filter(|s| s.y == y).map(|s| s.x).collect();
    xs.windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

pub fn render_svg(samples: &[Sample], opts: &SvgOptions) -> Vec<u8> {
    let k = opts.scale;
    let plot_w = k;
    let plot_h = 1.5 * k;
    let width = MARGIN_LEFT + plot_w + BAR_GAP + BAR_WIDTH + BAR_LABELS;
    let height = MARGIN_TOP + plot_h + MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + x * k;
    let py = |y: f64| MARGIN_TOP + (1.0 - y) * k;

    let range = value_range(samples);
    let color = |u: f64| match range {
        Some((lo, hi)) => hex(ramp((u - lo) / (hi - lo))),
        None => hex(LOW),
    };

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    let poly = [(0.0, 1.0), (1.0, 1.0), (1.0, 0.0), (0.5, -0.5), (0.0, 0.0)]
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
        .collect::<Vec<_>>()
        .join(" ");
    writeln!(
        s,
        r#"<defs><clipPath id="domain"><polygon points="{poly}"/></clipPath>"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<linearGradient id="ramp" x1="0" y1="1" x2="0" y2="0"><stop offset="0" stop-color="{}"/><stop offset="1" stop-color="{}"/></linearGradient></defs>"#,
        hex(LOW),
        if range.is_some() { hex(HIGH) } else { hex(LOW) }
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    if let Some(t) = &opts.title {
        writeln!(
            s,
            r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
            px(0.5),
            escape(t)
        )
        .unwrap();
    }

    s.push_str("<g clip-path=\"url(#domain)\" shape-rendering=\"crispEdges\">\n");
    for (y, up, down) in row_bands(samples) {
        let dx = column_step(samples, y);
        let half = if dx.is_finite() { dx / 2.0 } else { 0.5 };
        for p in samples.iter().filter(|p| p.y == y) {
            let x0 = px(p.x - half);
            let x1 = px(p.x + half);
            writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                x0,
                py(up),
                x1 - x0,
                py(down) - py(up),
                color(p.u)
            )
            .unwrap();
        }
    }
    s.push_str("</g>\n");
    writeln!(
        s,
        r#"<polygon points="{poly}" fill="none" stroke="black" stroke-width="1"/>"#
    )
    .unwrap();

    // axes
    let axis_y = py(-0.5) + 10.0;
    writeln!(
        s,
        r#"<line x1="{:.2}" y1="{axis_y:.2}" x2="{:.2}" y2="{axis_y:.2}" stroke="black"/>"#,
        px(0.0),
        px(1.0)
    )
    .unwrap();
    for t in [0.0, 0.5, 1.0] {
        writeln!(
            s,
            r#"<line x1="{0:.2}" y1="{axis_y:.2}" x2="{0:.2}" y2="{1:.2}" stroke="black"/><text x="{0:.2}" y="{2:.2}" text-anchor="middle">{t:.1}</text>"#,
            px(t),
            axis_y + 5.0,
            axis_y + 18.0
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">x</text>"#,
        px(0.5),
        axis_y + 34.0
    )
    .unwrap();
    let axis_x = px(0.0) - 10.0;
    writeln!(
        s,
        r#"<line x1="{axis_x:.2}" y1="{:.2}" x2="{axis_x:.2}" y2="{:.2}" stroke="black"/>"#,
        py(1.0),
        py(-0.5)
    )
    .unwrap();
    for t in [-0.5, 0.0, 0.5, 1.0] {
        writeln!(
            s,
            r#"<line x1="{0:.2}" y1="{2:.2}" x2="{axis_x:.2}" y2="{2:.2}" stroke="black"/><text x="{1:.2}" y="{3:.2}" text-anchor="end">{t:.1}</text>"#,
            axis_x - 5.0,
            axis_x - 8.0,
            py(t),
            py(t) + 4.0
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">y</text>"#,
        axis_x - 36.0,
        py(0.25)
    )
    .unwrap();

    // color bar
    let bx = px(1.0) + BAR_GAP;
    let (top, bottom) = (py(1.0), py(-0.5));
    writeln!(
        s,
        r#"<rect x="{bx:.2}" y="{top:.2}" width="{BAR_WIDTH:.2}" height="{:.2}" fill="url(#ramp)" stroke="black"/>"#,
        bottom - top
    )
    .unwrap();
    let labels: Vec<(f64, f64)> = match range {
        Some((lo, hi)) => (0..=4)
            .map(|i| i as f64 / 4.0)
            .map(|t| (t, lo + t * (hi - lo)))
            .collect(),
        None => {
            let u = samples
                .iter()
                .map(|p| p.u)
                .find(|u| u.is_finite())
                .unwrap_or(0.0);
            vec![(0.5, u)]
        }
    };
    for (t, u) in labels {
        let y = bottom - t * (bottom - top);
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}">{:.4}</text>"#,
            bx + BAR_WIDTH + 6.0,
            y + 4.0,
            u
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">u</text>"#,
        bx + BAR_WIDTH / 2.0,
        top - 10.0
    )
    .unwrap();
    s.push_str("</svg>\n");
    s.into_bytes()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
