//! Minimal SVG 1.1 chart writer. Output depends only on the input numbers.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const TICKS: usize = 5;

/// Red for the first generation through blue for the last.
pub fn generation_color(generation: usize, count: usize) -> String {
    let t = if count > 1 {
        generation as f64 / (count - 1) as f64
    } else {
        0.0
    };
    let r = (255.0 * (1.0 - t)).round() as u8;
    let b = (255.0 * t).round() as u8;
    format!("#{r:02x}00{b:02x}")
}

#[derive(Debug, Clone, Copy)]
struct Range {
    lo: f64,
    hi: f64,
}

impl Range {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.filter(|v| v.is_finite()) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            return Range { lo: 0.0, hi: 1.0 };
        }
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.5 };
            return Range { lo: lo - pad, hi: hi + pad }.clamp_at_zero(lo);
        }
        let pad = 0.05 * (hi - lo);
        Range { lo: lo - pad, hi: hi + pad }.clamp_at_zero(lo)
    }

    /// Fitness values are non-negative; keep the axis from dipping below 0.
    fn clamp_at_zero(self, data_lo: f64) -> Self {
        if data_lo >= 0.0 && self.lo < 0.0 {
            Range { lo: 0.0, hi: self.hi }
        } else {
            self
        }
    }

    fn map(&self, v: f64, from: f64, to: f64) -> f64 {
        from + (v - self.lo) / (self.hi - self.lo) * (to - from)
    }
}

fn label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if (1e-2..1e4).contains(&v.abs()) {
        format!("{v:.3}")
    } else {
        format!("{v:.2e}")
    }
}

fn header(out: &mut String, title: &str) {
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{:.2}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    )
    .unwrap();
}

fn axes(out: &mut String, x: Range, y: Range, x_label: &str, y_label: &str, integer_x: bool) {
    let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP);
    writeln!(
        out,
        r#"<path d="M {x0:.2} {y1:.2} L {x0:.2} {y0:.2} L {x1:.2} {y0:.2}" stroke="black" fill="none"/>"#
    )
    .unwrap();
    for k in 0..=TICKS {
        let t = k as f64 / TICKS as f64;
        let yv = y.lo + t * (y.hi - y.lo);
        let py = y.map(yv, y0, y1);
        writeln!(
            out,
            r##"<line x1="{:.2}" y1="{py:.2}" x2="{x1:.2}" y2="{py:.2}" stroke="#dddddd"/>"##,
            x0
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            x0 - 6.0,
            py + 4.0,
            label(yv)
        )
        .unwrap();
        let xv = x.lo + t * (x.hi - x.lo);
        if integer_x && (xv - xv.round()).abs() > 1e-9 {
            continue;
        }
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            x.map(xv, x0, x1),
            y0 + 16.0,
            label(xv)
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="16" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(y_label)
    )
    .unwrap();
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// A per-generation series, optionally with a linear trendline `(slope, intercept)`.
#[derive(Debug, Clone)]
pub struct LineChart {
    pub title: String,
    pub y_label: String,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub trend: Option<(f64, f64)>,
}

impl LineChart {
    pub fn render(&self) -> String {
        let x = if self.xs.len() > 1 {
            Range::of(self.xs.iter().copied())
        } else {
            let v = self.xs.first().copied().unwrap_or(0.0);
            Range { lo: v - 1.0, hi: v + 1.0 }
        };
        let trend_ends = self.trend.map(|(m, b)| {
            let (a, z) = (self.xs.first().copied().unwrap_or(0.0), self.xs.last().copied().unwrap_or(0.0));
            [(a, m * a + b), (z, m * z + b)]
        });
        let y = Range::of(
            self.ys
                .iter()
                .copied()
                .chain(trend_ends.iter().flatten().map(|p| p.1)),
        );
        let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP);

        let mut out = String::new();
        header(&mut out, &self.title);
        axes(&mut out, x, y, "generation", &self.y_label, true);

        let pts: Vec<(f64, f64)> = self
            .xs
            .iter()
            .zip(&self.ys)
            .map(|(&a, &b)| (x.map(a, x0, x1), y.map(b, y0, y1)))
            .collect();
        if let Some((first, rest)) = pts.split_first() {
            let mut d = format!("M {:.2} {:.2}", first.0, first.1);
            for p in rest {
                write!(d, " L {:.2} {:.2}", p.0, p.1).unwrap();
            }
            writeln!(out, r##"<path d="{d}" stroke="#1f4e9c" stroke-width="2" fill="none"/>"##).unwrap();
        }
        for p in &pts {
            writeln!(out, r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#1f4e9c"/>"##, p.0, p.1).unwrap();
        }
        if let (Some((m, b)), Some([a, z])) = (self.trend, trend_ends) {
            writeln!(
                out,
                r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c0392b" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
                x.map(a.0, x0, x1),
                y.map(a.1, y0, y1),
                x.map(z.0, x0, x1),
                y.map(z.1, y0, y1)
            )
            .unwrap();
            writeln!(
                out,
                r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end" fill="#c0392b">trend: y = {} x + {}</text>"##,
                x1,
                TOP + 14.0,
                label(m),
                label(b)
            )
            .unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Objective-space scatter, one dot per individual, colored by generation.
#[derive(Debug, Clone)]
pub struct ScatterChart {
    pub title: String,
    /// `(mse1, mse2, generation)`.
    pub points: Vec<(f64, f64, usize)>,
    pub generations: usize,
}

impl ScatterChart {
    pub fn render(&self) -> String {
        let x = Range::of(self.points.iter().map(|p| p.0));
        let y = Range::of(self.points.iter().map(|p| p.1));
        let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP);
        let mut out = String::new();
        header(&mut out, &self.title);
        axes(&mut out, x, y, "MSE1 (shape)", "MSE2 (TCP)", false);
        for &(a, b, g) in &self.points {
            writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}" fill-opacity="0.8"/>"#,
                x.map(a, x0, x1),
                y.map(b, y0, y1),
                generation_color(g, self.generations)
            )
            .unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}
