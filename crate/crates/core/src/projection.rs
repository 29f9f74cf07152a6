//! SVG projection of weights onto the `(ε_i, ε_j)` coordinate plane, with
//! the reflecting lines of `s_{ε_i-ε_j, rp}` and `s_{ε_i+ε_j, rp}`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::weights::{Context, Weight};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    pub i: usize,
    pub j: usize,
    /// Coordinates shown: `[-radius, radius]` on both axes.
    pub radius: i64,
}

/// A reflecting line `x - y = c` (`Diff`) or `x + y = c` (`Sum`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Diff(i64),
    Sum(i64),
}

impl Projection {
    pub fn new(i: usize, j: usize, radius: i64) -> Result<Self> {
        if i == 0 || j == 0 || i >= j {
            return Err(Error::Unsupported(format!("projection needs 1 <= i < j, got ({i},{j})")));
        }
        if radius <= 0 {
            return Err(Error::Unsupported("radius must be positive".into()));
        }
        Ok(Projection { i, j, radius })
    }

    /// Lines meeting the window: `x - y = i - j + rp` and
    /// `x + y = δ - 2 + i + j + rp`, with `r = 0` in characteristic zero.
    pub fn lines(&self, ctx: &Context) -> Vec<Line> {
        let (i, j) = (self.i as i64, self.j as i64);
        let span = 2 * self.radius;
        let diff0 = i - j;
        let sum0 = ctx.delta() - 2 + i + j;
        let mut out = Vec::new();
        match ctx.prime() {
            None => {
                if diff0.abs() <= span {
                    out.push(Line::Diff(diff0));
                }
                if sum0.abs() <= span {
                    out.push(Line::Sum(sum0));
                }
            }
            Some(p) => {
                let p = p as i64;
                for c in (-span..=span).filter(|c| (c - diff0).rem_euclid(p) == 0) {
                    out.push(Line::Diff(c));
                }
                for c in (-span..=span).filter(|c| (c - sum0).rem_euclid(p) == 0) {
                    out.push(Line::Sum(c));
                }
            }
        }
        out
    }

    /// Renders the window with the dominant region shaded and `points`
    /// marked.
    pub fn render_svg(&self, ctx: &Context, points: &[Weight]) -> Result<String> {
        if self.j > ctx.rank() {
            return Err(Error::RankMismatch {
                weight: format!("({},{})", self.i, self.j),
                rank: ctx.rank(),
            });
        }
        let r = self.radius;
        let scale = 20i64;
        let size = 2 * r * scale;
        let px = |x: i64| (x + r) * scale;
        let py = |y: i64| (r - y) * scale;
        let mut s = String::new();
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        )
        .unwrap();
        writeln!(s, r#"<rect width="{size}" height="{size}" fill="white"/>"#).unwrap();

        // (λ+ρ, ε_i - ε_j) ≥ 0 and (λ+ρ, ε_i + ε_j) ≥ 0.
        let (i, j) = (self.i as i64, self.j as i64);
        let d0 = i - j;
        let s0 = ctx.delta() - 2 + i + j;
        let mut poly = Vec::new();
        let steps = 4 * r;
        for k in 0..=steps {
            for edge in 0..4 {
                let t = -r + k * 2 * r / steps;
                let (x, y) = match edge {
                    0 => (t, -r),
                    1 => (r, t),
                    2 => (-t, r),
                    _ => (-r, -t),
                };
                if x - y >= d0 && x + y >= s0 && !poly.contains(&(x, y)) {
                    poly.push((x, y));
                }
            }
        }
        let corner = ((s0 + d0) / 2, (s0 - d0) / 2);
        if corner.0.abs() <= r && corner.1.abs() <= r {
            poly.push(corner);
        }
        if poly.len() >= 3 {
            let cx = poly.iter().map(|p| p.0).sum::<i64>() as f64 / poly.len() as f64;
            let cy = poly.iter().map(|p| p.1).sum::<i64>() as f64 / poly.len() as f64;
            poly.sort_by(|a, b| {
                let ta = (a.1 as f64 - cy).atan2(a.0 as f64 - cx);
                let tb = (b.1 as f64 - cy).atan2(b.0 as f64 - cx);
                ta.partial_cmp(&tb).unwrap()
            });
            let pts: Vec<String> = poly.iter().map(|&(x, y)| format!("{},{}", px(x), py(y))).collect();
            writeln!(s, r##"<polygon class="dominant" points="{}" fill="#e8eef8"/>"##, pts.join(" ")).unwrap();
        }

        writeln!(
            s,
            r#"<line class="axis" x1="0" y1="{0}" x2="{1}" y2="{0}" stroke="gray"/>"#,
            py(0),
            size
        )
        .unwrap();
        writeln!(
            s,
            r#"<line class="axis" x1="{0}" y1="0" x2="{0}" y2="{1}" stroke="gray"/>"#,
            px(0),
            size
        )
        .unwrap();
        for line in self.lines(ctx) {
            let (class, (x1, y1), (x2, y2)) = match line {
                Line::Diff(c) => ("diff", (-r, -r - c), (r, r - c)),
                Line::Sum(c) => ("sum", (-r, c + r), (r, c - r)),
            };
            let value = match line {
                Line::Diff(c) | Line::Sum(c) => c,
            };
            writeln!(
                s,
                r#"<line class="{class}" data-c="{value}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
                px(x1),
                py(y1),
                px(x2),
                py(y2)
            )
            .unwrap();
        }
        for w in points {
            let w = w.padded(ctx.rank())?;
            let (x, y) = (w.coord(self.i), w.coord(self.j));
            writeln!(
                s,
                r#"<circle class="weight" data-weight="{w}" cx="{}" cy="{}" r="4" fill="black"/>"#,
                px(x),
                py(y)
            )
            .unwrap();
        }
        s.push_str("</svg>\n");
        Ok(s)
    }
}
