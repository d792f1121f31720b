//! CSV tables and SVG plots.
//!
//! Exact values go out as `p/q` (integers bare); floating point is only
//! used for SVG coordinates. Aggregates follow the rows as `# key=value`
//! comment lines. Nothing depends on time or thread scheduling, so equal
//! inputs give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use freqfn::rat::to_f64;
use freqfn::Rat;

/// A header, rows of already-rendered cells, and trailing aggregates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub trailer: Vec<(String, String)>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            ..Table::default()
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.trailer.push((key.to_string(), value.to_string()));
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        for (k, v) in &self.trailer {
            let _ = writeln!(out, "# {k}={v}");
        }
        out
    }
}

/// Writes `contents` to `path`, or returns it for standard output.
pub fn deliver(path: Option<&Path>, contents: String) -> Result<Option<String>> {
    match path {
        Some(p) => {
            fs::write(p, contents).with_context(|| format!("cannot write {}", p.display()))?;
            Ok(None)
        }
        None => Ok(Some(contents)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PlotKind {
    /// One value per grid point.
    Line,
    /// One density ratio per domain bound.
    Density,
}

/// Points to draw, with axis labels.
#[derive(Debug, Clone)]
pub struct Series {
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(Rat, Rat)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

pub fn render_svg(series: &Series, kind: PlotKind) -> Result<String> {
    if series.points.is_empty() {
        bail!("nothing to plot: the report has no entries");
    }
    let pts: Vec<(f64, f64)> = series
        .points
        .iter()
        .map(|(x, y)| (to_f64(x), to_f64(y)))
        .collect();
    let (x0, x1) = span(pts.iter().map(|p| p.0));
    let (y0, y1) = span(pts.iter().map(|p| p.1).chain([0.0]));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (left, right, bottom, top) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(
        svg,
        r#"<path d="M{left:.2},{top:.2} L{left:.2},{bottom:.2} L{right:.2},{bottom:.2}" stroke="black" fill="none"/>"#
    );
    for (text, x, y, anchor) in [
        (format!("{x0:.4}"), left, bottom + 16.0, "start"),
        (format!("{x1:.4}"), right, bottom + 16.0, "end"),
        (format!("{y0:.4}"), left - 4.0, bottom, "end"),
        (format!("{y1:.4}"), left - 4.0, top + 4.0, "end"),
    ] {
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{y:.2}" font-size="11" text-anchor="{anchor}">{text}</text>"#
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 8.0,
        escape(&series.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{:.2}" font-size="12" text-anchor="middle" transform="rotate(-90 14 {:.2})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(&series.y_label)
    );
    let coords: Vec<String> = pts
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
        .collect();
    let _ = writeln!(
        svg,
        r#"<polyline points="{}" stroke="steelblue" stroke-width="1.5" fill="none"/>"#,
        coords.join(" ")
    );
    if kind == PlotKind::Density {
        for &(x, y) in &pts {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="steelblue"/>"#,
                sx(x),
                sy(y)
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// The CSV written next to an SVG: same path, `.csv` extension.
pub fn sibling_csv(svg: &Path) -> PathBuf {
    svg.with_extension("csv")
}

/// Writes the SVG and its sibling CSV.
pub fn emit_plot(series: &Series, table: &Table, path: &Path, kind: PlotKind) -> Result<()> {
    let svg = render_svg(series, kind)?;
    fs::write(path, svg).with_context(|| format!("cannot write {}", path.display()))?;
    let csv = sibling_csv(path);
    fs::write(&csv, table.to_csv()).with_context(|| format!("cannot write {}", csv.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use freqfn::rat::{int, rat};

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["x", "y"]);
        t.push(vec![rat(1, 2).to_string(), int(3).to_string()]);
        t.note("count", 1);
        assert_eq!(t.to_csv(), "x,y\n1/2,3\n# count=1\n");
    }

    #[test]
    fn empty_series_is_an_error() {
        let s = Series {
            x_label: "x".into(),
            y_label: "y".into(),
            points: vec![],
        };
        assert!(render_svg(&s, PlotKind::Line).is_err());
    }

    #[test]
    fn svg_is_deterministic_and_flat_series_render() {
        let s = Series {
            x_label: "x".into(),
            y_label: "T<f>".into(),
            points: vec![(int(0), int(1)), (int(1), int(1))],
        };
        let a = render_svg(&s, PlotKind::Density).unwrap();
        assert_eq!(a, render_svg(&s, PlotKind::Density).unwrap());
        assert!(a.contains("T&lt;f&gt;") && a.contains("<circle"));
        assert!(!a.contains("NaN"));
    }
}
