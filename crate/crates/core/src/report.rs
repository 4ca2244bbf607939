//! Machine-readable run reports, CSV summaries and SVG figures.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::covers::SubsetFamily;
use crate::error::Result;
use crate::metric::EuclideanPointSet;

/// Record of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub runtime_ms: f64,
    pub version: String,
}

impl ExperimentReport {
    pub fn new(command: impl Into<String>) -> Self {
        ExperimentReport {
            command: command.into(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            runtime_ms: 0.0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.to_string(), to_value(value));
        self
    }

    pub fn output(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.outputs.insert(key.to_string(), to_value(value));
        self
    }

    /// Output value as `f64`, if present and numeric.
    pub fn output_f64(&self, key: &str) -> Option<f64> {
        self.outputs.get(key).and_then(Value::as_f64)
    }

    /// Flattened scalar outputs as `(key, value)` rows. Nested objects use
    /// dotted keys; arrays are kept as JSON text.
    pub fn summary_rows(&self) -> Vec<(String, String)> {
        let mut rows = Vec::new();
        for (k, v) in &self.outputs {
            flatten(k, v, &mut rows);
        }
        rows
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["command", "key", "value"])?;
        for (k, v) in self.summary_rows() {
            w.write_record([self.command.as_str(), &k, &v])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn to_value(value: impl Serialize) -> Value {
    // Non-finite floats serialize as null.
    serde_json::to_value(value).unwrap_or(Value::Null)
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                flatten(&format!("{prefix}.{k}"), inner, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

const PALETTE: [&str; 6] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"];

fn colour_for(label: &str, index: usize) -> &'static str {
    match label {
        "red" => "#d62728",
        "blue" => "#1f77b4",
        _ => PALETTE[index % PALETTE.len()],
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Draws every family member of `fams` over `pts`.
///
/// Each member becomes one `<g class="piece" data-family="...">` element,
/// so element counts per family equal the family sizes. Points are drawn
/// as dots; a member whose points lie on one vertical or horizontal line
/// also gets a connecting line.
pub fn family_svg(pts: &EuclideanPointSet, fams: &[SubsetFamily], title: &str) -> String {
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in pts.points() {
        xmin = xmin.min(p[0]);
        xmax = xmax.max(p[0]);
        ymin = ymin.min(p[1]);
        ymax = ymax.max(p[1]);
    }
    let span = (xmax - xmin).max(ymax - ymin).max(1.0);
    let scale = 600.0 / span;
    let margin = 20.0;
    let width = (xmax - xmin) * scale + 2.0 * margin;
    let height = (ymax - ymin) * scale + 2.0 * margin + 20.0;
    let sx = |x: f64| margin + (x - xmin) * scale;
    let sy = |y: f64| margin + 20.0 + (ymax - y) * scale;
    let dot = (scale * 0.12).clamp(0.6, 6.0);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    let _ = writeln!(out, r#"<title>{}</title>"#, escape(title));
    let _ = writeln!(out, r#"<text x="{margin}" y="16" font-size="12">{}</text>"#, escape(title));
    for (fi, fam) in fams.iter().enumerate() {
        let colour = colour_for(fam.label(), fi);
        let label = escape(fam.label());
        let _ = writeln!(out, r#"<g class="family" data-family="{label}">"#);
        for m in fam.members() {
            let _ = write!(out, r#"<g class="piece" data-family="{label}" fill="{colour}" stroke="{colour}">"#);
            let first = pts.point(m.as_slice()[0]);
            let vertical = m.iter().all(|i| pts.point(i)[0] == first[0]);
            let horizontal = m.iter().all(|i| pts.point(i)[1] == first[1]);
            if m.len() > 1 && (vertical || horizontal) {
                let (mut lo, mut hi) = (first, first);
                for i in m.iter() {
                    let p = pts.point(i);
                    if (p[0], p[1]) < (lo[0], lo[1]) {
                        lo = p;
                    }
                    if (p[0], p[1]) > (hi[0], hi[1]) {
                        hi = p;
                    }
                }
                let _ = write!(
                    out,
                    r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke-width="{:.2}"/>"#,
                    sx(lo[0]),
                    sy(lo[1]),
                    sx(hi[0]),
                    sy(hi[1]),
                    dot
                );
            }
            for i in m.iter() {
                let p = pts.point(i);
                let _ = write!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}"/>"#, sx(p[0]), sy(p[1]), dot);
            }
            out.push_str("</g>\n");
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
