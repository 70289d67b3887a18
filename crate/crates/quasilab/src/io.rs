//! Flat-file plumbing: CSV read/write, run manifests with output
//! digests, and deterministic SVG plots.
//!
//! Every byte written here is a pure function of the data handed in:
//! floats are formatted with the shortest round-trip representation and
//! rows keep caller order, so identical inputs produce identical files
//! regardless of thread count.  Manifests list the sha256 of each data
//! file, which makes "same manifest, same bytes" checkable after the
//! fact.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

// ═══════════════════════════════════════════════════════════════════
// CSV
// ═══════════════════════════════════════════════════════════════════

fn quote_field(field: &str, out: &mut String) {
    if field.contains(',') || field.contains('"') || field.contains('\n') || field.contains('\r') {
        out.push('"');
        for c in field.chars() {
            if c == '"' {
                out.push('"');
            }
            out.push(c);
        }
        out.push('"');
    } else {
        out.push_str(field);
    }
}

#[must_use]
pub fn csv_to_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for (i, h) in header.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        quote_field(h, &mut out);
    }
    out.push('\n');
    for row in rows {
        for (i, field) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            quote_field(field, &mut out);
        }
        out.push('\n');
    }
    out
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    fs::write(path, csv_to_string(header, rows))?;
    Ok(())
}

/// Parse a CSV file into header and rows.  Quoted fields may contain
/// commas, doubled quotes, and newlines.  Ragged rows and unterminated
/// quotes are rejected.
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let text = fs::read_to_string(path)?;
    let mut records: Vec<Vec<String>> = Vec::new();
    let mut row: Vec<String> = Vec::new();
    let mut field = String::new();
    let mut chars = text.chars().peekable();
    let mut in_quotes = false;
    let mut any = false;
    while let Some(c) = chars.next() {
        any = true;
        if in_quotes {
            if c == '"' {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    field.push('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push(c);
            }
        } else {
            match c {
                '"' if field.is_empty() => in_quotes = true,
                ',' => row.push(std::mem::take(&mut field)),
                '\r' => {}
                '\n' => {
                    row.push(std::mem::take(&mut field));
                    records.push(std::mem::take(&mut row));
                }
                _ => field.push(c),
            }
        }
    }
    if in_quotes {
        return Err(Error::InvalidInput("unterminated quote in CSV".into()));
    }
    if !field.is_empty() || !row.is_empty() {
        row.push(field);
        records.push(row);
    }
    if !any || records.is_empty() {
        return Err(Error::InvalidInput("empty CSV".into()));
    }
    let header = records.remove(0);
    let width = header.len();
    if records.iter().any(|r| r.len() != width) {
        return Err(Error::InvalidInput("ragged CSV rows".into()));
    }
    Ok((header, records))
}

pub fn parse_f64_field(field: &str) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::InvalidInput(format!("'{field}' is not a number")))
}

// ═══════════════════════════════════════════════════════════════════
// Manifests
// ═══════════════════════════════════════════════════════════════════

#[must_use]
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{b:02x}");
    }
    out
}

pub fn sha256_hex_file(path: &Path) -> Result<String> {
    Ok(sha256_hex(&fs::read(path)?))
}

/// Record of one invocation: inputs, tolerances, seed when sampling,
/// and the digest of every file written.  Field order is fixed and map
/// keys are sorted, so serialization is stable.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub precision: String,
    pub artifact_version: String,
    pub outputs: BTreeMap<String, String>,
}

impl RunManifest {
    #[must_use]
    pub fn new(subcommand: &str) -> RunManifest {
        RunManifest {
            subcommand: subcommand.to_string(),
            parameters: BTreeMap::new(),
            seed: None,
            precision: "f64 pair (double-double, ~32 significant digits)".into(),
            artifact_version: env!("CARGO_PKG_VERSION").into(),
            outputs: BTreeMap::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    /// Hash an already-written output file into the manifest.
    pub fn record_output(&mut self, path: &Path) -> Result<&mut Self> {
        let digest = sha256_hex_file(path)?;
        self.outputs.insert(path.display().to_string(), digest);
        Ok(self)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| Error::InvalidInput(format!("manifest serialization: {e}")))?;
        text.push('\n');
        fs::write(path, text)?;
        Ok(())
    }
}

// ═══════════════════════════════════════════════════════════════════
// SVG plots
// ═══════════════════════════════════════════════════════════════════

const SVG_W: f64 = 800.0;
const SVG_H: f64 = 520.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 42.0;
const MARGIN_B: f64 = 52.0;

const PALETTE: [&str; 6] = [
    "#1f6fb2", "#d1495b", "#3a7d44", "#8d5a97", "#c77f2e", "#4a4a4a",
];

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if a >= 1e4 || a < 1e-3 {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.3}");
        let trimmed = s.trim_end_matches('0').trim_end_matches('.');
        trimmed.to_string()
    }
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn build(values: impl Iterator<Item = f64>, log: bool) -> Result<Axis> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in values {
            if !v.is_finite() {
                return Err(Error::InvalidInput("non-finite plot value".into()));
            }
            if log && v <= 0.0 {
                return Err(Error::InvalidInput(
                    "log axes need strictly positive values".into(),
                ));
            }
            let t = if log { v.log10() } else { v };
            lo = lo.min(t);
            hi = hi.max(t);
        }
        if !lo.is_finite() {
            return Err(Error::InvalidInput("nothing to plot".into()));
        }
        if hi - lo < 1e-12 {
            lo -= 0.5;
            hi += 0.5;
        }
        Ok(Axis { lo, hi, log })
    }

    fn coord(&self, v: f64) -> f64 {
        let t = if self.log { v.log10() } else { v };
        (t - self.lo) / (self.hi - self.lo)
    }

    /// Tick positions in data space with labels.
    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let a = self.lo.ceil() as i64;
            let b = self.hi.floor() as i64;
            let count = (b - a + 1).max(0);
            let step = if count > 8 { 2 } else { 1 };
            let mut out = Vec::new();
            let mut d = a;
            while d <= b {
                out.push((10f64.powi(d as i32), format!("1e{d}")));
                d += step;
            }
            if out.is_empty() {
                out.push((10f64.powf(self.lo), fmt_tick(10f64.powf(self.lo))));
                out.push((10f64.powf(self.hi), fmt_tick(10f64.powf(self.hi))));
            }
            out
        } else {
            (0..=5)
                .map(|i| {
                    let v = self.lo + (self.hi - self.lo) * i as f64 / 5.0;
                    (v, fmt_tick(v))
                })
                .collect()
        }
    }
}

fn svg_header(title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_W}\" height=\"{SVG_H}\" viewBox=\"0 0 {SVG_W} {SVG_H}\">"
    );
    let _ = writeln!(
        s,
        "<rect width=\"{SVG_W}\" height=\"{SVG_H}\" fill=\"#ffffff\"/>"
    );
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"24\" font-family=\"monospace\" font-size=\"15\" text-anchor=\"middle\">{}</text>",
        SVG_W / 2.0,
        xml_escape(title)
    );
    s
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn px(x: f64) -> String {
    format!("{x:.2}")
}

fn draw_axes(s: &mut String, xa: &Axis, ya: &Axis, xlabel: &str, ylabel: &str) {
    let plot_w = SVG_W - MARGIN_L - MARGIN_R;
    let plot_h = SVG_H - MARGIN_T - MARGIN_B;
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#222\"/>",
        px(MARGIN_L),
        px(MARGIN_T),
        px(plot_w),
        px(plot_h)
    );
    for (v, label) in xa.ticks() {
        let x = MARGIN_L + xa.coord(v) * plot_w;
        if !(MARGIN_L - 0.5..=SVG_W - MARGIN_R + 0.5).contains(&x) {
            continue;
        }
        let _ = writeln!(
            s,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#222\"/>",
            px(x),
            px(SVG_H - MARGIN_B),
            px(SVG_H - MARGIN_B + 5.0)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            px(x),
            px(SVG_H - MARGIN_B + 18.0),
            xml_escape(&label)
        );
    }
    for (v, label) in ya.ticks() {
        let y = SVG_H - MARGIN_B - ya.coord(v) * plot_h;
        if !(MARGIN_T - 0.5..=SVG_H - MARGIN_B + 0.5).contains(&y) {
            continue;
        }
        let _ = writeln!(
            s,
            "<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"#222\"/>",
            px(y),
            px(MARGIN_L - 5.0),
            px(MARGIN_L)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            px(MARGIN_L - 8.0),
            px(y + 4.0),
            xml_escape(&label)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
        MARGIN_L + plot_w / 2.0,
        SVG_H - 12.0,
        xml_escape(xlabel)
    );
    let _ = writeln!(
        s,
        "<text x=\"16\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1})\">{}</text>",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0,
        xml_escape(ylabel)
    );
}

/// Multi-series line plot.  Log axes reject nonpositive data.
pub fn svg_line_plot(
    path: &Path,
    title: &str,
    xlabel: &str,
    ylabel: &str,
    series: &[(String, Vec<(f64, f64)>)],
    log_x: bool,
    log_y: bool,
) -> Result<()> {
    if series.iter().all(|(_, pts)| pts.is_empty()) {
        return Err(Error::InvalidInput("nothing to plot".into()));
    }
    let xa = Axis::build(
        series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.0)),
        log_x,
    )?;
    let ya = Axis::build(
        series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.1)),
        log_y,
    )?;
    let plot_w = SVG_W - MARGIN_L - MARGIN_R;
    let plot_h = SVG_H - MARGIN_T - MARGIN_B;
    let mut s = svg_header(title);
    draw_axes(&mut s, &xa, &ya, xlabel, ylabel);
    for (idx, (label, pts)) in series.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let mut coords = String::new();
        for (x, y) in pts {
            let cx = MARGIN_L + xa.coord(*x) * plot_w;
            let cy = SVG_H - MARGIN_B - ya.coord(*y) * plot_h;
            let _ = write!(coords, "{},{} ", px(cx), px(cy));
        }
        if pts.len() == 1 {
            let cx = MARGIN_L + xa.coord(pts[0].0) * plot_w;
            let cy = SVG_H - MARGIN_B - ya.coord(pts[0].1) * plot_h;
            let _ = writeln!(
                s,
                "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"/>",
                px(cx),
                px(cy)
            );
        } else {
            let _ = writeln!(
                s,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
                coords.trim_end()
            );
        }
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"12\" fill=\"{color}\">{}</text>",
            px(SVG_W - MARGIN_R - 150.0),
            px(MARGIN_T + 16.0 + 15.0 * idx as f64),
            xml_escape(label)
        );
    }
    s.push_str("</svg>\n");
    fs::write(path, s)?;
    Ok(())
}

/// Horizontal interval raster: each labelled row draws its [lo, hi]
/// intervals as bars on a shared x-axis.  Suited to band spectra.
pub fn svg_interval_raster(
    path: &Path,
    title: &str,
    xlabel: &str,
    rows: &[(String, Vec<(f64, f64)>)],
) -> Result<()> {
    if rows.is_empty() || rows.iter().all(|(_, iv)| iv.is_empty()) {
        return Err(Error::InvalidInput("nothing to plot".into()));
    }
    for (_, iv) in rows {
        if iv.iter().any(|(lo, hi)| !(lo.is_finite() && hi.is_finite() && lo <= hi)) {
            return Err(Error::InvalidInput("malformed interval".into()));
        }
    }
    let xa = Axis::build(
        rows.iter()
            .flat_map(|(_, iv)| iv.iter().flat_map(|(lo, hi)| [*lo, *hi])),
        false,
    )?;
    let plot_w = SVG_W - MARGIN_L - MARGIN_R;
    let plot_h = SVG_H - MARGIN_T - MARGIN_B;
    let slot = plot_h / rows.len() as f64;
    let bar = (slot * 0.6).min(26.0);
    let mut s = svg_header(title);
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#222\"/>",
        px(MARGIN_L),
        px(MARGIN_T),
        px(plot_w),
        px(plot_h)
    );
    for (v, label) in xa.ticks() {
        let x = MARGIN_L + xa.coord(v) * plot_w;
        let _ = writeln!(
            s,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#222\"/>",
            px(x),
            px(SVG_H - MARGIN_B),
            px(SVG_H - MARGIN_B + 5.0)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            px(x),
            px(SVG_H - MARGIN_B + 18.0),
            xml_escape(&label)
        );
    }
    for (i, (label, intervals)) in rows.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let yc = MARGIN_T + slot * (i as f64 + 0.5);
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            px(MARGIN_L - 8.0),
            px(yc + 4.0),
            xml_escape(label)
        );
        for (lo, hi) in intervals {
            let x0 = MARGIN_L + xa.coord(*lo) * plot_w;
            let x1 = MARGIN_L + xa.coord(*hi) * plot_w;
            let _ = writeln!(
                s,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{color}\"/>",
                px(x0),
                px(yc - bar / 2.0),
                px((x1 - x0).max(0.8)),
                px(bar)
            );
        }
    }
    let _ = writeln!(
        s,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
        MARGIN_L + plot_w / 2.0,
        SVG_H - 12.0,
        xml_escape(xlabel)
    );
    s.push_str("</svg>\n");
    fs::write(path, s)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn csv_round_trips_including_quoted_fields() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let rows = vec![
            vec!["plain".to_string(), "with,comma".to_string()],
            vec!["with \"quote\"".to_string(), "line\nbreak".to_string()],
        ];
        write_csv(&path, &["a", "b"], &rows).unwrap();
        let (header, parsed) = read_csv(&path).unwrap();
        assert_eq!(header, vec!["a", "b"]);
        assert_eq!(parsed, rows);
    }

    #[test]
    fn malformed_csv_is_rejected() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        fs::write(&path, "a,b\n1,2,3\n").unwrap();
        assert!(matches!(read_csv(&path), Err(Error::InvalidInput(_))));
        fs::write(&path, "a,b\n\"open,2\n").unwrap();
        assert!(matches!(read_csv(&path), Err(Error::InvalidInput(_))));
        fs::write(&path, "").unwrap();
        assert!(matches!(read_csv(&path), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn sha256_matches_a_known_vector() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn manifests_serialize_stably_and_digest_their_outputs() {
        let dir = tempdir().unwrap();
        let data = dir.path().join("data.csv");
        write_csv(&data, &["x"], &[vec!["1".to_string()]]).unwrap();
        let build = || {
            let mut m = RunManifest::new("demo");
            m.param("beta", "2").param("alpha", "1");
            m.record_output(&data).unwrap();
            m
        };
        let p1 = dir.path().join("m1.json");
        let p2 = dir.path().join("m2.json");
        build().write_json(&p1).unwrap();
        build().write_json(&p2).unwrap();
        let t1 = fs::read_to_string(&p1).unwrap();
        assert_eq!(t1, fs::read_to_string(&p2).unwrap());
        // Keys come out sorted and the digest matches an independent hash.
        assert!(t1.find("\"alpha\"").unwrap() < t1.find("\"beta\"").unwrap());
        assert!(t1.contains(&sha256_hex_file(&data).unwrap()));
        assert!(t1.find("\"subcommand\"").unwrap() < t1.find("\"parameters\"").unwrap());
    }

    #[test]
    fn line_plots_are_deterministic_and_cover_the_data() {
        let dir = tempdir().unwrap();
        let p1 = dir.path().join("a.svg");
        let p2 = dir.path().join("b.svg");
        let series = vec![(
            "demo".to_string(),
            vec![(0.0, 1.0), (1.0, 3.0), (2.0, 2.0)],
        )];
        svg_line_plot(&p1, "t", "x", "y", &series, false, false).unwrap();
        svg_line_plot(&p2, "t", "x", "y", &series, false, false).unwrap();
        let s = fs::read_to_string(&p1).unwrap();
        assert_eq!(s, fs::read_to_string(&p2).unwrap());
        assert!(s.contains("<polyline"));
        assert!(s.starts_with("<svg"));
        assert!(s.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn log_plots_reject_nonpositive_values() {
        let dir = tempdir().unwrap();
        let p = dir.path().join("log.svg");
        let bad = vec![("s".to_string(), vec![(1.0, 0.0), (2.0, 1.0)])];
        assert!(matches!(
            svg_line_plot(&p, "t", "x", "y", &bad, false, true),
            Err(Error::InvalidInput(_))
        ));
        let good = vec![("s".to_string(), vec![(1.0, 0.5), (100.0, 2.0)])];
        svg_line_plot(&p, "t", "x", "y", &good, true, true).unwrap();
        assert!(fs::read_to_string(&p).unwrap().contains("1e"));
    }

    #[test]
    fn interval_rasters_draw_one_rect_per_band() {
        let dir = tempdir().unwrap();
        let p = dir.path().join("bands.svg");
        let rows = vec![
            ("q=2".to_string(), vec![(-2.0, -0.5), (0.5, 2.0)]),
            ("q=3".to_string(), vec![(-2.0, 2.0)]),
        ];
        svg_interval_raster(&p, "bands", "E", &rows).unwrap();
        let s = fs::read_to_string(&p).unwrap();
        // Frame rect plus three band rects.
        assert_eq!(s.matches("<rect").count(), 1 + 1 + 3);
        assert!(matches!(
            svg_interval_raster(&p, "bands", "E", &[]),
            Err(Error::InvalidInput(_))
        ));
    }
}
