//! Text renderings of a disk configuration: Graphviz DOT, SVG 1.1, JSON.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::braid::{DiskConfiguration, PunctureKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Svg,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Format::Dot),
            "svg" => Ok(Format::Svg),
            "json" => Ok(Format::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

pub fn render(cfg: &DiskConfiguration, format: Format) -> String {
    match format {
        Format::Dot => render_dot(cfg),
        Format::Svg => render_svg(cfg),
        Format::Json => cfg.to_json(),
    }
}

/// Parses the format name first, so unknown names are input errors.
pub fn render_named(cfg: &DiskConfiguration, format: &str) -> Result<String> {
    Ok(render(cfg, format.parse()?))
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The tree, one node per disk, annotated with puncture counts.
pub fn render_dot(cfg: &DiskConfiguration) -> String {
    let mut private = vec![0usize; cfg.disks.len()];
    let mut lens = vec![0usize; cfg.edges.len()];
    let mut exterior = 0;
    for p in &cfg.punctures {
        match p.kind {
            PunctureKind::Private { disk } => private[disk] += 1,
            PunctureKind::Lens { edge } => {
                if let Some(i) = cfg.edges.iter().position(|e| *e == edge) {
                    lens[i] += 1;
                }
            }
            PunctureKind::Exterior => exterior += 1,
        }
    }
    let mut s = String::from("graph T {\n");
    let _ = writeln!(
        s,
        "  label=\"n = {} punctures ({} exterior)\";\n  node [shape=circle];",
        cfg.n(),
        exterior
    );
    for (i, d) in cfg.disks.iter().enumerate() {
        let _ = writeln!(s, "  {i} [label=\"{}\\n{}\"];", escape(&d.name), private[i]);
    }
    for (i, &[a, b]) in cfg.edges.iter().enumerate() {
        let _ = writeln!(s, "  {a} -- {b} [label=\"{}\"];", lens[i]);
    }
    s.push_str("}\n");
    s
}

fn num(x: f64) -> String {
    // shortest round-trip form; never "-0"
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x}")
    }
}

/// Disks, lenses (two arcs each) and punctures. Coordinates are the f64
/// images of the exact ones, with the y axis pointing up.
pub fn render_svg(cfg: &DiskConfiguration) -> String {
    let disks: Vec<(f64, f64, f64)> = cfg
        .disks
        .iter()
        .map(|d| (d.center.x.to_f64(), d.center.y.to_f64(), d.radius.to_f64()))
        .collect();
    let pts: Vec<(f64, f64)> = cfg.punctures.iter().map(|p| (p.at.x.to_f64(), p.at.y.to_f64())).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y, r) in &disks {
        x0 = x0.min(x - r);
        y0 = y0.min(y - r);
        x1 = x1.max(x + r);
        y1 = y1.max(y + r);
    }
    for &(x, y) in &pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1.0);
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let dot = 0.004 * w.max(h);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"{}\">",
        num(x0 - pad),
        num(-(y1 + pad)),
        num(w),
        num(h),
        ((800.0 * h / w).round() as i64).max(1)
    );
    let _ = writeln!(s, "<title>{} disks, n = {}</title>", cfg.disks.len(), cfg.n());
    s.push_str("<g transform=\"scale(1,-1)\">\n");
    s.push_str("<g class=\"disks\" fill=\"#9ecae1\" fill-opacity=\"0.35\" stroke=\"#3182bd\" stroke-width=\"0.002\">\n");
    for (i, &(x, y, r)) in disks.iter().enumerate() {
        let _ = writeln!(
            s,
            "<circle class=\"disk\" id=\"d{i}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            num(x),
            num(y),
            num(r)
        );
    }
    s.push_str("</g>\n<g class=\"lenses\" fill=\"#fd8d3c\" fill-opacity=\"0.6\" stroke=\"none\">\n");
    for &[a, b] in &cfg.edges {
        if let Some(path) = lens_path(disks[a], disks[b]) {
            let _ = writeln!(s, "<path class=\"lens\" d=\"{path}\"/>");
        }
    }
    s.push_str("</g>\n<g class=\"punctures\" stroke=\"none\">\n");
    for (p, &(x, y)) in cfg.punctures.iter().zip(&pts) {
        let (kind, fill) = match p.kind {
            PunctureKind::Lens { .. } => ("in-lens", "#d94801"),
            PunctureKind::Private { .. } => ("in-disk", "#08519c"),
            PunctureKind::Exterior => ("outside", "#000000"),
        };
        let _ = writeln!(
            s,
            "<circle class=\"puncture {kind}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"/>",
            num(x),
            num(y),
            num(dot)
        );
    }
    s.push_str("</g>\n</g>\n</svg>\n");
    s
}

/// Boundary of the intersection of two crossing circles.
fn lens_path((x1, y1, r1): (f64, f64, f64), (x2, y2, r2): (f64, f64, f64)) -> Option<String> {
    let (dx, dy) = (x2 - x1, y2 - y1);
    let d = (dx * dx + dy * dy).sqrt();
    if d == 0.0 || d >= r1 + r2 || d <= (r1 - r2).abs() {
        return None;
    }
    let a = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let h = (r1 * r1 - a * a).max(0.0).sqrt();
    let (ex, ey) = (dx / d, dy / d);
    let (mx, my) = (x1 + a * ex, y1 + a * ey);
    let (px, py) = (mx - h * ey, my + h * ex);
    let (qx, qy) = (mx + h * ey, my - h * ex);
    let large2 = u8::from(d - a < 0.0);
    let large1 = u8::from(a < 0.0);
    Some(format!(
        "M{} {} A{} {} 0 {large2} 1 {} {} A{} {} 0 {large1} 1 {} {} Z",
        num(px),
        num(py),
        num(r2),
        num(r2),
        num(qx),
        num(qy),
        num(r1),
        num(r1),
        num(px),
        num(py)
    ))
}
