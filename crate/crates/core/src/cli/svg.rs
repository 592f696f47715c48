//! Self-contained SVG heatmaps and line plots.

use super::config::SvgKind;
use crate::error::{Result, TriqError};
use crate::sweep::SweepResult;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 540.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

const VIRIDIS: [(f64, f64, f64); 5] = [
    (68.0, 1.0, 84.0),
    (59.0, 82.0, 139.0),
    (33.0, 145.0, 140.0),
    (94.0, 201.0, 98.0),
    (253.0, 231.0, 37.0),
];

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0) * (VIRIDIS.len() - 1) as f64;
    let k = (t.floor() as usize).min(VIRIDIS.len() - 2);
    let f = t - k as f64;
    let (a, b) = (VIRIDIS[k], VIRIDIS[k + 1]);
    let mix = |x: f64, y: f64| (x + f * (y - x)).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

fn tick(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn header(out: &mut String, title: &str, echo: &BTreeMap<String, String>) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    for (k, v) in echo {
        let _ = writeln!(out, "<!-- {}={} -->", escape(k), escape(v).replace("--", "- -"));
    }
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + (WIDTH - LEFT - RIGHT) / 2.0,
        escape(title)
    );
}

fn axes_frame(out: &mut String, xlabel: &str, ylabel: &str, xr: (f64, f64), yr: (f64, f64)) {
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let _ = writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let x = LEFT + f * pw;
        let y = TOP + ph - f * ph;
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="black"/><text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#,
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 18.0,
            tick(xr.0 + f * (xr.1 - xr.0))
        );
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0,
            tick(yr.0 + f * (yr.1 - yr.0))
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 20.0,
        escape(xlabel)
    );
    let _ = writeln!(
        out,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(ylabel)
    );
}

fn range(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if lo > hi {
        None
    } else if lo == hi {
        Some((lo - 0.5, hi + 0.5))
    } else {
        Some((lo, hi))
    }
}

fn distinct(values: &[f64]) -> Vec<f64> {
    let mut d: Vec<f64> = Vec::new();
    for &v in values {
        if !d.contains(&v) {
            d.push(v);
        }
    }
    d.sort_by(f64::total_cmp);
    d
}

fn column_index(result: &SweepResult, name: &str) -> Result<usize> {
    result
        .columns
        .iter()
        .position(|c| c == name)
        .ok_or_else(|| TriqError::Usage(format!("no column '{name}'")))
}

/// Heatmap of the first quantity over a two-axis result.
pub fn heatmap(result: &SweepResult, echo: &BTreeMap<String, String>) -> Result<String> {
    if result.axes.len() != 2 {
        return Err(TriqError::Usage(format!(
            "a heatmap needs a two-axis result, got {} axis",
            result.axes.len()
        )));
    }
    if result.rows.len() < 2 {
        return Err(TriqError::Usage("a heatmap needs more than one row".into()));
    }
    let (xname, yname) = (result.axes[0].name.to_string(), result.axes[1].name.to_string());
    let (xi, yi) = (column_index(result, &xname)?, column_index(result, &yname)?);
    let vi = xi.max(yi) + 1;
    let vname = result
        .columns
        .get(vi)
        .ok_or_else(|| TriqError::Usage("no quantity to plot".into()))?
        .clone();
    let get = |k: usize| -> Vec<f64> { result.rows.iter().map(|r| r.values[k].unwrap_or(f64::NAN)).collect() };
    let (xv, yv, vv) = (get(xi), get(yi), get(vi));
    let (xs, ys) = (distinct(&xv), distinct(&yv));
    if xs.len() < 2 || ys.len() < 2 {
        return Err(TriqError::Usage("a heatmap needs at least two values on each axis".into()));
    }
    let xr = (xs[0], xs[xs.len() - 1]);
    let yr = (ys[0], ys[ys.len() - 1]);
    let vr = range(vv.iter().copied()).unwrap_or((0.0, 1.0));

    let mut out = String::new();
    header(&mut out, &format!("{vname} over ({xname}, {yname})"), echo);
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let (cw, ch) = (pw / xs.len() as f64, ph / ys.len() as f64);
    for k in 0..result.rows.len() {
        let cx = xs.iter().position(|&x| x == xv[k]).unwrap_or(0);
        let cy = ys.iter().position(|&y| y == yv[k]).unwrap_or(0);
        let fill = if vv[k].is_finite() {
            color((vv[k] - vr.0) / (vr.1 - vr.0))
        } else {
            "#cccccc".into()
        };
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{fill}"/>"#,
            LEFT + cx as f64 * cw,
            TOP + (ys.len() - 1 - cy) as f64 * ch,
            cw + 0.3,
            ch + 0.3
        );
    }
    // tick labels span cell centres
    let half_x = (xr.1 - xr.0) / (2.0 * (xs.len() - 1) as f64);
    let half_y = (yr.1 - yr.0) / (2.0 * (ys.len() - 1) as f64);
    axes_frame(&mut out, &xname, &yname, (xr.0 - half_x, xr.1 + half_x), (yr.0 - half_y, yr.1 + half_y));

    let bx = WIDTH - RIGHT + 30.0;
    let steps = 50;
    for s in 0..steps {
        let f = s as f64 / (steps - 1) as f64;
        let _ = writeln!(
            out,
            r#"<rect x="{bx}" y="{:.2}" width="20" height="{:.2}" fill="{}"/>"#,
            TOP + ph - (s + 1) as f64 * ph / steps as f64,
            ph / steps as f64 + 0.3,
            color(f)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}">{}</text><text x="{}" y="{}">{}</text><text x="{bx}" y="{}">{}</text>"#,
        bx + 26.0,
        TOP + 10.0,
        tick(vr.1),
        bx + 26.0,
        TOP + ph,
        tick(vr.0),
        TOP - 8.0,
        escape(&vname)
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// One polyline per quantity column and per distinct value of the columns
/// left of the axis (as added by `SweepResult::with_constants`).
pub fn lines(result: &SweepResult, echo: &BTreeMap<String, String>) -> Result<String> {
    if result.axes.len() != 1 {
        return Err(TriqError::Usage(format!(
            "a line plot needs a one-axis result, got {} axes",
            result.axes.len()
        )));
    }
    if result.rows.len() < 2 {
        return Err(TriqError::Usage("a line plot needs more than one row".into()));
    }
    let xname = result.axes[0].name.to_string();
    let xi = column_index(result, &xname)?;
    let label_cols = 0..xi;
    let value_cols: Vec<usize> = (xi + 1..result.columns.len()).collect();
    if value_cols.is_empty() {
        return Err(TriqError::Usage("no quantity to plot".into()));
    }

    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for row in &result.rows {
        let group: Vec<String> = label_cols
            .clone()
            .map(|k| format!("{}={}", result.columns[k], row.values[k].map_or("-".into(), tick)))
            .collect();
        let Some(x) = row.values[xi] else { continue };
        for &vc in &value_cols {
            let mut name = group.join(" ");
            if value_cols.len() > 1 || name.is_empty() {
                if !name.is_empty() {
                    name.push(' ');
                }
                name.push_str(&result.columns[vc]);
            }
            let pos = match series.iter().position(|(n, _)| *n == name) {
                Some(p) => p,
                None => {
                    series.push((name, Vec::new()));
                    series.len() - 1
                }
            };
            if let Some(y) = row.values[vc].filter(|y| y.is_finite()) {
                series[pos].1.push((x, y));
            }
        }
    }
    let xr = range(series.iter().flat_map(|s| s.1.iter().map(|p| p.0))).unwrap_or((0.0, 1.0));
    let yr = range(series.iter().flat_map(|s| s.1.iter().map(|p| p.1))).unwrap_or((0.0, 1.0));
    let pad = 0.05 * (yr.1 - yr.0);
    let yr = (yr.0 - pad, yr.1 + pad);

    let mut out = String::new();
    let ylabel = if value_cols.len() == 1 {
        result.columns[value_cols[0]].clone()
    } else {
        "value".into()
    };
    header(&mut out, &format!("{ylabel} vs {xname}"), echo);
    axes_frame(&mut out, &xname, &ylabel, xr, yr);
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    for (k, (name, pts)) in series.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let dash = if k >= PALETTE.len() { r#" stroke-dasharray="5 3""# } else { "" };
        let coords: Vec<String> = pts
            .iter()
            .map(|(x, y)| {
                format!(
                    "{:.2},{:.2}",
                    LEFT + (x - xr.0) / (xr.1 - xr.0) * pw,
                    TOP + ph - (y - yr.0) / (yr.1 - yr.0) * ph
                )
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.6"{dash} points="{}"/>"#,
            coords.join(" ")
        );
        let ly = TOP + 10.0 + 18.0 * k as f64;
        let lx = WIDTH - RIGHT + 12.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{colour}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            lx + 20.0,
            lx + 25.0,
            ly + 4.0,
            escape(name)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn svg_string(result: &SweepResult, kind: SvgKind, echo: &BTreeMap<String, String>) -> Result<String> {
    match kind {
        SvgKind::Heatmap => heatmap(result, echo),
        SvgKind::Lines => lines(result, echo),
    }
}

pub fn emit_svg(result: &SweepResult, kind: SvgKind, path: &Path) -> Result<()> {
    let text = svg_string(result, kind, &BTreeMap::new())?;
    std::fs::write(path, text)
        .map_err(|e| TriqError::InvalidParameter(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{run_sweep, Axis, AxisName, Quantity, SweepSpec};

    fn grid() -> SweepResult {
        let mut spec = SweepSpec::new("j:-2:2:3".parse().unwrap(), vec![Quantity::T3]);
        spec.axis2 = Some("eta:0.5:1.5:3".parse().unwrap());
        run_sweep(&spec, 1).unwrap()
    }

    #[test]
    fn heatmap_is_deterministic() {
        let a = svg_string(&grid(), SvgKind::Heatmap, &BTreeMap::new()).unwrap();
        let b = svg_string(&grid(), SvgKind::Heatmap, &BTreeMap::new()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<rect").count(), 2 + 9 + 50);
        assert!(a.ends_with("</svg>\n"));
    }

    #[test]
    fn kind_must_match_axes() {
        assert!(matches!(
            svg_string(&grid(), SvgKind::Lines, &BTreeMap::new()),
            Err(TriqError::Usage(_))
        ));
        let one = run_sweep(&SweepSpec::new(Axis::point(AxisName::J, 6.0), vec![Quantity::T3]), 1).unwrap();
        assert!(matches!(
            svg_string(&one, SvgKind::Heatmap, &BTreeMap::new()),
            Err(TriqError::Usage(_))
        ));
    }

    #[test]
    fn grouped_lines() {
        let curve = |j: f64| {
            let mut spec = SweepSpec::new("T:0:1:5".parse().unwrap(), vec![Quantity::ThermalT3]);
            spec.fixed = crate::CouplingConfig::one_param(j, 1.0);
            run_sweep(&spec, 1).unwrap().with_constants(&[("j", j)])
        };
        let r = crate::sweep::concat(vec![curve(2.0), curve(-2.0)]).unwrap();
        let s = svg_string(&r, SvgKind::Lines, &BTreeMap::new()).unwrap();
        assert_eq!(s.matches("<polyline").count(), 2);
        assert!(s.contains(">j=-2<"));
    }

    #[test]
    fn colour_ends() {
        assert_eq!(color(0.0), "#440154");
        assert_eq!(color(1.0), "#fde725");
    }
}
