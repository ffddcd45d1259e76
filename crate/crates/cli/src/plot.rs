//! Hand-written SVG scatter plots on the unit square.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use hilbtex::ordinal::factorial;
use hilbtex::quantifiers::ComplexityBounds;

use crate::args::{GroupKey, Plane};
use crate::error::CliError;
use crate::table::AnalysisRow;

const WIDTH: f64 = 780.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const TOP: f64 = 30.0;
const SIZE: f64 = 500.0;
const BOUND_POINTS: usize = 201;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

fn px(h: f64) -> f64 {
    LEFT + h.clamp(0.0, 1.0) * SIZE
}

fn py(v: f64) -> f64 {
    TOP + (1.0 - v.clamp(0.0, 1.0)) * SIZE
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Strips a trailing `_s<digits>` from the file stem of `source`.
pub fn series_of(source: &str) -> String {
    let stem = Path::new(source)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    match stem.rsplit_once("_s") {
        Some((head, tail)) if !tail.is_empty() && tail.bytes().all(|b| b.is_ascii_digit()) => {
            head.to_string()
        }
        _ => stem,
    }
}

pub fn group_of(row: &AnalysisRow, key: GroupKey) -> String {
    match key {
        GroupKey::Label => row.label.clone(),
        GroupKey::Source => row.source.clone(),
        GroupKey::Method => row.method.clone(),
        GroupKey::D => row.dim.to_string(),
        GroupKey::Tau => row.tau.to_string(),
        GroupKey::Transform => row.transform.clone(),
        GroupKey::Series => series_of(&row.source),
    }
}

/// Mean and sample standard deviation (zero for a single value).
pub fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (mean, 0.0);
    }
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn polyline(out: &mut String, pts: &[(f64, f64)], style: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|&(h, c)| format!("{:.2},{:.2}", px(h), py(c)))
        .collect();
    writeln!(
        out,
        r#"<polyline fill="none" {style} points="{}"/>"#,
        coords.join(" ")
    )
    .unwrap();
}

pub fn render(
    rows: &[AnalysisRow],
    plane: Plane,
    group: Option<GroupKey>,
    dim: Option<usize>,
) -> Result<String, CliError> {
    let y_of = |r: &AnalysisRow| match plane {
        Plane::Cecp => r.complexity,
        Plane::Fecp => r.fisher,
    };
    let y_title = match plane {
        Plane::Cecp => "Statistical complexity C",
        Plane::Fecp => "Fisher information F",
    };
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{SIZE}" height="{SIZE}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let (x, y) = (px(t), py(t));
        let base = TOP + SIZE;
        writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{base}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            base + 5.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{t:.1}</text>"#,
            base + 20.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/>"#,
            LEFT - 5.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{t:.1}</text>"#,
            LEFT - 8.0,
            y + 4.0
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">Normalized permutation entropy H</text>"#,
        LEFT + SIZE / 2.0,
        TOP + SIZE + 45.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text transform="translate(25 {:.2}) rotate(-90)" text-anchor="middle">{y_title}</text>"#,
        TOP + SIZE / 2.0
    )
    .unwrap();

    if plane == Plane::Cecp {
        let mut dims: Vec<usize> = rows.iter().map(|r| r.dim).collect();
        dims.extend(dim);
        dims.sort_unstable();
        dims.dedup();
        for d in dims {
            let b = ComplexityBounds::on_entropy_grid(factorial(d) as usize, BOUND_POINTS)?;
            writeln!(s, r#"<g class="bounds" data-dim="{d}">"#).unwrap();
            polyline(&mut s, &b.max, r#"stroke="gray""#);
            polyline(&mut s, &b.min, r#"stroke="gray" stroke-dasharray="4 3""#);
            writeln!(s, "</g>").unwrap();
        }
    }

    let mut groups: BTreeMap<String, Vec<&AnalysisRow>> = BTreeMap::new();
    for r in rows {
        let key = group.map(|g| group_of(r, g)).unwrap_or_default();
        groups.entry(key).or_default().push(r);
    }
    for (i, (name, members)) in groups.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        writeln!(
            s,
            r#"<g class="points" data-group="{}" fill="{color}">"#,
            escape(name)
        )
        .unwrap();
        for r in members {
            writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2.5"><title>{}</title></circle>"#,
                px(r.entropy),
                py(y_of(r)),
                escape(&r.label)
            )
            .unwrap();
        }
        writeln!(s, "</g>").unwrap();
        if group.is_none() {
            continue;
        }
        let hs: Vec<f64> = members.iter().map(|r| r.entropy).collect();
        let ys: Vec<f64> = members.iter().map(|r| y_of(r)).collect();
        let (mh, sh) = mean_std(&hs);
        let (my, sy) = mean_std(&ys);
        writeln!(
            s,
            r#"<g class="errorbar" data-group="{}" stroke="{color}" stroke-width="1.5">"#,
            escape(name)
        )
        .unwrap();
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            px(mh - sh),
            py(my),
            px(mh + sh),
            py(my)
        )
        .unwrap();
        writeln!(
            s,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            px(mh),
            py(my - sy),
            px(mh),
            py(my + sy)
        )
        .unwrap();
        writeln!(
            s,
            r#"<rect x="{:.2}" y="{:.2}" width="6" height="6" fill="{color}"/>"#,
            px(mh) - 3.0,
            py(my) - 3.0
        )
        .unwrap();
        writeln!(s, "</g>").unwrap();
        let ly = TOP + 10.0 + 18.0 * i as f64;
        writeln!(
            s,
            r#"<rect x="{:.2}" y="{:.2}" width="10" height="10" fill="{color}"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            LEFT + SIZE + 20.0,
            ly,
            LEFT + SIZE + 36.0,
            ly + 9.0,
            escape(name)
        )
        .unwrap();
    }
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_strips_seed_suffix() {
        assert_eq!(series_of("out/fbs_h0.5_s12.pgm"), "fbs_h0.5");
        assert_eq!(series_of("D15.pgm"), "D15");
        assert_eq!(series_of("a_s.pgm"), "a_s");
    }

    #[test]
    fn sample_statistics() {
        assert_eq!(mean_std(&[2.0]), (2.0, 0.0));
        let (m, s) = mean_std(&[1.0, 2.0, 3.0]);
        assert_eq!((m, s), (2.0, 1.0));
    }

    #[test]
    fn empty_plot_has_axes_only() {
        let svg = render(&[], Plane::Fecp, None, None).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("<circle") && !svg.contains("polyline"));
        assert!(svg.contains("Fisher information F"));
    }
}
