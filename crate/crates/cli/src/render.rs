//! CSV and SVG emission. The SVG is always rendered from the same arrays
//! that went into the CSV, so the two outputs cannot drift apart.

use std::fmt::Write as _;

/// Nine significant digits, the CSV-wide numeric format.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000e0".into();
    }
    format!("{x:.8e}")
}

/// Render a CSV table from a header and column-major data.
pub fn csv_table(header: &[&str], columns: &[&[f64]]) -> String {
    let rows = columns.first().map_or(0, |c| c.len());
    debug_assert!(columns.iter().all(|c| c.len() == rows));
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for i in 0..rows {
        let line: Vec<String> = columns.iter().map(|c| num(c[i])).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 54.0;

/// Stroke colors cycled across series, darkest first.
const STROKES: [&str; 4] = ["#1f3b73", "#b5442c", "#3c7a3c", "#7a3c7a"];

fn coord(v: f64) -> String {
    format!("{v:.2}")
}

/// One or more (label, y-values) series over a shared x grid, as a
/// standalone SVG line plot.
pub fn svg_lines(title: &str, xs: &[f64], series: &[(&str, &[f64])]) -> String {
    let (x_lo, x_hi) = span(xs);
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for (_, ys) in series {
        let (lo, hi) = span(ys);
        y_lo = y_lo.min(lo);
        y_hi = y_hi.max(hi);
    }
    if y_lo == y_hi {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    let sx = |x: f64| MARGIN + (x - x_lo) / (x_hi - x_lo) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = svg_open(title);
    axes(&mut svg, x_lo, x_hi, y_lo, y_hi);
    for (k, (label, ys)) in series.iter().enumerate() {
        let stroke = STROKES[k % STROKES.len()];
        let points: Vec<String> = xs
            .iter()
            .zip(ys.iter())
            .map(|(&x, &y)| format!("{},{}", coord(sx(x)), coord(sy(y))))
            .collect();
        writeln!(
            svg,
            "  <polyline fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\" points=\"{}\"/>",
            points.join(" ")
        )
        .unwrap();
        writeln!(
            svg,
            "  <text x=\"{}\" y=\"{}\" fill=\"{stroke}\" font-size=\"12\">{label}</text>",
            coord(WIDTH - MARGIN - 110.0),
            coord(MARGIN + 16.0 * (k as f64 + 1.0)),
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

/// Row-major grid (rows = ys, columns = xs) as a standalone SVG heatmap
/// with values binned inside the given level window.
pub fn svg_heatmap(
    title: &str,
    xs: &[f64],
    ys: &[f64],
    values: &[f64],
    levels: (f64, f64),
) -> String {
    let cw = (WIDTH - 2.0 * MARGIN) / xs.len() as f64;
    let ch = (HEIGHT - 2.0 * MARGIN) / ys.len() as f64;
    let mut svg = svg_open(title);
    axes(&mut svg, span(xs).0, span(xs).1, span(ys).0, span(ys).1);
    for (j, _) in ys.iter().enumerate() {
        for (i, _) in xs.iter().enumerate() {
            let v = values[j * xs.len() + i];
            let t = ((v - levels.0) / (levels.1 - levels.0)).clamp(0.0, 1.0);
            // light-to-dark blue ramp, 8 discrete contour bands
            let band = (t * 7.0).round() / 7.0;
            let shade = (235.0 - band * 180.0) as u32;
            writeln!(
                svg,
                "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"rgb({},{},235)\"/>",
                coord(MARGIN + i as f64 * cw),
                coord(HEIGHT - MARGIN - (j as f64 + 1.0) * ch),
                coord(cw + 0.5),
                coord(ch + 0.5),
                shade,
                shade,
            )
            .unwrap();
        }
    }
    svg.push_str("</svg>\n");
    svg
}

fn svg_open(title: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n  \
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n  \
         <title>{}</title>\n  \
         <text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        escape(title),
        coord(WIDTH / 2.0),
        escape(title),
    )
}

fn axes(svg: &mut String, x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) {
    writeln!(
        svg,
        "  <rect x=\"{m}\" y=\"{m}\" width=\"{w}\" height=\"{h}\" fill=\"none\" stroke=\"black\"/>",
        m = coord(MARGIN),
        w = coord(WIDTH - 2.0 * MARGIN),
        h = coord(HEIGHT - 2.0 * MARGIN),
    )
    .unwrap();
    for (x, anchor, label) in [
        (MARGIN, "start", num(x_lo)),
        (WIDTH - MARGIN, "end", num(x_hi)),
    ] {
        writeln!(
            svg,
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"{anchor}\" font-size=\"11\">{label}</text>",
            coord(x),
            coord(HEIGHT - MARGIN + 16.0),
        )
        .unwrap();
    }
    for (y, label) in [(HEIGHT - MARGIN, num(y_lo)), (MARGIN + 10.0, num(y_hi))] {
        writeln!(
            svg,
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{label}</text>",
            coord(MARGIN - 6.0),
            coord(y),
        )
        .unwrap();
    }
}

fn span(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
