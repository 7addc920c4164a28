//! Minimal SVG 1.1 emitters for zero plots and sweep heat maps.

use std::fmt::Write;

use quadzero::{OrientationClass, SweepGrid, Violation, ZeroRecord};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    );
}

fn color(class: OrientationClass) -> &'static str {
    match class {
        OrientationClass::SensePreserving => "#1f77b4",
        OrientationClass::SenseReversing => "#d62728",
        OrientationClass::Singular => "#2ca02c",
    }
}

/// Scatter plot of the zeros with the bounding circle and, when given, the
/// critical circle. `extent` is the half-width of the plotted square.
pub fn zeros_plot(zeros: &[ZeroRecord], bound: Option<f64>, critical: Option<f64>, extent: f64) -> String {
    let scale = (SIZE / 2.0 - MARGIN) / extent;
    let center = SIZE / 2.0;
    let px = |x: f64| center + x * scale;
    let py = |y: f64| center - y * scale;

    let mut out = String::new();
    header(&mut out, SIZE, SIZE);
    let _ = writeln!(
        out,
        r##"<g stroke="#cccccc" stroke-width="1"><line x1="0" y1="{center}" x2="{SIZE}" y2="{center}"/><line x1="{center}" y1="0" x2="{center}" y2="{SIZE}"/></g>"##
    );
    if let Some(r) = bound.filter(|r| r.is_finite()) {
        let _ = writeln!(
            out,
            r##"<circle cx="{center}" cy="{center}" r="{:.3}" fill="none" stroke="black" stroke-width="1.5"><title>bounding circle R = {r}</title></circle>"##,
            r * scale
        );
    }
    if let Some(r) = critical {
        let _ = writeln!(
            out,
            r##"<circle cx="{center}" cy="{center}" r="{:.3}" fill="none" stroke="#9467bd" stroke-width="1.5" stroke-dasharray="6,4"><title>critical circle M = {r}</title></circle>"##,
            r * scale
        );
    }
    out.push_str("<g stroke=\"black\" stroke-width=\"0.5\">\n");
    for z in zeros {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="{}"><title>{} {}i ({})</title></circle>"#,
            px(z.location.re),
            py(z.location.im),
            color(z.orientation),
            z.location.re,
            z.location.im,
            z.orientation.as_str()
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// One cell per grid point, shaded by zero count. Proven-bound violations get a
/// red outline, unsolved cells are grey.
pub fn sweep_heatmap(grid: &SweepGrid) -> String {
    let (nb, nc) = (grid.spec.b_axis.steps, grid.spec.c_axis.steps);
    let cell = ((SIZE - 2.0 * MARGIN) / nb.max(nc) as f64).max(2.0);
    let width = 2.0 * MARGIN + cell * nb as f64;
    let height = 2.0 * MARGIN + cell * nc as f64;
    let max_count = grid.cells.iter().filter_map(|c| c.count).max().unwrap_or(1).max(1) as f64;

    let mut out = String::new();
    header(&mut out, width, height);
    for (idx, c) in grid.cells.iter().enumerate() {
        let (i, j) = (idx / nc, idx % nc);
        let x = MARGIN + cell * i as f64;
        // c grows upwards
        let y = MARGIN + cell * (nc - 1 - j) as f64;
        let fill = match c.count {
            Some(count) => {
                let t = count as f64 / max_count;
                let level = (255.0 * (1.0 - t)).round() as u8;
                format!("rgb({level},{level},255)")
            }
            None => "#999999".to_string(),
        };
        let stroke = if c.violation == Violation::Proven {
            r#" stroke="red" stroke-width="2""#
        } else {
            ""
        };
        let label = c.count.map_or("unsolved".to_string(), |n| n.to_string());
        let _ = writeln!(
            out,
            r#"<rect x="{x:.3}" y="{y:.3}" width="{cell:.3}" height="{cell:.3}" fill="{fill}"{stroke}><title>b={} c={} count={label}</title></rect>"#,
            c.b, c.c
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{:.3}" font-family="sans-serif" font-size="12">b →</text>"#,
        height - MARGIN / 3.0
    );
    let _ = writeln!(
        out,
        r#"<text x="4" y="{:.3}" font-family="sans-serif" font-size="12">c ↑</text>"#,
        MARGIN
    );
    out.push_str("</svg>\n");
    out
}
