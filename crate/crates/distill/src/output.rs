//! CSV telemetry and SVG line plots.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use supersinglet::protocol::IterationRecord;

pub const CSV_HEADER: &str = "iteration,fidelity,success_probability,trace_residual,engine";

/// UTF-8, LF line endings, 17 significant digits per float.
pub fn render_csv(records: &[IterationRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{:.16e},{:.16e},{:.16e},{}\n",
            r.iteration, r.fidelity, r.success_probability, r.trace_residual, r.engine
        ));
    }
    out
}

pub fn write_csv(path: &Path, records: &[IterationRecord]) -> Result<()> {
    let mut file =
        std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    file.write_all(render_csv(records).as_bytes())
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const MARGIN_LEFT: f64 = 62.0;
const MARGIN_RIGHT: f64 = 18.0;
const MARGIN_TOP: f64 = 18.0;
const MARGIN_BOTTOM: f64 = 48.0;

/// The success-probability series is scaled by this factor for visibility,
/// and the legend says so.
pub const PROBABILITY_SCALE: f64 = 10.0;

struct Frame {
    x_min: f64,
    x_max: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        let span = (self.x_max - self.x_min).max(1e-9);
        MARGIN_LEFT + (v - self.x_min) / span * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        let usable = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        HEIGHT - MARGIN_BOTTOM - v / self.y_max * usable
    }
}

fn polyline(points: &[(f64, f64)], color: &str) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect();
    format!(
        "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        coords.join(" ")
    )
}

fn markers(points: &[(f64, f64)], color: &str) -> String {
    points
        .iter()
        .map(|(x, y)| format!("  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"{color}\"/>\n"))
        .collect()
}

/// A self-contained SVG with the fidelity series and the success probability
/// scaled ×10, axis labels, and a legend naming the scale factor.
pub fn render_plot(records: &[IterationRecord]) -> Result<String> {
    if records.is_empty() {
        bail!("cannot plot an empty record list");
    }
    let fid: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.iteration as f64, r.fidelity))
        .collect();
    let psc: Vec<(f64, f64)> = records
        .iter()
        .map(|r| {
            (
                r.iteration as f64,
                PROBABILITY_SCALE * r.success_probability,
            )
        })
        .collect();

    let x_max = records.last().unwrap().iteration as f64;
    let y_max = fid
        .iter()
        .chain(psc.iter())
        .map(|&(_, y)| y)
        .fold(1.0_f64, f64::max)
        * 1.05;
    let frame = Frame {
        x_min: 0.0,
        x_max: x_max.max(1.0),
        y_max,
    };

    let to_px = |pts: &[(f64, f64)]| -> Vec<(f64, f64)> {
        pts.iter().map(|&(x, y)| (frame.x(x), frame.y(y))).collect()
    };
    let fid_px = to_px(&fid);
    let psc_px = to_px(&psc);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Axes.
    let x0 = frame.x(frame.x_min);
    let x1 = frame.x(frame.x_max);
    let y0 = frame.y(0.0);
    let y1 = frame.y(frame.y_max / 1.05);
    svg.push_str(&format!(
        "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x0:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        frame.y(frame.y_max)
    ));

    // Integer x ticks, thinned to at most ten.
    let step = ((x_max as usize) / 10 + 1).max(1);
    let mut it = 0usize;
    while it as f64 <= x_max.max(0.0) {
        let px = frame.x(it as f64);
        svg.push_str(&format!(
            "  <line x1=\"{px:.2}\" y1=\"{y0:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            y0 + 4.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{px:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">{it}</text>\n",
            y0 + 16.0
        ));
        it += step;
    }
    // Five y ticks.
    for k in 0..=4 {
        let v = frame.y_max / 1.05 * k as f64 / 4.0;
        let py = frame.y(v);
        svg.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{x0:.2}\" y2=\"{py:.2}\" stroke=\"black\"/>\n",
            x0 - 4.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"end\">{v:.2}</text>\n",
            x0 - 7.0,
            py + 4.0
        ));
    }
    let _ = y1;

    // Axis labels.
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">iteration</text>\n",
        (x0 + x1) / 2.0,
        HEIGHT - 10.0
    ));
    svg.push_str(&format!(
        "  <text x=\"16\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">value</text>\n",
        (frame.y(0.0) + frame.y(frame.y_max)) / 2.0,
        (frame.y(0.0) + frame.y(frame.y_max)) / 2.0
    ));

    // Series: polylines only when there is a line to draw.
    if records.len() >= 2 {
        svg.push_str(&polyline(&fid_px, "steelblue"));
        svg.push_str(&polyline(&psc_px, "darkorange"));
    }
    svg.push_str(&markers(&fid_px, "steelblue"));
    svg.push_str(&markers(&psc_px, "darkorange"));

    // Legend.
    let lx = x1 - 220.0;
    svg.push_str(&format!(
        "  <rect x=\"{lx:.2}\" y=\"{MARGIN_TOP}\" width=\"12\" height=\"3\" fill=\"steelblue\"/>\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">fidelity</text>\n",
        lx + 18.0,
        MARGIN_TOP + 5.0
    ));
    svg.push_str(&format!(
        "  <rect x=\"{lx:.2}\" y=\"{:.2}\" width=\"12\" height=\"3\" fill=\"darkorange\"/>\n",
        MARGIN_TOP + 16.0
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">success probability ×{PROBABILITY_SCALE}</text>\n",
        lx + 18.0,
        MARGIN_TOP + 21.0
    ));

    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn write_plot(path: &Path, records: &[IterationRecord]) -> Result<()> {
    let svg = render_plot(records)?;
    std::fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
