//! Static SVG pictures of combs and contours. Coordinates are printed with two
//! decimals so the same input always gives the same bytes.

use std::fmt::Write as _;

use anyhow::Result;
use combmetric::{Comb, Contour};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 20.0;

struct Frame {
    lo: f64,
    hi: f64,
    top: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        let span = if self.hi > self.lo { self.hi - self.lo } else { 1.0 };
        MARGIN + (x - self.lo) / span * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, y: f64) -> f64 {
        let top = if self.top > 0.0 { self.top } else { 1.0 };
        HEIGHT - MARGIN - y / top * (HEIGHT - 2.0 * MARGIN)
    }
}

fn header() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
        w = WIDTH,
        h = HEIGHT
    )
}

fn line(out: &mut String, x1: f64, y1: f64, x2: f64, y2: f64, class: &str) {
    let _ = writeln!(
        out,
        "<line class=\"{class}\" x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\"/>"
    );
}

fn is_comb(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("comb"))
}

/// Draws a comb file or a contour CSV, detected from the first line.
pub fn render(text: &str, dendrogram: bool, level: Option<f64>) -> Result<String> {
    if is_comb(text) {
        Ok(comb_svg(&Comb::parse(text)?, dendrogram))
    } else {
        Ok(contour_svg(&Contour::parse_csv(text)?, level))
    }
}

pub fn comb_svg(comb: &Comb, dendrogram: bool) -> String {
    let frame = Frame {
        lo: comb.lo(),
        hi: comb.hi(),
        top: comb.max_height(),
    };
    let mut out = header();
    out.push_str(
        "<style>.baseline{stroke:black;stroke-width:1}.tooth{stroke:black;stroke-width:1.5}\
         .tree{stroke:#c0392b;stroke-width:1;fill:none}</style>\n",
    );
    let base = frame.y(0.0);
    line(&mut out, frame.x(comb.lo()), base, frame.x(comb.hi()), base, "baseline");
    for t in comb.teeth() {
        let x = frame.x(t.position);
        line(&mut out, x, base, x, frame.y(t.height), "tooth");
    }
    if dendrogram {
        draw_tree(&mut out, comb, &frame);
    }
    out.push_str("</svg>\n");
    out
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// The tree of the comb: leaves are the gaps between teeth, and tooth `i`
/// joins the clusters on either side of it at its height, lowest teeth first.
fn draw_tree(out: &mut String, comb: &Comb, frame: &Frame) {
    let teeth = comb.teeth();
    let mut edges = Vec::with_capacity(teeth.len() + 1);
    edges.push(comb.lo());
    edges.extend(teeth.iter().map(|t| t.position));
    edges.push(comb.hi());
    // per cluster root: drawing abscissa and height of its top
    let mut top: Vec<(f64, f64)> = edges.windows(2).map(|w| (0.5 * (w[0] + w[1]), 0.0)).collect();
    let mut parent: Vec<usize> = (0..top.len()).collect();
    let mut order: Vec<usize> = (0..teeth.len()).collect();
    order.sort_by(|&a, &b| teeth[a].height.total_cmp(&teeth[b].height).then(a.cmp(&b)));
    for i in order {
        let h = teeth[i].height;
        let (a, b) = (find(&mut parent, i), find(&mut parent, i + 1));
        let (xa, ya) = top[a];
        let (xb, yb) = top[b];
        let (fa, fb, fh) = (frame.y(ya), frame.y(yb), frame.y(h));
        let (pa, pb) = (frame.x(xa), frame.x(xb));
        let _ = writeln!(
            out,
            "<path class=\"tree\" d=\"M{pa:.2},{fa:.2} L{pa:.2},{fh:.2} L{pb:.2},{fh:.2} L{pb:.2},{fb:.2}\"/>"
        );
        parent[b] = a;
        top[a] = (0.5 * (xa + xb), h);
    }
}

pub fn contour_svg(h: &Contour, level: Option<f64>) -> String {
    let points = h.breakpoints();
    let frame = Frame {
        lo: points.first().map_or(0.0, |p| p.time),
        hi: h.end(),
        top: h.max().max(level.unwrap_or(0.0)),
    };
    let mut out = header();
    out.push_str(
        "<style>.baseline{stroke:black;stroke-width:1}.contour{stroke:black;stroke-width:1.5;fill:none}\
         .level{stroke:#2471a3;stroke-width:1;stroke-dasharray:6 4}</style>\n",
    );
    let base = frame.y(0.0);
    line(&mut out, frame.x(frame.lo), base, frame.x(frame.hi), base, "baseline");
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let x = frame.x(p.time);
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{cmd}{x:.2},{:.2} ", frame.y(p.left));
        if p.value != p.left {
            let _ = write!(d, "L{x:.2},{:.2} ", frame.y(p.value));
        }
    }
    let _ = writeln!(out, "<path class=\"contour\" d=\"{}\"/>", d.trim_end());
    if let Some(t) = level {
        let y = frame.y(t);
        line(&mut out, frame.x(frame.lo), y, frame.x(frame.hi), y, "level");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use combmetric::Tooth;

    #[test]
    fn empty_comb_is_baseline_only() {
        let svg = comb_svg(&Comb::empty(0.0, 1.0).unwrap(), true);
        assert_eq!(svg.matches("<line").count(), 1);
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn tree_has_one_join_per_tooth() {
        let comb = Comb::new(
            0.0,
            4.0,
            vec![Tooth::new(1.0, 1.0), Tooth::new(2.0, 3.0), Tooth::new(3.0, 2.0)],
        )
        .unwrap();
        let svg = comb_svg(&comb, true);
        assert_eq!(svg.matches("class=\"tooth\"").count(), 3);
        assert_eq!(svg.matches("class=\"tree\"").count(), 3);
        // the tallest tooth joins the clusters centred at 1 and 3
        assert!(svg.contains("d=\"M210.00,260.00 L210.00,20.00 L590.00,20.00 L590.00,140.00\""));
    }
}
