//! Deterministic SVG pictures of planar algebraic sets.
//!
//! All clipping is done in exact rationals; floats appear only when
//! coordinates are formatted.

use std::collections::BTreeSet;
use std::fmt::Write;

use trop_core::arrangement::{Arrangement, Shape, Sign};
use trop_core::rational::int;
use trop_core::{CellSet, Error, LayeredAlgebraicSet, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Style {
    pub stroke: &'static str,
    pub width: u32,
    pub fill: &'static str,
}

#[derive(Debug, Clone)]
pub struct RenderSpec {
    /// `[xmin, xmax, ymin, ymax]`.
    pub viewport: [Rational; 4],
    /// Pixels per unit.
    pub scale: u32,
    /// Styles cycled over the sets.
    pub styles: Vec<Style>,
    pub highlight: Style,
    /// Rays are cut at this parameter length before viewport clipping.
    pub ray_length: Option<Rational>,
    /// Faint lines at integer coordinates.
    pub grid: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        let style = |stroke, fill| Style { stroke, width: 2, fill };
        RenderSpec {
            viewport: [int(-5), int(5), int(-5), int(5)],
            scale: 40,
            styles: vec![
                style("black", "#d3d3d3"),
                style("red", "#f4c2c2"),
                style("blue", "#c2d4f4"),
                style("green", "#c2f4c8"),
                style("purple", "#e0c2f4"),
            ],
            highlight: Style { stroke: "orange", width: 6, fill: "orange" },
            ray_length: None,
            grid: true,
        }
    }
}

/// Something to draw.
#[derive(Debug, Clone, Copy)]
pub enum Drawable<'a> {
    Plain(&'a CellSet),
    Layered(&'a LayeredAlgebraicSet),
}

type P = [Rational; 2];

struct Canvas<'a> {
    spec: &'a RenderSpec,
}

impl Canvas<'_> {
    fn inside(&self, p: &P) -> bool {
        let [x0, x1, y0, y1] = &self.spec.viewport;
        *x0 <= p[0] && p[0] <= *x1 && *y0 <= p[1] && p[1] <= *y1
    }

    /// Clips `p + t·d` for `t ∈ [lo, hi]` (`hi = None` is unbounded).
    fn clip(&self, p: &P, d: &P, lo: Option<Rational>, hi: Option<Rational>) -> Option<(P, P)> {
        let [x0, x1, y0, y1] = &self.spec.viewport;
        let bounds = [(x0, x1), (y0, y1)];
        let (mut t0, mut t1) = (lo, hi);
        for k in 0..2 {
            let (min, max) = bounds[k];
            if d[k] == int(0) {
                if p[k] < *min || p[k] > *max {
                    return None;
                }
                continue;
            }
            let a = (min - p[k]) / d[k];
            let b = (max - p[k]) / d[k];
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            t0 = Some(t0.map_or(a, |t| t.max(a)));
            t1 = Some(t1.map_or(b, |t| t.min(b)));
        }
        let (t0, t1) = (t0?, t1?);
        if t0 >= t1 {
            return None;
        }
        let at = |t: Rational| [p[0] + t * d[0], p[1] + t * d[1]];
        Some((at(t0), at(t1)))
    }

    fn edge(&self, shape: &Shape) -> Option<(P, P)> {
        let two = |v: &[Rational]| [v[0], v[1]];
        match shape {
            Shape::Segment(a, b) => {
                let (a, b) = (two(a), two(b));
                self.clip(&a, &[b[0] - a[0], b[1] - a[1]], Some(int(0)), Some(int(1)))
            }
            Shape::Ray { origin, direction } => self.clip(&two(origin), &two(direction), Some(int(0)), self.spec.ray_length),
            Shape::Line { point, direction } => self.clip(&two(point), &two(direction), None, None),
            _ => None,
        }
    }

    /// Closure of a 2-cell cut to the viewport, counterclockwise.
    fn polygon(&self, arr: &Arrangement, c: usize) -> Vec<P> {
        let [x0, x1, y0, y1] = &self.spec.viewport;
        // Constraints a·x + b·y ≥ r.
        let mut cons: Vec<(Rational, Rational, Rational)> = vec![
            (int(1), int(0), *x0),
            (int(-1), int(0), -x1),
            (int(0), int(1), *y0),
            (int(0), int(-1), -y1),
        ];
        for (h, s) in arr.closure_halfspaces(c) {
            let k = match s {
                Sign::Pos => int(1),
                Sign::Neg => int(-1),
                Sign::Zero => continue,
            };
            cons.push((k * h.normal[0], k * h.normal[1], k * h.offset));
        }
        let ok = |p: &P| cons.iter().all(|(a, b, r)| *a * p[0] + *b * p[1] >= *r);
        let mut pts: BTreeSet<P> = BTreeSet::new();
        for i in 0..cons.len() {
            for j in i + 1..cons.len() {
                let (a1, b1, r1) = cons[i];
                let (a2, b2, r2) = cons[j];
                let det = a1 * b2 - a2 * b1;
                if det == int(0) {
                    continue;
                }
                let p = [(r1 * b2 - r2 * b1) / det, (a1 * r2 - a2 * r1) / det];
                if ok(&p) {
                    pts.insert(p);
                }
            }
        }
        let mut pts: Vec<P> = pts.into_iter().collect();
        if pts.len() < 3 {
            return Vec::new();
        }
        let n = int(pts.len() as i128);
        let center = [pts.iter().map(|p| p[0]).sum::<Rational>() / n, pts.iter().map(|p| p[1]).sum::<Rational>() / n];
        let rel = |p: &P| [p[0] - center[0], p[1] - center[1]];
        let half = |u: &P| u[1] < int(0) || (u[1] == int(0) && u[0] < int(0));
        pts.sort_by(|p, q| {
            let (u, v) = (rel(p), rel(q));
            half(&u).cmp(&half(&v)).then_with(|| (v[0] * u[1]).cmp(&(u[0] * v[1])))
        });
        pts
    }

    fn px(&self, p: &P) -> (String, String) {
        let s = int(self.spec.scale as i128);
        let [x0, _, _, y1] = &self.spec.viewport;
        (num((p[0] - x0) * s), num((y1 - p[1]) * s))
    }

    fn size(&self) -> (String, String) {
        let s = int(self.spec.scale as i128);
        let [x0, x1, y0, y1] = &self.spec.viewport;
        (num((x1 - x0) * s), num((y1 - y0) * s))
    }
}

/// Fixed three-decimal rendering with trailing zeros removed.
fn num(q: Rational) -> String {
    let scaled = (q * int(1000)).round().to_integer();
    let sign = if scaled < 0 { "-" } else { "" };
    let a = scaled.abs();
    let (whole, frac) = (a / 1000, a % 1000);
    if frac == 0 {
        format!("{sign}{whole}")
    } else {
        let f = format!("{frac:03}");
        format!("{sign}{whole}.{}", f.trim_end_matches('0'))
    }
}

fn draw_cells(
    out: &mut String,
    canvas: &Canvas,
    id: &str,
    style: &Style,
    cells: &CellSet,
    labels: Option<&LayeredAlgebraicSet>,
) {
    let arr = cells.arrangement();
    let _ = writeln!(
        out,
        r#"<g id="{id}" stroke="{}" stroke-width="{}" fill="none" stroke-linecap="round">"#,
        style.stroke, style.width
    );
    let mut texts = Vec::new();
    for &c in cells.cells() {
        let cell = arr.cell(c);
        if cell.dim != 2 {
            continue;
        }
        let poly = canvas.polygon(arr, c);
        if poly.is_empty() {
            continue;
        }
        let pts: Vec<String> = poly.iter().map(|p| canvas.px(p)).map(|(x, y)| format!("{x},{y}")).collect();
        let _ = writeln!(out, r#"<polygon points="{}" fill="{}" stroke="none"/>"#, pts.join(" "), style.fill);
        if let Some(l) = labels {
            let s = [cell.sample[0], cell.sample[1]];
            if canvas.inside(&s) {
                texts.push((s, l.layer_at(&cell.sample)));
            }
        }
    }
    let filled: Vec<usize> = cells.cells().iter().copied().filter(|&c| arr.cell(c).dim == 2).collect();
    let interior = |c: usize| filled.iter().filter(|&&r| arr.is_face_of(c, r)).count() >= 2;
    let mut path = String::new();
    for &c in cells.cells() {
        let cell = arr.cell(c);
        if cell.dim != 1 || interior(c) {
            continue;
        }
        if let Some((a, b)) = canvas.edge(&cell.shape) {
            let ((ax, ay), (bx, by)) = (canvas.px(&a), canvas.px(&b));
            let _ = write!(path, "M{ax} {ay}L{bx} {by}");
            if let Some(l) = labels {
                let mid = [(a[0] + b[0]) / int(2), (a[1] + b[1]) / int(2)];
                texts.push((mid, l.layer_at(&cell.sample)));
            }
        }
    }
    if !path.is_empty() {
        let _ = writeln!(out, r#"<path d="{path}"/>"#);
    }
    for &c in cells.cells() {
        let cell = arr.cell(c);
        if cell.dim != 0 || interior(c) {
            continue;
        }
        let p = [cell.sample[0], cell.sample[1]];
        if !canvas.inside(&p) {
            continue;
        }
        let above: Vec<usize> = cells.cells().iter().copied().filter(|&e| e != c && arr.is_face_of(c, e)).collect();
        let isolated = above.is_empty();
        if isolated {
            let (x, y) = canvas.px(&p);
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="{}" fill="{}"/>"#, style.width + 2, style.stroke);
        }
        if let Some(l) = labels {
            let here = l.layer_at(&cell.sample);
            if isolated || above.iter().all(|&e| l.layer_at(&arr.cell(e).sample) < here) {
                texts.push((p, here));
            }
        }
    }
    for (p, layer) in texts {
        let (x, y) = canvas.px(&p);
        let _ = writeln!(out, r#"<text x="{x}" y="{y}" dx="4" dy="-4" font-size="12" fill="{}" stroke="none">{layer}</text>"#, style.stroke);
    }
    out.push_str("</g>\n");
}

/// Renders planar sets, one group per set, plus an optional highlighted set on top.
pub fn render_svg(sets: &[Drawable], highlight: Option<&CellSet>, spec: &RenderSpec) -> Result<String, Error> {
    for d in sets.iter().copied() {
        let n = match d {
            Drawable::Plain(c) => c.arity(),
            Drawable::Layered(l) => l.arity(),
        };
        if n != 2 {
            return Err(Error::UnsupportedArity(n));
        }
    }
    if let Some(h) = highlight {
        if h.arity() != 2 {
            return Err(Error::UnsupportedArity(h.arity()));
        }
    }
    let canvas = Canvas { spec };
    let (w, h) = canvas.size();
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    if spec.grid {
        let [x0, x1, y0, y1] = &spec.viewport;
        let mut path = String::new();
        let mut k = x0.ceil();
        while k <= *x1 {
            let ((ax, ay), (bx, by)) = (canvas.px(&[k, *y0]), canvas.px(&[k, *y1]));
            let _ = write!(path, "M{ax} {ay}L{bx} {by}");
            k += int(1);
        }
        let mut k = y0.ceil();
        while k <= *y1 {
            let ((ax, ay), (bx, by)) = (canvas.px(&[*x0, k]), canvas.px(&[*x1, k]));
            let _ = write!(path, "M{ax} {ay}L{bx} {by}");
            k += int(1);
        }
        let _ = writeln!(out, r##"<path id="grid" d="{path}" stroke="#e6e6e6" stroke-width="1" fill="none"/>"##);
    }
    for (i, d) in sets.iter().enumerate() {
        let style = &spec.styles[i % spec.styles.len()];
        let id = format!("set{i}");
        match *d {
            Drawable::Plain(c) => draw_cells(&mut out, &canvas, &id, style, c, None),
            Drawable::Layered(l) => draw_cells(&mut out, &canvas, &id, style, &l.underlying(), Some(l)),
        }
    }
    if let Some(h) = highlight {
        let mut hl = String::new();
        draw_cells(&mut hl, &canvas, "highlight", &spec.highlight, h, None);
        out.push_str(&hl.replacen("<g ", r#"<g opacity="0.6" "#, 1));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use trop_core::rational::frac;
    use trop_core::{corner_locus, parse_polynomial_with_arity, total_locus};

    #[test]
    fn number_format() {
        assert_eq!(num(int(3)), "3");
        assert_eq!(num(frac(-1, 2)), "-0.5");
        assert_eq!(num(frac(1, 3)), "0.333");
        assert_eq!(num(frac(-1, 3000)), "0");
    }

    #[test]
    fn rays_clip_to_viewport() {
        let spec = RenderSpec::default();
        let c = Canvas { spec: &spec };
        let (a, b) = c.clip(&[int(0), int(0)], &[int(1), int(2)], Some(int(0)), None).unwrap();
        assert_eq!(a, [int(0), int(0)]);
        assert_eq!(b, [frac(5, 2), int(5)]);
        assert!(c.clip(&[int(6), int(0)], &[int(1), int(0)], Some(int(0)), None).is_none());
        let (a, b) = c.clip(&[int(0), int(7)], &[int(1), int(-1)], None, None).unwrap();
        assert_eq!((a, b), ([int(2), int(5)], [int(5), int(2)]));
    }

    #[test]
    fn filled_square_polygons() {
        let f = parse_polynomial_with_arity("x1^2*x2^2 + x1^2 + x2^2 + 0 + 1v*x1*x2", 2).unwrap();
        let x = total_locus(&f).unwrap();
        let spec = RenderSpec::default();
        let c = Canvas { spec: &spec };
        let arr = x.carrier.arrangement();
        let polys: Vec<Vec<P>> = x.carrier.cells().iter().filter(|&&k| arr.cell(k).dim == 2).map(|&k| c.polygon(arr, k)).collect();
        assert!(!polys.is_empty());
        for poly in &polys {
            assert_eq!(poly.len(), 3);
            let area2 = (0..3).map(|i| {
                let (p, q) = (poly[i], poly[(i + 1) % 3]);
                p[0] * q[1] - q[0] * p[1]
            });
            assert!(area2.sum::<Rational>() > int(0));
        }
        let svg = render_svg(&[Drawable::Plain(&x.carrier)], None, &spec).unwrap();
        assert_eq!(svg.matches("<polygon").count(), polys.len());
    }

    #[test]
    fn rejects_lines_of_arity_one() {
        let f = parse_polynomial_with_arity("x + 0", 1).unwrap();
        let x = corner_locus(&f).unwrap();
        assert!(render_svg(&[Drawable::Plain(&x.carrier)], None, &RenderSpec::default()).is_err());
    }
}
