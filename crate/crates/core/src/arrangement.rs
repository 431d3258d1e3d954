//! Exact hyperplane arrangements in ℚ¹ and ℚ².
//!
//! Every tie locus of two monomials is a rational hyperplane, so the loci this
//! crate works with are unions of cells of such an arrangement. A cell is the
//! set of points sharing one sign vector with respect to all hyperplanes; cells
//! are relatively open, pairwise disjoint and cover the whole space.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{common_denominator, int, Rational};

/// A point of ℚⁿ.
pub type Coords = Vec<Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(q: &Rational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub(crate) fn axpy(p: &[Rational], s: &Rational, d: &[Rational]) -> Coords {
    p.iter().zip(d).map(|(x, y)| x + s * y).collect()
}

/// Scales a nonzero rational vector to a primitive integer vector (positive multiple).
pub fn primitive_direction(v: &[Rational]) -> Coords {
    let den = common_denominator(v.iter());
    let ints: Vec<i128> = v.iter().map(|q| (q * int(den)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g == 0 {
        return v.to_vec();
    }
    ints.iter().map(|x| int(x / g)).collect()
}

/// The hyperplane `normal · x = offset`, normalized so that the normal is a
/// primitive integer vector whose first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub normal: Coords,
    pub offset: Rational,
}

impl Hyperplane {
    /// Returns `None` when the normal vanishes.
    pub fn new(normal: Coords, offset: Rational) -> Option<Self> {
        let first = normal.iter().find(|q| !q.is_zero())?;
        let den = common_denominator(normal.iter());
        let ints: Vec<i128> = normal.iter().map(|q| (q * int(den)).to_integer()).collect();
        let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
        let mut scale = int(den) / int(g);
        if first.is_negative() {
            scale = -scale;
        }
        Some(Self { normal: normal.iter().map(|q| q * scale).collect(), offset: offset * scale })
    }

    /// Signed residual `normal · x − offset`.
    pub fn residual(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) - self.offset
    }

    pub fn side(&self, x: &[Rational]) -> Sign {
        Sign::of(&self.residual(x))
    }
}

/// Geometry of a cell, recorded at construction time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Vertex(Coords),
    Segment(Coords, Coords),
    Ray { origin: Coords, direction: Coords },
    Line { point: Coords, direction: Coords },
    /// A two-dimensional cell; its closure is the intersection of the
    /// half-planes returned by [`Arrangement::closure_halfspaces`].
    Region,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    pub signs: Vec<Sign>,
    /// A rational point of the relative interior.
    pub sample: Coords,
    pub shape: Shape,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    arity: usize,
    hyperplanes: Vec<Hyperplane>,
    cells: Vec<Cell>,
    index: BTreeMap<Vec<Sign>, usize>,
    /// Only the cells covering some region are present.
    partial: bool,
}

impl Arrangement {
    /// Builds the arrangement of the given hyperplanes (duplicates are merged).
    pub fn new(arity: usize, hyperplanes: impl IntoIterator<Item = Hyperplane>) -> Result<Self> {
        if !(1..=2).contains(&arity) {
            return Err(Error::UnsupportedArity(arity));
        }
        let mut set = BTreeSet::new();
        for h in hyperplanes {
            if h.normal.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: h.normal.len() });
            }
            set.insert(h);
        }
        let hyperplanes: Vec<Hyperplane> = set.into_iter().collect();
        let raw = if arity == 1 { build_line(&hyperplanes) } else { build_plane(&hyperplanes) };
        Ok(Self::from_raw(arity, hyperplanes, raw, false))
    }

    fn from_raw(arity: usize, hyperplanes: Vec<Hyperplane>, raw: Vec<RawCell>, partial: bool) -> Self {
        let mut cells: Vec<Cell> = Vec::with_capacity(raw.len());
        let mut seen = BTreeSet::new();
        for (dim, sample, shape) in raw {
            let signs: Vec<Sign> = hyperplanes.iter().map(|h| h.side(&sample)).collect();
            if seen.insert(signs.clone()) {
                cells.push(Cell { dim, signs, sample, shape });
            }
        }
        // Deterministic order: by dimension, then by sample coordinates.
        cells.sort_by(|a, b| (a.dim, &a.sample).cmp(&(b.dim, &b.sample)));
        let index = cells.iter().enumerate().map(|(i, c)| (c.signs.clone(), i)).collect();
        Self { arity, hyperplanes, cells, index, partial }
    }

    /// The cells of the arrangement with `extra` hyperplanes added that lie in
    /// the given cells. Cells outside are not built unless a top-dimensional
    /// cell of the plane is involved.
    pub fn subdivide(&self, cells: &BTreeSet<usize>, extra: impl IntoIterator<Item = Hyperplane>) -> Result<Self> {
        let all = self.hyperplanes.iter().cloned().chain(extra);
        if self.arity == 2 && cells.iter().any(|&c| self.cells[c].dim == 2) {
            return Self::new(self.arity, all);
        }
        let mut set = BTreeSet::new();
        for h in all {
            if h.normal.len() != self.arity {
                return Err(Error::ArityMismatch { expected: self.arity, found: h.normal.len() });
            }
            set.insert(h);
        }
        let hyperplanes: Vec<Hyperplane> = set.into_iter().collect();
        let mut raw = Vec::new();
        for &c in cells {
            split_cell(&self.cells[c].shape, &hyperplanes, &mut raw);
        }
        Ok(Self::from_raw(self.arity, hyperplanes, raw, true))
    }

    /// Whether only part of the space is covered by cells.
    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn signs_of(&self, x: &[Rational]) -> Vec<Sign> {
        self.hyperplanes.iter().map(|h| h.side(x)).collect()
    }

    /// The cell containing `x`.
    pub fn locate(&self, x: &[Rational]) -> usize {
        self.try_locate(x).expect("every point lies in exactly one cell")
    }

    /// The cell containing `x`, if it is present (always, unless partial).
    pub fn try_locate(&self, x: &[Rational]) -> Option<usize> {
        self.index.get(&self.signs_of(x)).copied()
    }

    /// Whether cell `a` lies in the closure of cell `b`.
    pub fn is_face_of(&self, a: usize, b: usize) -> bool {
        let (sa, sb) = (&self.cells[a].signs, &self.cells[b].signs);
        sa.iter().zip(sb).all(|(x, y)| *x == Sign::Zero || x == y)
    }

    /// Half-spaces `normal · x ≥ offset` (after sign adjustment) and
    /// hyperplanes cutting out the closure of a cell.
    pub fn closure_halfspaces(&self, c: usize) -> Vec<(Hyperplane, Sign)> {
        self.hyperplanes.iter().cloned().zip(self.cells[c].signs.iter().copied()).collect()
    }

    /// Basis of the direction space of a cell's affine hull.
    pub fn directions(&self, c: usize) -> Vec<Coords> {
        let cell = &self.cells[c];
        match (self.arity, cell.dim) {
            (_, 0) => Vec::new(),
            (1, _) => vec![vec![Rational::one()]],
            (2, 1) => {
                let h = self
                    .hyperplanes
                    .iter()
                    .zip(&cell.signs)
                    .find(|(_, s)| **s == Sign::Zero)
                    .map(|(h, _)| h)
                    .expect("an edge lies on a hyperplane");
                vec![vec![-h.normal[1], h.normal[0]]]
            }
            _ => vec![vec![int(1), int(0)], vec![int(0), int(1)]],
        }
    }

    /// Largest step (halved) that keeps `p + s·d` inside the cell of `p` for `0 < s ≤ step`.
    fn safe_step(&self, p: &[Rational], d: &[Rational]) -> Rational {
        safe_step(&self.hyperplanes, p, d)
    }

    /// Affinely spanning points of a cell's relative interior: the sample plus
    /// one displaced point per direction.
    pub fn interior_points(&self, c: usize) -> Vec<Coords> {
        let p = &self.cells[c].sample;
        let mut pts = vec![p.clone()];
        for d in self.directions(c) {
            let s = self.safe_step(p, &d);
            pts.push(axpy(p, &s, &d));
        }
        pts
    }

    /// Zero-dimensional cells in the closure of `c`.
    pub fn closure_vertices(&self, c: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&v| self.cells[v].dim == 0 && self.is_face_of(v, c)).collect()
    }
}

pub(crate) fn safe_step(hyperplanes: &[Hyperplane], p: &[Rational], d: &[Rational]) -> Rational {
    let mut best: Option<Rational> = None;
    for h in hyperplanes {
        let rate = dot(&h.normal, d);
        if rate.is_zero() {
            continue;
        }
        let t = (h.offset - dot(&h.normal, p)) / rate;
        let t = t.abs();
        if t.is_zero() {
            continue;
        }
        if best.as_ref().is_none_or(|b| t < *b) {
            best = Some(t);
        }
    }
    best.map_or_else(Rational::one, |b| b / int(2))
}

type RawCell = (usize, Coords, Shape);

/// Splits a vertex or an edge at its crossings with `hyperplanes`.
fn split_cell(shape: &Shape, hyperplanes: &[Hyperplane], out: &mut Vec<RawCell>) {
    let (p, d, lo, hi) = match shape {
        Shape::Vertex(p) => {
            out.push((0, p.clone(), Shape::Vertex(p.clone())));
            return;
        }
        Shape::Segment(a, b) => {
            let d: Coords = b.iter().zip(a).map(|(x, y)| x - y).collect();
            (a.clone(), d, Some(Rational::zero()), Some(Rational::one()))
        }
        Shape::Ray { origin, direction } => (origin.clone(), direction.clone(), Some(Rational::zero()), None),
        Shape::Line { point, direction } => (point.clone(), direction.clone(), None, None),
        Shape::Region => unreachable!("regions are rebuilt in full"),
    };
    let inside = |t: &Rational| lo.is_none_or(|l| *t > l) && hi.is_none_or(|h| *t < h);
    let mut ts: Vec<Rational> = hyperplanes
        .iter()
        .filter_map(|h| {
            let rate = dot(&h.normal, &d);
            (!rate.is_zero()).then(|| (h.offset - dot(&h.normal, &p)) / rate)
        })
        .filter(inside)
        .collect();
    ts.sort();
    ts.dedup();
    for t in &ts {
        let x = axpy(&p, t, &d);
        out.push((0, x.clone(), Shape::Vertex(x)));
    }
    let mut bounds: Vec<Option<Rational>> = vec![lo];
    bounds.extend(ts.into_iter().map(Some));
    bounds.push(hi);
    let back: Coords = d.iter().map(|q| -q).collect();
    for w in bounds.windows(2) {
        let (piece, sample) = match (&w[0], &w[1]) {
            (Some(a), Some(b)) => {
                (Shape::Segment(axpy(&p, a, &d), axpy(&p, b, &d)), axpy(&p, &((a + b) / int(2)), &d))
            }
            (Some(a), None) => (Shape::Ray { origin: axpy(&p, a, &d), direction: d.clone() }, axpy(&p, &(a + int(1)), &d)),
            (None, Some(b)) => {
                (Shape::Ray { origin: axpy(&p, b, &d), direction: back.clone() }, axpy(&p, &(b - int(1)), &d))
            }
            (None, None) => (Shape::Line { point: p.clone(), direction: d.clone() }, p.clone()),
        };
        out.push((1, sample, piece));
    }
}

fn build_line(hyperplanes: &[Hyperplane]) -> Vec<RawCell> {
    let mut pts: Vec<Rational> = hyperplanes.iter().map(|h| h.offset / h.normal[0]).collect();
    pts.sort();
    pts.dedup();
    let mut out = Vec::new();
    let one = vec![Rational::one()];
    if pts.is_empty() {
        out.push((1, vec![Rational::zero()], Shape::Line { point: vec![Rational::zero()], direction: one }));
        return out;
    }
    for p in &pts {
        out.push((0, vec![*p], Shape::Vertex(vec![*p])));
    }
    for w in pts.windows(2) {
        let mid = (w[0] + w[1]) / int(2);
        out.push((1, vec![mid], Shape::Segment(vec![w[0]], vec![w[1]])));
    }
    let (lo, hi) = (pts[0], pts[pts.len() - 1]);
    out.push((1, vec![lo - int(1)], Shape::Ray { origin: vec![lo], direction: vec![int(-1)] }));
    out.push((1, vec![hi + int(1)], Shape::Ray { origin: vec![hi], direction: one }));
    out
}

fn intersect_lines(a: &Hyperplane, b: &Hyperplane) -> Option<Coords> {
    let det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
    if det.is_zero() {
        return None;
    }
    let x = (a.offset * b.normal[1] - a.normal[1] * b.offset) / det;
    let y = (a.normal[0] * b.offset - a.offset * b.normal[0]) / det;
    Some(vec![x, y])
}

fn build_plane(hyperplanes: &[Hyperplane]) -> Vec<RawCell> {
    let mut out: Vec<RawCell> = Vec::new();
    if hyperplanes.is_empty() {
        out.push((2, vec![Rational::zero(), Rational::zero()], Shape::Region));
        return out;
    }
    let mut vertices: BTreeSet<Coords> = BTreeSet::new();
    for i in 0..hyperplanes.len() {
        for j in i + 1..hyperplanes.len() {
            if let Some(p) = intersect_lines(&hyperplanes[i], &hyperplanes[j]) {
                vertices.insert(p);
            }
        }
    }
    for v in &vertices {
        out.push((0, v.clone(), Shape::Vertex(v.clone())));
    }
    let mut edges: Vec<(Coords, Coords)> = Vec::new(); // (sample, normal of supporting line)
    for h in hyperplanes {
        let dir = vec![-h.normal[1], h.normal[0]];
        let mut on: Vec<(Rational, Coords)> =
            vertices.iter().filter(|v| h.residual(v).is_zero()).map(|v| (dot(&dir, v), v.clone())).collect();
        on.sort();
        if on.is_empty() {
            let point = if !h.normal[0].is_zero() {
                vec![h.offset / h.normal[0], Rational::zero()]
            } else {
                vec![Rational::zero(), h.offset / h.normal[1]]
            };
            out.push((1, point.clone(), Shape::Line { point: point.clone(), direction: dir.clone() }));
            edges.push((point, h.normal.clone()));
            continue;
        }
        for w in on.windows(2) {
            let mid: Coords = w[0].1.iter().zip(&w[1].1).map(|(a, b)| (a + b) / int(2)).collect();
            out.push((1, mid.clone(), Shape::Segment(w[0].1.clone(), w[1].1.clone())));
            edges.push((mid, h.normal.clone()));
        }
        let first = &on[0].1;
        let last = &on[on.len() - 1].1;
        let back: Coords = dir.iter().map(|q| -q).collect();
        let s1 = axpy(first, &Rational::one(), &back);
        out.push((1, s1.clone(), Shape::Ray { origin: first.clone(), direction: back }));
        edges.push((s1, h.normal.clone()));
        let s2 = axpy(last, &Rational::one(), &dir);
        out.push((1, s2.clone(), Shape::Ray { origin: last.clone(), direction: dir.clone() }));
        edges.push((s2, h.normal.clone()));
    }
    for (p, n) in edges {
        let s = safe_step(hyperplanes, &p, &n);
        out.push((2, axpy(&p, &s, &n), Shape::Region));
        out.push((2, axpy(&p, &(-s), &n), Shape::Region));
    }
    out
}
