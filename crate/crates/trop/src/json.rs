//! JSON views of algebraic sets and verdicts.

use std::collections::BTreeMap;

use serde::Serialize;
use trop_core::arrangement::{primitive_direction, Arrangement, Sign};
use trop_core::complex::{EdgeGeometry, Geometry};
use trop_core::{AlgebraicSet, CellSet, Layer, LayeredAlgebraicSet, Rational};

/// `[numerator, denominator]`.
pub type Q = [i128; 2];

pub fn q(r: &Rational) -> Q {
    [*r.numer(), *r.denom()]
}

pub fn point(p: &[Rational]) -> Vec<Q> {
    p.iter().map(q).collect()
}

fn direction(d: &[Rational]) -> Vec<i128> {
    primitive_direction(d).iter().map(|x| x.to_integer()).collect()
}

#[derive(Debug, Serialize)]
pub struct PointJson {
    pub cell: usize,
    pub v: usize,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum EdgeJson {
    Segment { cell: usize, v: [usize; 2] },
    Ray { cell: usize, v: usize, dir: Vec<i128> },
    Line { cell: usize, point: Vec<Q>, dir: Vec<i128> },
}

#[derive(Debug, Serialize)]
pub struct FaceJson {
    pub cell: usize,
    /// Vertex ids of the closure.
    pub v: Vec<usize>,
    /// Indices into `edges` of bounding edges that belong to the set.
    pub edges: Vec<usize>,
    /// Generators of the recession cone.
    pub dir: Vec<Vec<i128>>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum LayerJson {
    Finite(u64),
    Infinite(&'static str),
}

impl From<Layer> for LayerJson {
    fn from(l: Layer) -> Self {
        match l {
            Layer::Finite(k) => LayerJson::Finite(k),
            Layer::Infinite => LayerJson::Infinite("inf"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ComplexJson {
    pub arity: usize,
    pub vertices: Vec<Vec<Q>>,
    pub points: Vec<PointJson>,
    pub edges: Vec<EdgeJson>,
    pub faces: Vec<FaceJson>,
    /// Polynomial index, then cell id, then dominant term indices.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub annotations: BTreeMap<usize, BTreeMap<usize, Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layers: Option<BTreeMap<usize, LayerJson>>,
}

/// Extreme rays of the recession cone `{d : s·(normal·d) ≥ 0}` of a region's closure.
fn recession(arr: &Arrangement, c: usize) -> Vec<Vec<i128>> {
    let n = arr.arity();
    let cons: Vec<Vec<Rational>> = arr
        .closure_halfspaces(c)
        .into_iter()
        .filter(|(_, s)| *s != Sign::Zero)
        .map(|(h, s)| h.normal.iter().map(|x| if s == Sign::Neg { -x } else { *x }).collect())
        .collect();
    let dot = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| x * y).sum::<Rational>();
    let ok = |d: &[Rational]| cons.iter().all(|m| dot(m, d) >= Rational::from_integer(0));
    let mut out: Vec<Vec<i128>> = Vec::new();
    if cons.is_empty() {
        for k in 0..n {
            for s in [1, -1] {
                let mut d = vec![0; n];
                d[k] = s;
                out.push(d);
            }
        }
        return out;
    }
    let mut along = Vec::new();
    for m in &cons {
        let perp: Vec<Rational> = if n == 1 { vec![] } else { vec![-m[1], m[0]] };
        for d in [perp.clone(), perp.iter().map(|x| -x).collect()] {
            if !d.is_empty() && ok(&d) {
                along.push(direction(&d));
            }
        }
    }
    for m in &cons {
        let lineal = n == 2 && along.contains(&direction(&[-m[1], m[0]])) && along.contains(&direction(&[m[1], -m[0]]));
        if (n == 1 || lineal) && ok(m) {
            out.push(direction(m));
        }
    }
    out.extend(along);
    out.sort();
    out.dedup();
    out
}

fn complex(cells: &CellSet) -> ComplexJson {
    let arr = cells.arrangement();
    let Geometry { arity, vertices, points, edges, regions } = cells.geometry();
    let vid_cell = |v: usize| arr.locate(&vertices[v]);
    let points = points.into_iter().map(|v| PointJson { cell: vid_cell(v), v }).collect();
    let edge_cells: Vec<usize> = edges.iter().map(|(_, c)| *c).collect();
    let edges = edges
        .into_iter()
        .map(|(g, cell)| match g {
            EdgeGeometry::Segment(a, b) => EdgeJson::Segment { cell, v: [a, b] },
            EdgeGeometry::Ray { from, direction: d } => EdgeJson::Ray { cell, v: from, dir: direction(&d) },
            EdgeGeometry::Line { point: p, direction: d } => EdgeJson::Line { cell, point: point(&p), dir: direction(&d) },
        })
        .collect();
    let faces = regions
        .into_iter()
        .map(|r| FaceJson {
            cell: r.cell,
            v: r.vertices,
            edges: (0..edge_cells.len()).filter(|&i| arr.is_face_of(edge_cells[i], r.cell)).collect(),
            dir: recession(arr, r.cell),
        })
        .collect();
    ComplexJson {
        arity,
        vertices: vertices.iter().map(|p| point(p)).collect(),
        points,
        edges,
        faces,
        annotations: BTreeMap::new(),
        layers: None,
    }
}

pub fn algebraic_set(x: &AlgebraicSet) -> ComplexJson {
    let mut out = complex(&x.carrier);
    out.annotations = x.annotations().into_iter().enumerate().collect();
    out
}

pub fn layered_set(x: &LayeredAlgebraicSet) -> ComplexJson {
    let mut out = complex(&x.underlying());
    out.layers = Some(x.layers().iter().map(|(&c, &l)| (c, l.into())).collect());
    out
}
