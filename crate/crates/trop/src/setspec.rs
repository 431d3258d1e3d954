//! Set specifications accepted by `-X`.
//!
//! A spec is either a name (`plane`, `plane:N`) or a JSON object:
//!
//! ```text
//! {"corner": ["f", ...]}          intersection of corner loci
//! {"total": "f"}                  total locus
//! {"pair": ["f", "g"]}            corner locus of the pair f = g
//! {"point": ["1", "2"]}           ν-fiber of a tangible point
//! {"intersect": [spec, ...]}
//! {"union": [spec, ...]}
//! {"erase": {"set": spec, "poly": 0, "terms": [i, j]}}
//! {"layered": ["f", ...]}         layered algebraic set
//! {"meet": [spec, ...]} / {"join": [spec, ...]}   layered lattice operations
//! ```
//!
//! A value starting with `@` names a file holding the spec.

use std::fs;

use serde::Deserialize;
use trop_core::layered::LayeredPolynomial;
use trop_core::{
    corner_locus_pair, intersect, layered_set, parse_polynomial, parse_polynomial_with_arity, total_locus,
    AlgebraicSet, LayeredAlgebraicSet, LayeredValue, Polynomial, Rational, SupertropicalValue,
};

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SetSpec {
    Named(String),
    Node(Node),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Node {
    Corner(Vec<String>),
    Total(String),
    Pair([String; 2]),
    Point(Vec<String>),
    Intersect(Vec<SetSpec>),
    Union(Vec<SetSpec>),
    Erase { set: Box<SetSpec>, poly: usize, terms: [usize; 2] },
    Layered(Vec<String>),
    Meet(Vec<SetSpec>),
    Join(Vec<SetSpec>),
}

/// An evaluated spec.
#[derive(Debug, Clone)]
pub enum Set {
    Plain(AlgebraicSet),
    Layered(LayeredAlgebraicSet),
}

impl Set {
    pub fn plain(self) -> Result<AlgebraicSet, CliError> {
        match self {
            Set::Plain(x) => Ok(x),
            Set::Layered(_) => Err(CliError::Usage("a supertropical set is required here, not a layered one".into())),
        }
    }

    pub fn layered(self) -> Result<LayeredAlgebraicSet, CliError> {
        match self {
            Set::Layered(x) => Ok(x),
            Set::Plain(_) => Err(CliError::Usage("a layered set is required here".into())),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Set::Plain(x) => x.arity(),
            Set::Layered(x) => x.arity(),
        }
    }
}

/// Reads inline JSON, a bare name, or `@file`.
pub fn read_spec(text: &str) -> Result<SetSpec, CliError> {
    let body = match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?,
        None => text.to_string(),
    };
    let trimmed = body.trim();
    if trimmed.starts_with('{') || trimmed.starts_with('"') {
        serde_json::from_str(trimmed).map_err(|e| CliError::Usage(format!("bad set spec: {e}")))
    } else {
        Ok(SetSpec::Named(trimmed.to_string()))
    }
}

impl SetSpec {
    /// Polynomial texts mentioned anywhere in the spec.
    pub fn polynomials(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a str>) {
        let SetSpec::Node(node) = self else { return };
        match node {
            Node::Corner(fs) | Node::Layered(fs) => out.extend(fs.iter().map(String::as_str)),
            Node::Total(f) => out.push(f),
            Node::Pair(p) => out.extend(p.iter().map(String::as_str)),
            Node::Point(_) => {}
            Node::Intersect(xs) | Node::Union(xs) | Node::Meet(xs) | Node::Join(xs) => {
                xs.iter().for_each(|x| x.collect(out))
            }
            Node::Erase { set, .. } => set.collect(out),
        }
    }

    /// Arity fixed by the spec itself (points and `plane:N`).
    fn own_arity(&self) -> Option<usize> {
        match self {
            SetSpec::Named(name) => name.strip_prefix("plane:").and_then(|n| n.parse().ok()),
            SetSpec::Node(Node::Point(p)) => Some(p.len()),
            SetSpec::Node(Node::Intersect(xs) | Node::Union(xs) | Node::Meet(xs) | Node::Join(xs)) => {
                xs.iter().find_map(SetSpec::own_arity)
            }
            SetSpec::Node(Node::Erase { set, .. }) => set.own_arity(),
            SetSpec::Node(_) => None,
        }
    }
}

/// The common arity of a command: explicit arities win, otherwise the largest
/// variable index among all polynomial texts, otherwise 2.
pub fn resolve_arity(specs: &[SetSpec], texts: &[&str]) -> Result<usize, CliError> {
    if let Some(n) = specs.iter().find_map(SetSpec::own_arity) {
        return Ok(n);
    }
    let mut n = 0;
    for t in texts.iter().copied().chain(specs.iter().flat_map(SetSpec::polynomials)) {
        n = n.max(infer_arity(t)?);
    }
    Ok(if n == 0 { 2 } else { n })
}

fn infer_arity(text: &str) -> Result<usize, CliError> {
    if text.contains('@') {
        Ok(parse_polynomial::<LayeredValue>(text)?.arity())
    } else {
        Ok(parse_polynomial::<SupertropicalValue>(text)?.arity())
    }
}

pub fn poly(text: &str, arity: usize) -> Result<Polynomial, CliError> {
    Ok(parse_polynomial_with_arity(text, arity)?)
}

pub fn layered_poly(text: &str, arity: usize) -> Result<LayeredPolynomial, CliError> {
    Ok(parse_polynomial_with_arity(text, arity)?)
}

pub fn rational(text: &str) -> Result<Rational, CliError> {
    let v: SupertropicalValue = text.trim().parse()?;
    if v.is_ghost() {
        return Err(CliError::Usage(format!("expected a tangible coordinate, found {text}")));
    }
    Ok(v.magnitude)
}

impl SetSpec {
    pub fn eval(&self, arity: usize) -> Result<Set, CliError> {
        let node = match self {
            SetSpec::Named(name) if name == "plane" || name.starts_with("plane:") => {
                return Ok(Set::Plain(AlgebraicSet::whole(arity)?));
            }
            SetSpec::Named(name) => return Err(CliError::Usage(format!("unknown set name {name:?}"))),
            SetSpec::Node(node) => node,
        };
        let plain = |xs: &[SetSpec]| -> Result<Vec<AlgebraicSet>, CliError> {
            xs.iter().map(|x| x.eval(arity)?.plain()).collect()
        };
        let layered = |xs: &[SetSpec]| -> Result<Vec<LayeredAlgebraicSet>, CliError> {
            xs.iter().map(|x| x.eval(arity)?.layered()).collect()
        };
        let nonempty = |n: usize| if n == 0 { Err(CliError::Usage("empty list in set spec".into())) } else { Ok(()) };
        Ok(match node {
            Node::Corner(fs) => {
                let polys = fs.iter().map(|f| poly(f, arity)).collect::<Result<Vec<_>, _>>()?;
                Set::Plain(AlgebraicSet::corner_of(&polys)?)
            }
            Node::Total(f) => Set::Plain(total_locus(&poly(f, arity)?)?),
            Node::Pair([f, g]) => Set::Plain(corner_locus_pair(&poly(f, arity)?, &poly(g, arity)?)?),
            Node::Point(coords) => {
                let p = coords.iter().map(|c| rational(c)).collect::<Result<Vec<_>, _>>()?;
                Set::Plain(AlgebraicSet::fiber(&p)?)
            }
            Node::Intersect(xs) => {
                nonempty(xs.len())?;
                let sets = plain(xs)?;
                let mut acc = sets[0].clone();
                for y in &sets[1..] {
                    acc = intersect(&acc, y)?;
                }
                Set::Plain(acc)
            }
            Node::Union(xs) => {
                nonempty(xs.len())?;
                let sets = plain(xs)?;
                let mut acc = sets[0].clone();
                for y in &sets[1..] {
                    acc = acc.union(y)?;
                }
                Set::Plain(acc)
            }
            Node::Erase { set, poly: k, terms: [i, j] } => Set::Plain(set.eval(arity)?.plain()?.erase_binomial_facet(*k, *i, *j)?),
            Node::Layered(fs) => {
                nonempty(fs.len())?;
                let polys = fs.iter().map(|f| layered_poly(f, arity)).collect::<Result<Vec<_>, _>>()?;
                Set::Layered(layered_set(&polys)?)
            }
            Node::Meet(xs) | Node::Join(xs) => {
                nonempty(xs.len())?;
                let sets = layered(xs)?;
                let mut acc = sets[0].clone();
                for y in &sets[1..] {
                    acc = if matches!(node, Node::Meet(_)) { acc.meet(y)? } else { acc.join(y)? };
                }
                Set::Layered(acc)
            }
        })
    }
}
