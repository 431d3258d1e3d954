#![allow(dead_code)]

use proptest::prelude::*;
use trop_core::rational::int;
use trop_core::{Monomial, Polynomial, Rational, SupertropicalValue};

/// Raw term: coefficient, ghost flag, exponents.
pub type RawTerm = (i128, bool, Vec<i128>);

pub fn raw_terms(arity: usize, max_terms: usize, ghosts: bool) -> impl Strategy<Value = Vec<RawTerm>> {
    let term = (-3i128..=3, any::<bool>(), proptest::collection::vec(0i128..=2, arity))
        .prop_map(move |(c, g, e)| (c, g && ghosts, e));
    proptest::collection::vec(term, 1..=max_terms)
}

pub fn build(arity: usize, raw: &[RawTerm]) -> Polynomial {
    let terms = raw.iter().map(|(c, g, e)| {
        let coefficient = if *g { SupertropicalValue::ghost(int(*c)) } else { SupertropicalValue::tangible(int(*c)) };
        Monomial::new(coefficient, e.iter().map(|&x| int(x)).collect())
    });
    Polynomial::from_terms(arity, terms).unwrap()
}

pub fn poly(arity: usize, max_terms: usize, ghosts: bool) -> impl Strategy<Value = Polynomial> {
    raw_terms(arity, max_terms, ghosts).prop_map(move |raw| build(arity, &raw))
}

/// Half-integer grid points in `[-r, r]^n`, as numerators over 2.
pub fn half_grid(arity: usize, r: i128) -> Vec<Vec<i128>> {
    let axis: Vec<i128> = (-2 * r..=2 * r).collect();
    match arity {
        1 => axis.iter().map(|&a| vec![a]).collect(),
        _ => axis.iter().flat_map(|&a| axis.iter().map(move |&b| vec![a, b])).collect(),
    }
}

pub fn halves(p: &[i128]) -> Vec<Rational> {
    p.iter().map(|&a| Rational::new(a, 2)).collect()
}

/// Oracle: doubled term values at a doubled point, using plain integers.
/// Returns (max, number of terms at max, whether some maximal term is ghost).
pub fn oracle_at(raw: &[RawTerm], p2: &[i128]) -> (i128, usize, bool) {
    // Merge duplicate exponent vectors first: equal monomials add.
    let mut merged: Vec<(i128, bool, Vec<i128>)> = Vec::new();
    for (c, g, e) in raw {
        if let Some(m) = merged.iter_mut().find(|m| &m.2 == e) {
            if *c > m.0 {
                *m = (*c, *g, e.clone());
            } else if *c == m.0 {
                m.1 = true;
            }
        } else {
            merged.push((*c, *g, e.clone()));
        }
    }
    let vals: Vec<(i128, bool)> =
        merged.iter().map(|(c, g, e)| (2 * c + e.iter().zip(p2).map(|(a, b)| a * b).sum::<i128>(), *g)).collect();
    let max = vals.iter().map(|v| v.0).max().unwrap();
    let at_max: Vec<&(i128, bool)> = vals.iter().filter(|v| v.0 == max).collect();
    (max, at_max.len(), at_max.iter().any(|v| v.1))
}
