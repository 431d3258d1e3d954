//! Binomial relations on facets, variable elimination, and chain-based dimension.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::arrangement::{Coords, Sign};
use crate::complex::{AlgebraicSet, Facet, LocusKind};
use crate::equivalence::{check_admissible, default_witnesses, Verdict};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;
use crate::semiring::SupertropicalValue;

/// `α·λ^e ≡ 𝟙`, i.e. `α + e·x = 0` in magnitudes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialRelation {
    pub constant: Rational,
    pub exponents: Coords,
}

impl BinomialRelation {
    pub fn new(constant: Rational, exponents: Coords) -> Self {
        Self { constant, exponents }
    }

    /// `h·h′⁻¹ ≡ 𝟙` from `h|_W = h′|_W`.
    pub fn from_monomials(h: &Monomial, h2: &Monomial) -> Self {
        let exponents = h.exponents.iter().zip(&h2.exponents).map(|(a, b)| a - b).collect();
        Self { constant: h.coefficient.magnitude - h2.coefficient.magnitude, exponents }
    }

    pub fn arity(&self) -> usize {
        self.exponents.len()
    }

    /// No variable left: either `𝟙 ≡ 𝟙` or inconsistent.
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    pub fn holds_at(&self, x: &[Rational]) -> bool {
        let v = self.exponents.iter().zip(x).fold(self.constant, |acc, (e, xi)| acc + e * xi);
        v.is_zero()
    }
}

impl fmt::Display for BinomialRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = Monomial::new(SupertropicalValue::tangible(self.constant), self.exponents.clone());
        let p = Polynomial::from_terms(self.arity(), [m]).map_err(|_| fmt::Error)?;
        write!(f, "{p} = 0")
    }
}

/// `λ_var ↦ constant · Π_j λ_j^{exponents_j}` (with `exponents_var = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub var: usize,
    pub constant: Rational,
    pub exponents: Coords,
}

impl Substitution {
    /// Replaces `λ_var` in every monomial; equal monomials merge.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        let terms = f.terms().iter().map(|m| {
            let e = m.exponents[self.var];
            let mut exps = m.exponents.clone();
            for (j, ej) in exps.iter_mut().enumerate() {
                *ej = if j == self.var { Rational::zero() } else { *ej + e * self.exponents[j] };
            }
            let c = SupertropicalValue { magnitude: m.coefficient.magnitude + e * self.constant, tag: m.coefficient.tag };
            Monomial::new(c, exps)
        });
        Polynomial::from_terms(f.arity(), terms)
    }

    pub fn apply_relation(&self, r: &BinomialRelation) -> BinomialRelation {
        let e = r.exponents[self.var];
        let exponents = (0..r.arity())
            .map(|j| if j == self.var { Rational::zero() } else { r.exponents[j] + e * self.exponents[j] })
            .collect();
        BinomialRelation { constant: r.constant + e * self.constant, exponents }
    }
}

/// Solves the relation for its last variable with nonzero exponent:
/// `λ_n ↦ α^{−1/i_n} Π_{j≠n} λ_j^{−i_j/i_n}`.
pub fn eliminate_variable(rel: &BinomialRelation) -> Result<Substitution> {
    let var = (0..rel.arity()).rev().find(|&j| !rel.exponents[j].is_zero()).ok_or(Error::DegenerateRelation)?;
    let i_n = rel.exponents[var];
    let exponents = (0..rel.arity()).map(|j| if j == var { Rational::zero() } else { -rel.exponents[j] / i_n }).collect();
    Ok(Substitution { var, constant: -rel.constant / i_n, exponents })
}

/// Relations holding on a facet and the variables they eliminate.
#[derive(Debug, Clone)]
pub struct FacetReduction {
    pub facet: Facet,
    pub relations: Vec<BinomialRelation>,
    pub substitutions: Vec<Substitution>,
    /// Variables left free after elimination.
    pub free: usize,
}

fn facet_relations(x: &AlgebraicSet, facet: &Facet) -> Vec<BinomialRelation> {
    let arr = x.carrier.arrangement();
    let top = facet.cells.cells().iter().copied().find(|&c| arr.cell(c).dim == facet.dim).expect("facet has a top cell");
    let sample = &arr.cell(top).sample;
    let mut rels = Vec::new();
    for f in x.defining.iter().chain(x.pairs.iter().flat_map(|(a, b)| [a, b])) {
        let dom = f.dominant_terms(sample);
        for w in dom.windows(2) {
            rels.push(BinomialRelation::from_monomials(f.term(w[0]), f.term(w[1])));
        }
    }
    // Supporting hyperplanes of the facet.
    for (h, s) in arr.hyperplanes().iter().zip(&arr.cell(top).signs) {
        if *s == Sign::Zero {
            rels.push(BinomialRelation::new(-h.offset, h.normal.clone()));
        }
    }
    rels
}

/// Eliminates variables greedily, in facet order.
pub fn reduce_facet(x: &AlgebraicSet, facet: &Facet) -> Result<FacetReduction> {
    let relations = facet_relations(x, facet);
    let mut pending = relations.clone();
    let mut substitutions = Vec::new();
    while let Some(r) = pending.pop() {
        if r.is_trivial() {
            if !r.constant.is_zero() {
                return Err(Error::Internal(format!("inconsistent relation {r} on a facet")));
            }
            continue;
        }
        let s = eliminate_variable(&r)?;
        pending = pending.iter().map(|q| s.apply_relation(q)).collect();
        substitutions.push(s);
    }
    let free = x.arity() - substitutions.len();
    Ok(FacetReduction { facet: facet.clone(), relations, substitutions, free })
}

pub fn reduce_facets(x: &AlgebraicSet) -> Result<Vec<FacetReduction>> {
    x.facets().iter().map(|f| reduce_facet(x, f)).collect()
}

fn require_not_inadmissible(x: &AlgebraicSet) -> Result<()> {
    let v = check_admissible(x, &default_witnesses(x))?;
    if v.verdict == Verdict::Inadmissible {
        let w = v.witness.expect("inadmissible verdicts carry a witness");
        return Err(Error::Inadmissible(format!("witness pair ({}, {}) essentially agrees but differs", w.pair.0, w.pair.1)));
    }
    Ok(())
}

/// Free variables left by greedy facet-wise elimination, maximized over facets.
/// Errors when the witness family shows `x` is not admissible.
pub fn dimension(x: &AlgebraicSet) -> Result<usize> {
    if x.is_empty() {
        return Err(Error::Precondition("empty set has no dimension".into()));
    }
    require_not_inadmissible(x)?;
    Ok(reduce_facets(x)?.iter().map(|r| r.free).max().unwrap_or(0))
}

/// `X₀ ⊋ X₁ ⊋ … ⊋ X_m`.
#[derive(Debug, Clone)]
pub struct VarietyChain {
    pub members: Vec<AlgebraicSet>,
}

#[derive(Debug, Clone)]
pub struct ChainStep {
    /// Largest free dimension on each side of the step.
    pub free_before: usize,
    pub free_after: usize,
    /// Relations of each facet of the smaller member.
    pub relations: Vec<Vec<BinomialRelation>>,
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    pub length: usize,
    pub arity: usize,
    pub steps: Vec<ChainStep>,
    /// Whether each member is a hypersurface, a ν-fiber, or the whole space.
    pub certified_irreducible: Vec<bool>,
    /// No step can be split by one more elimination.
    pub maximal: bool,
}

fn is_certified_irreducible(x: &AlgebraicSet) -> bool {
    match x.kind {
        LocusKind::Whole => true,
        LocusKind::Corner => {
            x.defining.len() == 1
                || (x.defining.iter().all(|f| f.len() == 2 && f.terms().iter().any(|m| m.is_constant()))
                    && x.carrier.dim() == Some(0))
        }
        _ => false,
    }
}

pub fn verify_chain(chain: &VarietyChain) -> Result<ChainReport> {
    let members = &chain.members;
    let first = members.first().ok_or_else(|| Error::InvalidChain("empty chain".into()))?;
    let n = first.arity();
    for x in members {
        require_not_inadmissible(x)?;
    }
    let reductions: Vec<Vec<FacetReduction>> = members.iter().map(reduce_facets).collect::<Result<_>>()?;
    let mut steps = Vec::new();
    for i in 0..members.len().saturating_sub(1) {
        let (big, small) = (&members[i], &members[i + 1]);
        if !small.carrier.is_subset(&big.carrier)? || big.carrier.is_subset(&small.carrier)? {
            return Err(Error::InvalidChain(format!("member {} is not strictly inside member {}", i + 1, i)));
        }
        for r in &reductions[i + 1] {
            let arr = r.facet.cells.arrangement();
            let top = r.facet.cells.cells().iter().copied().find(|&c| arr.cell(c).dim == r.facet.dim).expect("top cell");
            let p = &arr.cell(top).sample;
            let host = reductions[i]
                .iter()
                .filter(|q| q.facet.cells.closure().contains(p))
                .map(|q| q.free)
                .max()
                .ok_or_else(|| Error::InvalidChain(format!("member {} leaves member {}", i + 1, i)))?;
            if r.free >= host {
                return Err(Error::InvalidChain(format!("step {i} adds no binomial relation on a facet")));
            }
        }
        let free = |rs: &[FacetReduction]| rs.iter().map(|r| r.free).max().unwrap_or(0);
        steps.push(ChainStep {
            free_before: free(&reductions[i]),
            free_after: free(&reductions[i + 1]),
            relations: reductions[i + 1].iter().map(|r| r.relations.clone()).collect(),
        });
    }
    let length = members.len() - 1;
    if length > n {
        return Err(Error::InvalidChain(format!("chain of length {length} exceeds arity {n}")));
    }
    let last_free = reductions.last().and_then(|rs| rs.iter().map(|r| r.free).max()).unwrap_or(0);
    let first_free = reductions[0].iter().map(|r| r.free).max().unwrap_or(0);
    let maximal = first_free == n && last_free == 0 && steps.iter().all(|s| s.free_before - s.free_after == 1);
    Ok(ChainReport {
        length,
        arity: n,
        steps,
        certified_irreducible: members.iter().map(is_certified_irreducible).collect(),
        maximal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{corner_locus, intersect};
    use crate::rational::{frac, int};
    use crate::text::parse_polynomial_with_arity;
    use alloc::vec;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial_with_arity(s, n).unwrap()
    }

    #[test]
    fn eliminations() {
        let s = eliminate_variable(&BinomialRelation::new(int(-5), vec![int(1)])).unwrap();
        assert_eq!((s.var, s.constant), (0, int(5)));
        let s = eliminate_variable(&BinomialRelation::new(int(0), vec![int(1), int(-1)])).unwrap();
        assert_eq!((s.var, s.constant, s.exponents.clone()), (1, int(0), vec![int(1), int(0)]));
        assert_eq!(eliminate_variable(&BinomialRelation::new(int(0), vec![int(0), int(0)])), Err(Error::DegenerateRelation));
        let s = eliminate_variable(&BinomialRelation::new(int(1), vec![int(1), int(2)])).unwrap();
        assert_eq!(s.exponents, vec![frac(-1, 2), int(0)]);
        assert_eq!(s.constant, frac(-1, 2));
        let f = p("x1^2*x2 + 3*x2^2 + 0", 2);
        let g = s.apply(&f).unwrap();
        for t in [-3i128, 0, 4] {
            let x = vec![int(t), (int(-1) - int(t)) / int(2)];
            assert_eq!(f.eval_tangible(&x).unwrap(), g.eval_tangible(&x).unwrap());
        }
        assert!(g.terms().iter().all(|m| m.exponents[1].is_zero()));
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(&AlgebraicSet::whole(2).unwrap()).unwrap(), 2);
        assert_eq!(dimension(&AlgebraicSet::whole(1).unwrap()).unwrap(), 1);
        assert_eq!(dimension(&corner_locus(&p("x1 + x2 + 0", 2)).unwrap()).unwrap(), 1);
        assert_eq!(dimension(&AlgebraicSet::fiber(&[int(1), int(-2)]).unwrap()).unwrap(), 0);
        let bad = intersect(&corner_locus(&p("x1 + x2 + 0", 2)).unwrap(), &corner_locus(&p("x1 + x2 + 1", 2)).unwrap()).unwrap();
        assert!(matches!(dimension(&bad), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn chains() {
        let plane = AlgebraicSet::whole(2).unwrap();
        let line = corner_locus(&p("x1 + x2 + 0", 2)).unwrap();
        let point = AlgebraicSet::fiber(&[int(0), int(0)]).unwrap();
        let full = verify_chain(&VarietyChain { members: vec![plane.clone(), line.clone(), point.clone()] }).unwrap();
        assert_eq!(full.length, 2);
        assert!(full.maximal);
        assert_eq!(full.certified_irreducible, vec![true, true, true]);
        let short = verify_chain(&VarietyChain { members: vec![plane.clone(), point.clone()] }).unwrap();
        assert_eq!(short.length, 1);
        assert!(!short.maximal);
        assert!(matches!(verify_chain(&VarietyChain { members: vec![line.clone(), line] }), Err(Error::InvalidChain(_))));
    }
}
