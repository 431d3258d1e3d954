//! Tropical polynomials in canonical decomposition and their evaluation.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::arrangement::{dot, Arrangement, Coords, Hyperplane};
use crate::error::{Error, Result};
use crate::rational::{is_integer, Rational};
use crate::semiring::{Scalar, SupertropicalValue, Tag};

/// A point of `F^(n)`; coordinates may be ghost.
pub type Point = Vec<SupertropicalValue>;

pub fn tangible_point(coords: &[Rational]) -> Point {
    coords.iter().map(|q| SupertropicalValue::tangible(*q)).collect()
}

pub fn magnitudes(p: &[SupertropicalValue]) -> Coords {
    p.iter().map(|a| a.magnitude).collect()
}

/// Which exponents are admitted: polynomials, Laurent polynomials, or rational powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Context {
    Pol,
    Lau,
    Ratl,
}

impl Context {
    pub fn name(self) -> &'static str {
        match self {
            Context::Pol => "Pol",
            Context::Lau => "Lau",
            Context::Ratl => "Ratl",
        }
    }

    pub fn admits(self, e: &Rational) -> bool {
        match self {
            Context::Pol => is_integer(e) && !e.is_negative(),
            Context::Lau => is_integer(e),
            Context::Ratl => true,
        }
    }

    /// Smallest context admitting all the exponents.
    pub fn infer<'a>(exps: impl IntoIterator<Item = &'a Rational>) -> Context {
        exps.into_iter().fold(Context::Pol, |ctx, e| {
            if Context::Pol.admits(e) {
                ctx
            } else if Context::Lau.admits(e) {
                ctx.max(Context::Lau)
            } else {
                Context::Ratl
            }
        })
    }
}

/// `coefficient · λ₁^{e₁} ⋯ λₙ^{eₙ}`; the exponent vector is the pure part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial<C = SupertropicalValue> {
    pub coefficient: C,
    pub exponents: Coords,
}

impl<C: Scalar> Monomial<C> {
    pub fn new(coefficient: C, exponents: Coords) -> Self {
        Self { coefficient, exponents }
    }

    pub fn constant(coefficient: C, arity: usize) -> Self {
        Self { coefficient, exponents: alloc::vec![Rational::zero(); arity] }
    }

    /// Magnitude of the tangible lift at a tangible point.
    pub fn magnitude_at(&self, x: &[Rational]) -> Rational {
        *self.coefficient.magnitude() + dot(&self.exponents, x)
    }

    pub fn eval_tangible(&self, x: &[Rational]) -> C {
        self.coefficient.shift(&dot(&self.exponents, x))
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    pub fn lift(&self) -> Self {
        Self { coefficient: self.coefficient.lift(), exponents: self.exponents.clone() }
    }

    pub fn times(&self, other: &Self) -> Self {
        Self {
            coefficient: self.coefficient.times(&other.coefficient),
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Monomial<SupertropicalValue> {
    pub fn eval(&self, a: &[SupertropicalValue]) -> SupertropicalValue {
        let ghost_coord = self.exponents.iter().zip(a).any(|(e, x)| !e.is_zero() && x.is_ghost());
        let mut v = self.coefficient.shift(&dot(&self.exponents, &magnitudes(a)));
        if ghost_coord {
            v.tag = Tag::Ghost;
        }
        v
    }
}

/// Value of a monomial along the segment from `b` (t = 0) to `a` (t = 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentEval {
    pub value: SupertropicalValue,
    /// Set when `t` lies outside `[0, 1]`.
    pub extrapolated: bool,
}

/// Evaluates `h(aᵗ b^{1−t})`, i.e. `h` at the point `t·a + (1−t)·b` of magnitudes.
pub fn eval_on_segment(h: &Monomial, a: &[Rational], b: &[Rational], t: &Rational) -> Result<SegmentEval> {
    if a.len() != h.exponents.len() || b.len() != h.exponents.len() {
        return Err(Error::ArityMismatch { expected: h.exponents.len(), found: a.len().min(b.len()) });
    }
    let s = Rational::one() - t;
    let p: Coords = a.iter().zip(b).map(|(x, y)| t * x + s * y).collect();
    Ok(SegmentEval {
        value: h.eval(&tangible_point(&p)),
        extrapolated: t.is_negative() || *t > Rational::one(),
    })
}

/// A tropical polynomial in canonical decomposition: nonempty, with pairwise
/// distinct pure parts, terms sorted by decreasing pure part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<C = SupertropicalValue> {
    arity: usize,
    context: Context,
    terms: Vec<Monomial<C>>,
}

/// Classification of a monomial inside a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialClass {
    Essential,
    QuasiEssential,
    Inessential,
}

impl<C: Scalar> Polynomial<C> {
    /// Canonicalizes: duplicate pure parts are merged by addition.
    pub fn new(arity: usize, context: Context, terms: impl IntoIterator<Item = Monomial<C>>) -> Result<Self> {
        let mut merged: BTreeMap<Reverse<Coords>, C> = BTreeMap::new();
        for m in terms {
            if m.exponents.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: m.exponents.len() });
            }
            if let Some(bad) = m.exponents.iter().find(|e| !context.admits(e)) {
                let _ = bad;
                return Err(Error::Context { context: context.name() });
            }
            match merged.get_mut(&Reverse(m.exponents.clone())) {
                Some(c) => *c = c.plus(&m.coefficient),
                None => {
                    merged.insert(Reverse(m.exponents), m.coefficient);
                }
            }
        }
        if merged.is_empty() {
            return Err(Error::Precondition("a polynomial needs at least one term".to_string()));
        }
        let terms = merged.into_iter().map(|(Reverse(exponents), coefficient)| Monomial { coefficient, exponents }).collect();
        Ok(Self { arity, context, terms })
    }

    /// Like [`Polynomial::new`] with the smallest admissible context.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = Monomial<C>>) -> Result<Self> {
        let terms: Vec<Monomial<C>> = terms.into_iter().collect();
        let ctx = Context::infer(terms.iter().flat_map(|m| m.exponents.iter()));
        Self::new(arity, ctx, terms)
    }

    pub fn constant(c: C, arity: usize) -> Self {
        Self { arity, context: Context::Pol, terms: alloc::vec![Monomial::constant(c, arity)] }
    }

    /// The monomial `λ_k` (zero-based `k`).
    pub fn variable(k: usize, arity: usize) -> Self {
        let mut e = alloc::vec![Rational::zero(); arity];
        e[k] = Rational::one();
        Self { arity, context: Context::Pol, terms: alloc::vec![Monomial::new(C::from_magnitude(Rational::zero()), e)] }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn context(&self) -> Context {
        self.context
    }

    pub fn terms(&self) -> &[Monomial<C>] {
        &self.terms
    }

    pub fn term(&self, i: usize) -> &Monomial<C> {
        &self.terms[i]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Re-labels the context; fails when some exponent is not admitted.
    pub fn with_context(&self, context: Context) -> Result<Self> {
        Self::new(self.arity, context, self.terms.iter().cloned())
    }

    /// Index of the term with the given pure part.
    pub fn find_term(&self, exponents: &[Rational]) -> Option<usize> {
        self.terms.iter().position(|m| m.exponents == exponents)
    }

    /// Coefficient-wise tangible lift `ĥf`.
    pub fn tangible_lift(&self) -> Self {
        Self { arity: self.arity, context: self.context, terms: self.terms.iter().map(Monomial::lift).collect() }
    }

    pub fn map_coefficients<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial {
            arity: self.arity,
            context: self.context,
            terms: self.terms.iter().map(|m| Monomial { coefficient: f(&m.coefficient), exponents: m.exponents.clone() }).collect(),
        }
    }

    /// Sub-sum over the given term indices; `None` if the selection is empty.
    pub fn sub_sum(&self, keep: impl Fn(usize) -> bool) -> Option<Self> {
        let terms: Vec<_> = self.terms.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, m)| m.clone()).collect();
        (!terms.is_empty()).then(|| Self { arity: self.arity, context: self.context, terms })
    }

    /// The polynomial without term `i`; `None` for a monomial.
    pub fn without_term(&self, i: usize) -> Option<Self> {
        self.sub_sum(|j| j != i)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Self::new(self.arity, self.context.max(other.context), self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn times(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        let terms = self.terms.iter().flat_map(|a| other.terms.iter().map(move |b| a.times(b)));
        Self::new(self.arity, self.context.max(other.context), terms)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(C::from_magnitude(Rational::zero()), self.arity);
        for _ in 0..k {
            acc = acc.times(self)?;
        }
        Ok(acc)
    }

    fn check_arity(&self, n: usize) -> Result<()> {
        if n == self.arity {
            Ok(())
        } else {
            Err(Error::ArityMismatch { expected: self.arity, found: n })
        }
    }

    /// Value at a tangible point.
    pub fn eval_tangible(&self, x: &[Rational]) -> Result<C> {
        self.check_arity(x.len())?;
        let mut it = self.terms.iter().map(|m| m.eval_tangible(x));
        let first = it.next().expect("nonempty");
        Ok(it.fold(first, |acc, v| acc.plus(&v)))
    }

    /// Magnitude of the maximum at a tangible point.
    pub fn max_magnitude(&self, x: &[Rational]) -> Rational {
        self.terms.iter().map(|m| m.magnitude_at(x)).max().expect("nonempty")
    }

    /// Indices of the terms whose lifted values attain the maximum at `x`.
    pub fn dominant_terms(&self, x: &[Rational]) -> Vec<usize> {
        let vals: Vec<Rational> = self.terms.iter().map(|m| m.magnitude_at(x)).collect();
        let max = *vals.iter().max().expect("nonempty");
        vals.iter().enumerate().filter(|(_, v)| **v == max).map(|(i, _)| i).collect()
    }

    /// Tie hyperplanes `h_i = h_j` of all term pairs.
    pub fn tie_hyperplanes(&self) -> Vec<Hyperplane> {
        let mut out = Vec::new();
        for (i, a) in self.terms.iter().enumerate() {
            for b in &self.terms[i + 1..] {
                let normal: Coords = a.exponents.iter().zip(&b.exponents).map(|(x, y)| x - y).collect();
                if let Some(h) = Hyperplane::new(normal, b.coefficient.magnitude() - a.coefficient.magnitude()) {
                    out.push(h);
                }
            }
        }
        out
    }

    /// Hyperplanes on which a term of `self` ties a term of `other`.
    pub fn cross_hyperplanes(&self, other: &Self) -> Vec<Hyperplane> {
        let mut out = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let normal: Coords = a.exponents.iter().zip(&b.exponents).map(|(x, y)| x - y).collect();
                if let Some(h) = Hyperplane::new(normal, b.coefficient.magnitude() - a.coefficient.magnitude()) {
                    out.push(h);
                }
            }
        }
        out
    }

    /// The dominance arrangement of the tie hyperplanes (arity 1 or 2).
    pub fn dominance_arrangement(&self) -> Result<Arrangement> {
        Arrangement::new(self.arity, self.tie_hyperplanes())
    }

    /// Exact classification of every term, decided on the dominance arrangement.
    pub fn classify_all(&self) -> Result<Vec<MonomialClass>> {
        if self.is_monomial() {
            return Ok(alloc::vec![MonomialClass::Essential]);
        }
        let arr = self.dominance_arrangement()?;
        let mut unique = alloc::vec![false; self.len()];
        let mut touches = alloc::vec![false; self.len()];
        for cell in arr.cells() {
            let dom = self.dominant_terms(&cell.sample);
            for &i in &dom {
                touches[i] = true;
            }
            if cell.dim == self.arity && dom.len() == 1 {
                unique[dom[0]] = true;
            }
        }
        Ok((0..self.len())
            .map(|i| {
                if unique[i] {
                    MonomialClass::Essential
                } else if touches[i] {
                    MonomialClass::QuasiEssential
                } else {
                    MonomialClass::Inessential
                }
            })
            .collect())
    }

    pub fn classify_monomial(&self, i: usize) -> Result<MonomialClass> {
        if i >= self.len() {
            return Err(Error::Precondition("term index out of range".to_string()));
        }
        Ok(self.classify_all()?[i])
    }

    /// Certificate check at user-supplied tangible witness points, for any arity.
    /// `Some(Essential)` if term `i` strictly dominates at some witness,
    /// `Some(QuasiEssential)` if it only ties the maximum somewhere, `None` otherwise.
    pub fn classify_at_witnesses(&self, i: usize, witnesses: &[Coords]) -> Result<Option<MonomialClass>> {
        let mut touched = false;
        for w in witnesses {
            self.check_arity(w.len())?;
            let dom = self.dominant_terms(w);
            if dom == [i] {
                return Ok(Some(MonomialClass::Essential));
            }
            touched |= dom.contains(&i);
        }
        Ok(touched.then_some(MonomialClass::QuasiEssential))
    }

    /// Sum of the essential monomials.
    pub fn shell(&self) -> Result<Self> {
        let classes = self.classify_all()?;
        Ok(self.sub_sum(|i| classes[i] == MonomialClass::Essential).expect("some term is essential"))
    }

    /// Whether every essential monomial has a tangible coefficient.
    pub fn is_tangible_polynomial(&self) -> Result<bool> {
        let classes = self.classify_all()?;
        Ok(self.terms.iter().zip(classes).all(|(m, c)| c != MonomialClass::Essential || m.coefficient.is_tangible()))
    }

    pub fn has_tangible_coefficients(&self) -> bool {
        self.terms.iter().all(|m| m.coefficient.is_tangible())
    }
}

impl Polynomial<SupertropicalValue> {
    /// Value at an arbitrary point of `F^(n)`.
    pub fn eval(&self, a: &[SupertropicalValue]) -> Result<SupertropicalValue> {
        self.check_arity(a.len())?;
        let mut it = self.terms.iter().map(|m| m.eval(a));
        let first = it.next().expect("nonempty");
        Ok(it.fold(first, |acc, v| &acc + &v))
    }

    /// Whether `a` is a corner root: the lifted polynomial is ghost at the lifted point.
    pub fn is_corner_root(&self, a: &[SupertropicalValue]) -> Result<bool> {
        self.check_arity(a.len())?;
        Ok(self.dominant_terms(&magnitudes(a)).len() >= 2)
    }

    /// Ghost-point variant: monomials involving a ghost coordinate become ghost.
    /// `mask[k]` marks coordinate `k` as ghost.
    pub fn ghost_masked(&self, mask: &[bool]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|m| {
                let mut c = m.coefficient.clone();
                if m.exponents.iter().zip(mask).any(|(e, g)| *g && !e.is_zero()) {
                    c.tag = Tag::Ghost;
                }
                Monomial { coefficient: c, exponents: m.exponents.clone() }
            })
            .collect();
        Self { arity: self.arity, context: self.context, terms }
    }
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_polynomial(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use alloc::vec;

    fn t(n: i128) -> SupertropicalValue {
        SupertropicalValue::tangible(int(n))
    }
    fn mono(c: SupertropicalValue, e: &[i128]) -> Monomial {
        Monomial::new(c, e.iter().map(|x| int(*x)).collect())
    }
    fn quad() -> Polynomial {
        Polynomial::from_terms(1, [mono(t(0), &[2]), mono(t(3), &[1]), mono(t(6), &[0])]).unwrap()
    }

    #[test]
    fn evaluation_of_quadratic() {
        let f = quad();
        assert_eq!(f.eval(&[t(3)]).unwrap(), SupertropicalValue::ghost(int(6)));
        assert_eq!(f.eval(&[t(0)]).unwrap(), t(6));
        assert_eq!(f.eval(&[t(10)]).unwrap(), t(20));
        assert!(f.eval(&[t(1), t(2)]).is_err());
    }

    #[test]
    fn ghost_constant_dominates_below() {
        let f = Polynomial::from_terms(1, [mono(t(0), &[1]), mono(SupertropicalValue::ghost(int(2)), &[0])]).unwrap();
        assert_eq!(f.eval(&[t(5)]).unwrap(), t(5));
        assert_eq!(f.eval(&[t(1)]).unwrap(), SupertropicalValue::ghost(int(2)));
        // a ghost coordinate raised to a nonzero power is ghost
        assert_eq!(f.eval(&[SupertropicalValue::ghost(int(5))]).unwrap(), SupertropicalValue::ghost(int(5)));
    }

    #[test]
    fn canonicalization_merges_duplicates() {
        let f = Polynomial::from_terms(1, [mono(t(1), &[0]), mono(t(0), &[1]), mono(t(1), &[0])]).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.terms()[0].exponents, vec![int(1)]);
        assert_eq!(f.terms()[1].coefficient, SupertropicalValue::ghost(int(1)));
        assert!(Polynomial::<SupertropicalValue>::from_terms(1, []).is_err());
    }

    #[test]
    fn contexts() {
        let lau = Polynomial::from_terms(1, [mono(t(0), &[-1])]).unwrap();
        assert_eq!(lau.context(), Context::Lau);
        assert!(lau.with_context(Context::Pol).is_err());
        let rat = Polynomial::from_terms(1, [Monomial::new(t(0), vec![frac(1, 2)])]).unwrap();
        assert_eq!(rat.context(), Context::Ratl);
    }

    #[test]
    fn quasi_essential_middle_term() {
        let f = quad();
        assert_eq!(f.classify_all().unwrap(), vec![MonomialClass::Essential, MonomialClass::QuasiEssential, MonomialClass::Essential]);
        assert_eq!(f.shell().unwrap().len(), 2);
    }

    #[test]
    fn dominated_cross_term() {
        let f = Polynomial::from_terms(2, [mono(t(2), &[2, 0]), mono(t(2), &[0, 2]), mono(t(0), &[1, 1]), mono(t(0), &[0, 0])]).unwrap();
        let i = f.find_term(&[int(1), int(1)]).unwrap();
        assert_eq!(f.classify_monomial(i).unwrap(), MonomialClass::Inessential);
        let g = Polynomial::from_terms(2, [mono(t(2), &[2, 0]), mono(t(2), &[0, 2]), mono(t(0), &[0, 0])]).unwrap();
        assert_eq!(f.shell().unwrap(), g);
        assert_eq!(g.shell().unwrap(), g);
    }

    #[test]
    fn tangibility() {
        let f = Polynomial::from_terms(1, [mono(t(0), &[1]), mono(t(2), &[0])]).unwrap();
        assert!(f.is_tangible_polynomial().unwrap());
        assert_eq!(f.eval(&[t(2)]).unwrap(), SupertropicalValue::ghost(int(2)));
        let bad = Polynomial::from_terms(1, [mono(t(0), &[2]), mono(SupertropicalValue::ghost(int(2)), &[1]), mono(t(1), &[0])]).unwrap();
        assert!(!bad.is_tangible_polynomial().unwrap());
        let ghost_const = Polynomial::constant(SupertropicalValue::ghost(int(2)), 1);
        assert!(!ghost_const.is_tangible_polynomial().unwrap());
    }

    #[test]
    fn segment_evaluation() {
        let h = mono(t(0), &[1, 1]);
        let r = eval_on_segment(&h, &[int(0), int(0)], &[int(2), int(4)], &frac(1, 2)).unwrap();
        assert_eq!(r.value, t(3));
        assert!(!r.extrapolated);
        let r0 = eval_on_segment(&h, &[int(0), int(0)], &[int(2), int(4)], &int(0)).unwrap();
        assert_eq!(r0.value, h.eval(&[t(2), t(4)]));
        assert!(eval_on_segment(&h, &[int(0), int(0)], &[int(2), int(4)], &int(2)).unwrap().extrapolated);
    }

    #[test]
    fn witness_mode_in_three_variables() {
        // λ1 + λ2 + λ3 + 0
        let f = Polynomial::from_terms(3, [mono(t(0), &[1, 0, 0]), mono(t(0), &[0, 1, 0]), mono(t(0), &[0, 0, 1]), mono(t(0), &[0, 0, 0])]).unwrap();
        assert!(f.classify_all().is_err());
        let w = vec![vec![int(1), int(0), int(0)], vec![int(0), int(0), int(0)]];
        let i = f.find_term(&[int(1), int(0), int(0)]).unwrap();
        assert_eq!(f.classify_at_witnesses(i, &w).unwrap(), Some(MonomialClass::Essential));
        assert_eq!(f.classify_at_witnesses(i, &w[1..]).unwrap(), Some(MonomialClass::QuasiEssential));
    }
}
