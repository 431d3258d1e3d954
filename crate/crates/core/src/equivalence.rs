//! Equality of polynomial functions on algebraic sets, essential agreement,
//! and witness-based admissibility.
//!
//! Functions are compared on the tangible points of a set.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::arrangement::{Coords, Hyperplane, Shape};
use crate::complex::{AlgebraicSet, CellSet};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::rational::{int, Rational};
use crate::semiring::SupertropicalValue;

fn comparison_hyperplanes(f: &Polynomial, g: &Polynomial) -> Vec<Hyperplane> {
    let mut hs = f.tie_hyperplanes();
    hs.extend(g.tie_hyperplanes());
    hs.extend(f.cross_hyperplanes(g));
    hs
}

fn check_arity(x: &AlgebraicSet, f: &Polynomial, g: &Polynomial) -> Result<()> {
    for p in [f, g] {
        if p.arity() != x.arity() {
            return Err(Error::ArityMismatch { expected: x.arity(), found: p.arity() });
        }
    }
    Ok(())
}

/// The carrier of `x` refined so that `f`, `g` and their difference have
/// constant behaviour on every cell.
fn refined(x: &AlgebraicSet, f: &Polynomial, g: &Polynomial) -> Result<CellSet> {
    check_arity(x, f, g)?;
    x.carrier.refine_with(comparison_hyperplanes(f, g))
}

/// Cells (of a refinement of `x`) on which `f` and `g` differ.
pub fn disagreements(x: &AlgebraicSet, f: &Polynomial, g: &Polynomial) -> Result<CellSet> {
    let r = refined(x, f, g)?;
    let arr = r.arrangement().clone();
    let cells = r
        .cells()
        .iter()
        .copied()
        .filter(|&c| {
            let s = &arr.cell(c).sample;
            f.eval_tangible(s).expect("arity") != g.eval_tangible(s).expect("arity")
        })
        .collect();
    Ok(CellSet::new(arr, cells))
}

/// Whether `f(a) = g(a)` (magnitude and tag) at every tangible point of `x`.
pub fn equal_on(x: &AlgebraicSet, f: &Polynomial, g: &Polynomial) -> Result<bool> {
    Ok(disagreements(x, f, g)?.is_empty())
}

/// Outcome of an essential agreement test.
#[derive(Debug, Clone)]
pub struct Agreement {
    pub agrees: bool,
    /// Cells of `x` outside the largest open set on which `f = g`.
    pub exceptions: CellSet,
}

impl Agreement {
    /// Sample points of the exceptional cells.
    pub fn exception_points(&self) -> Vec<Coords> {
        let arr = self.exceptions.arrangement();
        self.exceptions.cells().iter().map(|&c| arr.cell(c).sample.clone()).collect()
    }
}

/// Largest subset of `part` that is open in `whole`: cells whose open star in
/// `whole` stays inside `part`.
fn open_part(whole: &CellSet, part: &BTreeSet<usize>) -> BTreeSet<usize> {
    let arr = whole.arrangement();
    part.iter()
        .copied()
        .filter(|&c| whole.cells().iter().all(|&d| !arr.is_face_of(c, d) || part.contains(&d)))
        .collect()
}

/// Whether the cells `part` form a dense subset of `whole`.
fn is_dense(whole: &CellSet, part: &BTreeSet<usize>) -> bool {
    let arr = whole.arrangement();
    whole.cells().iter().all(|&c| part.iter().any(|&d| arr.is_face_of(c, d)))
}

/// Whether `f` and `g` agree on an open dense subset of `x`. The exceptional
/// cells are reported; `f` and `g` must have equal magnitudes there.
pub fn essentially_agree(x: &AlgebraicSet, f: &Polynomial, g: &Polynomial) -> Result<Agreement> {
    let r = refined(x, f, g)?;
    let arr = r.arrangement().clone();
    let value = |p: &Polynomial, c: usize| p.eval_tangible(&arr.cell(c).sample).expect("arity");
    let agree: BTreeSet<usize> = r.cells().iter().copied().filter(|&c| value(f, c) == value(g, c)).collect();
    let open = open_part(&r, &agree);
    let agrees = is_dense(&r, &open);
    let exceptions: BTreeSet<usize> = r.cells().difference(&open).copied().collect();
    if agrees {
        for &c in &exceptions {
            let (a, b) = (value(f, c), value(g, c));
            if a.magnitude != b.magnitude {
                return Err(Error::Internal(format!(
                    "essentially agreeing functions differ in magnitude at {:?}: {a} vs {b}",
                    arr.cell(c).sample
                )));
            }
        }
    }
    Ok(Agreement { agrees, exceptions: CellSet::new(arr, exceptions) })
}

/// Witness-mode comparison for arities without exact complexes: whether
/// `f = g` at each point.
pub fn agree_at_points(f: &Polynomial, g: &Polynomial, points: &[Coords]) -> Result<Vec<bool>> {
    points.iter().map(|p| Ok(f.eval_tangible(p)? == g.eval_tangible(p)?)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Admissible,
    Inadmissible,
    Unknown,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Admissible => "Admissible",
            Verdict::Inadmissible => "Inadmissible",
            Verdict::Unknown => "Unknown",
        }
    }
}

/// A pair that essentially agrees on `x` without being equal on it.
#[derive(Debug, Clone)]
pub struct Witness {
    pub pair: (Polynomial, Polynomial),
    pub exceptions: CellSet,
    /// A point where the two functions differ.
    pub disagreement: Coords,
}

#[derive(Debug, Clone)]
pub struct AdmissibilityVerdict {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// The tangible polynomial whose hypersurface certifies admissibility.
    pub certificate: Option<Polynomial>,
    /// Number of witness pairs tested.
    pub tested: usize,
}

/// Tests a pair: `Some(witness)` when it proves `x` inadmissible.
pub fn test_witness(x: &AlgebraicSet, f: &Polynomial, g: &Polynomial) -> Result<Option<Witness>> {
    let agreement = essentially_agree(x, f, g)?;
    if !agreement.agrees {
        return Ok(None);
    }
    let diff = disagreements(x, f, g)?;
    Ok(diff.cells().iter().next().map(|&c| Witness {
        pair: (f.clone(), g.clone()),
        exceptions: agreement.exceptions.clone(),
        disagreement: diff.arrangement().cell(c).sample.clone(),
    }))
}

/// Runs the witness family, then falls back on the tangible-hypersurface certificate.
pub fn check_admissible(x: &AlgebraicSet, witnesses: &[(Polynomial, Polynomial)]) -> Result<AdmissibilityVerdict> {
    let certificate = x.tangible_hypersurface().cloned();
    for (k, (f, g)) in witnesses.iter().enumerate() {
        if let Some(w) = test_witness(x, f, g)? {
            if certificate.is_some() {
                return Err(Error::Internal(format!("witness {k} refutes a certified hypersurface")));
            }
            return Ok(AdmissibilityVerdict { verdict: Verdict::Inadmissible, witness: Some(w), certificate: None, tested: k + 1 });
        }
    }
    let verdict = if certificate.is_some() { Verdict::Admissible } else { Verdict::Unknown };
    Ok(AdmissibilityVerdict { verdict, witness: None, certificate, tested: witnesses.len() })
}

/// Largest term count for which all pairs of sub-sums are emitted.
pub const FULL_SUBSUM_TERMS: usize = 4;

fn push_pair(out: &mut Vec<(Polynomial, Polynomial)>, f: Polynomial, g: Polynomial) {
    if f != g && !out.iter().any(|(a, b)| (*a == f && *b == g) || (*a == g && *b == f)) {
        out.push((f, g));
    }
}

fn monomial_poly(m: &Monomial, arity: usize) -> Polynomial {
    Polynomial::from_terms(arity, [m.clone()]).expect("a single term is valid")
}

/// The witness family used by `check_admissible` when none is supplied.
///
/// For every defining polynomial `f = Σ h_i` with `m` terms:
/// - the erased-facet pairs `(f_{-i} f_{-j}, f · f_{-ij})` for `i < j`;
/// - sub-sum pairs: all pairs of sub-sums when `m ≤ FULL_SUBSUM_TERMS`, otherwise
///   `(f_{-i}, f)` and `(h_i + h_j, f_{-ij})`;
///
/// and for every vertex `v` of `x` and every monomial `h` (terms of the defining
/// polynomials and the variables), the shifted pair `(h, h + h(v))`; plus the
/// localized pairs of `localized_witnesses`.
///
/// The count is at most `Σ_f (m² + 2^(2·min(m,4))) + |V|·(Σ_f m + n) + Σ_{f,v} C(|T_v|, 2)`.
pub fn default_witnesses(x: &AlgebraicSet) -> Vec<(Polynomial, Polynomial)> {
    let n = x.arity();
    let mut polys: Vec<Polynomial> = x.defining.clone();
    for (f, g) in &x.pairs {
        polys.push(f.clone());
        polys.push(g.clone());
    }
    let mut out = Vec::new();
    for f in &polys {
        let m = f.len();
        let minus = |skip: &[usize]| f.sub_sum(|k| !skip.contains(&k));
        for i in 0..m {
            for j in i + 1..m {
                if let (Some(fi), Some(fj), Some(fij)) = (minus(&[i]), minus(&[j]), minus(&[i, j])) {
                    if let (Ok(a), Ok(b)) = (fi.times(&fj), f.times(&fij)) {
                        push_pair(&mut out, a, b);
                    }
                }
            }
        }
        if m <= FULL_SUBSUM_TERMS {
            let subs: Vec<Polynomial> = (1u32..(1 << m)).filter_map(|mask| f.sub_sum(|k| mask & (1 << k) != 0)).collect();
            for (a, p) in subs.iter().enumerate() {
                for q in &subs[a + 1..] {
                    push_pair(&mut out, p.clone(), q.clone());
                }
            }
        } else {
            for i in 0..m {
                if let Some(fi) = minus(&[i]) {
                    push_pair(&mut out, fi, f.clone());
                }
                for j in i + 1..m {
                    if let (Some(b), Some(rest)) = (f.sub_sum(|k| k == i || k == j), minus(&[i, j])) {
                        push_pair(&mut out, b, rest);
                    }
                }
            }
        }
    }
    out.extend(localized_witnesses(x, &polys));
    let mut monomials: Vec<Monomial> = polys.iter().flat_map(|f| f.terms().iter().cloned()).collect();
    monomials.extend((0..n).map(|k| Polynomial::variable(k, n).terms()[0].clone()));
    monomials.dedup();
    for v in x.vertices() {
        for h in &monomials {
            let c = SupertropicalValue::tangible(h.magnitude_at(&v));
            let hp = monomial_poly(h, n);
            if let Ok(shifted) = hp.plus(&Polynomial::constant(c, n)) {
                push_pair(&mut out, hp, shifted);
            }
        }
    }
    out
}

/// `max_k |x_k − v_k|` minimized over the closure of cell `c`.
fn linf_distance(x: &AlgebraicSet, c: usize, v: &[Rational]) -> Rational {
    let cell = x.carrier.arrangement().cell(c);
    let norm = |p: &[Rational]| p.iter().zip(v).map(|(a, b)| (a - b).abs()).max().expect("arity ≥ 1");
    let (p, d, lo, hi) = match &cell.shape {
        Shape::Vertex(p) => return norm(p),
        Shape::Segment(a, b) => (a.clone(), b.iter().zip(a).map(|(x, y)| x - y).collect(), Some(int(0)), Some(int(1))),
        Shape::Ray { origin, direction } => (origin.clone(), direction.clone(), Some(int(0)), None),
        Shape::Line { point, direction } => (point.clone(), direction.clone(), None, None),
        Shape::Region => return int(0),
    };
    let offset: Coords = p.iter().zip(v).map(|(a, b)| a - b).collect();
    let mut ts: Vec<Rational> = lo.iter().chain(hi.iter()).copied().collect();
    for k in 0..d.len() {
        if !d[k].is_zero() {
            ts.push(-offset[k] / d[k]);
        }
        for l in k + 1..d.len() {
            for sign in [int(1), int(-1)] {
                let rate = d[k] - sign * d[l];
                if !rate.is_zero() {
                    ts.push((sign * offset[l] - offset[k]) / rate);
                }
            }
        }
    }
    ts.into_iter()
        .filter(|t| lo.is_none_or(|l| *t >= l) && hi.is_none_or(|h| *t <= h))
        .map(|t| norm(&p.iter().zip(&d).map(|(a, b)| a + t * b).collect::<Coords>()))
        .min()
        .unwrap_or_else(|| norm(&p))
}

/// `R(x) = f(v) − ε + D·max_k |x_k − v_k|` as a Laurent polynomial.
fn cone(v: &[Rational], top: Rational, slope: i128, eps: Rational) -> Polynomial {
    let n = v.len();
    let terms = (0..n).flat_map(|k| {
        [1i128, -1].map(|s| {
            let mut e = alloc::vec![int(0); n];
            e[k] = int(s * slope);
            Monomial::new(SupertropicalValue::tangible(top - eps - int(s * slope) * v[k]), e)
        })
    });
    Polynomial::from_terms(n, terms).expect("nonempty")
}

/// For each vertex `v` of `x` where at least three tangible terms `T_v` of a
/// defining polynomial tie, and each pair `{i, j} ⊂ T_v`, the pair
/// `(h_i + h_j + R, Σ_{T_v∖{i,j}} h + R)`. The cone `R` exceeds every term
/// outside a neighbourhood of `v` that meets no cell of `x` away from `v`, so
/// the pair can only differ near `v`.
pub fn localized_witnesses(x: &AlgebraicSet, polys: &[Polynomial]) -> Vec<(Polynomial, Polynomial)> {
    let n = x.arity();
    let arr = x.carrier.arrangement();
    let mut out = Vec::new();
    if x.carrier.dim() == Some(n) && n == 2 {
        return out;
    }
    for v in x.vertices() {
        let vc = arr.try_locate(&v).expect("vertex of the carrier");
        let far = x.carrier.cells().iter().copied().filter(|&c| !arr.is_face_of(vc, c));
        let delta = far.map(|c| linf_distance(x, c, &v)).min();
        let eps = delta.map_or(int(1), |d| d / int(2));
        for f in polys {
            let t = f.dominant_terms(&v);
            if t.len() < 3 || t.iter().any(|&i| f.term(i).coefficient.is_ghost()) {
                continue;
            }
            let lip = f
                .terms()
                .iter()
                .map(|m| m.exponents.iter().map(|e| e.abs()).sum::<Rational>())
                .max()
                .expect("nonempty");
            let slope = lip.floor().to_integer() + 1;
            let r = cone(&v, f.max_magnitude(&v), slope, eps);
            for (a, &i) in t.iter().enumerate() {
                for &j in &t[a + 1..] {
                    let pair = f.sub_sum(|k| k == i || k == j);
                    let rest = f.sub_sum(|k| k != i && k != j && t.contains(&k));
                    if let (Some(pair), Some(rest)) = (pair, rest) {
                        if let (Ok(g1), Ok(g2)) = (pair.plus(&r), rest.plus(&r)) {
                            push_pair(&mut out, g1, g2);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The relation `f ≡_X g` of functions on `X`.
#[derive(Debug, Clone)]
pub struct CongruenceOfX {
    pub carrier: AlgebraicSet,
    pub generators: Vec<(Polynomial, Polynomial)>,
}

impl CongruenceOfX {
    pub fn new(carrier: AlgebraicSet) -> Self {
        Self { carrier, generators: Vec::new() }
    }

    pub fn related(&self, f: &Polynomial, g: &Polynomial) -> Result<bool> {
        equal_on(&self.carrier, f, g)
    }
}

fn ghostify(f: &Polynomial) -> Polynomial {
    f.map_coefficients(|c| c.nu())
}

/// Whether `g` is tangible on an open dense subset of `x`.
fn tangible_dense(x: &AlgebraicSet, g: &Polynomial) -> Result<bool> {
    let r = x.carrier.refine_with(g.tie_hyperplanes())?;
    let arr = r.arrangement().clone();
    let tangible: BTreeSet<usize> =
        r.cells().iter().copied().filter(|&c| !g.eval_tangible(&arr.cell(c).sample).expect("arity").is_ghost()).collect();
    Ok(is_dense(&r, &open_part(&r, &tangible)))
}

/// Whether `g` is a tangible lift of `f` on `x`: `g^ν = f` on `x` and `g` is
/// tangible on an open dense subset.
pub fn is_tangible_lift(x: &AlgebraicSet, f: &Polynomial, g: &Polynomial) -> Result<bool> {
    Ok(g.has_tangible_coefficients() && equal_on(x, &ghostify(g), &ghostify(f))? && tangible_dense(x, g)?)
}

/// Largest number of candidate polynomials examined by the lift search.
pub const LIFT_SEARCH_LIMIT: usize = 200_000;

/// Searches tangible polynomials supported on `support` whose coefficients are
/// drawn from the coefficient magnitudes of `f`, zero, and their halves.
pub fn find_tangible_function_lift(x: &AlgebraicSet, f: &Polynomial, support: &[Coords]) -> Result<Option<Polynomial>> {
    let n = x.arity();
    if f.has_tangible_coefficients() && is_tangible_lift(x, f, f)? {
        return Ok(Some(f.clone()));
    }
    let mut coefficients: BTreeSet<Rational> = BTreeSet::new();
    coefficients.insert(Rational::from_integer(0));
    for m in f.terms() {
        coefficients.insert(m.coefficient.magnitude);
        coefficients.insert(m.coefficient.magnitude / Rational::from_integer(2));
    }
    let coefficients: Vec<Rational> = coefficients.into_iter().collect();
    let mut support: Vec<Coords> = support.to_vec();
    support.sort();
    support.dedup();
    let s = support.len();
    if s >= usize::BITS as usize {
        return Err(Error::Precondition("support too large".into()));
    }
    let mut examined = 0usize;
    let mut subsets: Vec<u64> = (1u64..(1u64 << s)).collect();
    subsets.sort_by_key(|m| m.count_ones());
    for mask in subsets {
        let chosen: Vec<&Coords> = (0..s).filter(|k| mask & (1 << k) != 0).map(|k| &support[k]).collect();
        let mut digits = alloc::vec![0usize; chosen.len()];
        loop {
            examined += 1;
            if examined > LIFT_SEARCH_LIMIT {
                return Ok(None);
            }
            let terms = chosen
                .iter()
                .zip(&digits)
                .map(|(e, &d)| Monomial::new(SupertropicalValue::tangible(coefficients[d]), (*e).clone()));
            let g = Polynomial::from_terms(n, terms)?;
            if is_tangible_lift(x, f, &g)? {
                return Ok(Some(g));
            }
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < coefficients.len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
    }
    Ok(None)
}

/// Exponent vectors with entries in `0..=degree` and total degree at most `degree`.
pub fn integer_support(arity: usize, degree: u32) -> Vec<Coords> {
    let mut out: Vec<Coords> = alloc::vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|v| {
                let used: i128 = v.iter().map(|e: &Rational| e.to_integer()).sum();
                (0..=(degree as i128 - used)).map(move |e| {
                    let mut w = v.clone();
                    w.push(Rational::from_integer(e));
                    w
                })
            })
            .collect();
    }
    out
}
