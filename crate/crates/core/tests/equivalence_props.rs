mod common;

use common::*;
use proptest::prelude::*;
use trop_core::complex::AlgebraicSet;
use trop_core::equivalence::{check_admissible, default_witnesses, equal_on, essentially_agree, Verdict};
use trop_core::rational::int;
use trop_core::{corner_locus, parse_polynomial_with_arity, Polynomial};

fn p(s: &str) -> Polynomial {
    parse_polynomial_with_arity(s, 2).unwrap()
}

fn line() -> Polynomial {
    p("x1 + x2 + 0")
}

fn ghost(f: &Polynomial) -> Polynomial {
    f.map_coefficients(|c| c.nu())
}

/// `(f + h·ℓ, f + h·ℓ^ν)`: equal on the tropical line `Z(ℓ)`.
fn related_pair(f: &Polynomial, h: &Polynomial) -> (Polynomial, Polynomial) {
    let l = line();
    (f.plus(&h.times(&l).unwrap()).unwrap(), f.plus(&h.times(&ghost(&l)).unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relation_is_an_equivalence(f in poly(2, 3, false), h in poly(2, 2, false), k in poly(2, 2, false)) {
        let x = corner_locus(&line()).unwrap();
        let (a, b) = related_pair(&f, &h);
        let (_, c) = related_pair(&f, &k.times(&h).unwrap());
        prop_assert!(equal_on(&x, &a, &a).unwrap());
        prop_assert_eq!(equal_on(&x, &a, &b).unwrap(), equal_on(&x, &b, &a).unwrap());
        prop_assert!(equal_on(&x, &a, &b).unwrap());
        if equal_on(&x, &b, &c).unwrap() {
            prop_assert!(equal_on(&x, &a, &c).unwrap());
        }
    }

    #[test]
    fn relation_respects_operations(f in poly(2, 3, false), h in poly(2, 2, false), g in poly(2, 3, false)) {
        let x = corner_locus(&line()).unwrap();
        let (a, b) = related_pair(&f, &h);
        prop_assert!(equal_on(&x, &a.plus(&g).unwrap(), &b.plus(&g).unwrap()).unwrap());
        prop_assert!(equal_on(&x, &a.times(&g).unwrap(), &b.times(&g).unwrap()).unwrap());
    }

    #[test]
    fn restriction_is_monotone(f in poly(2, 3, true), g in poly(2, 3, true)) {
        let y = corner_locus(&line()).unwrap();
        let x = AlgebraicSet::fiber(&[int(0), int(0)]).unwrap();
        if equal_on(&y, &f, &g).unwrap() {
            prop_assert!(equal_on(&x, &f, &g).unwrap());
        }
        let whole = AlgebraicSet::whole(2).unwrap();
        if equal_on(&whole, &f, &g).unwrap() {
            prop_assert!(equal_on(&y, &f, &g).unwrap());
        }
    }

    #[test]
    fn equality_implies_essential_agreement(f in poly(2, 3, false), h in poly(2, 2, false)) {
        let x = corner_locus(&line()).unwrap();
        let (a, b) = related_pair(&f, &h);
        let agreement = essentially_agree(&x, &a, &b).unwrap();
        prop_assert!(agreement.agrees);
        prop_assert!(agreement.exceptions.is_empty());
    }

    #[test]
    fn essential_agreement_never_changes_magnitudes(f in poly(2, 3, true), g in poly(2, 3, true)) {
        let x = corner_locus(&line()).unwrap();
        prop_assert!(essentially_agree(&x, &f, &g).is_ok());
    }

    #[test]
    fn powers_cancel(f in poly(2, 2, false), g in poly(2, 2, false), k in 2u32..=3) {
        let x = corner_locus(&line()).unwrap();
        if equal_on(&x, &f.pow(k).unwrap(), &g.pow(k).unwrap()).unwrap() {
            prop_assert!(equal_on(&x, &f, &g).unwrap());
        }
    }

    #[test]
    fn tangible_hypersurfaces_are_admissible(f in poly(2, 4, false)) {
        prop_assume!(f.is_tangible_polynomial().unwrap() && f.shell().unwrap().len() >= 2);
        let x = corner_locus(&f).unwrap();
        let v = check_admissible(&x, &default_witnesses(&x)).unwrap();
        prop_assert_eq!(v.verdict, Verdict::Admissible);
    }
}

/// Every binomial facet of each curve, erased in turn.
fn erased_verdicts(f: &Polynomial) -> Vec<(Vec<usize>, Verdict)> {
    let x = corner_locus(f).unwrap();
    let arr = x.carrier.arrangement().clone();
    let mut out = Vec::new();
    let mut seen = Vec::new();
    for facet in x.facets().iter().filter(|fc| fc.dim == 1) {
        let c = *facet.cells.cells().iter().find(|&&c| arr.cell(c).dim == 1).unwrap();
        let dom = f.dominant_terms(&arr.cell(c).sample);
        if dom.len() != 2 || seen.contains(&dom) {
            continue;
        }
        seen.push(dom.clone());
        let erased = x.erase_binomial_facet(0, dom[0], dom[1]).unwrap();
        assert!(!erased.carrier.same_points(&x.carrier).unwrap());
        let v = check_admissible(&erased, &default_witnesses(&erased)).unwrap();
        out.push((dom, v.verdict));
    }
    out
}

#[test]
fn erased_facets_are_caught() {
    for f in ["x1 + x2 + 0", "x1 + x2^2 + 0", "x1^2 + x2^2 + 1*x1*x2 + 1*x1 + 1*x2 + 0", "x1^2*x2^2 + x1^2 + x2^2 + 0 + 1*x1*x2"] {
        let f = p(f);
        for (dom, verdict) in erased_verdicts(&f) {
            assert_eq!(verdict, Verdict::Inadmissible, "erasing facet {dom:?} of {f}");
        }
    }
}
