mod common;

use common::poly;
use proptest::prelude::*;
use trop_core::dimension::reduce_facets;
use trop_core::{corner_locus, dimension, AlgebraicSet};

#[test]
fn whole_space_dimension() {
    for n in 1..=2 {
        assert_eq!(dimension(&AlgebraicSet::whole(n).unwrap()).unwrap(), n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn substitutions_agree_on_facets(f in poly(2, 5, false)) {
        prop_assume!(f.is_tangible_polynomial().unwrap() && f.len() >= 2);
        let x = corner_locus(&f).unwrap();
        prop_assume!(!x.is_empty());
        let arr = x.carrier.arrangement();
        for r in reduce_facets(&x).unwrap() {
            prop_assert_eq!(r.free + r.substitutions.len(), 2);
            prop_assert_eq!(r.free, r.facet.dim);
            for &c in r.facet.cells.cells() {
                if arr.cell(c).dim != r.facet.dim {
                    continue;
                }
                for p in arr.interior_points(c) {
                    prop_assert!(r.relations.iter().all(|rel| rel.holds_at(&p)));
                    let mut g = f.clone();
                    for s in &r.substitutions {
                        prop_assert_eq!(s.apply(&f).unwrap().eval_tangible(&p).unwrap(), f.eval_tangible(&p).unwrap());
                        g = s.apply(&g).unwrap();
                    }
                    prop_assert_eq!(g.eval_tangible(&p).unwrap(), f.eval_tangible(&p).unwrap());
                }
            }
        }
        prop_assert_eq!(dimension(&x).unwrap(), 1);
    }
}
