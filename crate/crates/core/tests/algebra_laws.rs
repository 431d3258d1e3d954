mod common;

use common::*;
use proptest::prelude::*;
use trop_core::rational::int;
use trop_core::{corner_locus, parse_polynomial_with_arity, Layer, LayeredValue, Rational, SupertropicalValue};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i128..=20, 1i128..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn supertropical() -> impl Strategy<Value = SupertropicalValue> {
    (rational(), any::<bool>()).prop_map(|(m, g)| if g { SupertropicalValue::ghost(m) } else { SupertropicalValue::tangible(m) })
}

fn layered() -> impl Strategy<Value = LayeredValue> {
    (rational(), prop_oneof![4 => (1u64..=4).prop_map(Layer::Finite), 1 => Just(Layer::Infinite)])
        .prop_map(|(m, l)| LayeredValue::new(m, l))
}

proptest! {
    #[test]
    fn supertropical_semiring_axioms(a in supertropical(), b in supertropical(), c in supertropical()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &SupertropicalValue::one(), a.clone());
    }

    #[test]
    fn ghosts_form_an_ideal(a in supertropical(), b in supertropical()) {
        prop_assert_eq!(&a + &a, a.nu());
        prop_assert!((&a.nu() * &b).is_ghost());
        let s = &a.nu() + &b;
        prop_assert!(s.is_ghost() || b.nu_cmp(&a) == core::cmp::Ordering::Greater);
    }

    #[test]
    fn layered_semiring_axioms(a in layered(), b in layered(), c in layered()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn collapse_is_a_homomorphism(a in layered(), b in layered()) {
        prop_assert_eq!((&a + &b).to_supertropical(), &a.to_supertropical() + &b.to_supertropical());
        prop_assert_eq!((&a * &b).to_supertropical(), &a.to_supertropical() * &b.to_supertropical());
    }

    #[test]
    fn value_text_round_trip(a in supertropical(), b in layered()) {
        prop_assert_eq!(a.to_string().parse::<SupertropicalValue>().unwrap(), a);
        prop_assert_eq!(b.to_string().parse::<LayeredValue>().unwrap(), b);
    }

    #[test]
    fn polynomial_text_round_trip(f in poly(2, 5, true)) {
        let text = f.to_string();
        prop_assert_eq!(parse_polynomial_with_arity(&text, 2).unwrap(), f);
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in poly(2, 3, true), g in poly(2, 3, true), p in proptest::collection::vec(-8i128..=8, 2)) {
        let x = halves(&p);
        let (fx, gx) = (f.eval_tangible(&x).unwrap(), g.eval_tangible(&x).unwrap());
        prop_assert_eq!(f.plus(&g).unwrap().eval_tangible(&x).unwrap(), &fx + &gx);
        prop_assert_eq!(f.times(&g).unwrap().eval_tangible(&x).unwrap(), &fx * &gx);
    }

    #[test]
    fn shell_keeps_the_corner_locus(f in poly(2, 4, false)) {
        let shell = f.shell().unwrap();
        let a = corner_locus(&f).unwrap();
        let b = corner_locus(&shell).unwrap();
        prop_assert!(a.carrier.same_points(&b.carrier).unwrap());
        for p in half_grid(2, 3) {
            let x = halves(&p);
            prop_assert_eq!(f.max_magnitude(&x), shell.max_magnitude(&x));
        }
    }

    #[test]
    fn layered_evaluation_collapses_to_supertropical(f in poly(2, 4, false), p in proptest::collection::vec(-8i128..=8, 2)) {
        let x = halves(&p);
        let lf = trop_core::layered::to_layered(&f);
        prop_assert_eq!(lf.eval_tangible(&x).unwrap().to_supertropical(), f.eval_tangible(&x).unwrap());
    }
}

#[test]
fn identity_and_units() {
    let one = SupertropicalValue::one();
    assert_eq!(one.magnitude, int(0));
    assert!(one.is_tangible());
}
