#![no_std]

extern crate alloc;

pub mod arrangement;
pub mod complex;
pub mod dimension;
pub mod equivalence;
pub mod error;
pub mod layered;
pub mod poly;
pub mod rational;
pub mod semiring;
pub mod text;

pub use complex::{corner_locus, corner_locus_pair, intersect, total_locus, AlgebraicSet, CellSet};
pub use dimension::{dimension, verify_chain, BinomialRelation, VarietyChain};
pub use equivalence::{check_admissible, default_witnesses, equal_on, essentially_agree, Verdict};
pub use error::{Error, Result};
pub use layered::{layered_set, layered_set_of, LayeredAlgebraicSet};
pub use poly::{Context, Monomial, MonomialClass, Point, Polynomial};
pub use rational::Rational;
pub use semiring::{Layer, LayeredValue, Scalar, SupertropicalValue, Tag};
pub use text::{parse_polynomial, parse_polynomial_with_arity};
