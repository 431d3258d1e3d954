//! Supertropical semifield over ℚ and the layered 1-semifield with sorts in ℕ≥1 ∪ {∞}.
//!
//! Both structures are max-plus: the multiplicative identity is the rational `0`
//! and multiplication adds magnitudes. Neither has an additive zero.

use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul};
use core::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// Tangible/ghost tag of a supertropical value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Tangible,
    Ghost,
}

/// An element `a` or `a^ν` of the supertropical semifield.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupertropicalValue {
    pub magnitude: Rational,
    pub tag: Tag,
}

impl SupertropicalValue {
    pub fn tangible(magnitude: Rational) -> Self {
        Self { magnitude, tag: Tag::Tangible }
    }

    pub fn ghost(magnitude: Rational) -> Self {
        Self { magnitude, tag: Tag::Ghost }
    }

    /// The multiplicative identity, tangible `0`.
    pub fn one() -> Self {
        Self::tangible(Rational::zero())
    }

    pub fn is_ghost(&self) -> bool {
        self.tag == Tag::Ghost
    }

    pub fn is_tangible(&self) -> bool {
        self.tag == Tag::Tangible
    }

    /// The ghost map ν.
    pub fn nu(&self) -> Self {
        Self::ghost(self.magnitude)
    }

    pub fn tangible_lift(&self) -> Self {
        Self::tangible(self.magnitude)
    }

    /// Compares ν-values, ignoring tags.
    pub fn nu_cmp(&self, other: &Self) -> Ordering {
        self.magnitude.cmp(&other.magnitude)
    }

    /// `a ≅_ν b`.
    pub fn nu_eq(&self, other: &Self) -> bool {
        self.magnitude == other.magnitude
    }

    /// Raises to a rational power: the magnitude scales, the tag is kept
    /// unless the exponent is zero.
    pub fn pow(&self, e: &Rational) -> Self {
        if e.is_zero() {
            Self::one()
        } else {
            Self { magnitude: self.magnitude * e, tag: self.tag }
        }
    }
}

impl Add for &SupertropicalValue {
    type Output = SupertropicalValue;

    fn add(self, rhs: Self) -> SupertropicalValue {
        match self.magnitude.cmp(&rhs.magnitude) {
            Ordering::Greater => self.clone(),
            Ordering::Less => rhs.clone(),
            Ordering::Equal => SupertropicalValue::ghost(self.magnitude),
        }
    }
}

impl Mul for &SupertropicalValue {
    type Output = SupertropicalValue;

    fn mul(self, rhs: Self) -> SupertropicalValue {
        let tag = if self.is_ghost() || rhs.is_ghost() { Tag::Ghost } else { Tag::Tangible };
        SupertropicalValue { magnitude: self.magnitude + rhs.magnitude, tag }
    }
}

impl Add for SupertropicalValue {
    type Output = SupertropicalValue;
    fn add(self, rhs: Self) -> SupertropicalValue {
        &self + &rhs
    }
}

impl Mul for SupertropicalValue {
    type Output = SupertropicalValue;
    fn mul(self, rhs: Self) -> SupertropicalValue {
        &self * &rhs
    }
}

impl fmt::Display for SupertropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            Tag::Tangible => write!(f, "{}", self.magnitude),
            Tag::Ghost => write!(f, "{}v", self.magnitude),
        }
    }
}

impl FromStr for SupertropicalValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.strip_suffix('v') {
            Some(m) => Ok(Self::ghost(parse_rational(m, 0)?)),
            None => Ok(Self::tangible(parse_rational(s, 0)?)),
        }
    }
}

/// A sort in ℕ≥1 ∪ {∞}. Arithmetic saturates at ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Layer {
    Finite(u64),
    Infinite,
}

impl Layer {
    pub const ONE: Layer = Layer::Finite(1);

    /// Returns `None` for `0`, which is not a valid sort.
    pub fn new(k: u64) -> Option<Self> {
        (k >= 1).then_some(Layer::Finite(k))
    }

    pub fn sat_add(self, other: Self) -> Self {
        match (self, other) {
            (Layer::Finite(a), Layer::Finite(b)) => a.checked_add(b).map_or(Layer::Infinite, Layer::Finite),
            _ => Layer::Infinite,
        }
    }

    pub fn sat_mul(self, other: Self) -> Self {
        match (self, other) {
            (Layer::Finite(a), Layer::Finite(b)) => a.checked_mul(b).map_or(Layer::Infinite, Layer::Finite),
            _ => Layer::Infinite,
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Layer::Finite(k) => write!(f, "{k}"),
            Layer::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Layer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(Layer::Infinite);
        }
        s.parse::<u64>()
            .ok()
            .and_then(Layer::new)
            .ok_or_else(|| Error::Parse { pos: 0, msg: "layer must be a positive integer or `inf`".to_string() })
    }
}

/// The element `⟨a⟩_ℓ` of the layered semifield.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LayeredValue {
    pub magnitude: Rational,
    pub layer: Layer,
}

impl LayeredValue {
    pub fn new(magnitude: Rational, layer: Layer) -> Self {
        Self { magnitude, layer }
    }

    pub fn tangible(magnitude: Rational) -> Self {
        Self::new(magnitude, Layer::ONE)
    }

    /// The sort map `s`.
    pub fn sort(&self) -> Layer {
        self.layer
    }

    /// Transition map `ν_{ℓ,k}`: keeps the magnitude and moves to the higher sort `target`.
    pub fn raise_to(&self, target: Layer) -> Option<Self> {
        (target >= self.layer).then(|| Self::new(self.magnitude, target))
    }

    /// Collapses the sort onto {1, ∞}: sort 1 is tangible, anything higher is ghost.
    pub fn to_supertropical(&self) -> SupertropicalValue {
        if self.layer == Layer::ONE {
            SupertropicalValue::tangible(self.magnitude)
        } else {
            SupertropicalValue::ghost(self.magnitude)
        }
    }
}

impl Add for &LayeredValue {
    type Output = LayeredValue;

    fn add(self, rhs: Self) -> LayeredValue {
        match self.magnitude.cmp(&rhs.magnitude) {
            Ordering::Greater => self.clone(),
            Ordering::Less => rhs.clone(),
            Ordering::Equal => LayeredValue::new(self.magnitude, self.layer.sat_add(rhs.layer)),
        }
    }
}

impl Mul for &LayeredValue {
    type Output = LayeredValue;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> LayeredValue {
        LayeredValue::new(self.magnitude + rhs.magnitude, self.layer.sat_mul(rhs.layer))
    }
}

impl Add for LayeredValue {
    type Output = LayeredValue;
    fn add(self, rhs: Self) -> LayeredValue {
        &self + &rhs
    }
}

impl Mul for LayeredValue {
    type Output = LayeredValue;
    fn mul(self, rhs: Self) -> LayeredValue {
        &self * &rhs
    }
}

impl fmt::Display for LayeredValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.magnitude, self.layer)
    }
}

impl FromStr for LayeredValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('@') {
            Some((m, l)) => Ok(Self::new(parse_rational(m, 0)?, l.parse()?)),
            None => Ok(Self::tangible(parse_rational(s, 0)?)),
        }
    }
}

/// Coefficient type of a tropical polynomial.
pub trait Scalar: Clone + Eq + fmt::Debug + fmt::Display {
    fn from_magnitude(q: Rational) -> Self;
    fn magnitude(&self) -> &Rational;
    fn is_tangible(&self) -> bool;
    fn lift(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;

    /// Multiplies by the tangible element with magnitude `q`.
    fn shift(&self, q: &Rational) -> Self;
}

impl Scalar for SupertropicalValue {
    fn from_magnitude(q: Rational) -> Self {
        Self::tangible(q)
    }
    fn magnitude(&self) -> &Rational {
        &self.magnitude
    }
    fn is_tangible(&self) -> bool {
        self.tag == Tag::Tangible
    }
    fn lift(&self) -> Self {
        self.tangible_lift()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn shift(&self, q: &Rational) -> Self {
        Self { magnitude: self.magnitude + q, tag: self.tag }
    }
}

impl Scalar for LayeredValue {
    fn from_magnitude(q: Rational) -> Self {
        Self::tangible(q)
    }
    fn magnitude(&self) -> &Rational {
        &self.magnitude
    }
    fn is_tangible(&self) -> bool {
        self.layer == Layer::ONE
    }
    fn lift(&self) -> Self {
        Self::tangible(self.magnitude)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn shift(&self, q: &Rational) -> Self {
        Self::new(self.magnitude + q, self.layer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use alloc::format;

    fn t(n: i128) -> SupertropicalValue {
        SupertropicalValue::tangible(int(n))
    }
    fn g(n: i128) -> SupertropicalValue {
        SupertropicalValue::ghost(int(n))
    }
    fn l(n: i128, k: u64) -> LayeredValue {
        LayeredValue::new(int(n), Layer::Finite(k))
    }

    #[test]
    fn supertropical_addition() {
        assert_eq!(t(3) + t(5), t(5));
        assert_eq!(t(4) + t(4), g(4));
        assert_eq!(t(4) + g(4), g(4));
        assert_eq!(g(2) + t(1), g(2));
    }

    #[test]
    fn supertropical_multiplication() {
        assert_eq!(t(3) * t(5), t(8));
        assert_eq!(t(3) * g(5), g(8));
        let a = SupertropicalValue::ghost(frac(-7, 3));
        assert_eq!(SupertropicalValue::one() * a.clone(), a);
    }

    #[test]
    fn ghost_map_and_lift() {
        assert_eq!(t(4).nu(), g(4));
        assert_eq!(g(4).tangible_lift(), t(4));
        assert_eq!(g(4).nu(), g(4));
        assert_eq!(t(4).tangible_lift().nu(), t(4).nu());
    }

    #[test]
    fn tangible_lift_round_trip_on_grid() {
        for n in -12..=12 {
            for d in 1..=6 {
                let x = SupertropicalValue::tangible(frac(n, d));
                let lifted = x.tangible_lift();
                assert_eq!(lifted.nu().tangible_lift(), lifted);
                let y = SupertropicalValue::ghost(frac(n, d));
                assert_eq!(y.tangible_lift().nu().tangible_lift(), y.tangible_lift());
            }
        }
    }

    #[test]
    fn layered_operations() {
        assert_eq!(l(3, 1) + l(5, 2), l(5, 2));
        assert_eq!(l(4, 1) + l(4, 1), l(4, 2));
        assert_eq!(l(2, 2) * l(3, 3), l(5, 6));
        let inf = LayeredValue::new(int(1), Layer::Infinite);
        assert_eq!((&inf * &l(0, 4)).layer, Layer::Infinite);
        assert_eq!((&inf + &l(1, 4)).layer, Layer::Infinite);
        assert_eq!(Layer::Finite(u64::MAX).sat_add(Layer::ONE), Layer::Infinite);
        assert_eq!(Layer::new(0), None);
    }

    #[test]
    fn transition_maps_only_raise() {
        assert_eq!(l(3, 2).raise_to(Layer::Finite(5)), Some(l(3, 5)));
        assert_eq!(l(3, 2).raise_to(Layer::ONE), None);
        assert_eq!(l(3, 2).raise_to(Layer::Infinite).unwrap().magnitude, int(3));
    }

    #[test]
    fn collapse_to_supertropical() {
        assert_eq!(l(4, 1).to_supertropical(), t(4));
        assert_eq!(l(4, 2).to_supertropical(), g(4));
        // mapping then adding equals adding then mapping, on a small grid
        for a in -2..=2 {
            for b in -2..=2 {
                for k in 1..=3 {
                    for m in 1..=3 {
                        let x = l(a, k);
                        let y = l(b, m);
                        assert_eq!((&x + &y).to_supertropical(), x.to_supertropical() + y.to_supertropical());
                        assert_eq!((&x * &y).to_supertropical(), x.to_supertropical() * y.to_supertropical());
                    }
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["3/2", "3/2v", "-4", "0v"] {
            assert_eq!(format!("{}", s.parse::<SupertropicalValue>().unwrap()), s);
        }
        for s in ["3/2@2", "-1@inf", "0@1"] {
            assert_eq!(format!("{}", s.parse::<LayeredValue>().unwrap()), s);
        }
        assert!("3@0".parse::<LayeredValue>().is_err());
    }
}
