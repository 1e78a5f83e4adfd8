//! Exact scalar fields.
//!
//! Two families are supported: the rationals and the rational function field
//! GF(2)(s,t) in two indeterminates. Every value has a unique canonical form,
//! so equality is structural.

mod gf2poly;
mod gf2rat;
mod parse;
mod rational;

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use gf2poly::{Gf2Poly, Poly2};
pub use gf2rat::Gf2Rat;
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Which family a field belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rationals,
    Gf2FunctionField,
}

/// A concrete base field: the kind plus display names of the indeterminates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
    indeterminates: Vec<String>,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec {
            kind: FieldKind::Rationals,
            indeterminates: Vec::new(),
        }
    }

    pub fn gf2_function_field(first: &str, second: &str) -> Result<Self, ScalarError> {
        let valid = |n: &str| {
            let mut chars = n.chars();
            matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        };
        if !valid(first) || !valid(second) || first == second {
            return Err(ScalarError::FieldMismatch(format!(
                "bad indeterminate names {first:?}, {second:?}"
            )));
        }
        Ok(FieldSpec {
            kind: FieldKind::Gf2FunctionField,
            indeterminates: vec![first.to_string(), second.to_string()],
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn indeterminates(&self) -> &[String] {
        &self.indeterminates
    }

    pub fn characteristic(&self) -> u32 {
        match self.kind {
            FieldKind::Rationals => 0,
            FieldKind::Gf2FunctionField => 2,
        }
    }

    /// Short name used in configs and reports: `Q` or `F2(s,t)`.
    pub fn name(&self) -> String {
        match self.kind {
            FieldKind::Rationals => "Q".to_string(),
            FieldKind::Gf2FunctionField => {
                format!("F2({},{})", self.indeterminates[0], self.indeterminates[1])
            }
        }
    }

    /// Inverse of [`FieldSpec::name`].
    pub fn from_name(name: &str) -> Result<Self, ScalarError> {
        let trimmed = name.trim();
        if trimmed == "Q" {
            return Ok(FieldSpec::rationals());
        }
        let inner = trimmed
            .strip_prefix("F2(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| ScalarError::FieldMismatch(format!("unknown field {name:?}")))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [a, b] => FieldSpec::gf2_function_field(a, b),
            _ => Err(ScalarError::FieldMismatch(format!(
                "function field needs exactly two indeterminates, got {name:?}"
            ))),
        }
    }
}

/// Free function form of [`FieldSpec::characteristic`].
pub fn characteristic(f: &FieldSpec) -> u32 {
    f.characteristic()
}

/// Uniform interface to the exact fields.
///
/// Arithmetic is exposed as methods taking references so that generic code
/// never needs higher-ranked operator bounds.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static {
    const KIND: FieldKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ScalarError>;

    fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn characteristic() -> u32;

    /// Exact square root when the value is a square in the field.
    fn sqrt(&self) -> Option<Self>;

    /// Sign for ordered fields, `None` when the field carries no ordering.
    fn signum(&self) -> Option<i8> {
        None
    }

    /// A nonzero multiple of `v` without denominators. Linear algebra
    /// works on such vectors so that it never has to reduce fractions.
    fn clear_denominators(v: &[Self]) -> Vec<Self> {
        v.to_vec()
    }

    /// `self / d` for integral `self` and `d` where the quotient is known to
    /// be integral, as in fraction-free elimination.
    fn exact_div(&self, d: &Self) -> Self {
        self.div(d).expect("exact division by zero")
    }

    /// Divides integral rows by the gcd of all their entries. A no-op where
    /// that gcd is not available.
    fn divide_content(_rows: &mut [Vec<Self>]) {}

    /// Canonical form. Values produced by the arithmetic are already
    /// canonical; this exists for values assembled by hand.
    fn normalize(&self) -> Self;

    /// Seeded random element. Rationals get `|p|, q <= bound`; function field
    /// elements get numerator and denominator of total degree `<= bound`.
    fn random<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self;

    /// Seeded random element without denominator: an integer with
    /// `|p| <= bound`, or a polynomial of total degree `<= bound`.
    fn random_integral<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self;

    /// The `n`-th element of a fixed enumeration of "small" field elements
    /// starting with 0 and 1. Used by bounded witness searches.
    fn small(n: usize) -> Self;

    /// In characteristic 2 function fields: coordinates of `self` over the
    /// subfield of squares w.r.t. the basis `1, s, t, st`, each coordinate
    /// given by its square root. `None` for fields where this is meaningless.
    fn frobenius_coordinates(&self) -> Option<[Self; 4]> {
        None
    }

    /// The indeterminates of a function field as elements, if any.
    fn generators() -> Vec<Self> {
        Vec::new()
    }

    fn render(&self, spec: &FieldSpec) -> String;
    fn parse(input: &str, spec: &FieldSpec) -> Result<Self, ScalarError>;
}

/// Check that a [`FieldSpec`] describes the field type `F`.
pub fn check_spec<F: Field>(spec: &FieldSpec) -> Result<(), ScalarError> {
    if spec.kind() == F::KIND {
        Ok(())
    } else {
        Err(ScalarError::FieldMismatch(format!(
            "{} is not a {:?} field",
            spec.name(),
            F::KIND
        )))
    }
}

/// `field_add` and friends, for callers that prefer free functions.
pub fn field_add<F: Field>(x: &F, y: &F) -> F {
    x.add(y)
}

pub fn field_mul<F: Field>(x: &F, y: &F) -> F {
    x.mul(y)
}

pub fn field_neg<F: Field>(x: &F) -> F {
    x.neg()
}

pub fn field_inv<F: Field>(x: &F) -> Result<F, ScalarError> {
    x.inv()
}

/// Seeded random scalar; deterministic given the generator state.
pub fn random_scalar<F: Field, R: Rng + ?Sized>(rng: &mut R, bound: u32) -> F {
    assert!(bound >= 1, "size bound must be at least 1");
    F::random(rng, bound)
}

/// Random nonzero scalar.
pub fn random_nonzero<F: Field, R: Rng + ?Sized>(rng: &mut R, bound: u32) -> F {
    loop {
        let x = F::random(rng, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_per_kind() {
        assert_eq!(characteristic(&FieldSpec::rationals()), 0);
        let f2 = FieldSpec::gf2_function_field("s", "t").unwrap();
        assert_eq!(characteristic(&f2), 2);
        assert_eq!(Rational::characteristic(), 0);
        assert_eq!(Gf2Rat::characteristic(), 2);
    }

    #[test]
    fn field_names_round_trip() {
        for name in ["Q", "F2(s,t)", "F2(a,b)"] {
            assert_eq!(FieldSpec::from_name(name).unwrap().name(), name);
        }
        assert!(FieldSpec::from_name("F2(s)").is_err());
        assert!(FieldSpec::from_name("F3(s,t)").is_err());
        assert!(FieldSpec::gf2_function_field("s", "s").is_err());
    }

    #[test]
    fn spec_kind_check() {
        assert!(check_spec::<Rational>(&FieldSpec::rationals()).is_ok());
        assert!(matches!(
            check_spec::<Gf2Rat>(&FieldSpec::rationals()),
            Err(ScalarError::FieldMismatch(_))
        ));
    }
}
