use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{Field, FieldKind, FieldSpec, ScalarError};

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self, ScalarError> {
        if denom == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom.into())))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Field for Rational {
    const KIND: FieldKind = FieldKind::Rationals;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn clear_denominators(v: &[Self]) -> Vec<Self> {
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        if lcm.is_one() {
            return v.to_vec();
        }
        v.iter()
            .map(|x| Rational(BigRational::from_integer(x.numer() * (&lcm / x.denom()))))
            .collect()
    }

    fn divide_content(rows: &mut [Vec<Self>]) {
        if rows.iter().flatten().any(|x| !x.denom().is_one()) {
            return;
        }
        let mut g = BigInt::zero();
        for x in rows.iter().flatten() {
            g = g.gcd(x.numer());
            if g.is_one() {
                return;
            }
        }
        if g.is_zero() {
            return;
        }
        for x in rows.iter_mut().flatten() {
            *x = Rational(BigRational::from_integer(x.numer() / &g));
        }
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if self.0.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    fn characteristic() -> u32 {
        0
    }

    fn sqrt(&self) -> Option<Self> {
        let n = exact_sqrt(self.0.numer())?;
        let d = exact_sqrt(self.0.denom())?;
        Some(Rational(BigRational::new(n, d)))
    }

    fn signum(&self) -> Option<i8> {
        Some(if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        })
    }

    fn normalize(&self) -> Self {
        Rational(BigRational::new(
            self.0.numer().clone(),
            self.0.denom().clone(),
        ))
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self {
        let b = i64::from(bound.max(1));
        let p = rng.gen_range(-b..=b);
        let q = rng.gen_range(1..=b);
        Rational(BigRational::new(p.into(), q.into()))
    }

    fn random_integral<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self {
        let b = i64::from(bound.max(1));
        Rational::from_i64(rng.gen_range(-b..=b))
    }

    fn small(n: usize) -> Self {
        // 0, 1, -1, 2, -2, ...
        let m = n.div_ceil(2) as i64;
        if n % 2 == 1 {
            Rational::from_i64(m)
        } else {
            Rational::from_i64(-m)
        }
    }

    fn render(&self, _spec: &FieldSpec) -> String {
        self.to_string()
    }

    fn parse(input: &str, spec: &FieldSpec) -> Result<Self, ScalarError> {
        super::check_spec::<Rational>(spec)?;
        let err = |reason: &str| ScalarError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s = input.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}
