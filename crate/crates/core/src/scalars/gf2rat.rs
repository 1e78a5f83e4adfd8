use std::fmt;

use rand::Rng;

use super::gf2poly::Poly2;
use super::{Field, FieldKind, FieldSpec, ScalarError};

/// An element `num/den` of GF(2)(s,t).
///
/// Canonical form: `gcd(num, den) = 1`, `den != 0`, and zero is stored as
/// `0/1`. GF(2) has no units besides 1, so the reduced fraction is unique.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Rat {
    num: Poly2,
    den: Poly2,
}

impl Gf2Rat {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(num: Poly2) -> Self {
        Gf2Rat {
            num,
            den: Poly2::one(),
        }
    }

    pub fn s() -> Self {
        Gf2Rat::from_poly(Poly2::s())
    }

    pub fn t() -> Self {
        Gf2Rat::from_poly(Poly2::t())
    }

    pub fn numer(&self) -> &Poly2 {
        &self.num
    }

    pub fn denom(&self) -> &Poly2 {
        &self.den
    }

    fn reduced(num: Poly2, den: Poly2) -> Self {
        if num.is_zero() {
            return Gf2Rat::from_poly(Poly2::zero());
        }
        if den.is_one() {
            return Gf2Rat { num, den };
        }
        let g = num.gcd(&den);
        if g.is_one() {
            Gf2Rat { num, den }
        } else {
            Gf2Rat {
                num: num.div_exact(&g).expect("gcd divides numerator"),
                den: den.div_exact(&g).expect("gcd divides denominator"),
            }
        }
    }
}

impl fmt::Debug for Gf2Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gf2Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = FieldSpec::gf2_function_field("s", "t").expect("default names");
        write!(f, "{}", self.render(&spec))
    }
}

fn random_poly<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Poly2 {
    let d = bound as usize;
    let monos = (0..=d)
        .flat_map(|i| (0..=d - i).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(0.5))
        .collect::<Vec<_>>();
    Poly2::from_monomials(monos)
}

impl Field for Gf2Rat {
    const KIND: FieldKind = FieldKind::Gf2FunctionField;

    fn zero() -> Self {
        Gf2Rat::from_poly(Poly2::zero())
    }

    fn one() -> Self {
        Gf2Rat::from_poly(Poly2::one())
    }

    fn from_i64(n: i64) -> Self {
        if n % 2 == 0 {
            Self::zero()
        } else {
            Self::one()
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduced(self.num.add(&other.num), self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let (b1, d1) = (
            self.den.div_exact(&g).unwrap(),
            other.den.div_exact(&g).unwrap(),
        );
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        if num.is_zero() {
            return Self::zero();
        }
        // gcd(num, b1*d1) = 1 already, only factors of g can cancel
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        Gf2Rat {
            num,
            den: b1.mul(&d1).mul(&g),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(other)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Gf2Rat::from_poly(self.num.mul(&other.num));
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = other.den.div_exact(&g1).unwrap();
        let c = other.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        Gf2Rat {
            num: a.mul(&c),
            den: b.mul(&d),
        }
    }

    fn neg(&self) -> Self {
        self.clone()
    }

    fn clear_denominators(v: &[Self]) -> Vec<Self> {
        let mut dens: Vec<&Poly2> = Vec::new();
        for x in v {
            if !x.den.is_one() && !dens.contains(&&x.den) {
                dens.push(&x.den);
            }
        }
        if dens.is_empty() {
            return v.to_vec();
        }
        let common = dens.iter().fold(Poly2::one(), |acc, d| acc.mul(d));
        v.iter()
            .map(|x| Gf2Rat::reduced(x.num.mul(&common), x.den.clone()))
            .collect()
    }

    fn exact_div(&self, d: &Self) -> Self {
        if self.den.is_one() && d.den.is_one() {
            if let Some(q) = self.num.div_exact(&d.num) {
                return Gf2Rat::from_poly(q);
            }
        }
        self.div(d).expect("exact division by zero")
    }

    fn divide_content(rows: &mut [Vec<Self>]) {
        let mut entries: Vec<(usize, &Poly2)> = Vec::new();
        for (i, x) in rows.iter().flatten().enumerate() {
            if !x.den.is_one() {
                return;
            }
            if !x.num.is_zero() {
                entries.push((i, &x.num));
            }
        }
        entries.sort_by_key(|(_, p)| p.total_degree());
        let Some(((_, first), rest)) = entries.split_first() else {
            return;
        };
        let total = rows.iter().map(Vec::len).sum();
        let mut g = (*first).clone();
        let mut quotients: Vec<Option<Poly2>> = vec![None; total];
        for &(i, p) in rest {
            if g.total_degree() == Some(0) {
                return;
            }
            match p.div_exact(&g) {
                Some(q) => quotients[i] = Some(q),
                None => {
                    g = g.gcd(p);
                    quotients.iter_mut().for_each(|q| *q = None);
                }
            }
        }
        if g.total_degree() == Some(0) {
            return;
        }
        for (x, q) in rows.iter_mut().flatten().zip(quotients) {
            if !x.num.is_zero() {
                let q =
                    q.unwrap_or_else(|| x.num.div_exact(&g).expect("content divides every entry"));
                *x = Gf2Rat::from_poly(q);
            }
        }
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Gf2Rat {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    fn characteristic() -> u32 {
        2
    }

    fn sqrt(&self) -> Option<Self> {
        Some(Gf2Rat {
            num: self.num.sqrt()?,
            den: self.den.sqrt()?,
        })
    }

    fn normalize(&self) -> Self {
        Self::reduced(self.num.clone(), self.den.clone())
    }

    fn random_integral<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self {
        Gf2Rat::from_poly(random_poly(rng, bound))
    }

    fn random<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self {
        let num = random_poly(rng, bound);
        let den = loop {
            let d = random_poly(rng, bound);
            if !d.is_zero() {
                break d;
            }
        };
        Self::reduced(num, den)
    }

    fn small(n: usize) -> Self {
        // Polynomials ordered by total degree, then by the bit pattern of
        // their monomials.
        let mut monos: Vec<(usize, usize)> = Vec::new();
        let mut degree = 0;
        while monos.len() < 64 {
            for i in (0..=degree).rev() {
                monos.push((i, degree - i));
            }
            degree += 1;
        }
        let picked = monos
            .iter()
            .take(usize::BITS as usize)
            .enumerate()
            .filter(|(b, _)| (n >> b) & 1 == 1)
            .map(|(_, &m)| m);
        Gf2Rat::from_poly(Poly2::from_monomials(picked))
    }

    fn frobenius_coordinates(&self) -> Option<[Self; 4]> {
        // num/den = num*den / den^2, and num*den splits over 1, s, t, st
        let parts = self.num.mul(&self.den).frobenius_split();
        Some(parts.map(|p| Self::reduced(p, self.den.clone())))
    }

    fn generators() -> Vec<Self> {
        vec![Gf2Rat::s(), Gf2Rat::t()]
    }

    fn render(&self, spec: &FieldSpec) -> String {
        let names = spec.indeterminates();
        let (s, t) = match names {
            [a, b] => (a.as_str(), b.as_str()),
            _ => ("s", "t"),
        };
        let num = self.num.render(s, t);
        if self.den.is_one() {
            num
        } else {
            format!("({})/({})", num, self.den.render(s, t))
        }
    }

    fn parse(input: &str, spec: &FieldSpec) -> Result<Self, ScalarError> {
        super::check_spec::<Gf2Rat>(spec)?;
        super::parse::parse_gf2(input, spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec() -> FieldSpec {
        FieldSpec::gf2_function_field("s", "t").unwrap()
    }

    fn el(s: &str) -> Gf2Rat {
        Gf2Rat::parse(s, &spec()).unwrap()
    }

    #[test]
    fn doubling_vanishes() {
        assert!(Gf2Rat::s().add(&Gf2Rat::s()).is_zero());
    }

    #[test]
    fn division_by_hand() {
        // (s*t + s) / s = t + 1
        let x = el("s*t+s").div(&Gf2Rat::s()).unwrap();
        assert_eq!(x, el("t+1"));
        assert_eq!(x.render(&spec()), "t+1");
    }

    #[test]
    fn fractions_render_reduced() {
        let x = el("(s^2+t^2)/(s+t)");
        assert_eq!(x.render(&spec()), "s+t");
        let y = el("1/(s+1)").add(&el("1/(t+1)"));
        assert_eq!(y, el("(s+t)/(s*t+s+t+1)"));
        assert_eq!(y.render(&spec()), "(s+t)/(s*t+s+t+1)");
    }

    #[test]
    fn zero_inverse_fails() {
        assert_eq!(Gf2Rat::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn random_respects_degree_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let x = Gf2Rat::random(&mut rng, 2);
            assert!(x.numer().total_degree().unwrap_or(0) <= 2);
            assert!(x.denom().total_degree().unwrap_or(0) <= 2);
        }
        let a = Gf2Rat::random(&mut ChaCha8Rng::seed_from_u64(42), 2);
        let b = Gf2Rat::random(&mut ChaCha8Rng::seed_from_u64(42), 2);
        assert_eq!(a, b);
    }

    #[test]
    fn frobenius_coordinates_of_generators() {
        let one = Gf2Rat::one();
        let zero = Gf2Rat::zero();
        assert_eq!(
            Gf2Rat::s().frobenius_coordinates().unwrap(),
            [zero.clone(), one.clone(), zero.clone(), zero.clone()]
        );
        // s^3 t = s * (s t^0)^2 * ... coordinates over 1,s,t,st
        let x = el("s^3*t");
        assert_eq!(
            x.frobenius_coordinates().unwrap(),
            [zero.clone(), zero.clone(), zero.clone(), el("s")]
        );
    }

    #[test]
    fn small_enumeration_starts_with_zero_one() {
        assert!(Gf2Rat::small(0).is_zero());
        assert!(Gf2Rat::small(1).is_one());
        assert_eq!(Gf2Rat::small(2), Gf2Rat::s());
        assert_eq!(Gf2Rat::small(4), Gf2Rat::t());
    }

    fn arb() -> impl Strategy<Value = Gf2Rat> {
        any::<u64>().prop_map(|seed| Gf2Rat::random(&mut ChaCha8Rng::seed_from_u64(seed), 2))
    }

    proptest! {
        #[test]
        fn frobenius_additivity(x in arb(), y in arb()) {
            let s = x.add(&y);
            prop_assert_eq!(s.square(), x.square().add(&y.square()));
            prop_assert!(x.add(&x).is_zero());
            prop_assert_eq!(x.square().sqrt(), Some(x.clone()));
        }

        #[test]
        fn canonical_form_is_stable(x in arb()) {
            prop_assert_eq!(x.normalize(), x.clone());
            let back = Gf2Rat::parse(&x.render(&spec()), &spec()).unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
