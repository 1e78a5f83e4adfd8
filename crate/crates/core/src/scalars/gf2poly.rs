//! Polynomials over GF(2).
//!
//! [`Gf2Poly`] is a univariate polynomial in `t` packed into 64-bit words.
//! [`Poly2`] is a bivariate polynomial viewed as a polynomial in `s` with
//! coefficients in GF(2)[t]; its gcd uses the recursive content / primitive
//! part reduction over GF(2)[t].

use std::cmp::Ordering;
use std::fmt;

use smallvec::{smallvec, SmallVec};

mod modular;

type Words = SmallVec<[u64; 2]>;

/// Carry-less product of two words.
fn clmul(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime.
            return unsafe { clmul_hw(a, b) };
        }
    }
    clmul_soft(a, b)
}

fn clmul_soft(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    for i in 1..16 {
        table[i] = if i & 1 == 1 {
            table[i - 1] ^ b as u128
        } else {
            table[i / 2] << 1
        };
    }
    (0..16).rev().fold(0u128, |acc, nib| {
        (acc << 4) ^ table[((a >> (4 * nib)) & 0xf) as usize]
    })
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn clmul_hw(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::{_mm_clmulepi64_si128, _mm_cvtsi64_si128};
    let p = _mm_clmulepi64_si128(_mm_cvtsi64_si128(a as i64), _mm_cvtsi64_si128(b as i64), 0);
    std::mem::transmute::<_, u128>(p)
}

fn deg128(x: u128) -> u32 {
    127 - x.leading_zeros()
}

/// Remainder of `a` by the nonzero `b`, both fitting in 128 bits.
fn rem128(mut a: u128, b: u128) -> u128 {
    let db = deg128(b);
    while a != 0 && deg128(a) >= db {
        a ^= b << (deg128(a) - db);
    }
    a
}

fn divrem128(mut a: u128, b: u128) -> (u128, u128) {
    let db = deg128(b);
    let mut q = 0u128;
    while a != 0 && deg128(a) >= db {
        let shift = deg128(a) - db;
        q |= 1 << shift;
        a ^= b << shift;
    }
    (q, a)
}

/// Univariate polynomial over GF(2), bit `i` of the packed words is the
/// coefficient of `t^i`. No trailing zero words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    words: Words,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly {
            words: Words::new(),
        }
    }

    pub fn one() -> Self {
        Gf2Poly {
            words: smallvec![1],
        }
    }

    pub fn monomial(deg: usize) -> Self {
        let mut words: Words = smallvec![0u64; deg / 64 + 1];
        words[deg / 64] = 1 << (deg % 64);
        Gf2Poly { words }
    }

    pub fn from_bits(bits: u64) -> Self {
        let mut p = Gf2Poly {
            words: smallvec![bits],
        };
        p.trim();
        p
    }

    fn from_u128(x: u128) -> Self {
        let mut p = Gf2Poly {
            words: smallvec![x as u64, (x >> 64) as u64],
        };
        p.trim();
        p
    }

    fn as_u128(&self) -> Option<u128> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0] as u128),
            2 => Some(self.words[0] as u128 | (self.words[1] as u128) << 64),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn bit(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| (w >> b) & 1 == 1)
                .map(move |b| wi * 64 + b)
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    pub fn add_assign(&mut self, other: &Self) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, s) in self.words.iter_mut().zip(&other.words) {
            *w ^= s;
        }
        self.trim();
    }

    fn xor_shifted(acc: &mut [u64], src: &[u64], shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        for (i, &w) in src.iter().enumerate() {
            acc[i + ws] ^= w << bs;
            if bs != 0 {
                let carry = w >> (64 - bs);
                if carry != 0 {
                    acc[i + ws + 1] ^= carry;
                }
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Gf2Poly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut acc: Words = smallvec![0u64; self.words.len() + other.words.len()];
        for (i, &a) in self.words.iter().enumerate() {
            for (j, &b) in other.words.iter().enumerate() {
                let prod = clmul(a, b);
                acc[i + j] ^= prod as u64;
                acc[i + j + 1] ^= (prod >> 64) as u64;
            }
        }
        let mut p = Gf2Poly { words: acc };
        p.trim();
        p
    }

    pub fn shl(&self, n: usize) -> Self {
        if self.is_zero() {
            return Gf2Poly::zero();
        }
        let mut acc: Words = smallvec![0u64; self.words.len() + n / 64 + 1];
        Self::xor_shifted(&mut acc, &self.words, n);
        let mut p = Gf2Poly { words: acc };
        p.trim();
        p
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        if divisor.is_one() {
            return (self.clone(), Gf2Poly::zero());
        }
        if let (Some(a), Some(b)) = (self.as_u128(), divisor.as_u128()) {
            let (q, r) = divrem128(a, b);
            return (Gf2Poly::from_u128(q), Gf2Poly::from_u128(r));
        }
        let mut rem = self.words.clone();
        let mut quot: Words = smallvec![0u64; self.words.len().max(1)];
        let degree = |w: &Words| {
            w.iter()
                .rposition(|&x| x != 0)
                .map(|i| i * 64 + 63 - w[i].leading_zeros() as usize)
        };
        while let Some(rd) = degree(&rem) {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quot[shift / 64] |= 1 << (shift % 64);
            let need = divisor.words.len() + shift / 64 + 1;
            if rem.len() < need {
                rem.resize(need, 0);
            }
            Self::xor_shifted(&mut rem, &divisor.words, shift);
        }
        let mut q = Gf2Poly { words: quot };
        q.trim();
        let mut r = Gf2Poly { words: rem };
        r.trim();
        (q, r)
    }

    /// Exact quotient, `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            if b.is_one() {
                return b;
            }
            if let (Some(mut x), Some(mut y)) = (a.as_u128(), b.as_u128()) {
                while y != 0 {
                    (x, y) = (y, rem128(x, y));
                }
                return Gf2Poly::from_u128(x);
            }
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Odd-exponent coefficients vanish.
    pub fn is_square(&self) -> bool {
        self.words.iter().all(|w| w & 0xAAAA_AAAA_AAAA_AAAA == 0)
    }

    /// Splits `self = even(t)^2 + t * odd(t)^2` and returns `(even, odd)`.
    pub fn frobenius_split(&self) -> (Self, Self) {
        let mut even = Gf2Poly::zero();
        let mut odd = Gf2Poly::zero();
        for e in self.exponents() {
            let target = if e % 2 == 0 { &mut even } else { &mut odd };
            *target = target.add(&Gf2Poly::monomial(e / 2));
        }
        (even, odd)
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.exponents().map(|e| format!("t^{e}")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// Bivariate polynomial over GF(2); `coeffs[i]` is the coefficient of `s^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    coeffs: Vec<Gf2Poly>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly2 {
            coeffs: vec![Gf2Poly::one()],
        }
    }

    /// The monomial `s^i t^j`.
    pub fn monomial(i: usize, j: usize) -> Self {
        let mut coeffs = vec![Gf2Poly::zero(); i + 1];
        coeffs[i] = Gf2Poly::monomial(j);
        Poly2 { coeffs }
    }

    pub fn s() -> Self {
        Poly2::monomial(1, 0)
    }

    pub fn t() -> Self {
        Poly2::monomial(0, 1)
    }

    pub fn from_t_poly(p: Gf2Poly) -> Self {
        let mut q = Poly2 { coeffs: vec![p] };
        q.trim();
        q
    }

    /// Sum of the given monomials (repeated monomials cancel).
    pub fn from_monomials<I: IntoIterator<Item = (usize, usize)>>(monos: I) -> Self {
        monos
            .into_iter()
            .fold(Poly2::zero(), |acc, (i, j)| acc.add(&Poly2::monomial(i, j)))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Gf2Poly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn deg_s(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.degree().map(|d| i + d))
            .max()
    }

    fn lc(&self) -> &Gf2Poly {
        self.coeffs
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    /// Monomials `(i, j)` of `s^i t^j`, in lexicographically decreasing order.
    pub fn monomials(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.coeffs.iter().enumerate().rev().flat_map(|(i, c)| {
            let mut js: Vec<usize> = c.exponents().collect();
            js.reverse();
            js.into_iter().map(move |j| (i, j))
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Gf2Poly::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a.add(b)
            })
            .collect();
        let mut p = Poly2 { coeffs };
        p.trim();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly2::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut coeffs = vec![Gf2Poly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        let mut p = Poly2 { coeffs };
        p.trim();
        p
    }

    fn mul_t(&self, c: &Gf2Poly) -> Self {
        let mut p = Poly2 {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        };
        p.trim();
        p
    }

    fn div_t_exact(&self, c: &Gf2Poly) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Poly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| a.div_exact(c).expect("content divides every coefficient"))
                .collect(),
        }
    }

    /// gcd of the coefficients in GF(2)[t].
    pub fn content(&self) -> Gf2Poly {
        let mut g = Gf2Poly::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Poly2::zero();
        }
        self.div_t_exact(&self.content())
    }

    /// Pseudo-remainder of `self` by `divisor` up to a factor in GF(2)[t].
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.deg_s().expect("pseudo-division by zero");
        let lcd = divisor.lc().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let rd = r.len() - 1;
            let lcr = r[rd].clone();
            for c in r.iter_mut() {
                *c = c.mul(&lcd);
            }
            for (k, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    r[rd - dd + k].add_assign(&d.mul(&lcr));
                }
            }
            while r.last().is_some_and(Gf2Poly::is_zero) {
                r.pop();
            }
        }
        Poly2 { coeffs: r }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.is_one() || other.is_one() {
            return Poly2::one();
        }
        let content = self.content().gcd(&other.content());
        if self.coeffs.len() == 1 || other.coeffs.len() == 1 {
            return Poly2::from_t_poly(content);
        }
        let (a, b) = (self.primitive_part(), other.primitive_part());
        let h = modular::gcd_primitive(&a, &b).unwrap_or_else(|| a.gcd_prs(b));
        h.mul_t(&content)
    }

    /// gcd of primitive polynomials by the primitive remainder sequence.
    fn gcd_prs(self, other: Self) -> Self {
        let (mut a, mut b) = (self, other);
        if a.deg_s() < b.deg_s() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg_s() == Some(0) {
                return Poly2::one();
            }
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient, `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if divisor.is_one() {
            return Some(self.clone());
        }
        let dd = divisor.deg_s().unwrap();
        let lcd = divisor.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Gf2Poly::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(rd) = rem.len().checked_sub(1) {
            if rd < dd {
                return None;
            }
            let c = rem[rd].div_exact(lcd)?;
            for (k, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[rd - dd + k].add_assign(&d.mul(&c));
                }
            }
            quot[rd - dd] = c;
            while rem.last().is_some_and(Gf2Poly::is_zero) {
                rem.pop();
            }
        }
        let mut q = Poly2 { coeffs: quot };
        q.trim();
        Some(q)
    }

    /// Every monomial has even exponents in both variables.
    pub fn is_square(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || (i % 2 == 0 && c.is_square()))
    }

    /// Writes `self = sum over (a,b) in {0,1}^2 of s^a t^b P_ab^2` and
    /// returns `[P_00, P_10, P_01, P_11]`.
    pub fn frobenius_split(&self) -> [Poly2; 4] {
        let mut parts: [Vec<(usize, usize)>; 4] = Default::default();
        for (i, j) in self.monomials() {
            parts[(i % 2) + 2 * (j % 2)].push((i / 2, j / 2));
        }
        parts.map(Poly2::from_monomials)
    }

    pub fn sqrt(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let [even, ..] = self.frobenius_split();
        Some(even)
    }

    /// Renders with the given variable names, lexicographically greatest
    /// monomial first, e.g. `s^2*t+s+1`.
    pub fn render(&self, s: &str, t: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let power = |name: &str, e: usize| match e {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{name}^{e}")),
        };
        self.monomials()
            .map(|(i, j)| {
                let factors: Vec<String> =
                    [power(s, i), power(t, j)].into_iter().flatten().collect();
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join("*")
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// A total order used only for deterministic output.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        self.monomials().cmp(other.monomials())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("s", "t"))
    }
}
