//! Modular gcd for [`Poly2`]. Both inputs are mapped into `GF(2^61)[s]`
//! through `t ↦ t mod m(t)` for several irreducible `m` of degree 61, the
//! univariate gcds are scaled by the gcd of the leading coefficients and
//! glued by Chinese remaindering. The candidate is accepted only if it
//! divides both inputs.

use std::sync::OnceLock;

use super::{clmul, divrem128, rem128, Gf2Poly, Poly2};

const DEGREE: u32 = 61;
const MODULI: usize = 24;

/// `GF(2)[t]/(m)` for an irreducible `m` of degree 61.
#[derive(Clone, Copy, Debug)]
struct Modulus(u64);

impl Modulus {
    fn reduce(self, x: u128) -> u64 {
        rem128(x, self.0 as u128) as u64
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        self.reduce(clmul(a, b))
    }

    fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        let (mut r0, mut r1) = (self.0 as u128, a as u128);
        let (mut s0, mut s1) = (0u64, 1u64);
        while r1 != 0 {
            let (q, r) = divrem128(r0, r1);
            let s = s0 ^ self.reduce(clmul(q as u64, s1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        debug_assert_eq!(r0, 1);
        s0
    }

    fn of(self, p: &Gf2Poly) -> u64 {
        p.words
            .iter()
            .rev()
            .fold(0u64, |acc, &w| self.reduce((acc as u128) << 64 | w as u128))
    }

    fn image(self, p: &Poly2) -> Vec<u64> {
        p.coeffs.iter().map(|c| self.of(c)).collect()
    }

    /// Monic gcd in `GF(2^61)[s]` of two polynomials with nonzero leading
    /// coefficients.
    fn gcd(self, mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
        let trim = |v: &mut Vec<u64>| {
            while v.last() == Some(&0) {
                v.pop();
            }
        };
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let lc = self.inv(*b.last().expect("nonzero"));
            for c in b.iter_mut() {
                *c = self.mul(*c, lc);
            }
            let k = b.len();
            while a.len() >= k {
                let c = *a.last().expect("nonzero");
                let off = a.len() - k;
                for (j, &bj) in b.iter().enumerate() {
                    a[off + j] ^= self.mul(c, bj);
                }
                trim(&mut a);
            }
            std::mem::swap(&mut a, &mut b);
        }
        let lc = self.inv(*a.last().expect("gcd of nonzero polynomials"));
        a.iter().map(|&c| self.mul(c, lc)).collect()
    }
}

/// Whether `m` (degree 61, a prime) is irreducible: no roots in GF(2) and
/// `t^(2^61) ≡ t`.
fn irreducible(m: u64) -> bool {
    if m & 1 == 0 || m.count_ones().is_multiple_of(2) {
        return false;
    }
    let md = Modulus(m);
    let mut x = 2u64;
    for _ in 0..DEGREE {
        x = md.mul(x, x);
    }
    x == 2
}

fn moduli() -> &'static [Modulus] {
    static MODS: OnceLock<Vec<Modulus>> = OnceLock::new();
    MODS.get_or_init(|| {
        (1u64..)
            .map(|low| (1u64 << DEGREE) | low)
            .filter(|&m| irreducible(m))
            .take(MODULI)
            .map(Modulus)
            .collect()
    })
}

fn max_t_degree(p: &Poly2) -> usize {
    p.coeffs
        .iter()
        .filter_map(Gf2Poly::degree)
        .max()
        .unwrap_or(0)
}

/// gcd of two primitive polynomials of positive `s`-degree, or `None` when
/// every modulus was unlucky.
pub(super) fn gcd_primitive(a: &Poly2, b: &Poly2) -> Option<Poly2> {
    let gamma = a.lc().gcd(b.lc());
    let needed = gamma.degree().unwrap_or(0) + max_t_degree(a).min(max_t_degree(b)) + 1;
    let mut degree: Option<usize> = None;
    let mut coeffs: Vec<Gf2Poly> = Vec::new();
    let mut product = Gf2Poly::one();
    let mut bits = 0usize;
    for &md in moduli() {
        if md.of(a.lc()) == 0 || md.of(b.lc()) == 0 {
            continue;
        }
        let g = md.gcd(md.image(a), md.image(b));
        if g.len() == 1 {
            return Some(Poly2::one());
        }
        let scale = md.of(&gamma);
        let g: Vec<u64> = g.into_iter().map(|c| md.mul(c, scale)).collect();
        let d = g.len() - 1;
        match degree {
            Some(old) if d > old => continue,
            Some(old) if d == old => {
                let fix = md.inv(md.of(&product));
                for (c, r) in coeffs.iter_mut().zip(&g) {
                    let delta = md.mul(r ^ md.of(c), fix);
                    c.add_assign(&product.mul(&Gf2Poly::from_bits(delta)));
                }
            }
            _ => {
                degree = Some(d);
                coeffs = g.iter().map(|&c| Gf2Poly::from_bits(c)).collect();
                product = Gf2Poly::one();
                bits = 0;
            }
        }
        product = product.mul(&Gf2Poly::from_bits(md.0));
        bits += DEGREE as usize;
        if bits >= needed {
            let mut h = Poly2 {
                coeffs: coeffs.clone(),
            };
            h.trim();
            let h = h.primitive_part();
            if a.div_exact(&h).is_some() && b.div_exact(&h).is_some() {
                return Some(h);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_irreducible_and_distinct() {
        let mods = moduli();
        assert_eq!(mods.len(), MODULI);
        for md in mods {
            // no factor of degree dividing 61 other than 1 and 61, and none of degree 1
            assert_eq!(md.0 >> DEGREE, 1);
            assert!(irreducible(md.0));
        }
        // t^2 + t + 1 has no roots but divides t^4 + t = t(t+1)(t^2+t+1)
        assert!(!irreducible((1 << DEGREE) | 0b11));
    }

    #[test]
    fn inverse_round_trip() {
        let md = moduli()[0];
        for a in [1u64, 2, 3, 0x1234_5678, (1 << 60) | 5] {
            assert_eq!(md.mul(a, md.inv(a)), 1);
        }
    }
}
