//! Arithmetic in GF(r^d) with a dense discrete-logarithm table.
//!
//! Elements are stored as their coefficient vector packed base `r`,
//! low degree first: `x = sum c_i r^i`. This integer is also the order used
//! whenever the construction has to pick "the least" of something.

use crate::arith;
use crate::error::{Error, Result};

/// Default cap on q; the log/exp tables are dense arrays of this size.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct FiniteField {
    r: u32,
    d: u32,
    q: u32,
    /// Monic modulus, low degree first, length `d + 1`.
    modulus: Vec<u32>,
    generator: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FiniteField {
    pub fn new(r: u64, d: u32) -> Result<Self> {
        Self::with_cap(r, d, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(r: u64, d: u32, cap: u64) -> Result<Self> {
        if !arith::is_prime(r) {
            return Err(Error::NotPrime(r));
        }
        if d == 0 {
            return Err(Error::DegreeZero);
        }
        let order = arith::checked_pow(r, d).filter(|&q| q <= cap);
        let Some(q) = order else {
            return Err(Error::FieldTooLarge {
                order: arith::checked_pow(r, d).unwrap_or(u64::MAX),
                cap,
            });
        };
        let (r, q) = (r as u32, q as u32);
        let modulus = least_irreducible(r, d);
        let poly = PolyRing {
            r,
            d,
            modulus: &modulus,
        };

        let factors = arith::prime_factors(q as u64 - 1);
        let generator = (1..q)
            .find(|&c| factors.iter().all(|&p| poly.pow(c, (q as u64 - 1) / p) != 1))
            .expect("GF(q)* is cyclic");

        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![NO_LOG; q as usize];
        let mut x = 1u32;
        for k in 0..q - 1 {
            exp.push(x);
            log[x as usize] = k;
            x = poly.mul(x, generator);
        }
        debug_assert_eq!(x, 1);

        Ok(FiniteField {
            r,
            d,
            q,
            modulus,
            generator: FieldElement(generator),
            exp,
            log,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.r
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus_poly(&self) -> &[u32] {
        &self.modulus
    }

    /// Human-readable modulus, e.g. `x^3+x+1`.
    pub fn modulus_string(&self) -> String {
        poly_to_string(&self.modulus)
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(FieldElement)
    }

    pub fn element(&self, index: u32) -> FieldElement {
        assert!(index < self.q, "element index out of range");
        FieldElement(index)
    }

    /// The prime-field element `c mod r`.
    pub fn scalar(&self, c: u64) -> FieldElement {
        FieldElement((c % self.r as u64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        assert!(coeffs.len() <= self.d as usize);
        let mut acc = 0u32;
        for &c in coeffs.iter().rev() {
            assert!(c < self.r, "coefficient out of range");
            acc = acc * self.r + c;
        }
        FieldElement(acc)
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let mut v = x.0;
        (0..self.d)
            .map(|_| {
                let c = v % self.r;
                v /= self.r;
                c
            })
            .collect()
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.r == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        if self.d == 1 {
            return FieldElement((x.0 + y.0) % self.r);
        }
        let (mut a, mut b, mut place, mut acc) = (x.0, y.0, 1u32, 0u32);
        for _ in 0..self.d {
            acc += ((a % self.r + b % self.r) % self.r) * place;
            a /= self.r;
            b /= self.r;
            place = place.wrapping_mul(self.r);
        }
        FieldElement(acc)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.r == 2 {
            return x;
        }
        let (mut a, mut place, mut acc) = (x.0, 1u32, 0u32);
        for _ in 0..self.d {
            acc += ((self.r - a % self.r) % self.r) * place;
            a /= self.r;
            place = place.wrapping_mul(self.r);
        }
        FieldElement(acc)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        let s = self.log[x.index()] as u64 + self.log[y.index()] as u64;
        FieldElement(self.exp[(s % (self.q as u64 - 1)) as usize])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[x.index()];
        Ok(FieldElement(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if x.is_zero() {
            return FieldElement::ZERO;
        }
        let l = self.log[x.index()] as u64;
        let k = arith::mul_mod(l, e % (self.q as u64 - 1), self.q as u64 - 1);
        FieldElement(self.exp[k as usize])
    }

    /// `x^(r^j)`.
    pub fn frobenius(&self, x: FieldElement, j: u32) -> FieldElement {
        let e = arith::pow_mod(self.r as u64, j as u64, self.q as u64 - 1);
        // r^j mod (q-1) is 1 when j = d; x^1 = x either way
        if x.is_zero() {
            x
        } else {
            self.pow(x, if e == 0 { self.q as u64 - 1 } else { e })
        }
    }

    /// Discrete logarithm base the fixed generator, in `[0, q-2]`.
    pub fn dlog(&self, x: FieldElement) -> Option<u32> {
        match self.log[x.index()] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    /// `g^k` for the fixed generator `g`.
    pub fn exp(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % (self.q as u64 - 1)) as usize])
    }

    /// Ordering key used by canonical representatives: zero first, then by dlog.
    #[inline]
    pub fn order_key(&self, x: FieldElement) -> u32 {
        match self.log[x.index()] {
            NO_LOG => 0,
            l => l + 1,
        }
    }

    /// Absolute trace to GF(r), returned as an integer in `[0, r)`.
    pub fn trace(&self, x: FieldElement) -> u32 {
        let mut acc = FieldElement::ZERO;
        for j in 0..self.d {
            acc = self.add(acc, self.frobenius(x, j));
        }
        debug_assert!(acc.0 < self.r);
        acc.0
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: FieldElement) -> Option<u64> {
        let l = self.dlog(x)? as u64;
        let m = self.q as u64 - 1;
        Some(m / arith::gcd(l, m))
    }
}

/// Polynomial arithmetic modulo a monic modulus, on packed elements.
/// Used only while the log tables are being built.
struct PolyRing<'a> {
    r: u32,
    d: u32,
    modulus: &'a [u32],
}

impl PolyRing<'_> {
    fn unpack(&self, mut x: u32) -> Vec<u32> {
        (0..self.d)
            .map(|_| {
                let c = x % self.r;
                x /= self.r;
                c
            })
            .collect()
    }

    fn pack(&self, v: &[u32]) -> u32 {
        v.iter().rev().fold(0, |acc, &c| acc * self.r + c)
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (self.unpack(x), self.unpack(y));
        let r = self.r as u64;
        let mut prod = vec![0u64; 2 * self.d as usize];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % r;
            }
        }
        let d = self.d as usize;
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            // x^k = x^(k-d) * x^d and x^d = -(lower terms of modulus)
            for (i, &mi) in self.modulus[..d].iter().enumerate() {
                prod[k - d + i] = (prod[k - d + i] + (r - mi as u64) * c) % r;
            }
            prod[k] = 0;
        }
        let low: Vec<u32> = prod[..d].iter().map(|&c| c as u32).collect();
        self.pack(&low)
    }

    fn pow(&self, x: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (x, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Remainder of `a` modulo monic `b` over Z_r; both low degree first.
fn poly_rem(a: &[u32], b: &[u32], r: u32) -> Vec<u32> {
    let mut rem: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    let r = r as u64;
    while rem.len() > db {
        let lead = rem.pop().unwrap() % r;
        let shift = rem.len() - db;
        if lead != 0 {
            for (i, &bi) in b[..db].iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + (r - bi as u64) * lead) % r;
            }
        }
    }
    rem.into_iter().map(|c| c as u32).collect()
}

fn monic_from_index(idx: u64, degree: u32, r: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(degree as usize + 1);
    let mut x = idx;
    for _ in 0..degree {
        v.push((x % r as u64) as u32);
        x /= r as u64;
    }
    v.push(1);
    v
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(poly: &[u32], r: u32) -> bool {
    let deg = poly.len() as u32 - 1;
    for k in 1..=deg / 2 {
        let count = (r as u64).pow(k);
        for idx in 0..count {
            let divisor = monic_from_index(idx, k, r);
            if poly_rem(poly, &divisor, r).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible of degree `d` in the packed-integer order.
fn least_irreducible(r: u32, d: u32) -> Vec<u32> {
    if d == 1 {
        return vec![0, 1];
    }
    (0..(r as u64).pow(d))
        .map(|idx| monic_from_index(idx, d, r))
        .find(|p| is_irreducible(p, r))
        .expect("irreducible polynomials exist in every degree")
}

fn poly_to_string(p: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    terms.join("+")
}

/// The index-n subgroup K of F*: `x in K` iff `dlog(x) = 0 mod n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubgroupK {
    pub index: u32,
    pub order: u32,
}

impl SubgroupK {
    /// Requires `n | q-1` and `q(q-1)/n` even.
    pub fn new(field: &FiniteField, n: u32) -> Result<Self> {
        let q = field.order() as u64;
        if n == 0 || !(q - 1).is_multiple_of(n as u64) {
            return Err(Error::NotDivisor {
                n: n as u64,
                q_minus_one: q - 1,
            });
        }
        let value = q * (q - 1) / n as u64;
        if value % 2 == 1 {
            return Err(Error::ParityCondition { value });
        }
        Ok(SubgroupK {
            index: n,
            order: ((q - 1) / n as u64) as u32,
        })
    }

    pub fn contains(&self, field: &FiniteField, x: FieldElement) -> bool {
        field.dlog(x).is_some_and(|l| l % self.index == 0)
    }

    pub fn elements(&self, field: &FiniteField) -> Vec<FieldElement> {
        (0..self.order)
            .map(|k| field.exp(k as u64 * self.index as u64))
            .collect()
    }

    /// Image of `x` in C = F*/K, identified with Z_n.
    pub fn coset_of(&self, field: &FiniteField, x: FieldElement) -> Result<u32> {
        field.dlog(x).map(|l| l % self.index).ok_or(Error::ZeroElement)
    }
}

/// `{ j in Z_d : r^j = 1 mod n }`, the Frobenius powers acting trivially on C.
pub fn sigma_zero(field: &FiniteField, n: u32) -> Vec<u32> {
    (0..field.degree())
        .filter(|&j| arith::pow_mod(field.characteristic() as u64, j as u64, n as u64) == 1 % n as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(f: &FiniteField, x: FieldElement) -> u32 {
        let mut y = x;
        let mut k = 1;
        while y != FieldElement::ONE {
            y = f.mul(y, x);
            k += 1;
        }
        k
    }

    #[test]
    fn gf2_is_trivial() {
        let f = FiniteField::new(2, 1).unwrap();
        assert_eq!(f.generator(), FieldElement::ONE);
        assert_eq!(f.dlog(FieldElement::ONE), Some(0));
    }

    #[test]
    fn gf8_uses_x3_x_1() {
        let f = FiniteField::new(2, 3).unwrap();
        // both cubic candidates, in packed order: x^3+x+1 (3) < x^3+x^2+1 (5)
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 0, 1, 1], 2));
        assert_eq!(f.modulus_poly(), &[1, 1, 0, 1]);
        assert_eq!(f.modulus_string(), "x^3+x+1");
        let g = f.generator();
        assert_eq!(brute_order(&f, g), 7);
        assert_eq!(f.coeffs(f.pow(g, 3)), vec![1, 1, 0]);
    }

    #[test]
    fn gf9_generator_and_logs() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.modulus_string(), "x^2+1");
        let g = f.generator();
        assert_eq!(brute_order(&f, g), 8);
        // least element of full order by brute force
        let least = f.nonzero().find(|&x| brute_order(&f, x) == 8).unwrap();
        assert_eq!(g, least);
        let mut logs: Vec<u32> = f.nonzero().map(|x| f.dlog(x).unwrap()).collect();
        logs.sort();
        assert_eq!(logs, (0..8).collect::<Vec<_>>());
        let m1 = f.neg(FieldElement::ONE);
        assert_eq!(f.mul(m1, m1), FieldElement::ONE);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (r, d) in [(2, 1), (2, 3), (3, 2), (5, 1), (2, 4), (7, 1), (3, 3)] {
            let f = FiniteField::new(r, d).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, f.neg(x)), FieldElement::ZERO);
                assert_eq!(f.pow(x, f.order() as u64), x, "x^q = x");
                for j in 0..d {
                    let fx = f.frobenius(x, j);
                    assert_eq!(fx, f.pow(x, r.pow(j)));
                }
                assert_eq!(f.frobenius(x, d), x);
                if !x.is_zero() {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), FieldElement::ONE);
                    assert_eq!(f.exp(f.dlog(x).unwrap() as u64), x);
                }
                for y in f.elements() {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    if !x.is_zero() && !y.is_zero() {
                        let l = (f.dlog(x).unwrap() + f.dlog(y).unwrap()) % (f.order() - 1);
                        assert_eq!(f.dlog(f.mul(x, y)), Some(l));
                    }
                }
            }
            assert_eq!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn distributivity_gf27() {
        let f = FiniteField::new(3, 3).unwrap();
        for x in f.elements().step_by(3) {
            for y in f.elements() {
                for z in f.elements().step_by(5) {
                    assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                }
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FiniteField::new(2, 0).unwrap_err(), Error::DegreeZero);
        assert!(matches!(FiniteField::new(2, 21), Err(Error::FieldTooLarge { .. })));
        assert!(FiniteField::new(2, 20).is_ok());
    }

    #[test]
    fn frobenius_examples() {
        let f = FiniteField::new(2, 3).unwrap();
        let g = f.generator();
        assert_eq!(f.frobenius(g, 0), g);
        assert_eq!(f.frobenius(g, 1), f.mul(g, g));
        let f9 = FiniteField::new(3, 2).unwrap();
        for x in f9.elements() {
            assert_eq!(f9.frobenius(x, 2), x);
        }
    }

    #[test]
    fn subgroups() {
        let f8 = FiniteField::new(2, 3).unwrap();
        let k = SubgroupK::new(&f8, 7).unwrap();
        assert_eq!(k.order, 1);
        assert_eq!(k.elements(&f8), vec![FieldElement::ONE]);

        let f9 = FiniteField::new(3, 2).unwrap();
        let k = SubgroupK::new(&f9, 4).unwrap();
        assert_eq!(k.order, 2);
        let mut els = k.elements(&f9);
        els.sort();
        let mut expected = vec![FieldElement::ONE, f9.neg(FieldElement::ONE)];
        expected.sort();
        assert_eq!(els, expected);

        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(SubgroupK::new(&f5, 4), Err(Error::ParityCondition { value: 5 }));
        assert!(matches!(SubgroupK::new(&f5, 3), Err(Error::NotDivisor { .. })));
    }

    #[test]
    fn minus_one_in_k_when_q_odd() {
        for (r, d) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (23, 1), (5, 2)] {
            let f = FiniteField::new(r, d).unwrap();
            let q = f.order();
            for n in 1..q {
                if let Ok(k) = SubgroupK::new(&f, n) {
                    assert_eq!(k.order % 2, 0);
                    assert!(k.contains(&f, f.neg(FieldElement::ONE)));
                }
            }
        }
    }

    #[test]
    fn coset_map_is_a_homomorphism() {
        let f = FiniteField::new(2, 3).unwrap();
        let k = SubgroupK::new(&f, 7).unwrap();
        assert_eq!(k.coset_of(&f, f.generator()), Ok(1));
        assert_eq!(k.coset_of(&f, FieldElement::ZERO), Err(Error::ZeroElement));

        let f = FiniteField::new(13, 1).unwrap();
        let k = SubgroupK::new(&f, 3).unwrap();
        let mut kernel = 0;
        for x in f.nonzero() {
            let cx = k.coset_of(&f, x).unwrap();
            if cx == 0 {
                kernel += 1;
                assert!(k.contains(&f, x));
            }
            for y in f.nonzero() {
                let cy = k.coset_of(&f, y).unwrap();
                assert_eq!(k.coset_of(&f, f.mul(x, y)).unwrap(), (cx + cy) % 3);
            }
        }
        assert_eq!(kernel, k.order);
    }

    #[test]
    fn sigma_zero_examples() {
        let f8 = FiniteField::new(2, 3).unwrap();
        assert_eq!(sigma_zero(&f8, 7), vec![0]);
        let f16 = FiniteField::new(2, 4).unwrap();
        assert_eq!(sigma_zero(&f16, 5), vec![0]);
        assert_eq!(sigma_zero(&f16, 3), vec![0, 2]);
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(sigma_zero(&f7, 3), vec![0]);
    }

    #[test]
    fn trace_lands_in_prime_field() {
        let f = FiniteField::new(2, 5).unwrap();
        let zeros = f.elements().filter(|&x| f.trace(x) == 0).count();
        assert_eq!(zeros, 16);
    }
}
