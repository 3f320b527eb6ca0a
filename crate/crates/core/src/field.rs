//! Arithmetic in GF(2^m), 2 ≤ m ≤ 16.
//!
//! Elements use the polynomial basis: bit `j` of the integer representation is
//! the coefficient of `x^j`, so addition is XOR. Multiplication goes through
//! discrete-log tables built from a generator of the multiplicative group; zero
//! never enters the tables and is handled by an explicit branch.

use std::fmt;
use std::ops::{Add, AddAssign, Sub, SubAssign};

use rand::Rng;

use crate::{Error, Result};

/// Primitive polynomials used when no modulus is given, indexed by `m`.
const DEFAULT_MODULI: [u32; 17] = [
    0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// An element of GF(2^m), stored as its coefficient bit-vector.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub(crate) u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Characteristic 2: addition and subtraction are both XOR.
impl Add for FieldElement {
    type Output = FieldElement;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl SubAssign for FieldElement {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn sub_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

/// Degree of a GF(2) polynomial in bitmask form; `None` for zero.
fn gf2_degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

/// Remainder of `a` modulo `b` over GF(2).
fn gf2_rem(mut a: u32, b: u32) -> u32 {
    let db = gf2_degree(b).expect("nonzero divisor");
    while let Some(da) = gf2_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Returns a nontrivial factor of `modulus` if it is reducible over GF(2).
///
/// Trial division by every polynomial of degree `1..=deg/2`.
pub fn find_factor(modulus: u32) -> Option<u32> {
    let deg = gf2_degree(modulus)?;
    for d in 1..=deg / 2 {
        for low in 0..(1u32 << d) {
            let cand = (1u32 << d) | low;
            if gf2_rem(modulus, cand) == 0 {
                return Some(cand);
            }
        }
    }
    None
}

/// Carry-less multiplication of `a` and `b` reduced modulo `modulus`
/// (degree `m`). Table-free reference path.
pub fn mul_reference(a: u32, b: u32, modulus: u32, m: u32) -> u32 {
    let mut acc = 0u32;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> m & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

/// A binary extension field GF(2^m) with log/antilog tables.
#[derive(Clone)]
pub struct Field {
    m: u32,
    q: usize,
    modulus: u32,
    generator: FieldElement,
    // exp has length 2(q-1) so that exp[log a + log b] needs no reduction.
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("m", &self.m)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(2^m). Without an explicit modulus the default primitive
    /// polynomial for `m` is used (`x^4+x+1` for m=4, `x^6+x+1` for m=6).
    pub fn new(m: u32, modulus: Option<u32>) -> Result<Field> {
        if !(2..=16).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        let modulus = modulus.unwrap_or(DEFAULT_MODULI[m as usize]);
        if gf2_degree(modulus) != Some(m) {
            return Err(Error::ModulusDegree { modulus, m });
        }
        if let Some(factor) = find_factor(modulus) {
            return Err(Error::ReducibleModulus { modulus, factor });
        }
        let q = 1usize << m;
        let order = q - 1;

        // x is a generator for primitive moduli; otherwise search upwards.
        let generator = (2..q as u32)
            .find(|&g| multiplicative_order(g, modulus, m) == order)
            .ok_or_else(|| Error::Internal("no generator found".into()))?;

        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; q];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x as u16;
            exp[i + order] = x as u16;
            log[x as usize] = i as u16;
            x = mul_reference(x, generator, modulus, m);
        }
        Ok(Field {
            m,
            q,
            modulus,
            generator: FieldElement(generator as u16),
            exp,
            log,
        })
    }

    /// The field with the default modulus for `m`.
    pub fn with_default_modulus(m: u32) -> Result<Field> {
        Field::new(m, None)
    }

    pub fn default_modulus(m: u32) -> Option<u32> {
        (2..=16).contains(&m).then(|| DEFAULT_MODULI[m as usize])
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field order q = 2^m.
    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The primitive element α used for the log tables.
    #[inline]
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if (value as usize) < self.q {
            Ok(FieldElement(value as u16))
        } else {
            Err(Error::NotAnElement(value))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u32).map(|v| FieldElement(v as u16))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(0..self.q as u32) as u16)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(1..self.q as u32) as u16)
    }

    /// α^i for any integer i.
    #[inline]
    pub fn alpha_pow(&self, i: i64) -> FieldElement {
        let order = (self.q - 1) as i64;
        FieldElement(self.exp[i.rem_euclid(order) as usize])
    }

    /// Discrete logarithm base α; `None` for zero.
    #[inline]
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize] as u32)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize])
    }

    #[inline]
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(FieldElement(self.exp[(order - self.log[a.0 as usize] as usize) % order]))
    }

    #[inline]
    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let inv = self.inv(b)?;
        Ok(self.mul(a, inv))
    }

    /// a^e with the convention 0^0 = 1.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64 * (e % order) % order;
        FieldElement(self.exp[l as usize])
    }

    /// Coefficient bits of `e`, little-endian (`bits[j]` multiplies `x^j`).
    pub fn element_bits(&self, e: FieldElement) -> Vec<u8> {
        (0..self.m).map(|j| (e.0 >> j & 1) as u8).collect()
    }

    pub fn bits_to_element(&self, bits: &[u8]) -> Result<FieldElement> {
        if bits.len() != self.m as usize {
            return Err(Error::LengthMismatch {
                expected: self.m as usize,
                got: bits.len(),
            });
        }
        let mut v = 0u16;
        for (j, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => v |= 1 << j,
                other => return Err(Error::NotAnElement(other as u32)),
            }
        }
        Ok(FieldElement(v))
    }

    /// `dst[j] += f * src[j]` over the common prefix.
    pub fn axpy(&self, dst: &mut [FieldElement], f: FieldElement, src: &[FieldElement]) {
        if f.is_zero() {
            return;
        }
        if self.q <= 256 {
            let mut table = [0u16; 256];
            let lf = self.log[f.0 as usize] as usize;
            for (v, slot) in table.iter_mut().enumerate().take(self.q).skip(1) {
                *slot = self.exp[lf + self.log[v] as usize];
            }
            for (d, s) in dst.iter_mut().zip(src) {
                d.0 ^= table[s.0 as usize];
            }
        } else {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d += self.mul(f, s);
            }
        }
    }

    /// Multiplies every entry of `v` by `f`.
    pub fn scale_slice(&self, v: &mut [FieldElement], f: FieldElement) {
        for x in v.iter_mut() {
            *x = self.mul(*x, f);
        }
    }
}

fn multiplicative_order(g: u32, modulus: u32, m: u32) -> usize {
    let mut x = g;
    let mut k = 1;
    while x != 1 {
        x = mul_reference(x, g, modulus, m);
        k += 1;
        if k > 1 << m {
            return 0;
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn default_gf64() {
        let f = Field::with_default_modulus(6).unwrap();
        assert_eq!(f.order(), 64);
        assert_eq!(f.modulus(), 0x43);
        assert_eq!(f.generator(), FieldElement(2));
    }

    #[test]
    fn alpha_order_gf16() {
        let f = Field::with_default_modulus(4).unwrap();
        assert_eq!(f.alpha_pow(15), FieldElement::ONE);
        assert_eq!(f.pow(f.generator(), 15), FieldElement::ONE);
        for i in 1..15 {
            assert_ne!(f.alpha_pow(i), FieldElement::ONE);
        }
    }

    #[test]
    fn reducible_modulus_names_factor() {
        // x^6+x^2+1 = (x^3+x+1)^2 over GF(2).
        match Field::new(6, Some(0x45)) {
            Err(Error::ReducibleModulus { factor, .. }) => {
                assert_eq!(gf2_rem(0x45, factor), 0);
                assert!(gf2_degree(factor).unwrap() >= 1);
            }
            other => panic!("expected reducible error, got {other:?}"),
        }
    }

    #[test]
    fn modulus_checks() {
        assert!(matches!(Field::new(1, None), Err(Error::UnsupportedDegree(1))));
        assert!(matches!(Field::new(17, None), Err(Error::UnsupportedDegree(17))));
        assert!(matches!(Field::new(6, Some(0x13)), Err(Error::ModulusDegree { .. })));
    }

    #[test]
    fn irreducible_but_not_primitive_modulus() {
        // x^4+x^3+x^2+x+1 is irreducible; x has order 5 so a generator is searched.
        let f = Field::new(4, Some(0x1F)).unwrap();
        assert_ne!(f.generator(), FieldElement(2));
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        }
    }

    #[test]
    fn default_moduli_are_primitive() {
        for m in 2..=16 {
            let f = Field::with_default_modulus(m).unwrap();
            assert_eq!(f.generator(), FieldElement(2), "m = {m}");
        }
    }

    #[test]
    fn characteristic_two_and_identity() {
        let f = Field::with_default_modulus(6).unwrap();
        for a in f.elements() {
            assert_eq!(a + a, FieldElement::ZERO);
        }
        assert_eq!(f.inv(FieldElement::ONE).unwrap(), FieldElement::ONE);
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f.div(FieldElement::ONE, FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_exhaustive_gf64_against_reference() {
        let f = Field::with_default_modulus(6).unwrap();
        for a in f.elements().skip(1) {
            let inv = f.inv(a).unwrap();
            assert_eq!(mul_reference(a.0 as u32, inv.0 as u32, 0x43, 6), 1);
        }
    }

    #[test]
    fn table_mul_matches_reference_small_fields() {
        for m in 2..=6 {
            let f = Field::with_default_modulus(m).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let expect = mul_reference(a.0 as u32, b.0 as u32, f.modulus(), m);
                    assert_eq!(f.mul(a, b).0 as u32, expect);
                }
            }
        }
    }

    #[test]
    fn frobenius_gf16() {
        let f = Field::with_default_modulus(4).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let s = a + b;
                assert_eq!(f.mul(s, s), f.mul(a, a) + f.mul(b, b));
            }
        }
    }

    #[test]
    fn field_axioms_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [4, 6, 8, 12] {
            let f = Field::with_default_modulus(m).unwrap();
            for _ in 0..10_000 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
                assert_eq!((a + b) + c, a + (b + c));
            }
        }
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let f = Field::with_default_modulus(6).unwrap();
        for a in f.elements() {
            let mut acc = FieldElement::ONE;
            for e in 0..70u64 {
                assert_eq!(f.pow(a, e), acc, "a={a} e={e}");
                acc = f.mul(acc, a);
            }
        }
    }

    #[test]
    fn element_bits_conventions() {
        let f = Field::with_default_modulus(6).unwrap();
        assert_eq!(f.element_bits(FieldElement::ZERO), vec![0; 6]);
        assert_eq!(f.element_bits(FieldElement(5)), vec![1, 0, 1, 0, 0, 0]);
        for a in f.elements() {
            assert_eq!(f.bits_to_element(&f.element_bits(a)).unwrap(), a);
        }
        assert!(matches!(
            f.bits_to_element(&[1, 0, 1]),
            Err(Error::LengthMismatch { expected: 6, got: 3 })
        ));
    }

    #[test]
    fn axpy_both_paths() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in [6, 10] {
            let f = Field::with_default_modulus(m).unwrap();
            let src: Vec<_> = (0..50).map(|_| f.random(&mut rng)).collect();
            let mut dst: Vec<_> = (0..50).map(|_| f.random(&mut rng)).collect();
            let k = f.random(&mut rng);
            let expect: Vec<_> = dst.iter().zip(&src).map(|(&d, &s)| d + f.mul(k, s)).collect();
            f.axpy(&mut dst, k, &src);
            assert_eq!(dst, expect);
        }
    }
}
