//! Brute-force reference decoders for tiny codes.
//!
//! Nothing here shares code with the algebraic decoders beyond field
//! arithmetic and polynomial evaluation: list decoding enumerates error
//! supports and recovers the codeword by Lagrange interpolation, and module
//! membership solves a dense linear system in the cofactor coefficients.

use std::collections::BTreeSet;

use crate::field::{Field, FieldElement};
use crate::grs::{hamming_distance, GrsCode, Word};
use crate::linalg::{solve, Matrix};
use crate::poly::Poly;
use crate::{Error, Result};

pub const MAX_ORACLE_N: usize = 31;
pub const MAX_ORACLE_RADIUS: usize = 6;

/// Recovers the codeword that agrees with `r` outside `erased`, if any.
///
/// Lagrange interpolation of `r_i / v_i` through the first `k` unerased
/// positions; the result is accepted only if it matches every unerased
/// position.
pub fn erasure_decode(code: &GrsCode, r: &[FieldElement], erased: &[bool]) -> Option<Word> {
    let f = code.field();
    let known: Vec<usize> = (0..code.n()).filter(|&i| !erased[i]).collect();
    if known.len() < code.k() {
        return None;
    }
    let basis = &known[..code.k()];
    let values: Vec<_> = basis
        .iter()
        .map(|&p| f.div(r[p], code.vs()[p]).expect("nonzero multiplier"))
        .collect();
    let word: Word = (0..code.n())
        .map(|j| {
            let x = code.alphas()[j];
            let mut acc = FieldElement::ZERO;
            for (bi, &p) in basis.iter().enumerate() {
                let mut num = values[bi];
                let mut den = FieldElement::ONE;
                for &q in basis {
                    if q != p {
                        num = f.mul(num, x - code.alphas()[q]);
                        den = f.mul(den, code.alphas()[p] - code.alphas()[q]);
                    }
                }
                acc += f.div(num, den).expect("distinct points");
            }
            f.mul(acc, code.vs()[j])
        })
        .collect();
    known.iter().all(|&i| word[i] == r[i]).then_some(word)
}

/// Every codeword within Hamming distance `radius` of `r`, sorted.
pub fn oracle_list_decode(code: &GrsCode, r: &[FieldElement], radius: usize) -> Result<Vec<Word>> {
    if r.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: r.len(),
        });
    }
    if code.n() > MAX_ORACLE_N || radius > MAX_ORACLE_RADIUS || radius > code.n() - code.k() {
        return Err(Error::InvalidParameter(format!(
            "oracle limited to n <= {MAX_ORACLE_N}, radius <= min({MAX_ORACLE_RADIUS}, n - k); got n={} radius={radius}",
            code.n()
        )));
    }
    let n = code.n();
    let mut found = BTreeSet::new();
    let mut erased = vec![false; n];
    let mut subset: Vec<usize> = (0..radius).collect();
    loop {
        erased.iter_mut().for_each(|e| *e = false);
        for &i in &subset {
            erased[i] = true;
        }
        if let Some(c) = erasure_decode(code, r, &erased) {
            debug_assert!(hamming_distance(&c, r) <= radius);
            found.insert(c.iter().map(|v| v.value()).collect::<Vec<_>>());
        }
        if !next_subset(&mut subset, n) {
            break;
        }
    }
    let f = code.field();
    Ok(found
        .into_iter()
        .map(|c| c.into_iter().map(|v| f.element(v as u32).unwrap()).collect())
        .collect())
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order.
fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    let Some(i) = (0..k).rev().find(|&i| s[i] < n - k + i) else {
        return false;
    };
    s[i] += 1;
    for j in i + 1..k {
        s[j] = s[j - 1] + 1;
    }
    true
}

/// Finds `(A, B)` with `Λ = A·H1 + B·H2`, `deg A ≤ deg_a_max`,
/// `deg B ≤ deg_b_max` (a negative bound forces zero).
pub fn oracle_module_membership(
    lambda: &Poly,
    h1: &Poly,
    h2: &Poly,
    deg_a_max: i64,
    deg_b_max: i64,
    f: &Field,
) -> Option<(Poly, Poly)> {
    let na = (deg_a_max + 1).max(0) as usize;
    let nb = (deg_b_max + 1).max(0) as usize;
    let rows = [lambda.deg_i(), h1.deg_i() + deg_a_max, h2.deg_i() + deg_b_max]
        .into_iter()
        .max()
        .unwrap()
        .max(0) as usize
        + 1;
    let mut m = Matrix::zeros(rows, na + nb);
    for j in 0..na {
        for (t, &c) in h1.coeffs().iter().enumerate() {
            m.set(t + j, j, c);
        }
    }
    for j in 0..nb {
        for (t, &c) in h2.coeffs().iter().enumerate() {
            m.set(t + j, na + j, c);
        }
    }
    let rhs: Vec<_> = (0..rows).map(|t| lambda.coeff(t)).collect();
    let x = solve(&m, &rhs, f)?;
    Some((
        Poly::from_coeffs(x[..na].to_vec()),
        Poly::from_coeffs(x[na..].to_vec()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::index::sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rs(m: u32, n: usize, k: usize) -> GrsCode {
        GrsCode::reed_solomon(Field::with_default_modulus(m).unwrap(), n, k).unwrap()
    }

    #[test]
    fn subsets_enumerated() {
        let mut s = vec![0, 1];
        let mut count = 1;
        while next_subset(&mut s, 5) {
            count += 1;
        }
        assert_eq!(count, 10);
        let mut empty: Vec<usize> = vec![];
        assert!(!next_subset(&mut empty, 5));
    }

    #[test]
    fn erasure_recovery() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let code = rs(4, 15, 7);
        for _ in 0..200 {
            let c = code.random_codeword(&mut rng);
            let t = rng.random_range(0..code.d());
            let mut r = c.clone();
            let mut erased = vec![false; code.n()];
            for i in sample(&mut rng, code.n(), t) {
                erased[i] = true;
                r[i] = code.field().random(&mut rng);
            }
            assert_eq!(erasure_decode(&code, &r, &erased), Some(c));
        }
    }

    #[test]
    fn list_contains_transmitted_and_is_sound() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let code = rs(4, 15, 7);
        for _ in 0..30 {
            let c = code.random_codeword(&mut rng);
            let mut r = c.clone();
            for i in sample(&mut rng, code.n(), 5) {
                r[i] += code.field().random_nonzero(&mut rng);
            }
            let list = oracle_list_decode(&code, &r, 5).unwrap();
            assert!(list.contains(&c));
            for w in &list {
                assert!(code.is_codeword(w));
                assert!(hamming_distance(w, &r) <= 5);
            }
        }
    }

    #[test]
    fn list_matches_exhaustive_scan() {
        // RS(7,3) over GF(8) has 512 codewords: scan them all.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let code = rs(3, 7, 3);
        let f = code.field().clone();
        let all: Vec<Word> = (0..512u32)
            .map(|v| {
                let info: Vec<_> = (0..3).map(|i| f.element((v >> (3 * i)) & 7).unwrap()).collect();
                code.encode(&info).unwrap()
            })
            .collect();
        for _ in 0..50 {
            let r: Word = (0..7).map(|_| f.random(&mut rng)).collect();
            for radius in 0..=4 {
                let mut expect: Vec<Word> =
                    all.iter().filter(|c| hamming_distance(c, &r) <= radius).cloned().collect();
                expect.sort_by_key(|c| c.iter().map(|v| v.value()).collect::<Vec<_>>());
                assert_eq!(oracle_list_decode(&code, &r, radius).unwrap(), expect);
            }
        }
    }

    #[test]
    fn guards() {
        let code = rs(6, 40, 20);
        assert!(oracle_list_decode(&code, &[FieldElement::ZERO; 40], 2).is_err());
        let small = rs(4, 15, 7);
        assert!(oracle_list_decode(&small, &[FieldElement::ZERO; 15], 7).is_err());
        assert!(oracle_list_decode(&small, &[FieldElement::ZERO; 14], 2).is_err());
    }

    #[test]
    fn membership() {
        let f = Field::with_default_modulus(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let h1 = Poly::random(3, &f, &mut rng);
            let h2 = Poly::random(5, &f, &mut rng);
            let a = Poly::random(2, &f, &mut rng);
            let b = Poly::random(1, &f, &mut rng);
            let lambda = a.mul(&h1, &f).add(&b.mul(&h2, &f));
            let (a2, b2) = oracle_module_membership(&lambda, &h1, &h2, 2, 1, &f).unwrap();
            assert_eq!(a2.mul(&h1, &f).add(&b2.mul(&h2, &f)), lambda);
            if Poly::gcd(&h1, &h2, &f) == Poly::one() {
                assert_eq!((a2, b2), (a, b));
            }
        }
        // x is not a multiple of x + 1 with a constant cofactor.
        let x = Poly::x();
        let x1 = x.add(&Poly::one());
        assert!(oracle_module_membership(&x, &x1, &Poly::one(), 0, -1, &f).is_none());
    }
}
