//! Generalized Reed–Solomon codes: construction, encoding, syndromes, error
//! location and Forney correction.
//!
//! A codeword is `(v_0·C(α_0), …, v_{n-1}·C(α_{n-1}))` with `deg C < k`. The
//! syndrome of a word `r` is
//!
//! ```text
//! S(x) = Σ_{i=0}^{d-2} x^i Σ_j r_j v̂_j α_j^{d-2-i},   v̂_j = (v_j Π_{h≠j} (α_j - α_h))^{-1}
//! ```
//!
//! With this convention an error `e` supported on `E` gives
//! `S(x) ≡ Σ_{j∈E} e_j v̂_j α_j^{d-1} / (α_j - x)  (mod x^{d-1})`, so the
//! evaluator paired with `Λ(x) = Π_{j∈E} (x - α_j)` carries an extra
//! `α_j^{d-1}` per term and Forney's formula reads
//! `e_j = Ω(α_j) / (v̂_j α_j^{d-1} Λ'(α_j))`. An error at `α_j = 0` is
//! invisible to `Ω`; it is recovered from the top syndrome coefficient
//! `S_{d-2} = Σ_j e_j v̂_j` instead.

use crate::field::{Field, FieldElement};
use crate::poly::Poly;
use crate::{Error, Result};

pub type Word = Vec<FieldElement>;

/// Number of positions where `a` and `b` differ.
pub fn hamming_distance(a: &[FieldElement], b: &[FieldElement]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Number of nonzero entries.
pub fn weight(e: &[FieldElement]) -> usize {
    e.iter().filter(|v| !v.is_zero()).count()
}

#[derive(Clone, Debug)]
pub struct GrsCode {
    field: Field,
    n: usize,
    k: usize,
    alphas: Vec<FieldElement>,
    vs: Vec<FieldElement>,
    vhats: Vec<FieldElement>,
}

impl GrsCode {
    pub fn new(
        field: Field,
        n: usize,
        k: usize,
        alphas: Vec<FieldElement>,
        vs: Vec<FieldElement>,
    ) -> Result<GrsCode> {
        if k < 1 || k >= n {
            return Err(Error::InvalidCode(format!("need 1 <= k < n, got n={n} k={k}")));
        }
        if n > field.order() {
            return Err(Error::InvalidCode(format!("n={n} exceeds field order {}", field.order())));
        }
        for (name, v) in [("alphas", &alphas), ("vs", &vs)] {
            if v.len() != n {
                return Err(Error::InvalidCode(format!("{name} has length {}, expected {n}", v.len())));
            }
        }
        let mut seen = vec![false; field.order()];
        for &a in &alphas {
            let slot = &mut seen[a.value() as usize];
            if *slot {
                return Err(Error::InvalidCode(format!("repeated evaluation point {a}")));
            }
            *slot = true;
        }
        if let Some(i) = vs.iter().position(|v| v.is_zero()) {
            return Err(Error::InvalidCode(format!("column multiplier v_{i} is zero")));
        }
        let vhats = compute_vhats(&field, &alphas, &vs);
        Ok(GrsCode {
            field,
            n,
            k,
            alphas,
            vs,
            vhats,
        })
    }

    /// Plain Reed–Solomon code: `α_i = α^i`, `v_i = 1`.
    pub fn reed_solomon(field: Field, n: usize, k: usize) -> Result<GrsCode> {
        if n >= field.order() {
            return Err(Error::InvalidCode(format!(
                "plain RS needs n < q = {}, got n={n}",
                field.order()
            )));
        }
        let alphas = (0..n).map(|i| field.alpha_pow(i as i64)).collect();
        let vs = vec![FieldElement::ONE; n];
        GrsCode::new(field, n, k, alphas, vs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance `n - k + 1`.
    pub fn d(&self) -> usize {
        self.n - self.k + 1
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    pub fn vs(&self) -> &[FieldElement] {
        &self.vs
    }

    pub fn vhats(&self) -> &[FieldElement] {
        &self.vhats
    }

    pub fn recompute_vhats(&self) -> Vec<FieldElement> {
        compute_vhats(&self.field, &self.alphas, &self.vs)
    }

    fn check_len(&self, w: &[FieldElement]) -> Result<()> {
        if w.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: w.len(),
            });
        }
        Ok(())
    }

    /// `c_i = v_i · C(α_i)` where `info` are the coefficients of `C`.
    pub fn encode(&self, info: &[FieldElement]) -> Result<Word> {
        if info.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: info.len(),
            });
        }
        let c = Poly::from_coeffs(info.to_vec());
        Ok(self
            .alphas
            .iter()
            .zip(&self.vs)
            .map(|(&a, &v)| self.field.mul(v, c.eval(a, &self.field)))
            .collect())
    }

    /// Encodes a uniformly random information word.
    pub fn random_codeword<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Word {
        let info: Vec<_> = (0..self.k).map(|_| self.field.random(rng)).collect();
        self.encode(&info).expect("info length k")
    }

    /// Syndrome polynomial of degree below `d - 1`.
    pub fn syndrome(&self, r: &[FieldElement]) -> Result<Poly> {
        self.check_len(r)?;
        let f = &self.field;
        let len = self.d() - 1;
        let mut s = vec![FieldElement::ZERO; len];
        for (j, &rj) in r.iter().enumerate() {
            if rj.is_zero() {
                continue;
            }
            let w = f.mul(rj, self.vhats[j]);
            // Coefficient i carries α_j^{d-2-i}: walk i downward from d-2.
            let mut term = w;
            for i in (0..len).rev() {
                s[i] += term;
                term = f.mul(term, self.alphas[j]);
            }
        }
        Ok(Poly::from_coeffs(s))
    }

    pub fn is_codeword(&self, r: &[FieldElement]) -> bool {
        self.syndrome(r).is_ok_and(|s| s.is_zero())
    }

    /// The positions `{i : Λ(α_i) = 0}` if `Λ` splits into `deg Λ` distinct
    /// roots among the evaluation points.
    pub fn locator_roots(&self, locator: &Poly) -> Option<Vec<usize>> {
        let deg = locator.deg()?;
        if deg > self.n {
            return None;
        }
        let roots: Vec<usize> = (0..self.n)
            .filter(|&i| locator.eval(self.alphas[i], &self.field).is_zero())
            .collect();
        (roots.len() == deg).then_some(roots)
    }

    /// Corrects `r` using the error locator `Λ` and syndrome `S`, returning the
    /// codeword if the corrected word has zero syndrome.
    pub fn forney_correct(&self, r: &[FieldElement], locator: &Poly, syndrome: &Poly) -> Option<Word> {
        self.check_len(r).ok()?;
        let f = &self.field;
        let positions = self.locator_roots(locator)?;
        let d = self.d();
        let omega = locator.mul(syndrome, f).truncate(d - 1);
        let dlocator = locator.derivative();

        let mut corrected = r.to_vec();
        let mut zero_point = None;
        let mut visible = FieldElement::ZERO;
        for &j in &positions {
            let a = self.alphas[j];
            if a.is_zero() {
                zero_point = Some(j);
                continue;
            }
            let denom = f.mul(
                f.mul(self.vhats[j], f.pow(a, (d - 1) as u64)),
                dlocator.eval(a, f),
            );
            let e = f.div(omega.eval(a, f), denom).ok()?;
            corrected[j] -= e;
            visible += f.mul(e, self.vhats[j]);
        }
        if let Some(j) = zero_point {
            let top = syndrome.coeff(d - 2);
            let e = f.div(top - visible, self.vhats[j]).ok()?;
            corrected[j] -= e;
        }
        self.is_codeword(&corrected).then_some(corrected)
    }
}

fn compute_vhats(f: &Field, alphas: &[FieldElement], vs: &[FieldElement]) -> Vec<FieldElement> {
    alphas
        .iter()
        .zip(vs)
        .enumerate()
        .map(|(i, (&ai, &vi))| {
            let prod = alphas
                .iter()
                .enumerate()
                .filter(|&(h, _)| h != i)
                .fold(vi, |acc, (_, &ah)| f.mul(acc, ai - ah));
            f.inv(prod).expect("distinct points and nonzero multipliers")
        })
        .collect()
}
