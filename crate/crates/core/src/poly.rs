//! Dense univariate polynomials over GF(2^m) and the bivariate helpers used by
//! interpolation and root finding.
//!
//! Operations that multiply coefficients take the [`Field`] explicitly; a
//! [`Poly`] is just its normalized coefficient vector (index = degree, no
//! trailing zeros). The degree of the zero polynomial is `None`, which orders
//! below every `Some(d)`.

use std::fmt;

use rand::Rng;

use crate::field::{Field, FieldElement};
use crate::{Error, Result};

/// `C(n, k) mod 2`, by Lucas' theorem.
#[inline]
pub fn binomial_mod2(n: usize, k: usize) -> bool {
    k <= n && (n & k) == k
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(FieldElement::ONE)
    }

    /// The polynomial `x`.
    pub fn x() -> Poly {
        Poly::monomial(FieldElement::ONE, 1)
    }

    pub fn constant(c: FieldElement) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: FieldElement, k: usize) -> Poly {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `Π (x - r)` over the given roots.
    pub fn from_roots(roots: &[FieldElement], f: &Field) -> Poly {
        let mut p = Poly::one();
        for &r in roots {
            p = p.mul(&Poly::from_coeffs(vec![r, FieldElement::ONE]), f);
        }
        p
    }

    /// Uniformly random polynomial of degree exactly `deg` (nonzero leading coefficient).
    pub fn random<R: Rng + ?Sized>(deg: usize, f: &Field, rng: &mut R) -> Poly {
        let mut coeffs: Vec<_> = (0..deg).map(|_| f.random(rng)).collect();
        coeffs.push(f.random_nonzero(rng));
        Poly::from_coeffs(coeffs)
    }

    /// Uniformly random polynomial of degree below `bound` (possibly zero).
    pub fn random_below<R: Rng + ?Sized>(bound: usize, f: &Field, rng: &mut R) -> Poly {
        Poly::from_coeffs((0..bound).map(|_| f.random(rng)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[inline]
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer, `-1` for the zero polynomial.
    #[inline]
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or_default()
    }

    /// Number of low-order zero coefficients; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, &o) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += o;
        }
        Poly::from_coeffs(coeffs)
    }

    /// Same as [`Poly::add`] in characteristic 2.
    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(other)
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            f.axpy(&mut out[i..], a, &other.coeffs);
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: FieldElement, f: &Field) -> Poly {
        let mut coeffs = self.coeffs.clone();
        f.scale_slice(&mut coeffs, c);
        Poly::from_coeffs(coeffs)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElement::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Reduction modulo `x^k`.
    pub fn truncate(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.coeffs[..k.min(self.coeffs.len())].to_vec())
    }

    /// Exact division by `x^k`; low coefficients are discarded.
    pub fn shift_down(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.coeffs.get(k..).map(<[_]>::to_vec).unwrap_or_default())
    }

    pub fn eval(&self, x: FieldElement, f: &Field) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.mul(acc, x) + c)
    }

    /// Quotient and remainder; `deg rem < deg divisor`.
    pub fn divmod(&self, divisor: &Poly, f: &Field) -> Result<(Poly, Poly)> {
        let dd = divisor.deg().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let qc = f.mul(c, lead_inv);
            quot[i - dd] = qc;
            f.axpy(&mut rem[i - dd..=i], qc, &divisor.coeffs);
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Poly, f: &Field) -> Result<Poly> {
        Ok(self.divmod(divisor, f)?.1)
    }

    /// Scales to leading coefficient one; the zero polynomial is returned as is.
    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv, f)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly, f: &Field) -> Poly {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let r = r0.rem(&r1, f).expect("nonzero divisor");
            r0 = r1;
            r1 = r;
        }
        r0.monic(f)
    }

    /// Formal derivative. In characteristic 2 only odd-degree terms survive.
    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| if i % 2 == 1 { c } else { FieldElement::ZERO })
                .collect(),
        )
    }

    /// `p(x + x0)`.
    pub fn taylor_shift(&self, x0: FieldElement, f: &Field) -> Poly {
        // Horner in the shifted variable.
        let step = Poly::from_coeffs(vec![x0, FieldElement::ONE]);
        let mut acc = Poly::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&step, f).add(&Poly::constant(c));
        }
        acc
    }

    /// Substitutes a polynomial for `x`.
    pub fn compose(&self, inner: &Poly, f: &Field) -> Poly {
        let mut acc = Poly::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner, f).add(&Poly::constant(c));
        }
        acc
    }
}

/// One row `R = U·b + V·a` of an extended Euclidean run on inputs `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EeaRow {
    pub remainder: Poly,
    pub u: Poly,
    pub v: Poly,
}

/// Every row of an extended Euclidean run, starting with the two input rows
/// `(a, 0, 1)` and `(b, 1, 0)`. `quotients[j]` produced `rows[j + 2]`.
#[derive(Clone, Debug)]
pub struct EeaTrace {
    pub rows: Vec<EeaRow>,
    pub quotients: Vec<Poly>,
}

impl EeaTrace {
    /// The last nonzero remainder, made monic: `gcd(a, b)`.
    pub fn gcd(&self, f: &Field) -> Poly {
        self.rows
            .iter()
            .rev()
            .find(|r| !r.remainder.is_zero())
            .map(|r| r.remainder.monic(f))
            .unwrap_or_default()
    }
}

/// Stepwise extended Euclidean algorithm.
pub struct Eea<'f> {
    field: &'f Field,
    prev: EeaRow,
    cur: EeaRow,
    last_quotient: Option<Poly>,
    steps: usize,
}

impl<'f> Eea<'f> {
    pub fn new(a: &Poly, b: &Poly, field: &'f Field) -> Eea<'f> {
        Eea {
            field,
            prev: EeaRow {
                remainder: a.clone(),
                u: Poly::zero(),
                v: Poly::one(),
            },
            cur: EeaRow {
                remainder: b.clone(),
                u: Poly::one(),
                v: Poly::zero(),
            },
            last_quotient: None,
            steps: 0,
        }
    }

    pub fn current(&self) -> &EeaRow {
        &self.cur
    }

    pub fn previous(&self) -> &EeaRow {
        &self.prev
    }

    /// Number of division steps taken; the current row is `R_steps`.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn last_quotient(&self) -> Option<&Poly> {
        self.last_quotient.as_ref()
    }

    /// Performs one division step. Returns `false` (and does nothing) once the
    /// current remainder is zero.
    pub fn step(&mut self) -> bool {
        if self.cur.remainder.is_zero() {
            return false;
        }
        let f = self.field;
        let (q, r) = self
            .prev
            .remainder
            .divmod(&self.cur.remainder, f)
            .expect("nonzero divisor");
        let next = EeaRow {
            remainder: r,
            u: self.prev.u.sub(&q.mul(&self.cur.u, f)),
            v: self.prev.v.sub(&q.mul(&self.cur.v, f)),
        };
        self.prev = std::mem::replace(&mut self.cur, next);
        self.last_quotient = Some(q);
        self.steps += 1;
        true
    }
}

/// Runs the extended Euclidean algorithm to completion, recording every row.
pub fn eea_full(a: &Poly, b: &Poly, f: &Field) -> Result<EeaTrace> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidParameter("eea on two zero polynomials".into()));
    }
    let mut eea = Eea::new(a, b, f);
    let mut rows = vec![eea.previous().clone(), eea.current().clone()];
    let mut quotients = Vec::new();
    while eea.step() {
        rows.push(eea.current().clone());
        quotients.push(eea.last_quotient().cloned().unwrap_or_default());
    }
    Ok(EeaTrace { rows, quotients })
}

/// Bivariate polynomial `P(x, t) = Σ_i t^i · P_i(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    t_coeffs: Vec<Poly>,
}

impl BiPoly {
    pub fn new(mut t_coeffs: Vec<Poly>) -> BiPoly {
        while t_coeffs.last().is_some_and(Poly::is_zero) {
            t_coeffs.pop();
        }
        BiPoly { t_coeffs }
    }

    /// Builds from a dense `[t_degree][x_degree]` table.
    pub fn from_table(table: Vec<Vec<FieldElement>>) -> BiPoly {
        BiPoly::new(table.into_iter().map(Poly::from_coeffs).collect())
    }

    pub fn t_coeffs(&self) -> &[Poly] {
        &self.t_coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.t_coeffs.is_empty()
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.t_coeffs.len().checked_sub(1)
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.t_coeffs.iter().filter_map(Poly::deg).max()
    }

    pub fn coeff(&self, t_pow: usize, x_pow: usize) -> FieldElement {
        self.t_coeffs
            .get(t_pow)
            .map(|p| p.coeff(x_pow))
            .unwrap_or_default()
    }

    /// `P(x, g(x))` as a univariate polynomial.
    pub fn substitute(&self, g: &Poly, f: &Field) -> Poly {
        let mut acc = Poly::zero();
        for p in self.t_coeffs.iter().rev() {
            acc = acc.mul(g, f).add(p);
        }
        acc
    }

    pub fn eval(&self, x0: FieldElement, t0: FieldElement, f: &Field) -> FieldElement {
        self.t_coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, p| f.mul(acc, t0) + p.eval(x0, f))
    }

    /// Hasse derivative of order `(a, b)` in `(x, t)` at `(x0, t0)`: the
    /// coefficient of `x^a t^b` in `P(x + x0, t + t0)`.
    pub fn hasse(&self, a: usize, b: usize, x0: FieldElement, t0: FieldElement, f: &Field) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for (i, p) in self.t_coeffs.iter().enumerate().skip(b) {
            if !binomial_mod2(i, b) {
                continue;
            }
            let mut inner = FieldElement::ZERO;
            for (j, &c) in p.coeffs().iter().enumerate().skip(a) {
                if !c.is_zero() && binomial_mod2(j, a) {
                    inner += f.mul(c, f.pow(x0, (j - a) as u64));
                }
            }
            acc += f.mul(inner, f.pow(t0, (i - b) as u64));
        }
        acc
    }

    /// True iff every Hasse derivative of total order below `s` vanishes at the point.
    pub fn has_multiplicity(&self, s: usize, x0: FieldElement, t0: FieldElement, f: &Field) -> bool {
        (0..s).all(|total| (0..=total).all(|a| self.hasse(a, total - a, x0, t0, f).is_zero()))
    }

    /// Divides out the largest power of `x` dividing every coefficient.
    fn strip_x_power(&mut self) {
        let Some(r) = self.t_coeffs.iter().filter_map(Poly::valuation).min() else {
            return;
        };
        if r > 0 {
            for p in &mut self.t_coeffs {
                *p = p.shift_down(r);
            }
        }
    }

    /// `P(x, x·t + γ)`.
    fn substitute_step(&self, gamma: FieldElement, f: &Field) -> BiPoly {
        let deg = self.t_coeffs.len();
        let mut out = Vec::with_capacity(deg);
        for b in 0..deg {
            let mut acc: Vec<FieldElement> = Vec::new();
            for i in b..deg {
                if !binomial_mod2(i, b) {
                    continue;
                }
                let g = f.pow(gamma, (i - b) as u64);
                let src = self.t_coeffs[i].coeffs();
                if acc.len() < src.len() {
                    acc.resize(src.len(), FieldElement::ZERO);
                }
                f.axpy(&mut acc, g, src);
            }
            out.push(Poly::from_coeffs(acc).shift(b));
        }
        BiPoly::new(out)
    }
}

/// Every power-series root `t(x)` of `P(x, t)` truncated modulo `x^precision`,
/// by Roth–Ruckenstein recursion on constant terms.
///
/// The result contains the truncation of every root in `F[[x]]`; because the
/// recursion stops at `precision`, a returned prefix is not guaranteed to
/// extend to a true root, so callers verify candidates.
pub fn series_roots(p: &BiPoly, precision: usize, f: &Field) -> Result<Vec<Poly>> {
    if p.is_zero() {
        return Err(Error::InvalidParameter("series roots of the zero polynomial".into()));
    }
    if precision == 0 {
        return Err(Error::InvalidParameter("precision must be positive".into()));
    }
    let ell = p.t_degree().unwrap_or(0).max(1);
    let mut budget = ell * precision + 1;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(precision);
    rr_recurse(p.clone(), precision, &mut prefix, &mut out, &mut budget, f)?;
    Ok(out)
}

fn rr_recurse(
    mut p: BiPoly,
    precision: usize,
    prefix: &mut Vec<FieldElement>,
    out: &mut Vec<Poly>,
    budget: &mut usize,
    f: &Field,
) -> Result<()> {
    if *budget == 0 {
        return Err(Error::Internal("root-finding recursion too broad".into()));
    }
    *budget -= 1;
    if prefix.len() == precision {
        out.push(Poly::from_coeffs(prefix.clone()));
        return Ok(());
    }
    p.strip_x_power();
    let at_zero = Poly::from_coeffs(p.t_coeffs.iter().map(|c| c.coeff(0)).collect());
    if at_zero.deg().unwrap_or(0) == 0 {
        return Ok(());
    }
    for gamma in f.elements() {
        if !at_zero.eval(gamma, f).is_zero() {
            continue;
        }
        prefix.push(gamma);
        rr_recurse(p.substitute_step(gamma, f), precision, prefix, out, budget, f)?;
        prefix.pop();
    }
    Ok(())
}

/// Finds coprime `(f1, f2)` with `f1 ≡ f2·series (mod x^precision)`,
/// `deg f1 ≤ w1`, `deg f2 ≤ w2` and `f2(0) ≠ 0`; `f2` is returned monic.
pub fn rational_reconstruct(
    series: &Poly,
    precision: usize,
    w1: usize,
    w2: usize,
    f: &Field,
) -> Result<Option<(Poly, Poly)>> {
    if precision < w1 + w2 + 1 {
        return Err(Error::InvalidParameter(format!(
            "precision {precision} below w1 + w2 + 1 = {}",
            w1 + w2 + 1
        )));
    }
    let s = series.truncate(precision);
    let modulus = Poly::monomial(FieldElement::ONE, precision);
    let mut eea = Eea::new(&modulus, &s, f);
    while eea.current().remainder.deg().is_some_and(|d| d > w1) {
        eea.step();
    }
    let row = eea.current();
    let (f1, f2) = (&row.remainder, &row.u);
    if f2.deg().is_none_or(|d| d > w2) || f2.coeff(0).is_zero() {
        return Ok(None);
    }
    if Poly::gcd(f1, f2, f).deg() != Some(0) {
        return Ok(None);
    }
    let inv = f.inv(f2.leading())?;
    Ok(Some((f1.scale(inv, f), f2.scale(inv, f))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(m: u32) -> Field {
        Field::with_default_modulus(m).unwrap()
    }

    fn p(f: &Field, c: &[u32]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&v| f.element(v).unwrap()).collect())
    }

    #[test]
    fn normalization_and_degree() {
        let f = gf(4);
        assert_eq!(p(&f, &[1, 0, 0]).deg(), Some(0));
        assert_eq!(Poly::zero().deg(), None);
        assert!(Poly::zero().deg() < Some(0));
    }

    #[test]
    fn small_identities() {
        let f = gf(6);
        let x = Poly::x();
        assert_eq!(Poly::gcd(&x.mul(&x, &f), &x, &f), x);
        let xp1 = p(&f, &[1, 1]);
        assert_eq!(xp1.mul(&xp1, &f), p(&f, &[1, 0, 1]));
        assert_eq!(p(&f, &[3, 1]).divmod(&Poly::zero(), &f), Err(Error::DivisionByZero));
    }

    #[test]
    fn divmod_round_trip() {
        let f = gf(6);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let a = Poly::random_below(rng.random_range(0..30), &f, &mut rng);
            let b = Poly::random(rng.random_range(0..12), &f, &mut rng);
            let (q, r) = a.divmod(&b, &f).unwrap();
            assert!(r.deg() < b.deg());
            assert_eq!(q.mul(&b, &f).add(&r), a);
        }
    }

    #[test]
    fn eea_gf2_example() {
        // Elements 0/1 only, so this is the computation over GF(2).
        let f = gf(4);
        let a = Poly::monomial(FieldElement::ONE, 4);
        let b = p(&f, &[1, 0, 1]);
        let trace = eea_full(&a, &b, &f).unwrap();
        assert_eq!(trace.gcd(&f), Poly::one());
    }

    #[test]
    fn eea_bezout_and_ladder() {
        let f = gf(6);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let a = Poly::random(rng.random_range(1..20), &f, &mut rng);
            let b = Poly::random_below(a.deg().unwrap(), &f, &mut rng);
            let trace = eea_full(&a, &b, &f).unwrap();
            for row in &trace.rows {
                let rhs = row.u.mul(&b, &f).add(&row.v.mul(&a, &f));
                assert_eq!(row.remainder, rhs);
            }
            for w in trace.rows.windows(2).skip(1) {
                if !w[1].remainder.is_zero() {
                    assert!(w[1].remainder.deg() < w[0].remainder.deg());
                }
            }
            // deg U_i = deg a - deg R_{i-1} for i ≥ 1 (rows[i+1] holds R_i).
            for i in 1..trace.rows.len() - 1 {
                let u = &trace.rows[i + 1].u;
                let prev_r = &trace.rows[i].remainder;
                assert_eq!(u.deg_i(), a.deg_i() - prev_r.deg_i());
            }
            assert_eq!(trace.gcd(&f), Poly::gcd(&a, &b, &f));
        }
    }

    #[test]
    fn eea_coprime_reaches_constant() {
        let f = gf(6);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut seen = 0;
        while seen < 100 {
            let a = Poly::random(8, &f, &mut rng);
            let b = Poly::random(5, &f, &mut rng);
            if Poly::gcd(&a, &b, &f) != Poly::one() {
                continue;
            }
            seen += 1;
            let trace = eea_full(&a, &b, &f).unwrap();
            assert!(trace.rows.iter().any(|r| r.remainder.deg() == Some(0)));
        }
    }

    #[test]
    fn eea_rejects_double_zero() {
        let f = gf(4);
        assert!(eea_full(&Poly::zero(), &Poly::zero(), &f).is_err());
    }

    #[test]
    fn hasse_examples() {
        let f = gf(6);
        let x0 = f.element(37).unwrap();
        let t0 = f.element(11).unwrap();
        let x3 = BiPoly::new(vec![Poly::monomial(FieldElement::ONE, 3)]);
        assert_eq!(x3.hasse(2, 0, x0, t0, &f), x0);
        let t2 = BiPoly::new(vec![Poly::zero(), Poly::zero(), Poly::one()]);
        assert_eq!(t2.hasse(0, 1, x0, t0, &f), FieldElement::ZERO);
    }

    /// Expands `P(x + x0, t + t0)` by multiplying out shifted powers.
    fn shifted_table(bp: &BiPoly, x0: FieldElement, t0: FieldElement, f: &Field) -> Vec<Vec<FieldElement>> {
        let tdeg = bp.t_coeffs().len();
        let xdeg = bp.x_degree().map_or(0, |d| d + 1);
        let mut table = vec![vec![FieldElement::ZERO; xdeg.max(1)]; tdeg.max(1)];
        let xs = Poly::from_coeffs(vec![x0, FieldElement::ONE]);
        let ts = Poly::from_coeffs(vec![t0, FieldElement::ONE]);
        let mut tpow = Poly::one();
        for i in 0..tdeg {
            let pi = bp.t_coeffs()[i].compose(&xs, f);
            for (b, &tc) in tpow.coeffs().iter().enumerate() {
                for (a, &xc) in pi.coeffs().iter().enumerate() {
                    table[b][a] += f.mul(tc, xc);
                }
            }
            tpow = tpow.mul(&ts, f);
        }
        table
    }

    #[test]
    fn hasse_matches_symbolic_shift() {
        let f = gf(4);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let bp = BiPoly::new((0..4).map(|_| Poly::random_below(6, &f, &mut rng)).collect());
            let (x0, t0) = (f.random(&mut rng), f.random(&mut rng));
            let table = shifted_table(&bp, x0, t0, &f);
            for (b, row) in table.iter().enumerate() {
                for (a, &c) in row.iter().enumerate() {
                    assert_eq!(bp.hasse(a, b, x0, t0, &f), c);
                }
            }
        }
    }

    #[test]
    fn multiplicity_matches_symbolic_shift() {
        let f = gf(4);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            // (t - g(x))^2 · h has multiplicity ≥ 2 at every point of the curve t = g(x).
            let g = Poly::random_below(3, &f, &mut rng);
            let lin = BiPoly::new(vec![g.clone(), Poly::one()]);
            let h = BiPoly::new(vec![Poly::random_below(3, &f, &mut rng), Poly::random_below(2, &f, &mut rng)]);
            let prod = mul_bi(&mul_bi(&lin, &lin, &f), &h, &f);
            let x0 = f.random(&mut rng);
            let t0 = g.eval(x0, &f);
            let s = 2;
            let table = shifted_table(&prod, x0, t0, &f);
            let symbolic = table
                .iter()
                .enumerate()
                .all(|(b, row)| row.iter().enumerate().all(|(a, c)| a + b >= s || c.is_zero()));
            assert!(symbolic);
            assert_eq!(prod.has_multiplicity(s, x0, t0, &f), symbolic);
            let off = t0 + FieldElement::ONE;
            let table = shifted_table(&prod, x0, off, &f);
            let symbolic = table
                .iter()
                .enumerate()
                .all(|(b, row)| row.iter().enumerate().all(|(a, c)| a + b >= 1 || c.is_zero()));
            assert_eq!(prod.has_multiplicity(1, x0, off, &f), symbolic);
        }
    }

    fn mul_bi(a: &BiPoly, b: &BiPoly, f: &Field) -> BiPoly {
        let mut out = vec![Poly::zero(); a.t_coeffs().len() + b.t_coeffs().len()];
        for (i, pa) in a.t_coeffs().iter().enumerate() {
            for (j, pb) in b.t_coeffs().iter().enumerate() {
                out[i + j] = out[i + j].add(&pa.mul(pb, f));
            }
        }
        BiPoly::new(out)
    }

    #[test]
    fn taylor_shift_round_trip() {
        let f = gf(6);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let a = Poly::random_below(15, &f, &mut rng);
            let x0 = f.random(&mut rng);
            // Shifting by x0 twice is the identity in characteristic 2.
            assert_eq!(a.taylor_shift(x0, &f).taylor_shift(x0, &f), a);
            let y = f.random(&mut rng);
            assert_eq!(a.taylor_shift(x0, &f).eval(y, &f), a.eval(y + x0, &f));
        }
    }

    #[test]
    fn series_root_linear() {
        let f = gf(4);
        let target = p(&f, &[1, 1]);
        let bp = BiPoly::new(vec![target.clone(), Poly::one()]);
        let roots = series_roots(&bp, 4, &f).unwrap();
        assert_eq!(roots, vec![target]);
    }

    #[test]
    fn series_roots_planted_pairs() {
        let f = gf(6);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let prec = rng.random_range(1..8);
            let a = Poly::random_below(prec, &f, &mut rng);
            let b = Poly::random_below(prec, &f, &mut rng);
            let la = BiPoly::new(vec![a.clone(), Poly::one()]);
            let lb = BiPoly::new(vec![b.clone(), Poly::one()]);
            let prod = mul_bi(&la, &lb, &f);
            let mut roots = series_roots(&prod, prec, &f).unwrap();
            roots.sort_by(|x, y| x.coeffs().cmp(y.coeffs()));
            roots.dedup();
            let mut expect = vec![a, b];
            expect.sort_by(|x, y| x.coeffs().cmp(y.coeffs()));
            expect.dedup();
            assert_eq!(roots, expect);
        }
    }

    #[test]
    fn series_roots_none_at_origin() {
        let f = gf(4);
        // t^3 + t + 1 splits only in GF(8), which is not a subfield of GF(16).
        let bp = BiPoly::new(vec![Poly::one(), Poly::one(), Poly::zero(), Poly::one()]);
        assert!(series_roots(&bp, 3, &f).unwrap().is_empty());
    }

    #[test]
    fn reconstruct_geometric_series() {
        let f = gf(4);
        let series = p(&f, &[1, 1, 1, 1, 1]);
        let (f1, f2) = rational_reconstruct(&series, 5, 0, 1, &f).unwrap().unwrap();
        assert_eq!(f1, Poly::one());
        assert_eq!(f2, p(&f, &[1, 1]));
        assert_eq!(f2.mul(&series, &f).truncate(5), f1);
    }

    #[test]
    fn reconstruct_polynomial_case() {
        let f = gf(6);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let w1 = rng.random_range(0..5);
            let w2 = rng.random_range(0..5);
            let g = Poly::random_below(w1 + 1, &f, &mut rng);
            let (f1, f2) = rational_reconstruct(&g, w1 + w2 + 1, w1, w2, &f).unwrap().unwrap();
            assert_eq!((f1, f2), (g, Poly::one()));
        }
    }

    #[test]
    fn reconstruct_precondition() {
        let f = gf(4);
        assert!(rational_reconstruct(&Poly::one(), 2, 1, 1, &f).is_err());
    }

    /// Exhaustive scan over GF(2) numerators and denominators at micro bounds.
    /// For a 0/1 series the EEA never leaves GF(2), so the scan is a complete oracle.
    #[test]
    fn reconstruct_exhaustive_gf2_micro() {
        let f = gf(4);
        let (w1, w2) = (1usize, 1usize);
        let prec = w1 + w2 + 1;
        let polys = |deg_bound: usize| -> Vec<Poly> {
            (0..1u32 << (deg_bound + 1))
                .map(|mask| {
                    Poly::from_coeffs(
                        (0..=deg_bound)
                            .map(|i| FieldElement((mask >> i & 1) as u16))
                            .collect(),
                    )
                })
                .collect()
        };
        for mask in 0..1u32 << prec {
            let series = Poly::from_coeffs((0..prec).map(|i| FieldElement((mask >> i & 1) as u16)).collect());
            let witness = polys(w1).into_iter().find_map(|n| {
                polys(w2).into_iter().find_map(|d| {
                    let ok = !d.coeff(0).is_zero()
                        && Poly::gcd(&n, &d, &f).deg() == Some(0)
                        && d.mul(&series, &f).truncate(prec) == n;
                    ok.then(|| (n.clone(), d))
                })
            });
            let got = rational_reconstruct(&series, prec, w1, w2, &f).unwrap();
            match (witness, got) {
                (Some((n, d)), Some((f1, f2))) => {
                    assert_eq!(f2.mul(&series, &f).truncate(prec), f1);
                    // Unique up to scaling.
                    assert_eq!(f1.mul(&d, &f), n.mul(&f2, &f));
                }
                (None, None) => {}
                (w, g) => panic!("series {series:?}: oracle {w:?}, reconstruct {g:?}"),
            }
        }
    }
}
