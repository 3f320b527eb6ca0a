//! Rational interpolation with multiplicities.
//!
//! `Q(x, y, z) = Σ_{i=0}^{ℓ} Q_i(x) y^i z^{ℓ-i}` is found as a kernel vector of
//! a dense linear system. A point `(x_0, y_0 : z_0)` with `z_0 ≠ 0` imposes the
//! vanishing of all Hasse derivatives of total order `< s` of `Q(x, t, 1)` at
//! `(x_0, y_0/z_0)`; a point at infinity `(x_0, 1 : 0)` does the same for
//! `Q(x, 1, u)` at `(x_0, 0)`.
//!
//! A pair `(f1, f2)` is a root of `Q` when `Q(x, f1, f2) = Σ Q_i f1^i f2^{ℓ-i}`
//! is the zero polynomial. If `Q` has `(1, w1, w2)`-weighted degree below `s·T`
//! and `(f1(x_j) : f2(x_j))` meets at least `T` of the points, with
//! `deg f1 ≤ w1` and `deg f2 ≤ w2`, then `(f1, f2)` is a root.

use crate::field::{Field, FieldElement};
use crate::linalg::{lowest_kernel_vector, Matrix};
use crate::poly::{binomial_mod2, rational_reconstruct, series_roots, BiPoly, Poly};
use crate::{Error, Result};

pub const MAX_MULTIPLICITY: usize = 64;

/// `(x, y : z)` with `(y, z) ≠ (0, 0)`, stored with `z = 1` or `(y, z) = (1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    pub x: FieldElement,
    pub y: FieldElement,
    pub z: FieldElement,
}

impl ProjPoint {
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement, f: &Field) -> Result<ProjPoint> {
        if z.is_zero() {
            if y.is_zero() {
                return Err(Error::InvalidParameter(format!("point (x={x}, 0 : 0)")));
            }
            return Ok(ProjPoint {
                x,
                y: FieldElement::ONE,
                z: FieldElement::ZERO,
            });
        }
        Ok(ProjPoint {
            x,
            y: f.div(y, z)?,
            z: FieldElement::ONE,
        })
    }

    pub fn is_infinite(&self) -> bool {
        self.z.is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InterpParams {
    /// Number of points.
    pub n_points: usize,
    /// Agreement target.
    pub t: usize,
    pub w1: i64,
    pub w2: i64,
    /// Multiplicity.
    pub s: usize,
    /// List size: total degree of `Q` in `(y, z)`.
    pub ell: usize,
}

impl InterpParams {
    pub fn monomial_count(&self) -> usize {
        monomial_count(self.s, self.ell, self.t, self.w1, self.w2)
    }

    pub fn constraint_count(&self) -> usize {
        self.n_points * self.s * (self.s + 1) / 2
    }

    /// The weighted-degree budget `s·T`.
    pub fn degree_budget(&self) -> i64 {
        (self.s * self.t) as i64
    }

    pub fn ratio(&self) -> f64 {
        self.ell as f64 / self.s as f64
    }

    /// Largest `x`-degree allowed in `Q_i`, or `None` if `Q_i` must vanish.
    fn max_x_degree(&self, i: usize) -> Option<usize> {
        let used = i as i64 * self.w1 + (self.ell - i) as i64 * self.w2;
        let room = self.degree_budget() - used;
        (room > 0).then(|| (room - 1) as usize)
    }
}

/// `Σ_{i=0}^{ℓ} max(0, sT - i·w1 - (ℓ-i)·w2)`.
pub fn monomial_count(s: usize, ell: usize, t: usize, w1: i64, w2: i64) -> usize {
    let budget = (s * t) as i64;
    (0..=ell as i64)
        .map(|i| (budget - i * w1 - (ell as i64 - i) * w2).max(0) as usize)
        .sum()
}

/// `⌊√(L(2τ - d))⌋ + 1`, the smallest `τ_L` with `τ_L² > L(2τ - d)`.
pub fn tau_l(l: usize, tau: usize, d: usize) -> Result<usize> {
    if 2 * tau <= d {
        return Err(Error::InvalidParameter(format!(
            "tau_L needs 2τ > d, got τ={tau} d={d}"
        )));
    }
    if l == 0 {
        return Err(Error::InvalidParameter("L must be positive".into()));
    }
    Ok((l * (2 * tau - d)).isqrt() + 1)
}

/// Smallest `s`, then smallest `ℓ` (with `ℓ ≥ s` if `ell_at_least_s`), such that
/// a nonzero `Q` is guaranteed to exist.
pub fn choose_parameters(
    n_points: usize,
    t: usize,
    w1: i64,
    w2: i64,
    ell_at_least_s: bool,
) -> Result<InterpParams> {
    let w = w1 + w2;
    if w < 0 || t > n_points || t == 0 || (t * t) as i64 <= n_points as i64 * w {
        return Err(Error::RadiusBeyondGuarantee(format!(
            "need T^2 > N(w1+w2), w1+w2 >= 0 and 0 < T <= N; got N={n_points} T={t} w1={w1} w2={w2}"
        )));
    }
    for s in 1..=MAX_MULTIPLICITY {
        let budget = (s * t) as i64;
        let needed = n_points * s * (s + 1) / 2;
        // Beyond this ℓ the count stops growing; with a zero or negative
        // weight and no positive one it grows without bound.
        let ell_cap = match (w1.min(w2), w1.max(w2)) {
            (lo, _) if lo > 0 => (budget / lo) as usize + 1,
            (0, hi) if hi > 0 => (budget / hi) as usize + 1,
            _ => usize::MAX,
        };
        let start = if ell_at_least_s { s } else { 1 };
        let mut ell = start;
        while ell <= ell_cap {
            if monomial_count(s, ell, t, w1, w2) > needed {
                return Ok(InterpParams {
                    n_points,
                    t,
                    w1,
                    w2,
                    s,
                    ell,
                });
            }
            ell += 1;
        }
    }
    Err(Error::Internal(format!(
        "no (s, ell) with s <= {MAX_MULTIPLICITY} for N={n_points} T={t} w1={w1} w2={w2}"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    pub ell: usize,
    /// `q_polys[i]` multiplies `y^i z^{ℓ-i}`.
    pub q_polys: Vec<Poly>,
    pub params: InterpParams,
}

impl QPoly {
    pub fn is_zero(&self) -> bool {
        self.q_polys.iter().all(Poly::is_zero)
    }

    pub fn eval(&self, x: FieldElement, y: FieldElement, z: FieldElement, f: &Field) -> FieldElement {
        self.q_polys.iter().enumerate().fold(FieldElement::ZERO, |acc, (i, q)| {
            let mono = f.mul(f.pow(y, i as u64), f.pow(z, (self.ell - i) as u64));
            acc + f.mul(q.eval(x, f), mono)
        })
    }

    /// `Q(x, f1, f2)`.
    pub fn substitute(&self, f1: &Poly, f2: &Poly, f: &Field) -> Poly {
        let mut p1 = vec![Poly::one()];
        let mut p2 = vec![Poly::one()];
        for _ in 0..self.ell {
            p1.push(p1.last().unwrap().mul(f1, f));
            p2.push(p2.last().unwrap().mul(f2, f));
        }
        self.q_polys
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .fold(Poly::zero(), |acc, (i, q)| {
                acc.add(&q.mul(&p1[i].mul(&p2[self.ell - i], f), f))
            })
    }

    /// `Q(x, t, 1)`.
    pub fn t_chart(&self) -> BiPoly {
        BiPoly::new(self.q_polys.clone())
    }

    /// `Q(x, 1, u)`.
    pub fn u_chart(&self) -> BiPoly {
        BiPoly::new(self.q_polys.iter().rev().cloned().collect())
    }

    /// Largest `x`-degree over all `Q_i`.
    pub fn x_degree(&self) -> Option<usize> {
        self.q_polys.iter().filter_map(Poly::deg).max()
    }

    /// `deg Q_i + i·w1 + (ℓ-i)·w2 < s·T` for every nonzero `Q_i`.
    pub fn satisfies_degree_bound(&self) -> bool {
        let p = &self.params;
        self.q_polys.iter().enumerate().all(|(i, q)| match q.deg() {
            None => true,
            Some(dq) => {
                (dq as i64) + i as i64 * p.w1 + (self.ell - i) as i64 * p.w2 < p.degree_budget()
            }
        })
    }

    /// True iff `Q` vanishes with multiplicity at least `s` at the point.
    pub fn has_multiplicity_at(&self, s: usize, p: &ProjPoint, f: &Field) -> bool {
        if p.is_infinite() {
            self.u_chart().has_multiplicity(s, p.x, FieldElement::ZERO, f)
        } else {
            self.t_chart().has_multiplicity(s, p.x, p.y, f)
        }
    }
}

/// Monomials `(i, j)` for `x^j y^i z^{ℓ-i}` within the weighted-degree budget,
/// ordered by weighted degree and then by `i`.
fn monomials(params: &InterpParams) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(params.monomial_count());
    for i in 0..=params.ell {
        if let Some(max_j) = params.max_x_degree(i) {
            out.extend((0..=max_j).map(|j| (i, j)));
        }
    }
    let (w1, w2, ell) = (params.w1, params.w2, params.ell as i64);
    out.sort_by_key(|&(i, j)| (j as i64 + i as i64 * w1 + (ell - i as i64) * w2, i));
    out
}

/// Interpolation polynomial through every point with multiplicity `params.s`.
pub fn build_q(points: &[ProjPoint], params: &InterpParams, f: &Field) -> Result<QPoly> {
    if points.len() != params.n_points {
        return Err(Error::LengthMismatch {
            expected: params.n_points,
            got: points.len(),
        });
    }
    for (a, p) in points.iter().enumerate() {
        if points[..a].iter().any(|q| q.x == p.x) {
            return Err(Error::InvalidParameter(format!("repeated x-coordinate {}", p.x)));
        }
    }
    let monos = monomials(params);
    let s = params.s;
    let ell = params.ell;
    let max_j = monos.iter().map(|&(_, j)| j).max().unwrap_or(0);
    let mut m = Matrix::zeros(params.constraint_count(), monos.len());
    let mut row = 0;
    for p in points {
        let xpow: Vec<_> = (0..=max_j).map(|e| f.pow(p.x, e as u64)).collect();
        let tpow: Vec<_> = (0..=ell).map(|e| f.pow(p.y, e as u64)).collect();
        for total in 0..s {
            for a in 0..=total {
                let b = total - a;
                let r = m.row_mut(row);
                for (col, &(i, j)) in monos.iter().enumerate() {
                    if j < a || !binomial_mod2(j, a) {
                        continue;
                    }
                    let xp = xpow[j - a];
                    r[col] = if p.is_infinite() {
                        // Q(x, 1, u) carries u^{ℓ-i}; at u = 0 only u^b survives.
                        if ell - i == b {
                            xp
                        } else {
                            FieldElement::ZERO
                        }
                    } else if i >= b && binomial_mod2(i, b) {
                        f.mul(xp, tpow[i - b])
                    } else {
                        FieldElement::ZERO
                    };
                }
                row += 1;
            }
        }
    }
    let kernel = lowest_kernel_vector(m, f)
        .ok_or_else(|| Error::Internal("interpolation system has trivial kernel".into()))?;
    let mut tables = vec![Vec::new(); ell + 1];
    for (&(i, j), &c) in monos.iter().zip(&kernel) {
        if c.is_zero() {
            continue;
        }
        let t = &mut tables[i];
        if t.len() <= j {
            t.resize(j + 1, FieldElement::ZERO);
        }
        t[j] = c;
    }
    let q = QPoly {
        ell,
        q_polys: tables.into_iter().map(Poly::from_coeffs).collect(),
        params: *params,
    };
    assert!(!q.is_zero());
    assert!(q.satisfies_degree_bound(), "weighted degree bound violated");
    Ok(q)
}

/// Canonical representative under projective scaling.
fn normalize_pair(f1: Poly, f2: Poly, f: &Field) -> (Poly, Poly) {
    let lead = if f2.is_zero() { f1.leading() } else { f2.leading() };
    let inv = f.inv(lead).expect("nonzero pair");
    (f1.scale(inv, f), f2.scale(inv, f))
}

/// All coprime pairs `(f1, f2)` with `deg f1 ≤ b1`, `deg f2 ≤ b2` and
/// `Q(x, f1, f2) = 0`, up to scaling.
///
/// Power-series roots of `Q(x, t, 1)` give the pairs with `f2(0) ≠ 0`, those
/// of `Q(x, 1, u)` the pairs with `f1(0) ≠ 0`; coprimality means every pair
/// is seen by at least one chart. Each candidate is checked by substitution.
pub fn rational_roots(q: &QPoly, b1: i64, b2: i64, f: &Field) -> Result<Vec<(Poly, Poly)>> {
    let mut out: Vec<(Poly, Poly)> = Vec::new();
    let push = |f1: Poly, f2: Poly, out: &mut Vec<(Poly, Poly)>| {
        if f1.deg_i() > b1 || f2.deg_i() > b2 || Poly::gcd(&f1, &f2, f).deg() != Some(0) {
            return;
        }
        if !q.substitute(&f1, &f2, f).is_zero() {
            return;
        }
        let pair = normalize_pair(f1, f2, f);
        if !out.contains(&pair) {
            out.push(pair);
        }
    };
    if b1 < 0 || b2 < 0 {
        if b1 >= 0 {
            push(Poly::one(), Poly::zero(), &mut out);
        }
        if b2 >= 0 {
            push(Poly::zero(), Poly::one(), &mut out);
        }
        return Ok(out);
    }
    let (b1, b2) = (b1 as usize, b2 as usize);
    let precision = b1 + b2 + 1;
    for series in series_roots(&q.t_chart(), precision, f)? {
        if let Some((f1, f2)) = rational_reconstruct(&series, precision, b1, b2, f)? {
            push(f1, f2, &mut out);
        }
    }
    for series in series_roots(&q.u_chart(), precision, f)? {
        if let Some((g1, g2)) = rational_reconstruct(&series, precision, b2, b1, f)? {
            push(g2, g1, &mut out);
        }
    }
    Ok(out)
}
