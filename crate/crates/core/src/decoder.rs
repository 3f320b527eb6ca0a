//! Hard-decision Wu list decoding and reduced list decoding on the `L` least
//! reliable positions.
//!
//! Both decoders start like a classical decoder: syndrome, halted Euclidean
//! run, and an attempt to use `H1` directly as the error locator. If that
//! fails they look for `Λ = A·H1 + B·H2` by interpolating the points
//! `(α_i, H2(α_i) : H1(α_i))`, on which `(A : B)` passes through every error
//! position, and finding the roots `(A, B)` of the interpolation polynomial.

use crate::field::FieldElement;
use crate::grs::{hamming_distance, GrsCode, Word};
use crate::interp::{build_q, choose_parameters, rational_roots, tau_l, InterpParams, ProjPoint};
use crate::key_equation::{solve_key_equation, KeyEqOutput};
use crate::poly::Poly;
use crate::{Error, Result};

/// Largest `τ` with `τ < n - √(n(n-d))`.
pub fn johnson_radius(n: usize, d: usize) -> usize {
    assert!(1 <= d && d <= n, "need 1 <= d <= n");
    let rhs = n * (n - d);
    (0..n).rev().find(|&t| (n - t) * (n - t) > rhs).unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeOutcome {
    Unique(Word),
    List(Vec<Word>),
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    HalfDistance,
    Interpolation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailReason {
    /// `Q` has no roots within the degree bounds.
    NoRoots,
    /// No root gave a polynomial that splits over the evaluation points.
    NoValidLocator,
    /// No corrected word was a codeword.
    NoCodeword,
    /// Interpolation could not be set up, e.g. the radius is below half the
    /// distance or no multiplicity satisfies the monomial count.
    Degenerate(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub stage: Stage,
    pub halt_iteration: usize,
    pub deg_h1: usize,
    pub tau_l: Option<usize>,
    pub params: Option<InterpParams>,
    /// Positions used for interpolation, ascending.
    pub positions: Vec<usize>,
    /// Number of root pairs `(A, B)` found.
    pub candidates: usize,
    pub failure: Option<FailReason>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub outcome: DecodeOutcome,
    pub diagnostics: Diagnostics,
}

impl DecodeResult {
    pub fn codewords(&self) -> &[Word] {
        match &self.outcome {
            DecodeOutcome::Unique(c) => std::slice::from_ref(c),
            DecodeOutcome::List(v) => v,
            DecodeOutcome::Fail => &[],
        }
    }

    pub fn contains(&self, c: &[FieldElement]) -> bool {
        self.codewords().iter().any(|w| w == c)
    }

    pub fn is_fail(&self) -> bool {
        self.outcome == DecodeOutcome::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReducedConfig {
    pub tau: usize,
    pub l: usize,
    pub tau_l_override: Option<usize>,
}

impl ReducedConfig {
    pub fn new(tau: usize, l: usize) -> ReducedConfig {
        ReducedConfig {
            tau,
            l,
            tau_l_override: None,
        }
    }

    pub fn with_tau_l(mut self, tau_l: usize) -> ReducedConfig {
        self.tau_l_override = Some(tau_l);
        self
    }

    /// Checks `d < 2τ`, `τ < n - √(n(n-d)) + 1`, `1 ≤ L ≤ n` and a positive override.
    pub fn validate(&self, n: usize, d: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if 2 * self.tau <= d {
            return bad(format!("tau={} must exceed d/2 = {}", self.tau, d as f64 / 2.0));
        }
        if self.tau > n || (n + 1 - self.tau).pow(2) <= n * (n - d) {
            return bad(format!("tau={} is not below n - sqrt(n(n-d)) + 1", self.tau));
        }
        if self.l == 0 || self.l > n {
            return bad(format!("L={} outside 1..={n}", self.l));
        }
        if self.tau_l_override == Some(0) {
            return bad("tau_L override must be positive".into());
        }
        Ok(())
    }

    pub fn tau_l(&self, d: usize) -> Result<usize> {
        match self.tau_l_override {
            Some(t) => Ok(t),
            None => tau_l(self.l, self.tau, d),
        }
    }
}

/// The `l` positions of smallest reliability, ties broken by lower index,
/// returned in ascending index order.
pub fn least_reliable(eta: &[f64], l: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..eta.len()).collect();
    idx.sort_by(|&a, &b| eta[a].total_cmp(&eta[b]).then(a.cmp(&b)));
    idx.truncate(l);
    idx.sort_unstable();
    idx
}

/// Steps shared by every decoder: syndrome, Euclidean run and the attempt to
/// correct with `H1` when its degree is below `d/2`.
struct Prelude {
    ke: KeyEqOutput,
    unique: Option<Word>,
}

fn prelude(code: &GrsCode, r: &[FieldElement]) -> Result<Prelude> {
    let s = code.syndrome(r)?;
    let ke = solve_key_equation(code, &s);
    let unique = if 2 * ke.deg_h1() < code.d() {
        code.forney_correct(r, &ke.h1, &s)
    } else {
        None
    };
    Ok(Prelude { ke, unique })
}

fn diagnostics(ke: &KeyEqOutput, stage: Stage) -> Diagnostics {
    Diagnostics {
        stage,
        halt_iteration: ke.halt_iteration,
        deg_h1: ke.deg_h1(),
        tau_l: None,
        params: None,
        positions: Vec::new(),
        candidates: 0,
        failure: None,
    }
}

fn fail(mut diag: Diagnostics, reason: FailReason) -> DecodeResult {
    diag.failure = Some(reason);
    DecodeResult {
        outcome: DecodeOutcome::Fail,
        diagnostics: diag,
    }
}

/// Classical decoding up to `⌊(d-1)/2⌋` errors.
pub fn classical_decode(code: &GrsCode, r: &[FieldElement]) -> Result<Option<Word>> {
    Ok(prelude(code, r)?.unique)
}

struct InterpolationPlan {
    positions: Vec<usize>,
    t: usize,
    w1: i64,
    w2: i64,
    ell_at_least_s: bool,
    /// Root degree bounds; `None` means `(w1, w2)`.
    root_bounds: Option<(i64, i64)>,
    max_distance: Option<usize>,
}

fn interpolate_and_correct(
    code: &GrsCode,
    r: &[FieldElement],
    ke: &KeyEqOutput,
    plan: InterpolationPlan,
    mut diag: Diagnostics,
) -> Result<DecodeResult> {
    let f = code.field();
    diag.positions = plan.positions.clone();
    let params = match choose_parameters(plan.positions.len(), plan.t, plan.w1, plan.w2, plan.ell_at_least_s) {
        Ok(p) => p,
        Err(e) => return Ok(fail(diag, FailReason::Degenerate(e.to_string()))),
    };
    diag.params = Some(params);
    let points = plan
        .positions
        .iter()
        .map(|&i| {
            let a = code.alphas()[i];
            ProjPoint::new(a, ke.h2.eval(a, f), ke.h1.eval(a, f), f)
        })
        .collect::<Result<Vec<_>>>()?;
    let q = build_q(&points, &params, f)?;
    // A root (f1, f2) divides Q as a form in (y, z), so f1 and f2 each divide
    // some Q_i and cannot exceed its degree.
    let xdeg = q.x_degree().map_or(-1, |v| v as i64);
    let (b1, b2) = plan.root_bounds.unwrap_or((plan.w1, plan.w2));
    let roots = rational_roots(&q, b1.min(xdeg), b2.min(xdeg), f)?;
    diag.candidates = roots.len();
    if roots.is_empty() {
        return Ok(fail(diag, FailReason::NoRoots));
    }
    let s = code.syndrome(r)?;
    let mut any_locator = false;
    let mut found: Vec<Word> = Vec::new();
    for (a, b) in &roots {
        let lambda = a.mul(&ke.h1, f).add(&b.mul(&ke.h2, f));
        if code.locator_roots(&lambda).is_none() {
            continue;
        }
        any_locator = true;
        let Some(c) = code.forney_correct(r, &lambda, &s) else {
            continue;
        };
        let dist = hamming_distance(&c, r);
        assert!(dist <= lambda.deg().unwrap_or(0), "correction outside the locator");
        if plan.max_distance.is_some_and(|m| dist > m) {
            continue;
        }
        if !found.contains(&c) {
            found.push(c);
        }
    }
    if !any_locator {
        return Ok(fail(diag, FailReason::NoValidLocator));
    }
    if found.is_empty() {
        return Ok(fail(diag, FailReason::NoCodeword));
    }
    found.sort_by_key(|c| c.iter().map(|v| v.value()).collect::<Vec<_>>());
    Ok(DecodeResult {
        outcome: DecodeOutcome::List(found),
        diagnostics: diag,
    })
}

/// Interpolation weights `(τ - deg H1, τ - d + deg H1)`.
fn weights(tau: usize, d: usize, ke: &KeyEqOutput) -> (i64, i64) {
    let (tau, d, h) = (tau as i64, d as i64, ke.deg_h1() as i64);
    (tau - h, tau - d + h)
}

/// Hard-decision list decoding: every codeword within distance `τ` of `r`.
pub fn wu_decode(code: &GrsCode, r: &[FieldElement], tau: usize) -> Result<DecodeResult> {
    let (n, d) = (code.n(), code.d());
    if tau < (d - 1) / 2 || tau > johnson_radius(n, d) {
        return Err(Error::RadiusBeyondGuarantee(format!(
            "tau={tau} outside [{}, {}]",
            (d - 1) / 2,
            johnson_radius(n, d)
        )));
    }
    let pre = prelude(code, r)?;
    if let Some(c) = pre.unique {
        return Ok(DecodeResult {
            outcome: DecodeOutcome::Unique(c),
            diagnostics: diagnostics(&pre.ke, Stage::HalfDistance),
        });
    }
    let diag = diagnostics(&pre.ke, Stage::Interpolation);
    if 2 * tau < d {
        return Ok(fail(diag, FailReason::Degenerate("radius below half the distance".into())));
    }
    let (w1, w2) = weights(tau, d, &pre.ke);
    let plan = InterpolationPlan {
        positions: (0..n).collect(),
        t: tau,
        w1,
        w2,
        ell_at_least_s: true,
        root_bounds: None,
        max_distance: Some(tau),
    };
    interpolate_and_correct(code, r, &pre.ke, plan, diag)
}

/// Reduced list decoding: interpolation only on the `L` least reliable
/// positions according to `eta` (smaller is less reliable).
pub fn reduced_decode(code: &GrsCode, r: &[FieldElement], eta: &[f64], cfg: &ReducedConfig) -> Result<DecodeResult> {
    let (n, d) = (code.n(), code.d());
    cfg.validate(n, d)?;
    if eta.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: eta.len(),
        });
    }
    let pre = prelude(code, r)?;
    if let Some(c) = pre.unique {
        return Ok(DecodeResult {
            outcome: DecodeOutcome::Unique(c),
            diagnostics: diagnostics(&pre.ke, Stage::HalfDistance),
        });
    }
    let mut diag = diagnostics(&pre.ke, Stage::Interpolation);
    let t = cfg.tau_l(d)?;
    diag.tau_l = Some(t);
    let (w1, w2) = weights(cfg.tau, d, &pre.ke);
    // Any locator of degree below d splits as A·H1 + B·H2 within these bounds,
    // which covers decoding beyond τ when enough errors fall in the L positions.
    let h = pre.ke.deg_h1() as i64;
    let plan = InterpolationPlan {
        positions: least_reliable(eta, cfg.l),
        t,
        w1,
        w2,
        ell_at_least_s: false,
        root_bounds: Some((d as i64 - 1 - h, h - 1)),
        max_distance: None,
    };
    interpolate_and_correct(code, r, &pre.ke, plan, diag)
}

/// Whether `c` is guaranteed to be in the reduced decoder's output:
/// `wt(c - r) < d/2`, or `wt_L ≥ τ_L - (ℓ/s)(τ - wt)` over the `L` least
/// reliable positions.
pub fn guarantee_holds(
    code: &GrsCode,
    c: &[FieldElement],
    r: &[FieldElement],
    eta: &[f64],
    cfg: &ReducedConfig,
    s: usize,
    ell: usize,
) -> Result<bool> {
    let wt = hamming_distance(c, r);
    if 2 * wt < code.d() {
        return Ok(true);
    }
    let wt_l = least_reliable(eta, cfg.l).into_iter().filter(|&i| c[i] != r[i]).count();
    Ok(success_law(wt, wt_l, cfg.tau, cfg.tau_l(code.d())?, s, ell))
}

/// `ε_L + (ℓ/s)(τ - ε) ≥ τ_L` in exact arithmetic.
pub fn success_law(eps: usize, eps_l: usize, tau: usize, tau_l: usize, s: usize, ell: usize) -> bool {
    let (eps, eps_l, tau, tau_l, s, ell) =
        (eps as i64, eps_l as i64, tau as i64, tau_l as i64, s as i64, ell as i64);
    s * eps_l + ell * (tau - eps) >= s * tau_l
}

/// `Λ` for the error pattern `r - c`, handy for diagnostics and tests.
pub fn error_locator(code: &GrsCode, c: &[FieldElement], r: &[FieldElement]) -> Poly {
    let roots: Vec<_> = (0..code.n()).filter(|&i| c[i] != r[i]).map(|i| code.alphas()[i]).collect();
    Poly::from_roots(&roots, code.field())
}
