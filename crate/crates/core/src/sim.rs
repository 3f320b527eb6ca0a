//! Monte Carlo drivers: block failure rates against SNR and the expected
//! number of errors caught by the `L` least reliable positions.
//!
//! Trial `t` at every SNR point draws from stream `t` of the seeded
//! generator, so the codeword and the unscaled noise of a trial are shared
//! across SNR points and the output does not depend on thread count.

use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;

use crate::channel::{ChannelConfig, SnrConvention, SoftReceived};
use crate::decoder::{classical_decode, least_reliable, reduced_decode, wu_decode, ReducedConfig};
use crate::grs::{hamming_distance, GrsCode, Word};
use crate::interp::{choose_parameters, tau_l};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub tau: usize,
    pub ls: Vec<usize>,
    pub tau_l_override: Option<usize>,
    pub snrs: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub convention: SnrConvention,
    pub include_wu: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimRecord {
    pub snr_db: f64,
    pub trials: u64,
    pub failures_classical: u64,
    /// `None` when the Wu decoder was skipped.
    pub failures_wu: Option<u64>,
    pub failures_reduced: u64,
    pub l: usize,
    pub tau: usize,
    pub tau_l: usize,
    pub s: Option<usize>,
    pub ell: Option<usize>,
    pub wall_time_s: f64,
}

pub const SIM_HEADER: &str =
    "snr_db,trials,failures_classical,failures_wu,failures_reduced,L,tau,tau_L,s,ell,wall_time_s";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl SimRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{:.2},{},{},{},{},{},{},{},{},{},{:.3}",
            self.snr_db,
            self.trials,
            self.failures_classical,
            opt(self.failures_wu),
            self.failures_reduced,
            self.l,
            self.tau,
            self.tau_l,
            opt(self.s),
            opt(self.ell),
            self.wall_time_s
        )
    }
}

/// Wilson score interval at 95% for `k` failures in `n` trials.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054;
    let (k, n) = (k as f64, n as f64);
    let p = k / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Picks the candidate with the largest soft metric; ties go to the earlier one.
fn best_by_metric<'a>(list: &'a [Word], rx: &SoftReceived) -> Option<&'a Word> {
    let mut best: Option<(&Word, f64)> = None;
    for w in list {
        let m = rx.soft_metric(w);
        if best.is_none_or(|(_, bm)| m > bm) {
            best = Some((w, m));
        }
    }
    best.map(|(w, _)| w)
}

/// Closest candidate in Hamming distance, then by soft metric.
fn best_by_distance<'a>(list: &'a [Word], rx: &SoftReceived) -> Option<&'a Word> {
    let dmin = list.iter().map(|w| hamming_distance(w, &rx.r)).min()?;
    let close: Vec<Word> = list.iter().filter(|w| hamming_distance(w, &rx.r) == dmin).cloned().collect();
    let pick = best_by_metric(&close, rx)?;
    list.iter().find(|w| *w == pick)
}

#[derive(Clone, Debug, Default)]
struct Tally {
    classical: u64,
    wu: u64,
    reduced: Vec<u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.classical += other.classical;
        self.wu += other.wu;
        for (a, b) in self.reduced.iter_mut().zip(other.reduced) {
            *a += b;
        }
        self
    }
}

/// Block failure counts (wrong decoding or decoding failure) per SNR point
/// and per `L`; one record per `(snr, L)`.
pub fn failure_sweep(code: &GrsCode, cfg: &SweepConfig) -> Result<Vec<SimRecord>> {
    if cfg.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let d = code.d();
    let reduced_cfgs: Vec<ReducedConfig> = cfg
        .ls
        .iter()
        .map(|&l| ReducedConfig {
            tau: cfg.tau,
            l,
            tau_l_override: cfg.tau_l_override,
        })
        .collect();
    for rc in &reduced_cfgs {
        rc.validate(code.n(), d)?;
    }
    let mut out = Vec::new();
    for &snr in &cfg.snrs {
        let start = Instant::now();
        let ch = ChannelConfig::for_code(code, snr, cfg.seed, cfg.convention);
        let empty = Tally {
            reduced: vec![0; reduced_cfgs.len()],
            ..Tally::default()
        };
        let tally = (0..cfg.trials)
            .into_par_iter()
            .map(|t| -> Result<Tally> {
                let mut rng = ch.trial_rng(t);
                let c = code.random_codeword(&mut rng);
                let rx = SoftReceived::receive(&c, code.field(), ch.sigma, &mut rng);
                let mut tally = empty.clone();
                let classical_ok = classical_decode(code, &rx.r)?.as_ref() == Some(&c);
                tally.classical += u64::from(!classical_ok);
                if cfg.include_wu {
                    let res = wu_decode(code, &rx.r, cfg.tau)?;
                    tally.wu += u64::from(best_by_distance(res.codewords(), &rx) != Some(&c));
                }
                for (slot, rc) in tally.reduced.iter_mut().zip(&reduced_cfgs) {
                    let res = reduced_decode(code, &rx.r, &rx.eta, rc)?;
                    *slot += u64::from(best_by_metric(res.codewords(), &rx) != Some(&c));
                }
                Ok(tally)
            })
            .try_reduce(|| empty.clone(), |a, b| Ok(a.merge(b)))?;
        let wall = start.elapsed().as_secs_f64();
        for (i, rc) in reduced_cfgs.iter().enumerate() {
            let t_l = rc.tau_l(d)?;
            let (w1, w2) = generic_weights(cfg.tau, d);
            let params = choose_parameters(rc.l, t_l, w1, w2, false).ok();
            out.push(SimRecord {
                snr_db: snr,
                trials: cfg.trials,
                failures_classical: tally.classical,
                failures_wu: cfg.include_wu.then_some(tally.wu),
                failures_reduced: tally.reduced[i],
                l: rc.l,
                tau: cfg.tau,
                tau_l: t_l,
                s: params.map(|p| p.s),
                ell: params.map(|p| p.ell),
                wall_time_s: wall,
            });
        }
    }
    Ok(out)
}

/// Weights `(τ - ⌊(d-1)/2⌋, τ - d + ⌊(d-1)/2⌋)`, the split seen when `H1`
/// has its typical degree `⌊(d-1)/2⌋`.
pub fn generic_weights(tau: usize, d: usize) -> (i64, i64) {
    let (tau, d) = (tau as i64, d as i64);
    let h = (d - 1) / 2;
    (tau - h, tau - d + h)
}

/// Which trials enter the catch average.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CatchCondition {
    #[default]
    All,
    /// Only trials with more than `⌊(d-1)/2⌋` symbol errors, the ones that
    /// reach interpolation.
    BeyondHalf,
}

impl CatchCondition {
    pub fn name(self) -> &'static str {
        match self {
            CatchCondition::All => "all",
            CatchCondition::BeyondHalf => "beyond-half",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatchConfig {
    pub tau: usize,
    pub ls: Vec<usize>,
    pub snrs: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub convention: SnrConvention,
    pub condition: CatchCondition,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatchRecord {
    pub l: usize,
    pub snr_db: f64,
    /// Mean of `ε_L + (ℓ/s)(τ - ε)` over the counted trials.
    pub mean_catch: f64,
    /// `√(L(2τ - d))`.
    pub bound: f64,
    pub ell: usize,
    pub s: usize,
    /// Trials that entered the mean.
    pub counted: u64,
    pub condition: CatchCondition,
}

pub const CATCH_HEADER: &str = "L,snr_db,mean_catch,bound,ell,s,counted,condition";

impl CatchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.2},{:.6},{:.6},{},{},{},{}",
            self.l,
            self.snr_db,
            self.mean_catch,
            self.bound,
            self.ell,
            self.s,
            self.counted,
            self.condition.name()
        )
    }
}

/// For every trial, `ε` and `ε_L` for each requested `L`.
fn catch_counts(code: &GrsCode, ch: &ChannelConfig, trial: u64, ls: &[usize]) -> (usize, Vec<usize>) {
    let mut rng = ch.trial_rng(trial);
    let c = code.random_codeword(&mut rng);
    let rx = SoftReceived::receive(&c, code.field(), ch.sigma, &mut rng);
    let eps = hamming_distance(&c, &rx.r);
    let caught = ls
        .iter()
        .map(|&l| least_reliable(&rx.eta, l).into_iter().filter(|&i| c[i] != rx.r[i]).count())
        .collect();
    (eps, caught)
}

/// Expected catch per `(L, snr)`. Values of `L` with no valid `(s, ℓ)`, such
/// as `τ_L > L`, are skipped with a warning.
pub fn expected_catch(code: &GrsCode, cfg: &CatchConfig) -> Result<Vec<CatchRecord>> {
    if cfg.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let d = code.d();
    let (w1, w2) = generic_weights(cfg.tau, d);
    let mut usable = Vec::new();
    for &l in &cfg.ls {
        if l == 0 || l > code.n() {
            return Err(Error::InvalidParameter(format!("L={l} outside 1..={}", code.n())));
        }
        let t = tau_l(l, cfg.tau, d)?;
        match choose_parameters(l, t, w1, w2, false) {
            Ok(p) => usable.push((l, p)),
            Err(e) => log::warn!("skipping L={l} (tau_L={t}): {e}"),
        }
    }
    let ls: Vec<usize> = usable.iter().map(|(l, _)| *l).collect();
    let half = (d - 1) / 2;
    let mut out = Vec::new();
    for &snr in &cfg.snrs {
        let ch = ChannelConfig::for_code(code, snr, cfg.seed, cfg.convention);
        let samples: Vec<(usize, Vec<usize>)> =
            (0..cfg.trials).into_par_iter().map(|t| catch_counts(code, &ch, t, &ls)).collect();
        for (j, (l, p)) in usable.iter().enumerate() {
            let mut sum = 0.0;
            let mut counted = 0u64;
            for (eps, caught) in &samples {
                if cfg.condition == CatchCondition::BeyondHalf && *eps <= half {
                    continue;
                }
                sum += caught[j] as f64 + p.ratio() * (cfg.tau as f64 - *eps as f64);
                counted += 1;
            }
            out.push(CatchRecord {
                l: *l,
                snr_db: snr,
                mean_catch: if counted > 0 { sum / counted as f64 } else { f64::NAN },
                bound: ((l * (2 * cfg.tau - d)) as f64).sqrt(),
                ell: p.ell,
                s: p.s,
                counted,
                condition: cfg.condition,
            });
        }
    }
    Ok(out)
}

/// Smallest grid `L` from which the curve stays strictly above the bound.
pub fn crossing_point(records: &[CatchRecord]) -> Option<usize> {
    let mut sorted: Vec<&CatchRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.l);
    let mut crossing = None;
    for r in sorted.iter().rev() {
        if r.mean_catch > r.bound {
            crossing = Some(r.l);
        } else {
            break;
        }
    }
    crossing
}

pub fn write_csv<W: Write>(mut w: W, header: &str, rows: impl IntoIterator<Item = String>) -> io::Result<()> {
    writeln!(w, "{header}")?;
    for row in rows {
        writeln!(w, "{row}")?;
    }
    Ok(())
}
