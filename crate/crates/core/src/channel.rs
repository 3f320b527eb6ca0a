//! BPSK over AWGN and symbol reliabilities.
//!
//! Each symbol of `GF(2^m)` is sent as `m` antipodal values, bit `j` (least
//! significant first) mapped to `+1` for 0 and `-1` for 1. The reliability of
//! symbol `β` at position `i` is the log-ratio
//!
//! ```text
//! ρ_{i,β} = a_β - log Σ_{l≠β} exp(a_l),   a_β = -‖y_i - z_β‖² / (2σ²)
//! ```
//!
//! evaluated with max-shifted log-sum-exp so no exponential overflows. The
//! hard decision is the row argmax and `η_i` the gap between the two largest
//! entries; only the order of `η` is ever used.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::field::{Field, FieldElement};
use crate::grs::{GrsCode, Word};

/// Stand-in for `±∞` in noiseless reliability rows.
pub const NOISELESS_RELIABILITY: f64 = 1e30;

/// How the SNR in dB maps to the per-dimension noise variance for unit-energy
/// BPSK at code rate `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SnrConvention {
    /// `σ² = 1 / (2·R·SNR)`: SNR read as energy per information bit over `N0`.
    #[default]
    EbN0,
    /// `σ² = 1 / (4·R·SNR)`: SNR read as `Es / (2·N0·R)` with `Es = 1`.
    HalfEbN0,
}

impl SnrConvention {
    pub fn sigma(self, snr_db: f64, rate: f64) -> f64 {
        let lin = 10f64.powf(snr_db / 10.0);
        let factor = match self {
            SnrConvention::EbN0 => 2.0,
            SnrConvention::HalfEbN0 => 4.0,
        };
        (1.0 / (factor * rate * lin)).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelConfig {
    pub snr_db: f64,
    pub rate: f64,
    /// Noise standard deviation per real dimension.
    pub sigma: f64,
    pub seed: u64,
    pub convention: SnrConvention,
}

impl ChannelConfig {
    pub fn new(snr_db: f64, rate: f64, seed: u64, convention: SnrConvention) -> ChannelConfig {
        ChannelConfig {
            snr_db,
            rate,
            sigma: convention.sigma(snr_db, rate),
            seed,
            convention,
        }
    }

    pub fn for_code(code: &GrsCode, snr_db: f64, seed: u64, convention: SnrConvention) -> ChannelConfig {
        ChannelConfig::new(snr_db, code.k() as f64 / code.n() as f64, seed, convention)
    }

    /// Same configuration with the noise switched off.
    pub fn noiseless(mut self) -> ChannelConfig {
        self.sigma = 0.0;
        self.snr_db = f64::INFINITY;
        self
    }

    /// The generator for trial `trial`: ChaCha8 seeded with `seed`, on stream
    /// `trial`. Results do not depend on how trials are scheduled.
    pub fn trial_rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }
}

/// `n × m` matrix of `±1`.
pub fn modulate(c: &[FieldElement], f: &Field) -> Vec<Vec<f64>> {
    c.iter()
        .map(|&s| {
            f.element_bits(s)
                .into_iter()
                .map(|b| if b == 0 { 1.0 } else { -1.0 })
                .collect()
        })
        .collect()
}

pub fn transmit<R: Rng + ?Sized>(signal: &[Vec<f64>], sigma: f64, rng: &mut R) -> Vec<Vec<f64>> {
    signal
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| {
                    let g: f64 = rng.sample(StandardNormal);
                    x + sigma * g
                })
                .collect()
        })
        .collect()
}

/// `n × 2^m` log-ratio reliabilities for `m` bits per symbol.
pub fn reliability_matrix(y: &[Vec<f64>], sigma: f64, m: u32) -> Vec<Vec<f64>> {
    let q = 1usize << m;
    y.iter()
        .map(|row| {
            assert_eq!(row.len(), m as usize, "row width must equal bits per symbol");
            // ‖y - z_β‖², expanded since every z entry is ±1.
            let norm: f64 = row.iter().map(|v| v * v).sum();
            let dist: Vec<f64> = (0..q)
                .map(|beta| {
                    let corr: f64 = row
                        .iter()
                        .enumerate()
                        .map(|(k, &v)| if beta >> k & 1 == 0 { v } else { -v })
                        .sum();
                    norm + m as f64 - 2.0 * corr
                })
                .collect();
            if sigma == 0.0 {
                return noiseless_row(&dist);
            }
            let a: Vec<f64> = dist.iter().map(|d| -d / (2.0 * sigma * sigma)).collect();
            log_ratio_row(&a)
        })
        .collect()
}

fn noiseless_row(dist: &[f64]) -> Vec<f64> {
    let best = dist.iter().cloned().fold(f64::INFINITY, f64::min);
    dist.iter()
        .map(|&d| if d == best { NOISELESS_RELIABILITY } else { -NOISELESS_RELIABILITY })
        .collect()
}

/// `a_β - log Σ_{l≠β} exp(a_l)` for every `β`.
fn log_ratio_row(a: &[f64]) -> Vec<f64> {
    let (top, max) = a
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) });
    let total: f64 = a.iter().map(|&v| (v - max).exp()).sum();
    let second = a
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != top)
        .map(|(_, &v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    let rest_of_top: f64 = a
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != top)
        .map(|(_, &v)| (v - second).exp())
        .sum();
    a.iter()
        .enumerate()
        .map(|(beta, &v)| {
            if beta == top {
                v - (second + rest_of_top.ln())
            } else {
                // total includes the top term, so the difference stays >= 1.
                v - (max + (total - (v - max).exp()).ln())
            }
        })
        .collect()
}

/// Row argmax (ties to the smallest symbol) and the gap to the runner-up.
pub fn harden(rho: &[Vec<f64>], f: &Field) -> (Word, Vec<f64>) {
    rho.iter()
        .map(|row| {
            assert!(row.len() >= 2, "need at least two symbols");
            let mut best = 0;
            for (b, &v) in row.iter().enumerate() {
                if v > row[best] {
                    best = b;
                }
            }
            let second = row
                .iter()
                .enumerate()
                .filter(|&(b, _)| b != best)
                .map(|(_, &v)| v)
                .fold(f64::NEG_INFINITY, f64::max);
            let eta = (row[best] - second).max(0.0);
            (f.element(best as u32).expect("row width is the field order"), eta)
        })
        .unzip()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SoftReceived {
    pub y: Vec<Vec<f64>>,
    pub rho: Vec<Vec<f64>>,
    pub r: Word,
    pub eta: Vec<f64>,
}

impl SoftReceived {
    /// Sends `c` through the channel described by `sigma`.
    pub fn receive<R: Rng + ?Sized>(c: &[FieldElement], f: &Field, sigma: f64, rng: &mut R) -> SoftReceived {
        let y = transmit(&modulate(c, f), sigma, rng);
        let rho = reliability_matrix(&y, sigma, f.m());
        let (r, eta) = harden(&rho, f);
        SoftReceived { y, rho, r, eta }
    }

    /// `Σ_i ρ_{i, w_i}`: larger means `w` is more likely.
    pub fn soft_metric(&self, w: &[FieldElement]) -> f64 {
        self.rho
            .iter()
            .zip(w)
            .map(|(row, s)| row[s.value() as usize])
            .sum()
    }
}
