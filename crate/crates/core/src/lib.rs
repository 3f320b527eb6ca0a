//! Soft-decision list decoding of Reed–Solomon codes.
//!
//! The decoding pipeline is:
//!
//! 1. syndrome computation and an extended Euclidean run on the key equation
//!    ([`key_equation`]), which either yields the error locator directly or a
//!    coprime pair `(H1, H2)` spanning every candidate locator;
//! 2. rational interpolation with multiplicities on a chosen set of positions
//!    ([`interp`]), followed by extraction of the rational roots `(A, B)`;
//! 3. reconstruction of `Λ = A·H1 + B·H2`, root checking and Forney correction
//!    ([`grs`]).
//!
//! [`decoder`] combines these into the hard-decision Wu decoder (all `n`
//! positions) and the reduced decoder (only the `L` least reliable positions).
//! [`channel`] provides the BPSK/AWGN front end, [`oracle`] brute-force
//! reference decoders for tiny codes and [`sim`] the Monte Carlo drivers.

pub mod channel;
pub mod decoder;
mod error;
pub mod field;
pub mod grs;
pub mod interp;
pub mod key_equation;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod sim;

pub use channel::{ChannelConfig, SnrConvention, SoftReceived};
pub use decoder::{DecodeOutcome, DecodeResult, ReducedConfig};
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use grs::GrsCode;
pub use interp::{InterpParams, ProjPoint, QPoly};
pub use key_equation::KeyEqOutput;
pub use poly::{BiPoly, EeaTrace, Poly};
