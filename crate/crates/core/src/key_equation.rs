//! The key equation `Λ(x)·S(x) ≡ Ω(x) (mod x^{d-1})` solved by a halted
//! extended Euclidean run on `(x^{d-1}, S)`.
//!
//! Every row of the run satisfies `U_i·S ≡ R_i (mod x^{d-1})`. Give a solution
//! `(U, R)` the weight `max(deg U, deg R + 1)`. The run is stopped at the first
//! row with `deg R_i < deg U_i`; rows `i` and `i-1` then form a reduced basis
//! of the solution module with weights `deg U_i` and `d - deg U_i`. Any error
//! locator `Λ` of degree `ε` is therefore `A·H1 + B·H2` with
//! `deg A ≤ ε - deg H1` and `deg B ≤ ε - d + deg H1`.

use crate::field::FieldElement;
use crate::grs::GrsCode;
use crate::poly::{Eea, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyEqOutput {
    /// Monic `U_i`; the locator itself when fewer than `d/2` errors occurred.
    pub h1: Poly,
    /// Monic `U_{i-1}`.
    pub h2: Poly,
    /// Number of division steps before halting.
    pub halt_iteration: usize,
    /// `R_i` scaled by the same constant that made `H1` monic.
    pub remainder_at_halt: Poly,
    /// Weight of the `H2` row, always `d - deg H1`.
    pub h2_weight: usize,
}

impl KeyEqOutput {
    pub fn deg_h1(&self) -> usize {
        self.h1.deg().expect("H1 is nonzero")
    }

    /// Degree bounds `(deg A, deg B)` for a locator of degree `eps`; negative
    /// means the corresponding cofactor must vanish.
    pub fn cofactor_bounds(&self, eps: usize) -> (i64, i64) {
        let e = eps as i64;
        (e - self.deg_h1() as i64, e - self.h2_weight as i64)
    }
}

pub fn solve_key_equation(code: &GrsCode, syndrome: &Poly) -> KeyEqOutput {
    let f = code.field();
    let d = code.d();
    debug_assert!(syndrome.deg_i() < d as i64 - 1);
    if syndrome.is_zero() {
        return KeyEqOutput {
            h1: Poly::one(),
            h2: Poly::monomial(FieldElement::ONE, d - 1),
            halt_iteration: 0,
            remainder_at_halt: Poly::zero(),
            h2_weight: d,
        };
    }
    let modulus = Poly::monomial(FieldElement::ONE, d - 1);
    let mut eea = Eea::new(&modulus, syndrome, f);
    while eea.current().remainder.deg_i() >= eea.current().u.deg_i() {
        eea.step();
    }
    let cur = eea.current();
    let scale = f.inv(cur.u.leading()).expect("U_i is nonzero");
    let h1 = cur.u.scale(scale, f);
    let deg_h1 = h1.deg().expect("nonzero");
    KeyEqOutput {
        remainder_at_halt: cur.remainder.scale(scale, f),
        h1,
        h2: eea.previous().u.monic(f),
        halt_iteration: eea.steps(),
        h2_weight: d - deg_h1,
    }
}
