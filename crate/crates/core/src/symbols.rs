//! Legendre symbols `(a / p_x)` in F_q[T].
//!
//! Two independent evaluations are provided: Euler's criterion, which
//! raises `a` to the power `(q_x - 1)/2` modulo `p_x`, and a Euclid-style
//! routine driven by quadratic reciprocity that never exponentiates beyond
//! the constant field.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{Fq, FqElem, Place, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SymbolValue {
    MinusOne,
    Zero,
    PlusOne,
}

impl SymbolValue {
    pub fn from_sign(s: i8) -> SymbolValue {
        match s.signum() {
            -1 => SymbolValue::MinusOne,
            0 => SymbolValue::Zero,
            _ => SymbolValue::PlusOne,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            SymbolValue::MinusOne => -1,
            SymbolValue::Zero => 0,
            SymbolValue::PlusOne => 1,
        }
    }
}

impl std::ops::Mul for SymbolValue {
    type Output = SymbolValue;
    fn mul(self, rhs: SymbolValue) -> SymbolValue {
        SymbolValue::from_sign(self.as_i8() * rhs.as_i8())
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

fn require_odd(field: &Fq) -> Result<()> {
    if field.is_odd() {
        Ok(())
    } else {
        Err(Error::EvenCharacteristic("the Legendre symbol"))
    }
}

/// `(-1)^(((q-1)/2) * deg_a * deg_b)`, the sign in the reciprocity law.
pub fn reciprocity_sign(q: u64, deg_a: usize, deg_b: usize) -> i8 {
    let half = ((q - 1) / 2) as u128;
    if (half * deg_a as u128 * deg_b as u128).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Euler's criterion: `a^((q_x-1)/2) mod p_x` is `0`, `1` or `-1`.
pub fn legendre_euler(a: &Poly, x: &Place) -> Result<SymbolValue> {
    let field = x.field();
    require_odd(field)?;
    let r = a.rem(x.poly())?;
    if r.is_zero() {
        return Ok(SymbolValue::Zero);
    }
    let e = (x.residue_size() - 1) / 2;
    let v = r.pow_mod(e, x.poly())?;
    if v.is_one() {
        Ok(SymbolValue::PlusOne)
    } else if v == Poly::constant(field, field.neg(FqElem::ONE)) {
        Ok(SymbolValue::MinusOne)
    } else {
        Err(Error::Internal(format!(
            "Euler criterion for ({a} / {x}) produced {v}, not +-1"
        )))
    }
}

/// Whether the constant `c` is a square in the residue field of `x`.
///
/// `c^((q^d - 1)/2) = (c^((q-1)/2))^(1 + q + .. + q^(d-1))` and the second
/// exponent has the parity of `d`, so the answer is `chi(c)^d`.
pub fn constant_symbol(c: FqElem, x: &Place) -> Result<SymbolValue> {
    let field = x.field();
    require_odd(field)?;
    if c.is_zero() {
        return Err(Error::Precondition("constant symbol of 0".into()));
    }
    Ok(SymbolValue::from_sign(constant_jacobi(field, c, x.degree())))
}

fn constant_jacobi(field: &Fq, c: FqElem, deg: usize) -> i8 {
    let chi = field.quadratic_character(c).expect("odd field, nonzero constant");
    if chi == -1 && deg % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Reciprocity-driven evaluation of `(a / p_x)`.
pub fn legendre_fast(a: &Poly, x: &Place) -> Result<SymbolValue> {
    require_odd(x.field())?;
    if a.field() != x.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(SymbolValue::from_sign(jacobi(a, x.poly())?))
}

/// Jacobi symbol `(a / b)` for monic `b`, extended
/// multiplicatively over the factorization of `b`.
///
/// Each round reduces `a` mod `b`, strips the leading constant with the
/// constant rule, and flips the monic remainder with reciprocity.
pub(crate) fn jacobi(a: &Poly, b: &Poly) -> Result<i8> {
    let field = b.field().clone();
    if !b.is_monic() {
        return Err(Error::Precondition(format!("Jacobi modulus {b} is not monic")));
    }
    let q = field.q();
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign: i8 = 1;
    loop {
        let deg_b = b.degree().expect("monic");
        if deg_b == 0 {
            return Ok(sign);
        }
        a = a.rem(&b)?;
        if a.is_zero() {
            return Ok(0);
        }
        let lead = a.leading();
        sign *= constant_jacobi(&field, lead, deg_b);
        a = a.monic();
        let deg_a = a.degree().expect("nonzero");
        sign *= reciprocity_sign(q, deg_a, deg_b);
        std::mem::swap(&mut a, &mut b);
    }
}
