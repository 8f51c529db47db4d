//! Class numbers of the orders F_q[T, sqrt(D)] for imaginary discriminants.
//!
//! The main route counts points on `y^2 = D(T)`, rebuilds the L-polynomial,
//! and reads off `h_K = L(1)`; the order's class number is `h_K` when the
//! infinite place ramifies and `2 h_K` when it is inert (the single place at
//! infinity then has degree 2). [`class_number_bruteforce`] recomputes the
//! ideal class group directly as an independent check.

mod lpoly;
mod oracle;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

pub use lpoly::{LPolynomial, WEIL_TOLERANCE};
pub use oracle::class_number_bruteforce;

use crate::error::{Error, Result};
use crate::ffpoly::{monic_polys, Fq, FqElem, Place, Poly};

/// Largest extension `F_{q^i}` the affine point count will enumerate.
const MAX_EXTENSION_SIZE: u128 = 20_000_000;

/// Behaviour of the infinite place of F_q(T) in F_q(T, sqrt(D)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InfinityType {
    Ramified,
    Inert,
    Split,
}

impl fmt::Display for InfinityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InfinityType::Ramified => "ramified",
            InfinityType::Inert => "inert",
            InfinityType::Split => "split",
        })
    }
}

/// A squarefree discriminant `D`, usually `xi * p_y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadDisc {
    d: Poly,
    degree: usize,
    infinity: InfinityType,
}

impl QuadDisc {
    pub fn new(d: Poly) -> Result<QuadDisc> {
        let field = d.field();
        if !field.is_odd() {
            return Err(Error::EvenCharacteristic("a quadratic discriminant"));
        }
        let degree = match d.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => {
                return Err(Error::Precondition(format!("discriminant {d} is constant")))
            }
            Some(n) => n,
        };
        if !d.is_squarefree()? {
            return Err(Error::Precondition(format!("discriminant {d} is not squarefree")));
        }
        let infinity = if degree % 2 == 1 {
            InfinityType::Ramified
        } else if field.quadratic_character(d.leading())? == 1 {
            InfinityType::Split
        } else {
            InfinityType::Inert
        };
        Ok(QuadDisc { d, degree, infinity })
    }

    /// `D = c * p_x` for a nonzero constant `c`.
    pub fn from_place(c: FqElem, x: &Place) -> Result<QuadDisc> {
        if c.is_zero() {
            return Err(Error::Precondition("zero multiplier for a discriminant".into()));
        }
        QuadDisc::new(x.poly().scale(c))
    }

    pub fn poly(&self) -> &Poly {
        &self.d
    }

    pub fn field(&self) -> &Fq {
        self.d.field()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn infinity_type(&self) -> InfinityType {
        self.infinity
    }

    /// Genus of the smooth projective model of `y^2 = D(T)`.
    pub fn genus(&self) -> usize {
        (self.degree - 1) / 2
    }

    /// Rational points at infinity over `F_{q^i}`.
    pub fn points_at_infinity(&self, i: usize) -> u128 {
        match self.infinity {
            InfinityType::Ramified => 1,
            InfinityType::Split => 2,
            // the leading coefficient becomes a square exactly in even degree
            InfinityType::Inert => {
                if i.is_multiple_of(2) {
                    2
                } else {
                    0
                }
            }
        }
    }
}

impl fmt::Display for QuadDisc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.d.fmt(f)
    }
}

/// Number of affine solutions `(t, y)` of `y^2 = D(t)` over `F_{q^i}`.
pub fn affine_count(d: &QuadDisc, i: usize) -> Result<u128> {
    let field = d.field();
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic("point counting"));
    }
    if i == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let q = field.q() as u128;
    let size = q
        .checked_pow(i as u32)
        .filter(|&s| s <= MAX_EXTENSION_SIZE)
        .ok_or_else(|| Error::Unsupported(format!("point count over F_{{{q}^{i}}}")))?;

    if i == 1 {
        let total = field
            .elements()
            .map(|t| {
                let chi = field.quadratic_character(d.poly().eval(t)).expect("odd field");
                (1 + chi) as u128
            })
            .sum();
        return Ok(total);
    }

    // F_{q^i} = F_q[S] / (m), m the first monic irreducible of degree i
    let m = monic_polys(field, i)
        .find(|f| f.is_irreducible().unwrap_or(false))
        .ok_or_else(|| Error::Internal(format!("no irreducible of degree {i}")))?;
    let half = (size - 1) / 2;
    let minus_one = Poly::constant(field, field.neg(FqElem::ONE));
    let coeffs: Vec<Poly> = d
        .poly()
        .coeffs()
        .iter()
        .map(|&c| Poly::constant(field, c))
        .collect();

    (0..size)
        .into_par_iter()
        .map(|n| {
            let t = element_of_extension(field, n, i);
            let mut acc = Poly::zero(field);
            for c in coeffs.iter().rev() {
                acc = (&(&acc * &t) + c).rem(&m)?;
            }
            if acc.is_zero() {
                return Ok(1u128);
            }
            let chi = acc.pow_mod(half, &m)?;
            if chi.is_one() {
                Ok(2)
            } else if chi == minus_one {
                Ok(0)
            } else {
                Err(Error::Internal(format!("quadratic character of {acc} is {chi}")))
            }
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// The `n`-th polynomial of degree `< len` in canonical order.
fn element_of_extension(field: &Fq, mut n: u128, len: usize) -> Poly {
    let q = field.q() as u128;
    let coeffs = (0..len)
        .map(|_| {
            let c = FqElem((n % q) as u32);
            n /= q;
            c
        })
        .collect();
    Poly::new(field, coeffs)
}

/// L-polynomial of `y^2 = D(T)` from point counts over `F_q, .., F_{q^g}`.
pub fn l_polynomial(d: &QuadDisc) -> Result<LPolynomial> {
    let q = d.field().q();
    let g = d.genus();
    if g == 0 {
        return Ok(LPolynomial::one(q));
    }
    let counts = (1..=g)
        .map(|i| Ok((affine_count(d, i)? + d.points_at_infinity(i)) as i128))
        .collect::<Result<Vec<_>>>()?;
    LPolynomial::from_point_counts(q, g, &counts)
}

/// Ideal class number of F_q[T, sqrt(D)] for ramified or inert infinity.
pub fn class_number(d: &QuadDisc) -> Result<u128> {
    let factor = match d.infinity_type() {
        InfinityType::Ramified => 1,
        InfinityType::Inert => 2,
        InfinityType::Split => {
            return Err(Error::Unsupported(format!(
                "real quadratic order for {d}: infinity splits"
            )))
        }
    };
    let h_k = l_polynomial(d)?.value_at_one();
    if h_k <= 0 {
        return Err(Error::Internal(format!("L(1) = {h_k} for {d}")));
    }
    Ok(h_k as u128 * factor)
}

/// Residue of `h(xi p_y)` modulo 4 for even `deg(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HModFour {
    Zero,
    Two,
}

impl HModFour {
    pub fn residue(self) -> u128 {
        match self {
            HModFour::Zero => 0,
            HModFour::Two => 2,
        }
    }

    pub fn matches(self, h: u128) -> bool {
        h % 4 == self.residue()
    }
}

/// `h(xi p_y)` is even, and divisible by 4 exactly when `4 | deg(y)`.
pub fn cornelissen_parity(deg_y: usize) -> Result<HModFour> {
    if deg_y % 2 == 1 {
        return Err(Error::Precondition(format!(
            "class number parity law needs even degree, got {deg_y}"
        )));
    }
    Ok(if deg_y.is_multiple_of(4) { HModFour::Zero } else { HModFour::Two })
}
