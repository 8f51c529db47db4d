//! Closed-form invariants of `X^R` and its Atkin-Lehner quotients `X^(y)`.
//!
//! Every genus is evaluated in exact rational arithmetic and must come out a
//! nonnegative integer. A fractional value means a formula was pushed past
//! the range where it holds, and surfaces as [`Error::Internal`].

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::classnum::{class_number, QuadDisc};
use crate::error::{Error, Result};
use crate::ffpoly::{AnyPlace, Place, RamSet};
use crate::symbols::{constant_symbol, legendre_fast, SymbolValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
    OutOfScope,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::OutOfScope => "out-of-scope",
        })
    }
}

/// The three hypotheses that make `x` the lone deficient place of `X^(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Conditions {
    /// `#R = 2`.
    pub cardinality: bool,
    /// `(p_y / p_x) = -1` for every `x` in `R - y`.
    pub symbol: bool,
    /// `4` does not divide `deg(y)`.
    pub degree_mod4: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.cardinality && self.symbol && self.degree_mod4
    }
}

/// Classification of one quotient `X^(y) = X^R / w_y`.
///
/// Serializes to the flat classify report; `notes` stay out of the JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub q: u64,
    #[serde(rename = "R")]
    pub ram: Vec<Place>,
    #[serde(rename = "genus_XR")]
    pub genus_xr: u128,
    pub y: Place,
    /// `None` in characteristic 2, where the fixed-point formula is silent.
    pub fix: Option<u128>,
    /// `None` when there is no fixed-point count or it gives a fractional genus.
    pub genus_quotient: Option<u128>,
    pub deficient: Vec<Place>,
    pub parity: Parity,
    pub sha_certificate: bool,
    pub conditions: Conditions,
    #[serde(skip)]
    pub notes: Vec<String>,
}

/// Everything known about `X^R` and each of its quotients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub q: u64,
    #[serde(rename = "R")]
    pub ram: Vec<Place>,
    #[serde(rename = "genus_XR")]
    pub genus_xr: u128,
    pub deficient_xr: Vec<Place>,
    pub parity_xr: Parity,
    pub quotients: Vec<QuotientReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Curve {
    XR,
    Xy(Place),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DivisorStatus {
    Nonempty,
    Empty,
    Undetermined,
}

/// Whether `X` has an `F_x`-rational divisor of degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DivisorVerdict {
    pub status: DivisorStatus,
    pub reason: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HyperellipticBound {
    pub holds: bool,
    pub lhs: u128,
    pub rhs: u128,
}

fn big(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn to_count(v: &BigRational, what: impl FnOnce() -> String) -> Result<u128> {
    if !v.is_integer() {
        return Err(Error::Internal(format!("{} = {v} is not an integer", what())));
    }
    v.to_integer()
        .to_u128()
        .ok_or_else(|| Error::Internal(format!("{} = {v} is negative or too large", what())))
}

fn require_member(r: &RamSet, y: &Place) -> Result<()> {
    if r.contains(y) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{y} is not in R")))
    }
}

/// `prod_{x in R} (q_x - 1)`.
fn residue_product<'a>(places: impl IntoIterator<Item = &'a Place>) -> BigInt {
    places
        .into_iter()
        .map(|x| BigInt::from(x.residue_size() - 1))
        .product()
}

fn genus_xr_exact(r: &RamSet) -> BigRational {
    let q = big(r.q() as u128);
    let one = BigRational::one();
    let mut g = &one + BigRational::from_integer(residue_product(r)) / (&q * &q - &one);
    if r.all_odd() {
        let pow = big(1u128 << (r.len() - 1));
        g -= &q * pow / (&q + &one);
    }
    g
}

/// Genus of `X^R`:
/// `1 + prod(q_x - 1)/(q^2 - 1) - q/(q+1) * 2^(#R-1) * Odd(R)`.
pub fn genus_xr(r: &RamSet) -> Result<u128> {
    to_count(&genus_xr_exact(r), || format!("genus of X^R for R = {}", fmt_places(r)))
}

/// `(xi p_y / p_x)` with the canonical non-square `xi`.
fn twisted_symbol(xi: crate::ffpoly::FqElem, y: &Place, x: &Place) -> Result<SymbolValue> {
    Ok(constant_symbol(xi, x)? * legendre_fast(y.poly(), x)?)
}

/// Fixed points of `w_y` on `X^R`:
/// `h(xi p_y) * prod_{x in R} (1 - (xi p_y / p_x))`.
///
/// The class number is only computed when no factor vanishes.
pub fn fixed_points(r: &RamSet, y: &Place) -> Result<u128> {
    require_member(r, y)?;
    let field = r.field();
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic("the Atkin-Lehner fixed-point count"));
    }
    let xi = field.nonsquare_xi()?;
    let mut factor: u128 = 1;
    for x in r.without(y) {
        match twisted_symbol(xi, y, x)? {
            SymbolValue::PlusOne => return Ok(0),
            SymbolValue::MinusOne => {
                factor = factor.checked_mul(2).ok_or(Error::Overflow("fixed points"))?;
            }
            SymbolValue::Zero => {
                return Err(Error::Internal(format!("({y} / {x}) = 0 for distinct places")));
            }
        }
    }
    let h = class_number(&QuadDisc::from_place(xi, y)?)?;
    h.checked_mul(factor).ok_or(Error::Overflow("fixed points"))
}

/// Genus of `X^(y)` by Hurwitz: `(g(X^R) + 1)/2 - Fix(w_y)/4`.
///
/// When `Odd(R) = 0` the value is cross-checked against the expanded form
/// `1 + prod(q_x - 1)/(2(q^2 - 1)) - Fix(w_y)/4`.
pub fn genus_quotient(r: &RamSet, y: &Place) -> Result<u128> {
    let fix = fixed_points(r, y)?;
    let one = BigRational::one();
    let two = big(2);
    let fix_quarter = big(fix) / big(4);
    let g = (genus_xr_exact(r) + &one) / &two - &fix_quarter;
    if !r.all_odd() {
        let q = big(r.q() as u128);
        let expanded = &one + BigRational::from_integer(residue_product(r)) / (&two * (&q * &q - &one))
            - &fix_quarter;
        if expanded != g {
            return Err(Error::Internal(format!(
                "quotient genus forms disagree for y = {y}: {g} vs {expanded}"
            )));
        }
    }
    to_count(&g, || {
        let tag = if y.is_odd_degree() { " (odd deg(y), extrapolated)" } else { "" };
        format!("genus of X^R/w_y for R = {}, y = {y}{tag}", fmt_places(r))
    })
}

/// Deficient places of `X^R`: all of `R` when `q` is even or when `R` is
/// two odd-degree places, none otherwise. The Jacobian is always even.
pub fn deficient_places_xr(r: &RamSet) -> (Vec<Place>, Parity) {
    let all = !r.field().is_odd() || (r.len() == 2 && r.all_odd());
    let set = if all { r.places().to_vec() } else { Vec::new() };
    (set, Parity::Even)
}

/// Evaluates the three conditions for `X^(y)` and the resulting parity.
///
/// Outside odd `q` with every degree in `R` even the parity is
/// [`Parity::OutOfScope`]; the numbers are still reported where defined.
pub fn classify_quotient(r: &RamSet, y: &Place) -> Result<QuotientReport> {
    require_member(r, y)?;
    let field = r.field();
    let odd_q = field.is_odd();
    let in_scope = odd_q && r.iter().all(|x| !x.is_odd_degree());
    let mut notes = Vec::new();

    let symbol = if odd_q {
        let mut all = true;
        for x in r.without(y) {
            all &= legendre_fast(y.poly(), x)? == SymbolValue::MinusOne;
        }
        all
    } else {
        false
    };
    let conditions = Conditions {
        cardinality: r.len() == 2,
        symbol,
        degree_mod4: !y.degree().is_multiple_of(4),
    };

    let (fix, genus_q) = if odd_q {
        let fix = fixed_points(r, y)?;
        let gq = match genus_quotient(r, y) {
            Ok(g) => Some(g),
            Err(Error::Internal(msg)) if !in_scope => {
                notes.push(format!("quotient genus undefined: {msg}"));
                None
            }
            Err(e) => return Err(e),
        };
        (Some(fix), gq)
    } else {
        notes.push("characteristic 2: no fixed-point formula".into());
        (None, None)
    };
    if odd_q && y.is_odd_degree() {
        notes.push("odd deg(y): fixed points extrapolated from the even-degree formula".into());
    }

    let (deficient, parity) = if !in_scope {
        (Vec::new(), Parity::OutOfScope)
    } else if conditions.all() {
        let x = r.without(y).next().expect("#R = 2").clone();
        (vec![x], Parity::Odd)
    } else {
        (Vec::new(), Parity::Even)
    };
    let sha_certificate =
        parity == Parity::Odd && r.iter().all(|x| x.degree() == 2);

    let q = field.q() as u128;
    if in_scope && r.len() == 2 && r.iter().all(|x| x.degree() == 2) && !conditions.symbol {
        if let Some(g) = genus_q {
            notes.push(format!(
                "symbol +1: no fixed points, quotient genus {g} = (q^2+1)/2, not (q^2-1)/2 = {}",
                (q * q - 1) / 2
            ));
        }
    }

    Ok(QuotientReport {
        q: field.q(),
        ram: r.places().to_vec(),
        genus_xr: genus_xr(r)?,
        y: y.clone(),
        fix,
        genus_quotient: genus_q,
        deficient,
        parity,
        sha_certificate,
        conditions,
        notes,
    })
}

/// Report for `X^R` and every quotient `X^R / w_y`, `y` in canonical order.
pub fn curve_report(r: &RamSet) -> Result<CurveReport> {
    let (deficient_xr, parity_xr) = deficient_places_xr(r);
    Ok(CurveReport {
        q: r.q(),
        ram: r.places().to_vec(),
        genus_xr: genus_xr(r)?,
        deficient_xr,
        parity_xr,
        quotients: r.iter().map(|y| classify_quotient(r, y)).collect::<Result<_>>()?,
    })
}

/// Existence of an `F_x`-rational divisor of degree `d` on `X^R` or `X^(y)`.
pub fn divisor_existence(curve: &Curve, x: &AnyPlace, d: i64, r: &RamSet) -> Result<DivisorVerdict> {
    use DivisorStatus::*;
    let verdict = |status, reason| Ok(DivisorVerdict { status, reason });
    let x = match x {
        AnyPlace::Infinity => return verdict(Nonempty, "x outside R"),
        AnyPlace::Finite(x) => x,
    };
    if x.field() != r.field() {
        return Err(Error::FieldMismatch);
    }
    let odd_d = d % 2 != 0;
    match curve {
        Curve::XR => {
            if !r.contains(x) {
                verdict(Nonempty, "x outside R")
            } else if odd_d {
                verdict(Empty, "x in R, odd degree")
            } else {
                verdict(Nonempty, "x in R, even degree")
            }
        }
        Curve::Xy(y) => {
            require_member(r, y)?;
            if !r.contains(x) {
                verdict(Nonempty, "x outside R")
            } else if x == y {
                verdict(Nonempty, "x = y")
            } else if !odd_d {
                verdict(Nonempty, "x in R - y, even degree")
            } else if r.field().is_odd() && !x.is_odd_degree() && !y.is_odd_degree() {
                verdict(Empty, "x in R - y, odd degree, reciprocity obstruction")
            } else {
                verdict(Undetermined, "reduces to odd-degree rational point")
            }
        }
    }
}

/// Edges of length `q + 1` in the quotient graph at `x`:
/// `2^(#R-1) * Odd(R - x) * (1 - Odd(x))`. All other edges have length 1.
pub fn long_edge_count(r: &RamSet, x: &Place) -> Result<u128> {
    require_member(r, x)?;
    let rest_odd = r.without(x).all(Place::is_odd_degree);
    if x.is_odd_degree() || !rest_odd {
        return Ok(0);
    }
    Ok(1u128 << (r.len() - 1))
}

/// `prod_{z in R + x} (q_z - 1) <= 4 (q_x^2 + 1)(q^2 - 1)`.
///
/// Failure certifies that `X^(y)` is not hyperelliptic.
pub fn hyperelliptic_bound(r: &RamSet, x: &Place) -> Result<HyperellipticBound> {
    if r.contains(x) {
        return Err(Error::Precondition(format!("witness {x} lies in R")));
    }
    if x.field() != r.field() {
        return Err(Error::FieldMismatch);
    }
    let overflow = || Error::Overflow("hyperelliptic bound");
    let lhs = (&residue_product(r) * BigInt::from(x.residue_size() - 1))
        .to_u128()
        .ok_or_else(overflow)?;
    let q = r.q() as u128;
    let qx = x.residue_size();
    let rhs = qx
        .checked_mul(qx)
        .and_then(|v| v.checked_add(1))
        .and_then(|v| v.checked_mul(4 * (q * q - 1)))
        .ok_or_else(overflow)?;
    Ok(HyperellipticBound { holds: lhs <= rhs, lhs, rhs })
}

/// Whether `q^(r/2) < 32 q^3 r`, compared as `q^r < (32 q^3 r)^2`.
pub fn hyperelliptic_feasible(q: u64, r: u64) -> bool {
    let q = BigUint::from(q);
    let lhs = q.pow(r as u32);
    let base = BigUint::from(32u32) * q.pow(3) * BigUint::from(r);
    lhs < &base * &base
}

/// Largest `r` with `q^(r/2) < 32 q^3 r`.
///
/// `r log q - 2 log(32 q^3 r)` is convex and negative at `r = 1`, so the
/// inequality fails for good at the first `r` where it fails.
pub fn hyperelliptic_max_r(q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::Precondition(format!("q must be at least 2, got {q}")));
    }
    let mut r = 1;
    while hyperelliptic_feasible(q, r + 1) {
        r += 1;
    }
    Ok(r)
}

pub(crate) fn fmt_places<'a>(places: impl IntoIterator<Item = &'a Place>) -> String {
    let names: Vec<String> = places.into_iter().map(Place::to_string).collect();
    format!("{{{}}}", names.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classnum::class_number;
    use crate::ffpoly::{monic_irreducibles, Fq, Poly};

    fn place(f: &Fq, c: &[i64]) -> Place {
        Place::new(Poly::from_ints(f, c)).unwrap()
    }

    fn ram(places: &[&Place]) -> RamSet {
        RamSet::new(places.iter().map(|&p| p.clone()).collect()).unwrap()
    }

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    /// The quadratic places of F_3 in canonical order.
    fn quad3() -> Vec<Place> {
        monic_irreducibles(&f3(), 2).unwrap()
    }

    #[test]
    fn genus_examples() {
        let f = f3();
        let q2 = quad3();
        assert_eq!(genus_xr(&ram(&[&q2[0], &q2[1]])).unwrap(), 9);
        let (t, t1) = (place(&f, &[0, 1]), place(&f, &[1, 1]));
        assert_eq!(genus_xr(&ram(&[&t, &t1])).unwrap(), 0);
        assert_eq!(genus_xr(&ram(&[&t, &q2[0]])).unwrap(), 3);
        let f5 = Fq::prime(5).unwrap();
        let q5 = monic_irreducibles(&f5, 2).unwrap();
        assert_eq!(genus_xr(&ram(&[&q5[0], &q5[1]])).unwrap(), 25);
        let four = ram(&[&t, &t1, &q2[0], &q2[1]]);
        // 1 + 2*2*8*8/8
        assert_eq!(genus_xr(&four).unwrap(), 33);
    }

    #[test]
    fn fixed_points_and_quotient_genus() {
        // over F_3 every pair of quadratic places has symbol -1; F_5 has both
        let mut saw = (false, false);
        for q in [3u128, 5] {
            let quads = monic_irreducibles(&Fq::prime(q as u64).unwrap(), 2).unwrap();
            for y in &quads {
                for x in quads.iter().filter(|x| *x != y) {
                    let r = ram(&[x, y]);
                    let fix = fixed_points(&r, y).unwrap();
                    let gq = genus_quotient(&r, y).unwrap();
                    if legendre_fast(y.poly(), x).unwrap() == SymbolValue::MinusOne {
                        // h = 2 for a genus-0 inert order
                        assert_eq!((fix, gq), (4, (q * q - 1) / 2));
                        saw.0 = true;
                    } else {
                        assert_eq!((fix, gq), (0, (q * q).div_ceil(2)));
                        saw.1 = true;
                    }
                }
            }
        }
        assert_eq!(saw, (true, true));
    }

    #[test]
    fn fixed_point_shape() {
        for q in [3, 5] {
            let f = Fq::prime(q).unwrap();
            let xi = f.nonsquare_xi().unwrap();
            let mut places = monic_irreducibles(&f, 1).unwrap();
            places.extend(monic_irreducibles(&f, 2).unwrap());
            for (i, y) in places.iter().enumerate().take(4) {
                let others: Vec<&Place> =
                    places.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).take(3).collect();
                let r = ram(&[y, others[0], others[1], others[2]]);
                let fix = fixed_points(&r, y).unwrap();
                let h = class_number(&QuadDisc::from_place(xi, y).unwrap()).unwrap();
                let any_plus = r
                    .without(y)
                    .any(|x| twisted_symbol(xi, y, x).unwrap() == SymbolValue::PlusOne);
                if any_plus {
                    assert_eq!(fix, 0);
                } else {
                    assert_eq!(fix, h * 8);
                }
            }
        }
    }

    #[test]
    fn odd_degree_quotient_can_be_fractional() {
        let f = f3();
        let r = ram(&[&place(&f, &[1, 1]), &place(&f, &[2, 1])]);
        let y = place(&f, &[1, 1]);
        assert_eq!(fixed_points(&r, &y).unwrap(), 0);
        assert!(matches!(genus_quotient(&r, &y), Err(Error::Internal(_))));
        let rep = classify_quotient(&r, &y).unwrap();
        assert_eq!(rep.parity, Parity::OutOfScope);
        assert_eq!(rep.genus_quotient, None);
        assert_eq!(rep.fix, Some(0));
    }

    #[test]
    fn deficient_xr() {
        let f = f3();
        let q2 = quad3();
        let (t, t1) = (place(&f, &[0, 1]), place(&f, &[1, 1]));
        assert_eq!(deficient_places_xr(&ram(&[&t, &t1])).0.len(), 2);
        assert!(deficient_places_xr(&ram(&[&t, &t1, &q2[0], &q2[1]])).0.is_empty());
        assert!(deficient_places_xr(&ram(&[&t, &q2[0]])).0.is_empty());
        let f4 = Fq::with_order(4, Some(vec![1, 1, 1])).unwrap();
        let r4 = ram(&[&Place::new(Poly::t(&f4)).unwrap(), &Place::new(Poly::from_ints(&f4, &[1, 1])).unwrap()]);
        assert_eq!(deficient_places_xr(&r4).0.len(), 2);
    }

    #[test]
    fn classify_examples() {
        let f = f3();
        let x = place(&f, &[1, 0, 1]);
        let ys: Vec<Place> = quad3().into_iter().filter(|y| *y != x).collect();
        let y = ys
            .iter()
            .find(|y| legendre_fast(y.poly(), &x).unwrap() == SymbolValue::MinusOne)
            .expect("some quadratic is a non-residue mod T^2+1");
        let rep = classify_quotient(&ram(&[&x, y]), y).unwrap();
        assert_eq!(rep.parity, Parity::Odd);
        assert_eq!(rep.deficient, vec![x.clone()]);
        assert!(rep.sha_certificate);
        assert_eq!(rep.genus_quotient, Some(4));

        let y4 = monic_irreducibles(&f, 4)
            .unwrap()
            .into_iter()
            .find(|y| legendre_fast(y.poly(), &x).unwrap() == SymbolValue::MinusOne)
            .unwrap();
        let rep = classify_quotient(&ram(&[&x, &y4]), &y4).unwrap();
        assert!(rep.conditions.cardinality && rep.conditions.symbol && !rep.conditions.degree_mod4);
        assert_eq!(rep.parity, Parity::Even);

        let q2 = quad3();
        let t = place(&f, &[0, 1]);
        let rep = classify_quotient(&ram(&[&q2[0], &q2[1], &q2[2], &y4]), &q2[0]).unwrap();
        assert!(!rep.conditions.cardinality);
        assert_eq!(rep.parity, Parity::Even);
        let rep = classify_quotient(&ram(&[&t, &q2[0]]), &q2[0]).unwrap();
        assert_eq!(rep.parity, Parity::OutOfScope);
        assert!(rep.genus_quotient.is_some());
    }

    #[test]
    fn plus_one_symbol_is_flagged() {
        let quads = monic_irreducibles(&Fq::prime(5).unwrap(), 2).unwrap();
        let (x, y) = quads
            .iter()
            .flat_map(|x| quads.iter().map(move |y| (x, y)))
            .find(|(x, y)| x != y && legendre_fast(y.poly(), x).unwrap() == SymbolValue::PlusOne)
            .unwrap();
        let rep = classify_quotient(&ram(&[x, y]), y).unwrap();
        assert!(!rep.conditions.symbol);
        assert_eq!(rep.genus_quotient, Some(13));
        assert!(rep.notes.iter().any(|n| n.contains("(q^2+1)/2")));
    }

    #[test]
    fn divisor_verdicts() {
        let f = f3();
        let q2 = quad3();
        let t = place(&f, &[0, 1]);
        let r = ram(&[&q2[0], &q2[1]]);
        let (x, y) = (AnyPlace::from(q2[0].clone()), q2[1].clone());
        let v = |c: &Curve, p: &AnyPlace, d| divisor_existence(c, p, d, &r).unwrap().status;
        assert_eq!(v(&Curve::XR, &x, 3), DivisorStatus::Empty);
        assert_eq!(v(&Curve::XR, &x, 2), DivisorStatus::Nonempty);
        assert_eq!(v(&Curve::XR, &AnyPlace::Infinity, 1), DivisorStatus::Nonempty);
        let xy = Curve::Xy(y.clone());
        assert_eq!(v(&xy, &AnyPlace::from(y), 1), DivisorStatus::Nonempty);
        assert_eq!(v(&xy, &x, 1), DivisorStatus::Empty);
        assert_eq!(v(&xy, &x, -2), DivisorStatus::Nonempty);
        assert_eq!(v(&xy, &AnyPlace::from(t.clone()), 1), DivisorStatus::Nonempty);
        let mixed = ram(&[&t, &q2[0]]);
        let got = divisor_existence(&Curve::Xy(q2[0].clone()), &AnyPlace::from(t), 1, &mixed).unwrap();
        assert_eq!(got.status, DivisorStatus::Undetermined);
    }

    #[test]
    fn edges() {
        let f = f3();
        let q2 = quad3();
        let (t, t1) = (place(&f, &[0, 1]), place(&f, &[1, 1]));
        assert_eq!(long_edge_count(&ram(&[&q2[0], &q2[1]]), &q2[0]).unwrap(), 0);
        assert_eq!(long_edge_count(&ram(&[&q2[0], &t]), &q2[0]).unwrap(), 2);
        assert_eq!(long_edge_count(&ram(&[&t1, &t]), &t).unwrap(), 0);
        assert!(long_edge_count(&ram(&[&t1, &t]), &q2[0]).is_err());
    }

    #[test]
    fn hyperelliptic() {
        let f = f3();
        let q2 = quad3();
        let t = place(&f, &[0, 1]);
        let b = hyperelliptic_bound(&ram(&[&q2[0], &q2[1]]), &t).unwrap();
        assert_eq!(b, HyperellipticBound { holds: true, lhs: 128, rhs: 320 });
        let big: Vec<Place> = crate::ffpoly::monic_polys(&f, 10)
            .filter(|p| p.is_irreducible().unwrap())
            .take(2)
            .map(|p| Place::new(p).unwrap())
            .collect();
        let b = hyperelliptic_bound(&ram(&[&big[0], &big[1]]), &t).unwrap();
        assert!(!b.holds && b.lhs > 0 && b.rhs > 0);
        assert!(hyperelliptic_bound(&ram(&[&q2[0], &t]), &t).is_err());

        assert_eq!(hyperelliptic_max_r(3).unwrap(), 17);
        assert!(hyperelliptic_feasible(3, 17) && !hyperelliptic_feasible(3, 18));
        let maxes: Vec<u64> = [3, 4, 5, 7, 9].iter().map(|&q| hyperelliptic_max_r(q).unwrap()).collect();
        assert!(maxes.windows(2).all(|w| w[0] >= w[1]), "{maxes:?}");
        assert!(hyperelliptic_max_r(2).unwrap() > 17);
        assert!(hyperelliptic_max_r(1).is_err());
    }

    #[test]
    fn report_json_fields() {
        let q2 = quad3();
        let r = ram(&[&q2[0], &q2[1]]);
        let v = serde_json::to_value(classify_quotient(&r, &q2[1]).unwrap()).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(
            keys,
            ["R", "conditions", "deficient", "fix", "genus_XR", "genus_quotient", "parity", "q", "sha_certificate", "y"]
        );
        assert_eq!(v["R"][0], "T^2+1");
        assert!(["even", "odd"].contains(&v["parity"].as_str().unwrap()));
        assert_eq!(serde_json::to_value(Parity::OutOfScope).unwrap(), "out-of-scope");
    }
}
