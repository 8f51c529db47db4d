//! Dense univariate polynomials over F_q.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Fq, FqElem};
use crate::error::{Error, Result};

/// An element of F_q[T], coefficients degree-ascending with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Fq,
    coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn new(field: &Fq, mut coeffs: Vec<FqElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Fq) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Fq) -> Poly {
        Poly::constant(field, FqElem::ONE)
    }

    pub fn constant(field: &Fq, c: FqElem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The monomial `c * T^k`.
    pub fn monomial(field: &Fq, c: FqElem, k: usize) -> Poly {
        let mut coeffs = vec![FqElem::ZERO; k + 1];
        coeffs[k] = c;
        Poly::new(field, coeffs)
    }

    /// The indeterminate `T`.
    pub fn t(field: &Fq) -> Poly {
        Poly::monomial(field, FqElem::ONE, 1)
    }

    /// Builds a polynomial over a prime field from integer coefficients,
    /// degree-ascending, reducing each one mod p.
    pub fn from_ints(field: &Fq, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    /// Coefficient of `T^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FqElem {
        self.coeffs.get(k).copied().unwrap_or(FqElem::ZERO)
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FqElem::ONE]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElem::ONE
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| f.add(self.coeff(k), other.coeff(k))).collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| f.sub(self.coeff(k), other.coeff(k))).collect();
        Ok(Poly::new(f, coeffs))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(f));
        }
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    pub fn scale(&self, c: FqElem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Normalizes to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("leading coefficient is nonzero");
        self.scale(inv)
    }

    /// Euclidean division: `self = divisor * quot + rem`, `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        let f = &self.field;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(divisor.leading())?;
        let mut quot = vec![FqElem::ZERO; rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = rem[k];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[k - db] = factor;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                let idx = k - db + i;
                rem[idx] = f.sub(rem[idx], f.mul(factor, b));
            }
        }
        rem.truncate(db);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut exp: u128, modulus: &Poly) -> Result<Poly> {
        self.check(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.checked_mul(&base)?.rem(modulus)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.checked_mul(&base)?.rem(modulus)?;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| f.mul(c, f.from_int(k as i64)))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn eval(&self, t: FqElem) -> FqElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FqElem::ZERO, |acc, &c| f.add(f.mul(acc, t), c))
    }

    /// True iff `self` has no repeated irreducible factor.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            // a p-th power
            return Ok(false);
        }
        Ok(self.gcd(&d)?.is_one())
    }

    /// Rabin's test: `f` of degree n is irreducible iff `T^(q^n) = T mod f`
    /// and `gcd(T^(q^(n/r)) - T, f) = 1` for every prime `r | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(n) => n,
        };
        let f = self.monic();
        let t = Poly::t(&self.field);
        let q = self.field.q() as u128;
        // frob[k] = T^(q^k) mod f
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(t.rem(&f)?);
        for k in 1..=n {
            let next = frob[k - 1].pow_mod(q, &f)?;
            frob.push(next);
        }
        if frob[n] != t.rem(&f)? {
            return Ok(false);
        }
        for r in prime_divisors(n) {
            let g = frob[n / r].checked_sub(&t)?.gcd(&f)?;
            if !g.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Canonical order: by degree, then coefficients compared from the leading
/// term down, each by its index in F_q.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {:?})", self.field)
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomials over the same field")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    #[test]
    fn product_of_linears() {
        let f = f3();
        let a = Poly::from_ints(&f, &[1, 1]);
        let b = Poly::from_ints(&f, &[2, 1]);
        assert_eq!(&a * &b, Poly::from_ints(&f, &[2, 0, 1]));
    }

    #[test]
    fn gcd_with_zero_is_monic() {
        let f = f3();
        let a = Poly::from_ints(&f, &[1, 2, 2]);
        assert_eq!(a.gcd(&Poly::zero(&f)).unwrap(), Poly::from_ints(&f, &[2, 1, 1]));
        assert!(Poly::zero(&f).gcd(&Poly::zero(&f)).unwrap().is_zero());
    }

    #[test]
    fn pow_mod_small() {
        // T^2 = -1 mod T^2+1, so T^4 = 1
        let f = f3();
        let m = Poly::from_ints(&f, &[1, 0, 1]);
        let t = Poly::t(&f);
        assert_eq!(t.pow_mod(4, &m).unwrap(), Poly::one(&f));
        assert_eq!(t.pow_mod(2, &m).unwrap(), Poly::from_ints(&f, &[2]));
        assert_eq!(t.pow_mod(0, &m).unwrap(), Poly::one(&f));
        assert_eq!(t.pow_mod(5, &Poly::one(&f)).unwrap(), Poly::zero(&f));
    }

    #[test]
    fn division_errors() {
        let f = f3();
        let a = Poly::from_ints(&f, &[1, 1]);
        assert_eq!(a.div_rem(&Poly::zero(&f)), Err(Error::DivisionByZero));
        assert_eq!(a.pow_mod(3, &Poly::zero(&f)), Err(Error::DivisionByZero));
        let g = Poly::from_ints(&Fq::prime(5).unwrap(), &[1, 1]);
        assert_eq!(a.checked_add(&g), Err(Error::FieldMismatch));
        assert_eq!(a.div_rem(&g), Err(Error::FieldMismatch));
    }

    #[test]
    fn irreducibility_examples() {
        let f = f3();
        assert!(Poly::t(&f).is_irreducible().unwrap());
        assert!(Poly::from_ints(&f, &[1, 0, 1]).is_irreducible().unwrap());
        assert!(!Poly::from_ints(&f, &[2, 0, 1]).is_irreducible().unwrap());
        assert!(!Poly::one(&f).is_irreducible().unwrap());
        assert_eq!(Poly::zero(&f).is_irreducible(), Err(Error::ZeroPolynomial));
        // (T^2+1)^2 has no roots but is reducible
        let sq = Poly::from_ints(&f, &[1, 0, 2, 0, 1]);
        assert!(!sq.is_irreducible().unwrap());
    }

    #[test]
    fn rabin_matches_root_test_in_degree_three() {
        // a cubic is irreducible iff it has no root
        let f = Fq::prime(5).unwrap();
        for n in 0..125i64 {
            let p = Poly::from_ints(&f, &[n % 5, (n / 5) % 5, n / 25, 1]);
            let rootless = f.elements().all(|t| !p.eval(t).is_zero());
            assert_eq!(p.is_irreducible().unwrap(), rootless, "{p}");
        }
    }

    #[test]
    fn squarefree() {
        let f = f3();
        assert!(Poly::from_ints(&f, &[2, 0, 1]).is_squarefree().unwrap());
        assert!(!Poly::from_ints(&f, &[1, 2, 1]).is_squarefree().unwrap());
        // T^3 + 1 = (T+1)^3 in characteristic 3
        assert!(!Poly::from_ints(&f, &[1, 0, 0, 1]).is_squarefree().unwrap());
    }

    #[test]
    fn canonical_order() {
        let f = f3();
        let mut v = [Poly::from_ints(&f, &[2, 2, 1]),
            Poly::from_ints(&f, &[1, 0, 1]),
            Poly::from_ints(&f, &[0, 1]),
            Poly::from_ints(&f, &[2, 1, 1])];
        v.sort();
        let shown: Vec<String> = v.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["T", "T^2+1", "T^2+T+2", "T^2+2*T+2"]);
    }
}
