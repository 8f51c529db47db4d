//! The coefficient field F_q.
//!
//! Elements are stored as their index in the canonical enumeration of F_q:
//! the coefficient vector `(c0, c1, .., c_{e-1})` over F_p read as the base-p
//! integer `c0 + c1*p + .. + c_{e-1}*p^(e-1)`. For prime fields the index is
//! the residue itself, so `0..p` in the usual order.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Multiplication tables are precomputed for extension fields up to this order.
const TABLE_LIMIT: u64 = 256;

/// Validated description of F_q = F_p[s]/(modulus).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    e: u32,
    modulus: Option<Vec<u64>>,
    q: u64,
}

impl FieldSpec {
    /// `modulus` is a degree-ascending coefficient list over F_p, monic of
    /// degree `e`; it is required exactly when `e > 1`.
    pub fn new(p: u64, e: u32, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = (0..e)
            .try_fold(1u64, |acc, _| acc.checked_mul(p))
            .filter(|&q| q < (1 << 31))
            .ok_or_else(|| Error::InvalidField(format!("{p}^{e} is too large")))?;
        let modulus = match (e, modulus) {
            (1, None) => None,
            (1, Some(m)) => {
                // A degree-1 modulus is harmless; anything else is a mistake.
                if m.len() != 2 || m[1] % p != 1 {
                    return Err(Error::InvalidField(
                        "modulus must be omitted or monic linear for a prime field".into(),
                    ));
                }
                None
            }
            (_, None) => {
                return Err(Error::InvalidField(format!(
                    "q = {p}^{e} needs an explicit irreducible modulus of degree {e}"
                )))
            }
            (_, Some(m)) => {
                let mut m: Vec<u64> = m.into_iter().map(|c| c % p).collect();
                while m.last() == Some(&0) {
                    m.pop();
                }
                if m.len() != e as usize + 1 || m[e as usize] != 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {e}"
                    )));
                }
                let base = Fq::prime(p)?;
                let poly = super::Poly::new(
                    &base,
                    m.iter().map(|&c| FqElem(c as u32)).collect(),
                );
                if !poly.is_irreducible()? {
                    return Err(Error::InvalidField(format!(
                        "modulus {poly} is reducible over F_{p}"
                    )));
                }
                Some(m)
            }
        };
        Ok(FieldSpec { p, e, modulus, q })
    }

    /// Builds the spec for a field of order `q`, splitting `q = p^e`.
    pub fn with_order(q: u64, modulus: Option<Vec<u64>>) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        FieldSpec::new(p, e, modulus)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }
}

/// An element of F_q, identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn index(self) -> u64 {
        self.0 as u64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FqInner {
    spec: FieldSpec,
    mul_table: Option<Vec<u32>>,
}

/// Shared handle to a finite field; cheap to clone.
#[derive(Clone)]
pub struct Fq {
    inner: Arc<FqInner>,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Fq {}

impl std::hash::Hash for Fq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.spec.hash(state)
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

impl Fq {
    pub fn new(spec: FieldSpec) -> Fq {
        let mut field = Fq {
            inner: Arc::new(FqInner { spec, mul_table: None }),
        };
        if field.e() > 1 && field.q() <= TABLE_LIMIT {
            let q = field.q() as u32;
            let mut table = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    table.push(field.mul_slow(FqElem(a), FqElem(b)).0);
                }
            }
            let spec = field.inner.spec.clone();
            field.inner = Arc::new(FqInner { spec, mul_table: Some(table) });
        }
        field
    }

    pub fn prime(p: u64) -> Result<Fq> {
        Ok(Fq::new(FieldSpec::new(p, 1, None)?))
    }

    /// Convenience constructor from the field order.
    pub fn with_order(q: u64, modulus: Option<Vec<u64>>) -> Result<Fq> {
        Ok(Fq::new(FieldSpec::with_order(q, modulus)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub fn p(&self) -> u64 {
        self.inner.spec.p
    }

    pub fn e(&self) -> u32 {
        self.inner.spec.e
    }

    pub fn q(&self) -> u64 {
        self.inner.spec.q
    }

    pub fn is_odd(&self) -> bool {
        self.p() != 2
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q() as u32).map(FqElem)
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q() as u32).map(FqElem)
    }

    /// The element with the given canonical index.
    pub fn element(&self, index: u64) -> Result<FqElem> {
        if index >= self.q() {
            return Err(Error::Precondition(format!(
                "element index {index} out of range for F_{}",
                self.q()
            )));
        }
        Ok(FqElem(index as u32))
    }

    /// The image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p() as i64) as u32)
    }

    /// Coefficient vector over F_p, degree-ascending, length e.
    pub fn digits(&self, a: FqElem) -> Vec<u64> {
        let p = self.p();
        let mut n = a.index();
        (0..self.e())
            .map(|_| {
                let d = n % p;
                n /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> Result<FqElem> {
        if digits.len() > self.e() as usize {
            return Err(Error::Precondition(format!(
                "{} coordinates given for an extension of degree {}",
                digits.len(),
                self.e()
            )));
        }
        let p = self.p();
        let mut n = 0u64;
        for &d in digits.iter().rev() {
            if d >= p {
                return Err(Error::Precondition(format!("digit {d} not reduced mod {p}")));
            }
            n = n * p + d;
        }
        Ok(FqElem(n as u32))
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p();
        if self.e() == 1 {
            return FqElem(((a.0 as u64 + b.0 as u64) % p) as u32);
        }
        let (mut x, mut y) = (a.index(), b.index());
        let (mut out, mut scale) = (0u64, 1u64);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * scale;
            x /= p;
            y /= p;
            scale *= p;
        }
        FqElem(out as u32)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let p = self.p();
        if self.e() == 1 {
            return FqElem(((p - a.0 as u64) % p) as u32);
        }
        let mut x = a.index();
        let (mut out, mut scale) = (0u64, 1u64);
        while x > 0 {
            out += ((p - x % p) % p) * scale;
            x /= p;
            scale *= p;
        }
        FqElem(out as u32)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.e() == 1 {
            return FqElem(((a.0 as u64 * b.0 as u64) % self.p()) as u32);
        }
        match &self.inner.mul_table {
            Some(t) => FqElem(t[(a.0 as usize) * self.q() as usize + b.0 as usize]),
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p();
        let e = self.e() as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let m = self.inner.spec.modulus.as_ref().expect("extension field has a modulus");
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &mi) in m.iter().enumerate().take(e) {
                let idx = k - e + i;
                prod[idx] = (prod[idx] + c * (p - mi)) % p;
            }
            prod[k] = 0;
        }
        prod.truncate(e);
        self.from_digits(&prod).expect("digits are reduced")
    }

    pub fn pow(&self, a: FqElem, mut exp: u128) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q() as u128 - 2))
    }

    /// Quadratic character of F_q: 0 at 0, +1 on squares, -1 otherwise.
    pub fn quadratic_character(&self, a: FqElem) -> Result<i8> {
        if !self.is_odd() {
            return Err(Error::EvenCharacteristic("the quadratic character"));
        }
        if a.is_zero() {
            return Ok(0);
        }
        Ok(if self.pow(a, (self.q() as u128 - 1) / 2) == FqElem::ONE { 1 } else { -1 })
    }

    /// The first non-square of F_q^x in canonical order.
    pub fn nonsquare_xi(&self) -> Result<FqElem> {
        if !self.is_odd() {
            return Err(Error::EvenCharacteristic("a non-square constant"));
        }
        for a in self.units() {
            if self.quadratic_character(a)? == -1 {
                return Ok(a);
            }
        }
        Err(Error::Internal("odd field without non-squares".into()))
    }

    pub fn fmt_elem(&self, a: FqElem) -> String {
        if self.e() == 1 {
            a.0.to_string()
        } else {
            let parts: Vec<String> = self.digits(a).iter().map(u64::to_string).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut n, mut e) = (q, 0u32);
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    (n == 1).then_some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Fq {
        // s^2 + 1 is irreducible over F_3
        Fq::with_order(9, Some(vec![1, 0, 1])).unwrap()
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn extension_needs_modulus() {
        assert!(matches!(Fq::with_order(9, None), Err(Error::InvalidField(_))));
        // s^2 + 2 = (s+1)(s+2) over F_3
        assert!(matches!(
            Fq::with_order(9, Some(vec![2, 0, 1])),
            Err(Error::InvalidField(_))
        ));
        assert!(matches!(Fq::prime(6), Err(Error::InvalidField(_))));
    }

    #[test]
    fn f9_is_a_field() {
        let f = f9();
        assert_eq!(f.q(), 9);
        for a in f.units() {
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), FqElem::ONE);
            assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
        }
        // s * s = -1 = 2
        let s = f.from_digits(&[0, 1]).unwrap();
        assert_eq!(f.mul(s, s), f.from_int(-1));
    }

    #[test]
    fn nonsquare_xi_canonical() {
        assert_eq!(Fq::prime(3).unwrap().nonsquare_xi().unwrap(), FqElem(2));
        assert_eq!(Fq::prime(5).unwrap().nonsquare_xi().unwrap(), FqElem(2));
        assert_eq!(Fq::prime(7).unwrap().nonsquare_xi().unwrap(), FqElem(3));
        // F_9 squares of the units: brute-force the image of squaring.
        let f = f9();
        let squares: Vec<FqElem> = f.units().map(|a| f.mul(a, a)).collect();
        let first = f.units().find(|a| !squares.contains(a)).unwrap();
        assert_eq!(f.nonsquare_xi().unwrap(), first);
        assert!(matches!(
            Fq::with_order(4, Some(vec![1, 1, 1])).unwrap().nonsquare_xi(),
            Err(Error::EvenCharacteristic(_))
        ));
    }

    #[test]
    fn squares_have_index_two() {
        for f in [Fq::prime(3).unwrap(), Fq::prime(7).unwrap(), f9()] {
            let nsq = f
                .units()
                .filter(|&a| f.quadratic_character(a).unwrap() == 1)
                .count() as u64;
            assert_eq!(nsq, (f.q() - 1) / 2);
        }
    }
}
