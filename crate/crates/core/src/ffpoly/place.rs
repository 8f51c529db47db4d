//! Places of F_q(T), enumeration of monic irreducibles, ramification sets.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::field::{Fq, FqElem};
use super::poly::Poly;
use crate::error::{Error, Result};

/// A finite place of F_q(T), given by its monic irreducible generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Place {
    poly: Poly,
    deg: usize,
    q_x: u128,
}

impl Place {
    pub fn new(poly: Poly) -> Result<Place> {
        if poly.is_zero() || !poly.is_monic() {
            return Err(Error::NotAPlace(format!("{poly} is not monic")));
        }
        if !poly.is_irreducible()? {
            return Err(Error::NotAPlace(format!("{poly} is reducible")));
        }
        Place::from_irreducible(poly)
    }

    /// Skips the irreducibility test; the caller vouches for it.
    pub(crate) fn from_irreducible(poly: Poly) -> Result<Place> {
        let deg = poly.degree().expect("nonzero");
        let q_x = (poly.field().q() as u128)
            .checked_pow(deg as u32)
            .ok_or(Error::Overflow("residue field size"))?;
        Ok(Place { poly, deg, q_x })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn field(&self) -> &Fq {
        self.poly.field()
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    /// Size of the residue field, `q^deg`.
    pub fn residue_size(&self) -> u128 {
        self.q_x
    }

    pub fn is_odd_degree(&self) -> bool {
        self.deg % 2 == 1
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        self.poly.cmp(&other.poly)
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({})", self.poly)
    }
}

/// A place of F_q(T) including the infinite place `1/T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnyPlace {
    Infinity,
    Finite(Place),
}

impl fmt::Display for AnyPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyPlace::Infinity => f.write_str("inf"),
            AnyPlace::Finite(x) => x.fmt(f),
        }
    }
}

impl From<Place> for AnyPlace {
    fn from(x: Place) -> Self {
        AnyPlace::Finite(x)
    }
}

/// `Odd(S)`: whether every place in `S` has odd degree.
pub fn all_odd<'a>(places: impl IntoIterator<Item = &'a Place>) -> bool {
    places.into_iter().all(Place::is_odd_degree)
}

/// A ramification set: an even number (at least two) of distinct finite
/// places, kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RamSet {
    places: Vec<Place>,
}

impl RamSet {
    pub fn new(mut places: Vec<Place>) -> Result<RamSet> {
        if places.len() < 2 || places.len() % 2 == 1 {
            return Err(Error::InvalidRamSet(format!(
                "needs an even number >= 2 of places, got {}",
                places.len()
            )));
        }
        if places.iter().any(|x| x.field() != places[0].field()) {
            return Err(Error::FieldMismatch);
        }
        places.sort();
        if let Some(w) = places.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidRamSet(format!("{} listed twice", w[0])));
        }
        Ok(RamSet { places })
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn field(&self) -> &Fq {
        self.places[0].field()
    }

    pub fn q(&self) -> u64 {
        self.field().q()
    }

    pub fn contains(&self, x: &Place) -> bool {
        self.places.binary_search(x).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Place> {
        self.places.iter()
    }

    /// `Odd(R)`.
    pub fn all_odd(&self) -> bool {
        all_odd(&self.places)
    }

    pub fn without<'a>(&'a self, x: &'a Place) -> impl Iterator<Item = &'a Place> + 'a {
        self.places.iter().filter(move |z| *z != x)
    }
}

impl<'a> IntoIterator for &'a RamSet {
    type Item = &'a Place;
    type IntoIter = std::slice::Iter<'a, Place>;
    fn into_iter(self) -> Self::IntoIter {
        self.places.iter()
    }
}

/// Every monic polynomial of degree `d`, in canonical order.
pub fn monic_polys(field: &Fq, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.q() as u128;
    let total = q.pow(d as u32);
    (0..total).map(move |mut n| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(FqElem((n % q) as u32));
            n /= q;
        }
        coeffs.push(FqElem::ONE);
        Poly::new(field, coeffs)
    })
}

/// Every polynomial of degree at most `d` (zero included), in canonical order.
pub fn polys_up_to(field: &Fq, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.q() as u128;
    let total = q.pow(d as u32 + 1);
    (0..total).map(move |mut n| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            coeffs.push(FqElem((n % q) as u32));
            n /= q;
        }
        Poly::new(field, coeffs)
    })
}

/// All places of degree `d`, in canonical order.
pub fn monic_irreducibles(field: &Fq, d: usize) -> Result<Vec<Place>> {
    if d < 1 {
        return Err(Error::InvalidDegree(d));
    }
    let total = (field.q() as u128).checked_pow(d as u32);
    if total.is_none_or(|n| n > 50_000_000) {
        return Err(Error::Unsupported(format!(
            "enumerating degree-{d} polynomials over F_{}",
            field.q()
        )));
    }
    let mut out = Vec::new();
    for f in monic_polys(field, d) {
        if f.is_irreducible()? {
            out.push(Place::from_irreducible(f)?);
        }
    }
    Ok(out)
}

fn mobius(mut n: usize) -> i128 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducibles of degree `d`: `(1/d) sum_{e|d} mu(e) q^(d/e)`.
pub fn count_irreducibles(q: u64, d: usize) -> Result<u128> {
    if d < 1 {
        return Err(Error::InvalidDegree(d));
    }
    let mut sum: i128 = 0;
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let mu = mobius(e);
        if mu == 0 {
            continue;
        }
        let term = (q as i128)
            .checked_pow((d / e) as u32)
            .ok_or(Error::Overflow("irreducible count"))?;
        sum += mu * term;
    }
    debug_assert_eq!(sum % d as i128, 0);
    Ok((sum / d as i128) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[Place]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn enumerate_small() {
        let f = Fq::prime(3).unwrap();
        assert_eq!(names(&monic_irreducibles(&f, 1).unwrap()), ["T", "T+1", "T+2"]);
        assert_eq!(
            names(&monic_irreducibles(&f, 2).unwrap()),
            ["T^2+1", "T^2+T+2", "T^2+2*T+2"]
        );
        assert_eq!(monic_irreducibles(&f, 0), Err(Error::InvalidDegree(0)));
    }

    #[test]
    fn necklace_counts() {
        assert_eq!(count_irreducibles(3, 1).unwrap(), 3);
        assert_eq!(count_irreducibles(3, 2).unwrap(), 3);
        assert_eq!(count_irreducibles(3, 4).unwrap(), 18);
        assert_eq!(count_irreducibles(2, 6).unwrap(), 9);
        assert_eq!(count_irreducibles(3, 0), Err(Error::InvalidDegree(0)));
    }

    #[test]
    fn place_validation() {
        let f = Fq::prime(3).unwrap();
        assert!(Place::new(Poly::from_ints(&f, &[1, 0, 1])).is_ok());
        assert!(matches!(
            Place::new(Poly::from_ints(&f, &[2, 0, 1])),
            Err(Error::NotAPlace(_))
        ));
        assert!(matches!(
            Place::new(Poly::from_ints(&f, &[2, 0, 2])),
            Err(Error::NotAPlace(_))
        ));
        let x = Place::new(Poly::from_ints(&f, &[2, 1, 1])).unwrap();
        assert_eq!(x.degree(), 2);
        assert_eq!(x.residue_size(), 9);
    }

    #[test]
    fn ramset_rules() {
        let f = Fq::prime(3).unwrap();
        let p = monic_irreducibles(&f, 2).unwrap();
        let t = monic_irreducibles(&f, 1).unwrap();
        let r = RamSet::new(vec![p[1].clone(), t[0].clone()]).unwrap();
        assert_eq!(r.places()[0], t[0]);
        assert!(!r.all_odd());
        assert!(RamSet::new(vec![p[0].clone()]).is_err());
        assert!(RamSet::new(vec![p[0].clone(), p[0].clone()]).is_err());
        assert!(RamSet::new(vec![p[0].clone(), p[1].clone(), p[2].clone()]).is_err());
        let g = Place::new(Poly::t(&Fq::prime(5).unwrap())).unwrap();
        assert_eq!(RamSet::new(vec![p[0].clone(), g]), Err(Error::FieldMismatch));
    }
}
