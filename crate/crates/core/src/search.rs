//! Sweeps over places: odd-Jacobian pairs, inert census, Dirichlet-style
//! symbol counts and the hyperelliptic finiteness window.
//!
//! Parallel sweeps collect in input order, so results do not depend on the
//! number of worker threads.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffpoly::{count_irreducibles, monic_irreducibles, Fq, Place, RamSet};
use crate::modcurve::{classify_quotient, hyperelliptic_feasible, hyperelliptic_max_r, Parity, QuotientReport};
use crate::symbols::{legendre_euler, legendre_fast, SymbolValue};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hit {
    pub x: Place,
    pub y: Place,
    pub report: QuotientReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub q: u64,
    pub deg_x: usize,
    pub deg_y: usize,
    pub hits: Vec<Hit>,
    pub census: BTreeMap<&'static str, u128>,
}

/// Runs `f` on a rayon pool with `jobs` threads (at least one).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// All ordered pairs `(x, y)` of distinct places with the given degrees for
/// which `X^R / w_y`, `R = {x, y}`, has an odd Jacobian.
pub fn find_odd_pairs(field: &Fq, deg_x: usize, deg_y: usize) -> Result<SearchResult> {
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic("the odd-Jacobian search"));
    }
    if deg_x % 2 == 1 || deg_y % 2 == 1 || deg_x == 0 || deg_y == 0 {
        return Err(Error::Precondition(format!(
            "search needs positive even degrees, got deg_x = {deg_x}, deg_y = {deg_y}"
        )));
    }
    let xs = monic_irreducibles(field, deg_x)?;
    let ys = monic_irreducibles(field, deg_y)?;
    let pairs: Vec<(&Place, &Place)> = ys
        .iter()
        .flat_map(|y| xs.iter().filter(move |x| *x != y).map(move |x| (x, y)))
        .collect();
    let reports = pairs
        .par_iter()
        .map(|&(x, y)| classify_quotient(&RamSet::new(vec![x.clone(), y.clone()])?, y))
        .collect::<Result<Vec<_>>>()?;

    let mut census = BTreeMap::new();
    census.insert("pairs", pairs.len() as u128);
    census.insert(
        "symbol_minus_one",
        reports.iter().filter(|r| r.conditions.symbol).count() as u128,
    );
    let hits: Vec<Hit> = pairs
        .iter()
        .zip(reports)
        .filter(|(_, r)| r.parity == Parity::Odd)
        .map(|(&(x, y), report)| Hit { x: x.clone(), y: y.clone(), report })
        .collect();
    census.insert("hits", hits.len() as u128);
    census.insert(
        "sha_certificates",
        hits.iter().filter(|h| h.report.sha_certificate).count() as u128,
    );
    Ok(SearchResult { q: field.q(), deg_x, deg_y, hits, census })
}

/// Number of quadratic places `y != x` at which `p_x` is a non-residue,
/// i.e. that stay inert in `F(sqrt(p_x))`; always `(q^2 - 1)/4`.
pub fn inert_degree2_census(x: &Place) -> Result<u128> {
    let field = x.field();
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic("the inert census"));
    }
    if x.degree() != 2 {
        return Err(Error::Precondition(format!("{x} has degree {}, not 2", x.degree())));
    }
    let ys = monic_irreducibles(field, 2)?;
    let symbols = ys
        .par_iter()
        .filter(|y| *y != x)
        .map(|y| legendre_euler(x.poly(), y))
        .collect::<Result<Vec<_>>>()?;
    let inert = symbols.iter().filter(|&&s| s == SymbolValue::MinusOne).count() as u128;
    let q = field.q() as u128;
    let expected = (q * q - 1) / 4;
    if inert != expected {
        return Err(Error::Internal(format!(
            "{inert} inert quadratic places for {x}, expected (q^2-1)/4 = {expected}"
        )));
    }
    Ok(inert)
}

/// One even degree of the Dirichlet census for a fixed `y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletRow {
    pub degree: usize,
    pub places: u128,
    /// Places `x != y` of this degree with `(p_x / p_y) = -1`.
    pub minus_one: u128,
    /// Half the number of places; printed, never asserted.
    pub heuristic: f64,
    /// Whether reciprocity was checked on the hits (needs `deg(y)` even).
    pub reciprocity_checked: bool,
}

/// Counts, for every even `d <= dmax`, the degree-`d` places `x` with
/// `(p_x / p_y) = -1`. When `deg(y)` is even each hit is also checked to
/// satisfy `(p_y / p_x) = -1`.
pub fn dirichlet_check(y: &Place, dmax: usize) -> Result<Vec<DirichletRow>> {
    let field = y.field();
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic("the Dirichlet census"));
    }
    let check = !y.is_odd_degree();
    let mut rows = Vec::new();
    for d in (2..=dmax).step_by(2) {
        let xs = monic_irreducibles(field, d)?;
        let hits = xs
            .par_iter()
            .filter(|x| *x != y)
            .map(|x| -> Result<u128> {
                if legendre_fast(x.poly(), y)? != SymbolValue::MinusOne {
                    return Ok(0);
                }
                if check && legendre_fast(y.poly(), x)? != SymbolValue::MinusOne {
                    return Err(Error::Internal(format!(
                        "reciprocity fails: ({x} / {y}) = -1 but ({y} / {x}) != -1"
                    )));
                }
                Ok(1)
            })
            .collect::<Result<Vec<_>>>()?;
        let places = count_irreducibles(field.q(), d)?;
        rows.push(DirichletRow {
            degree: d,
            places,
            minus_one: hits.iter().sum(),
            heuristic: places as f64 / 2.0,
            reciprocity_checked: check,
        });
    }
    Ok(rows)
}

/// `(r, q^(r/2) < 32 q^3 r)` for `r = 2 ..= max_r + 2`.
pub fn hyperelliptic_survey(q: u64) -> Result<Vec<(u64, bool)>> {
    let max = hyperelliptic_max_r(q)?;
    Ok((2..=max + 2).map(|r| (r, hyperelliptic_feasible(q, r))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::Poly;

    fn f(q: u64) -> Fq {
        Fq::prime(q).unwrap()
    }

    #[test]
    fn odd_pairs_q3() {
        let res = find_odd_pairs(&f(3), 2, 2).unwrap();
        assert_eq!(res.census["pairs"], 6);
        assert!(!res.hits.is_empty());
        for h in &res.hits {
            assert_eq!(h.report.deficient, vec![h.x.clone()]);
            assert!(h.report.sha_certificate);
            assert!(res.hits.iter().any(|o| o.x == h.y && o.y == h.x), "{} {}", h.x, h.y);
        }
        assert!(find_odd_pairs(&f(3), 2, 4).unwrap().hits.is_empty());
        assert!(find_odd_pairs(&f(3), 1, 2).is_err());
        let f4 = Fq::with_order(4, Some(vec![1, 1, 1])).unwrap();
        assert!(find_odd_pairs(&f4, 2, 2).is_err());
    }

    #[test]
    fn hits_match_brute_force_symbols() {
        let field = f(5);
        let res = find_odd_pairs(&field, 2, 2).unwrap();
        let quads = monic_irreducibles(&field, 2).unwrap();
        let mut want = Vec::new();
        for y in &quads {
            for x in quads.iter().filter(|x| *x != y) {
                if legendre_euler(y.poly(), x).unwrap() == SymbolValue::MinusOne {
                    want.push((x.clone(), y.clone()));
                }
            }
        }
        let got: Vec<(Place, Place)> = res.hits.iter().map(|h| (h.x.clone(), h.y.clone())).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn jobs_do_not_change_results() {
        let one = with_jobs(1, || find_odd_pairs(&f(5), 2, 2)).unwrap().unwrap();
        let four = with_jobs(4, || find_odd_pairs(&f(5), 2, 2)).unwrap().unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn inert_census() {
        for q in [3u64, 5, 7] {
            let expected = (q as u128 * q as u128 - 1) / 4;
            for x in monic_irreducibles(&f(q), 2).unwrap() {
                assert_eq!(inert_degree2_census(&x).unwrap(), expected);
            }
        }
        let t = Place::new(Poly::t(&f(3))).unwrap();
        assert!(inert_degree2_census(&t).is_err());
    }

    #[test]
    fn dirichlet() {
        let field = f(3);
        let y = Place::new(Poly::from_ints(&field, &[1, 0, 1])).unwrap();
        let rows = dirichlet_check(&y, 5).unwrap();
        assert_eq!(rows.iter().map(|r| r.degree).collect::<Vec<_>>(), vec![2, 4]);
        assert_eq!(rows[0].places, 3);
        assert_eq!(rows[0].heuristic, 1.5);
        assert_eq!(rows[0].minus_one, 2);
        assert!(rows.iter().all(|r| r.reciprocity_checked));
    }

    #[test]
    fn survey() {
        let rows = hyperelliptic_survey(3).unwrap();
        assert_eq!(rows.first(), Some(&(2, true)));
        for (r, ok) in &rows {
            assert_eq!(*ok, *r <= 17);
        }
        for q in [2, 4, 5, 7, 9] {
            let rows = hyperelliptic_survey(q).unwrap();
            let first_false = rows.iter().position(|(_, ok)| !ok).unwrap();
            assert!(rows[first_false..].iter().all(|(_, ok)| !ok));
        }
    }
}
