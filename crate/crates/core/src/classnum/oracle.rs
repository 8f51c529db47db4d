//! Exhaustive ideal class group of F_q[T, sqrt(D)].
//!
//! Affine effective divisors on `y^2 = D(T)` are the integral ideals of the
//! order, and two of them are equivalent modulo the infinite place(s) iff
//! they differ by a principal ideal. Every class holds a primitive ideal
//! `[a, b + sqrt(D)]` with `deg a <= g + deg(inf) - 1` (Riemann-Roch), so we
//! list those and sort them into classes by a direct search for generators.

use super::{InfinityType, QuadDisc};
use crate::error::{Error, Result};
use crate::ffpoly::{monic_polys, polys_up_to, Poly};

const MAX_GENUS: usize = 2;
const MAX_Q: u64 = 5;

/// The primitive ideal `a F_q[T] + (b + sqrt(D)) F_q[T]` with `a` monic,
/// `deg b < deg a` and `a | b^2 - D`. Its norm is `a`.
#[derive(Debug, Clone)]
struct Ideal {
    a: Poly,
    b: Poly,
}

impl Ideal {
    fn norm_degree(&self) -> usize {
        self.a.degree().expect("monic")
    }

    /// Whether `scale * self` contains `s + t sqrt(D)`.
    fn contains_scaled(&self, scale: &Poly, s: &Poly, t: &Poly) -> bool {
        let (ys, tr) = t.div_rem(scale).expect("nonzero scale");
        if !tr.is_zero() {
            return false;
        }
        let (xs, sr) = s.div_rem(scale).expect("nonzero scale");
        if !sr.is_zero() {
            return false;
        }
        (&xs - &(&ys * &self.b)).rem(&self.a).expect("monic").is_zero()
    }
}

fn primitive_ideals(d: &QuadDisc, max_norm_degree: usize) -> Vec<Ideal> {
    let field = d.field();
    let mut out = Vec::new();
    for deg in 0..=max_norm_degree {
        for a in monic_polys(field, deg) {
            let residues: Vec<Poly> = if deg == 0 {
                vec![Poly::zero(field)]
            } else {
                polys_up_to(field, deg - 1).collect()
            };
            for b in residues {
                let disc = &(&b * &b) - d.poly();
                if disc.rem(&a).expect("monic").is_zero() {
                    out.push(Ideal { a: a.clone(), b });
                }
            }
        }
    }
    out
}

/// Searches for `gamma = u + v sqrt(D)` with `(gamma) = B * conj(A)`, i.e.
/// `deg N(gamma) = deg N(A) + deg N(B)` and `gamma * A ⊆ N(A) * B`.
fn equivalent(d: &QuadDisc, lhs: &Ideal, rhs: &Ideal) -> bool {
    let field = d.field();
    let n = lhs.norm_degree() + rhs.norm_degree();
    let deg_d = d.degree();
    let vs: Vec<Poly> = if n >= deg_d {
        polys_up_to(field, (n - deg_d) / 2).collect()
    } else {
        vec![Poly::zero(field)]
    };
    let one = Poly::one(field);
    for u in polys_up_to(field, n / 2) {
        for v in &vs {
            if u.is_zero() && v.is_zero() {
                continue;
            }
            let norm = &(&u * &u) - &(&(v * v) * d.poly());
            if norm.degree() != Some(n) {
                continue;
            }
            // fix the scalar ambiguity: the dominant component is monic
            let u_top = u.degree().is_some_and(|k| 2 * k == n);
            if (u_top && !u.is_monic()) || (!u_top && !v.is_monic()) {
                continue;
            }
            if !rhs.contains_scaled(&one, &u, v) {
                continue;
            }
            // gamma * (b_A + sqrt(D)) = (u b_A + v D) + (u + v b_A) sqrt(D)
            let s = &(&u * &lhs.b) + &(v * d.poly());
            let t = &u + &(v * &lhs.b);
            if rhs.contains_scaled(&lhs.a, &s, &t) {
                return true;
            }
        }
    }
    false
}

/// Order of the ideal class group of F_q[T, sqrt(D)] by exhaustive search.
///
/// Restricted to genus at most 2 and `q <= 5`; the infinite place must not
/// split.
pub fn class_number_bruteforce(d: &QuadDisc) -> Result<u128> {
    let g = d.genus();
    let q = d.field().q();
    if g > MAX_GENUS || q > MAX_Q {
        return Err(Error::Unsupported(format!(
            "brute-force class group needs genus <= {MAX_GENUS} and q <= {MAX_Q}, got genus {g}, q = {q}"
        )));
    }
    let inf_degree = match d.infinity_type() {
        InfinityType::Ramified => 1,
        InfinityType::Inert => 2,
        InfinityType::Split => {
            return Err(Error::Unsupported(format!("real quadratic order for {d}")));
        }
    };
    let ideals = primitive_ideals(d, g + inf_degree - 1);
    let mut reps: Vec<Ideal> = Vec::new();
    for ideal in ideals {
        if !reps.iter().any(|r| equivalent(d, r, &ideal)) {
            reps.push(ideal);
        }
    }
    Ok(reps.len() as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::Fq;

    fn disc(q: u64, c: &[i64]) -> QuadDisc {
        QuadDisc::new(Poly::from_ints(&Fq::prime(q).unwrap(), c)).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(class_number_bruteforce(&disc(3, &[2, 0, 2])).unwrap(), 2);
        assert_eq!(class_number_bruteforce(&disc(3, &[0, 2])).unwrap(), 1);
        assert!(class_number_bruteforce(&disc(5, &[1, 0, 0, 1])).is_ok());
    }

    #[test]
    fn degree_one_ideals_of_the_conic() {
        // D = 2(T^2+1) over F_3: D(1), D(2) are squares, two roots each
        let d = disc(3, &[2, 0, 2]);
        let ideals = primitive_ideals(&d, 1);
        assert_eq!(ideals.len(), 1 + 4);
        let unit = &ideals[0];
        assert!(ideals[1..].iter().all(|i| !equivalent(&d, unit, i)));
        assert!(ideals[1..].iter().all(|i| equivalent(&d, &ideals[1], i)));
    }

    #[test]
    fn limits() {
        let big = disc(3, &[1, 1, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(class_number_bruteforce(&big), Err(Error::Unsupported(_))));
        let d7 = disc(7, &[0, 1]);
        assert!(matches!(class_number_bruteforce(&d7), Err(Error::Unsupported(_))));
        let split = disc(3, &[1, 0, 1]);
        assert!(matches!(class_number_bruteforce(&split), Err(Error::Unsupported(_))));
    }
}
