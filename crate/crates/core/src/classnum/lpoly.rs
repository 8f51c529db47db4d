use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Relative tolerance for `|alpha| = sqrt(q)` on the inverse roots.
pub const WEIL_TOLERANCE: f64 = 1e-9;

/// Numerator `L(u) = 1 + a_1 u + .. + a_2g u^2g` of the zeta function of a
/// curve of genus `g` over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolynomial {
    coeffs: Vec<i128>,
    genus: usize,
    q: u64,
}

impl LPolynomial {
    /// Builds `L` from the first `g` point counts `N_1..N_g`.
    ///
    /// Power sums `s_i = q^i + 1 - N_i` give `a_1..a_g` by Newton's
    /// identities; the functional equation supplies the rest.
    pub fn from_point_counts(q: u64, genus: usize, counts: &[i128]) -> Result<LPolynomial> {
        if counts.len() < genus {
            return Err(Error::Precondition(format!(
                "{} point counts given, genus {genus} needs {genus}",
                counts.len()
            )));
        }
        let qi = q as i128;
        let sums: Vec<i128> = counts[..genus]
            .iter()
            .enumerate()
            .map(|(i, &n)| checked_pow(qi, i as u32 + 1).map(|p| p + 1 - n))
            .collect::<Result<_>>()?;
        let mut a = vec![0i128; 2 * genus + 1];
        a[0] = 1;
        for k in 1..=genus {
            let acc: i128 = (1..=k).map(|j| sums[j - 1] * a[k - j]).sum();
            if acc % k as i128 != 0 {
                return Err(Error::Internal(format!(
                    "Newton identity gave non-integral a_{k} from counts {counts:?}"
                )));
            }
            a[k] = -acc / k as i128;
        }
        for i in 0..genus {
            a[2 * genus - i] = checked_pow(qi, (genus - i) as u32)? * a[i];
        }
        let l = LPolynomial { coeffs: a, genus, q };
        l.check_invariants()?;
        Ok(l)
    }

    /// The trivial numerator of a genus-0 curve.
    pub fn one(q: u64) -> LPolynomial {
        LPolynomial { coeffs: vec![1], genus: 0, q }
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `L(1)`, the order of the degree-0 divisor class group.
    pub fn value_at_one(&self) -> i128 {
        self.coeffs.iter().sum()
    }

    /// `s_k = sum_j alpha_j^k` for `k = 1..=n`, exactly.
    pub fn power_sums(&self, n: usize) -> Vec<i128> {
        let a = |k: usize| self.coeffs.get(k).copied().unwrap_or(0);
        let mut s: Vec<i128> = Vec::with_capacity(n);
        for k in 1..=n {
            let mut v = -(k as i128) * a(k);
            for j in 1..k {
                v -= s[j - 1] * a(k - j);
            }
            s.push(v);
        }
        s
    }

    /// `#C(F_{q^i}) = q^i + 1 - s_i` for `i = 1..=n`.
    pub fn predicted_counts(&self, n: usize) -> Result<Vec<i128>> {
        self.power_sums(n)
            .into_iter()
            .enumerate()
            .map(|(i, s)| Ok(checked_pow(self.q as i128, i as u32 + 1)? + 1 - s))
            .collect()
    }

    pub fn check_invariants(&self) -> Result<()> {
        let g = self.genus;
        let qi = self.q as i128;
        if self.coeffs.len() != 2 * g + 1 || self.coeffs[0] != 1 {
            return Err(Error::Internal(format!("malformed L-polynomial {:?}", self.coeffs)));
        }
        for i in 0..=g {
            let want = checked_pow(qi, (g - i) as u32)? * self.coeffs[i];
            if self.coeffs[2 * g - i] != want {
                return Err(Error::Internal(format!(
                    "functional equation fails at a_{} in {:?}",
                    2 * g - i,
                    self.coeffs
                )));
            }
        }
        let worst = self.weil_deviation()?;
        if worst > WEIL_TOLERANCE {
            return Err(Error::Internal(format!(
                "inverse root off the circle |alpha| = sqrt(q) by {worst:e} in {:?}",
                self.coeffs
            )));
        }
        Ok(())
    }

    /// Largest relative deviation of `|alpha_j|` from `sqrt(q)`.
    ///
    /// The inverse roots are the roots of `u^2g + a_1 u^(2g-1) + .. + a_2g`.
    /// Repeated roots are split off exactly first so that the eigenvalue
    /// solver only sees simple roots.
    pub fn weil_deviation(&self) -> Result<f64> {
        if self.genus == 0 {
            return Ok(0.0);
        }
        // descending-degree monic polynomial whose roots are the alpha_j
        let alpha_poly: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let core = squarefree_part(&alpha_poly);
        let roots = companion_roots(&core)?;
        let target = (self.q as f64).sqrt();
        Ok(roots
            .iter()
            .map(|(re, im)| ((re * re + im * im).sqrt() / target - 1.0).abs())
            .fold(0.0, f64::max))
    }
}

fn checked_pow(base: i128, exp: u32) -> Result<i128> {
    base.checked_pow(exp).ok_or(Error::Overflow("L-polynomial"))
}

/// Rational polynomial, descending coefficients; zero is the empty vector.
type QPoly = Vec<BigRational>;

/// Divides `f` by `gcd(f, f')` over Q and makes the result monic.
fn squarefree_part(f: &QPoly) -> QPoly {
    let n = f.len() - 1;
    let deriv: QPoly = f[..n]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(n - i)))
        .collect();
    let g = qpoly_gcd(trim(f.clone()), trim(deriv));
    monic_desc(qpoly_divmod(f, &g).0)
}

fn trim(mut f: QPoly) -> QPoly {
    let lead = f.iter().position(|c| !c.is_zero()).unwrap_or(f.len());
    f.drain(..lead);
    f
}

fn monic_desc(f: QPoly) -> QPoly {
    let lead = f[0].clone();
    f.into_iter().map(|c| c / &lead).collect()
}

fn qpoly_divmod(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = trim(a.clone());
    let mut quot = Vec::new();
    while r.len() >= b.len() {
        let factor = &r[0] / &b[0];
        for (i, c) in b.iter().enumerate() {
            r[i] = &r[i] - &factor * c;
        }
        r.remove(0);
        quot.push(factor);
    }
    (quot, trim(r))
}

fn qpoly_gcd(mut a: QPoly, mut b: QPoly) -> QPoly {
    while !b.is_empty() {
        let r = qpoly_divmod(&a, &b).1;
        a = b;
        b = r;
    }
    a
}

/// Roots of a monic polynomial (descending coefficients) as `(re, im)`.
///
/// Unshifted QR can stall when many roots share a modulus, which is exactly
/// the situation here, so the companion matrix is shifted by a real constant
/// first and the iteration count is capped.
fn companion_roots(f: &QPoly) -> Result<Vec<(f64, f64)>> {
    const SHIFT: f64 = 0.381_966_011_250_105_1;
    const MAX_ITERATIONS: usize = 10_000;
    let n = f.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let coeff = |i: usize| -> Result<f64> {
        f[i].to_f64().ok_or(Error::Overflow("companion matrix"))
    };
    let mut m = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = -coeff(j + 1)?;
    }
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    let scale = m.amax().max(1.0);
    for i in 0..n {
        m[(i, i)] += SHIFT * scale;
    }
    let schur = m
        .try_schur(f64::EPSILON, MAX_ITERATIONS)
        .ok_or_else(|| Error::Internal("eigenvalue iteration did not converge".into()))?;
    Ok(schur
        .complex_eigenvalues()
        .iter()
        .map(|z| (z.re - SHIFT * scale, z.im))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_from_count() {
        // N_1 = 5 over F_3: a_1 = N_1 - q - 1 = 1
        let l = LPolynomial::from_point_counts(3, 1, &[5]).unwrap();
        assert_eq!(l.coeffs(), &[1, 1, 3]);
        assert_eq!(l.value_at_one(), 5);
        assert_eq!(l.predicted_counts(2).unwrap(), vec![5, 15]);
    }

    #[test]
    fn repeated_roots_pass_weil() {
        // (1 - 3u)^2 over F_9 has a double inverse root alpha = 3.
        let l = LPolynomial { coeffs: vec![1, -6, 9], genus: 1, q: 9 };
        assert!(l.check_invariants().is_ok());
        // (1 + 3u^2)^2 over F_3 has double roots +-i sqrt(3)
        let l = LPolynomial { coeffs: vec![1, 0, 6, 0, 9], genus: 2, q: 3 };
        assert!(l.check_invariants().is_ok());
    }

    #[test]
    fn equal_modulus_roots_converge() {
        // 1 + 9u^4: the four inverse roots are sqrt(3) times the primitive
        // eighth roots of unity
        let l = LPolynomial { coeffs: vec![1, 0, 0, 0, 9], genus: 2, q: 3 };
        assert!(l.weil_deviation().unwrap() < WEIL_TOLERANCE);
        let l = LPolynomial { coeffs: vec![1, 0, 0, 0, 0, 0, 27], genus: 3, q: 3 };
        assert!(l.weil_deviation().unwrap() < WEIL_TOLERANCE);
    }

    #[test]
    fn off_circle_is_rejected() {
        // a_1 = 4 > 2 sqrt(3) violates the Hasse bound
        let l = LPolynomial { coeffs: vec![1, 4, 3], genus: 1, q: 3 };
        assert!(matches!(l.check_invariants(), Err(Error::Internal(_))));
        let l = LPolynomial { coeffs: vec![1, 1, 4], genus: 1, q: 3 };
        assert!(matches!(l.check_invariants(), Err(Error::Internal(_))));
    }

    #[test]
    fn power_sums_round_trip() {
        let l = LPolynomial { coeffs: vec![1, 2, 5, 6, 9], genus: 2, q: 3 };
        let counts = l.predicted_counts(2).unwrap();
        let back = LPolynomial::from_point_counts(3, 2, &counts).unwrap();
        assert_eq!(back, l);
    }
}
