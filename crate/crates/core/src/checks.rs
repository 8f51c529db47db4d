//! Self-checks: the invariant suite behind `selftest` and the reference
//! table behind `table`.
//!
//! Each check recomputes its quantities from scratch and compares them with
//! an independent route (a closed form, a brute-force count, or a second
//! algorithm). Wall-clock budgets are part of the verdict where given.

use std::fmt;
use std::time::{Duration, Instant};

use crate::classnum::{
    affine_count, class_number, class_number_bruteforce, cornelissen_parity, l_polynomial,
    InfinityType, QuadDisc,
};
use crate::ffpoly::{
    count_irreducibles, monic_irreducibles, monic_polys, parse_poly, polys_up_to, AnyPlace, Fq,
    Place, Poly, RamSet,
};
use crate::modcurve::{
    classify_quotient, deficient_places_xr, divisor_existence, fixed_points, genus_quotient,
    genus_xr, hyperelliptic_max_r, Curve, DivisorStatus, Parity,
};
use crate::search::{find_odd_pairs, inert_degree2_census};
use crate::symbols::{legendre_euler, legendre_fast, reciprocity_sign, SymbolValue};

/// Why a check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fail(pub String);

impl From<crate::Error> for Fail {
    fn from(e: crate::Error) -> Self {
        Fail(e.to_string())
    }
}

type Verdict = Result<String, Fail>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(Fail(format!($($msg)+)));
        }
    };
}

pub struct Check {
    pub id: &'static str,
    pub title: &'static str,
    pub budget: Option<Duration>,
    run: fn() -> Verdict,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let budget = match self.budget {
            Some(b) => format!(" / budget {} s", b.as_secs_f64()),
            None => String::new(),
        };
        write!(
            f,
            "{verdict} [{}] {} ({:.3} s{budget}): {}",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

impl Check {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let result = (self.run)();
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match result {
            Ok(d) => (true, d),
            Err(Fail(d)) => (false, d),
        };
        if let Some(b) = self.budget {
            if passed && elapsed > b {
                passed = false;
                detail = format!("over budget: {detail}");
            }
        }
        Outcome { id: self.id, title: self.title, passed, detail, elapsed, budget: self.budget }
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn field(q: u64) -> Fq {
    Fq::with_order(q, None).expect("prime field")
}

fn places_up_to(f: &Fq, d: usize) -> Result<Vec<Place>, Fail> {
    let mut out = Vec::new();
    for k in 1..=d {
        out.extend(monic_irreducibles(f, k)?);
    }
    Ok(out)
}

fn pair(x: &Place, y: &Place) -> Result<RamSet, Fail> {
    Ok(RamSet::new(vec![x.clone(), y.clone()])?)
}

/// Squarefree discriminants of degree `1..=dmax` whose infinite place does
/// not split.
fn imaginary_discriminants(f: &Fq, dmax: usize) -> Result<Vec<QuadDisc>, Fail> {
    let mut out = Vec::new();
    for d in 1..=dmax {
        for lead in f.units() {
            for m in monic_polys(f, d) {
                let p = m.scale(lead);
                if !p.is_squarefree()? {
                    continue;
                }
                let disc = QuadDisc::new(p)?;
                if disc.infinity_type() != InfinityType::Split {
                    out.push(disc);
                }
            }
        }
    }
    Ok(out)
}

/// The reference table: each row pins an exact value or property.
pub fn table() -> Vec<Check> {
    vec![
        Check { id: "T1", title: "genus of X^R: q^2 for two quadratic places, 0 for two linear", budget: secs(1), run: t1_genus },
        Check { id: "T2", title: "quotient genus (q^2-1)/2 when the symbol is -1, q = 3", budget: secs(1), run: t2_quotient },
        Check { id: "T3", title: "odd-Jacobian pairs exist for q = 3, degrees (2, 2)", budget: secs(5), run: t3_odd_pairs },
        Check { id: "T4", title: "inert quadratic census (q^2-1)/4, q = 3, 5, 7", budget: secs(10), run: t4_inert },
        Check { id: "T5", title: "quadratic reciprocity, degrees <= 3, q = 3, 5, 7", budget: secs(60), run: t5_reciprocity },
        Check { id: "T6", title: "Euler criterion = reciprocity evaluation, degrees <= 3, q = 3, 5", budget: secs(60), run: t6_symbol_agreement },
        Check { id: "T7", title: "class number mod 4 by deg(p): 2 at degree 2, 0 at degree 4", budget: secs(120), run: t7_class_parity },
        Check { id: "T8", title: "class number = exhaustive class group, q = 3, deg D <= 4", budget: secs(300), run: t8_oracle },
        Check { id: "T9", title: "odd Jacobian iff even quotient genus, q = 3, degrees <= 4", budget: None, run: t9_parity_genus },
        Check { id: "T10", title: "hyperelliptic window: max r = 17 at q = 3", budget: secs(1), run: t10_max_r },
        Check { id: "T11", title: "search output identical for --jobs 1 and --jobs 4", budget: None, run: t11_determinism },
    ]
}

/// The invariant suite run by `selftest`, the table included.
pub fn invariants() -> Vec<Check> {
    let mut all = vec![
        Check { id: "I1", title: "irreducible counts, Rabin test and sum_{e|d} e N_e = q^d", budget: None, run: i1_irreducibles },
        Check { id: "I2", title: "ring axioms and division round trip, exhaustive over F_3", budget: None, run: i2_ring },
        Check { id: "I3", title: "emitted polynomials re-parse, q = 3, 5, 9", budget: None, run: i3_text },
        Check { id: "I4", title: "symbol multiplicativity and square density, q = 3", budget: None, run: i4_symbols },
        Check { id: "I5", title: "L-polynomial predicts the point counts it was not fitted to", budget: None, run: i5_lpoly },
        Check { id: "I6", title: "class number unchanged under xi -> xi s^2", budget: None, run: i6_xi },
        Check { id: "I7", title: "genus integrality, #R = 2, degrees <= 3, q = 3, 5", budget: None, run: i7_integrality },
        Check { id: "I8", title: "X^R deficient set = R iff genus(X^R) even, q = 3, 5, 4", budget: None, run: i8_consistency },
        Check { id: "I9", title: "Fix(w_y) / h is 0 or 2^(#R-1)", budget: None, run: i9_fix_shape },
        Check { id: "I10", title: "divisor verdicts on X^R are never undetermined", budget: None, run: i10_divisors },
    ];
    all.extend(table());
    all
}

fn t1_genus() -> Verdict {
    let mut rows = Vec::new();
    for q in [3u64, 5] {
        let quads = monic_irreducibles(&field(q), 2)?;
        let g = genus_xr(&pair(&quads[0], &quads[1])?)?;
        ensure!(g == (q * q) as u128, "q = {q}, two quadratic places: genus {g}, want {}", q * q);
        rows.push(format!("q={q} quad:{g}"));
    }
    for q in [3u64, 5, 7] {
        let lin = monic_irreducibles(&field(q), 1)?;
        let g = genus_xr(&pair(&lin[0], &lin[1])?)?;
        ensure!(g == 0, "q = {q}, two linear places: genus {g}, want 0");
        rows.push(format!("q={q} lin:{g}"));
    }
    Ok(rows.join(" "))
}

fn t2_quotient() -> Verdict {
    let quads = monic_irreducibles(&field(3), 2)?;
    let mut n = 0;
    for y in &quads {
        for x in quads.iter().filter(|x| *x != y) {
            if legendre_euler(y.poly(), x)? != SymbolValue::MinusOne {
                continue;
            }
            let g = genus_quotient(&pair(x, y)?, y)?;
            ensure!(g == 4, "R = {{{x}, {y}}}, y = {y}: quotient genus {g}, want 4");
            n += 1;
        }
    }
    ensure!(n > 0, "no quadratic pair with symbol -1");
    Ok(format!("{n} ordered pairs, all genus 4"))
}

fn t3_odd_pairs() -> Verdict {
    let res = find_odd_pairs(&field(3), 2, 2)?;
    ensure!(!res.hits.is_empty(), "no odd-Jacobian pair found");
    for h in &res.hits {
        ensure!(h.report.deficient == vec![h.x.clone()], "({}, {}): deficient {:?}", h.x, h.y, h.report.deficient);
        ensure!(h.report.sha_certificate, "({}, {}): no finiteness certificate", h.x, h.y);
    }
    Ok(format!("{} hits of {} pairs, each deficient {{x}} with certificate", res.hits.len(), res.census["pairs"]))
}

fn t4_inert() -> Verdict {
    let mut rows = Vec::new();
    for q in [3u64, 5, 7] {
        let want = (q as u128 * q as u128 - 1) / 4;
        let quads = monic_irreducibles(&field(q), 2)?;
        for x in &quads {
            let n = inert_degree2_census(x)?;
            ensure!(n == want, "q = {q}, x = {x}: {n} inert, want {want}");
        }
        rows.push(format!("q={q}:{want}x{}", quads.len()));
    }
    Ok(rows.join(" "))
}

fn t5_reciprocity() -> Verdict {
    let mut checked = 0u64;
    for q in [3u64, 5, 7] {
        let places = places_up_to(&field(q), 3)?;
        for (i, x) in places.iter().enumerate() {
            for y in &places[i + 1..] {
                let lhs = legendre_euler(y.poly(), x)? * legendre_euler(x.poly(), y)?;
                let rhs = reciprocity_sign(q, x.degree(), y.degree());
                ensure!(lhs.as_i8() == rhs, "q = {q}: ({y}/{x})({x}/{y}) = {lhs}, want {rhs}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs"))
}

fn t6_symbol_agreement() -> Verdict {
    let mut checked = 0u64;
    for q in [3u64, 5] {
        let f = field(q);
        let places = places_up_to(&f, 3)?;
        for a in polys_up_to(&f, 3) {
            for x in &places {
                let (e, s) = (legendre_euler(&a, x)?, legendre_fast(&a, x)?);
                ensure!(e == s, "q = {q}: ({a} / {x}) Euler {e}, reciprocity {s}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} symbols"))
}

fn t7_class_parity() -> Verdict {
    let mut rows = Vec::new();
    for (q, d) in [(3u64, 2usize), (5, 2), (3, 4)] {
        let f = field(q);
        let xi = f.nonsquare_xi()?;
        let law = cornelissen_parity(d)?;
        let places = monic_irreducibles(&f, d)?;
        for p in &places {
            let h = class_number(&QuadDisc::from_place(xi, p)?)?;
            ensure!(law.matches(h), "q = {q}, p = {p}: h = {h}, want h = {} mod 4", law.residue());
        }
        rows.push(format!("q={q} deg={d}: {} places, h={} mod 4", places.len(), law.residue()));
    }
    Ok(rows.join("; "))
}

fn t8_oracle() -> Verdict {
    let discs = imaginary_discriminants(&field(3), 4)?;
    for d in &discs {
        let (fast, slow) = (class_number(d)?, class_number_bruteforce(d)?);
        ensure!(fast == slow, "D = {d}: L-polynomial gives {fast}, class group has {slow}");
    }
    Ok(format!("{} discriminants", discs.len()))
}

fn t9_parity_genus() -> Verdict {
    let f = field(3);
    let mut places = monic_irreducibles(&f, 2)?;
    places.extend(monic_irreducibles(&f, 4)?);
    let (mut n, mut odd) = (0, 0);
    for y in &places {
        for x in places.iter().filter(|x| *x != y) {
            let rep = classify_quotient(&pair(x, y)?, y)?;
            let g = rep.genus_quotient.ok_or_else(|| Fail(format!("no quotient genus for ({x}, {y})")))?;
            let is_odd = rep.parity == Parity::Odd;
            ensure!(rep.parity != Parity::OutOfScope, "({x}, {y}) out of scope");
            ensure!(is_odd == (g % 2 == 0), "({x}, {y}): parity {}, quotient genus {g}", rep.parity);
            n += 1;
            odd += is_odd as u32;
        }
    }
    Ok(format!("{n} ordered pairs, {odd} odd"))
}

fn t10_max_r() -> Verdict {
    let r = hyperelliptic_max_r(3)?;
    ensure!(r == 17, "max r = {r}, want 17");
    Ok("17".into())
}

fn t11_determinism() -> Verdict {
    let run = |jobs: &str, fmt: &str| -> Result<Vec<u8>, Fail> {
        let mut args = vec!["ffmodcurve", "--q", "5", "search", "--deg-x", "2", "--deg-y", "2", "--jobs", jobs];
        if !fmt.is_empty() {
            args.push(fmt);
        }
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = crate::cli::run(args, &mut out, &mut err);
        ensure!(code == 0, "search exited {code}: {}", String::from_utf8_lossy(&err));
        Ok(out)
    };
    for fmt in ["", "--json", "--tsv"] {
        let (one, four) = (run("1", fmt)?, run("4", fmt)?);
        ensure!(one == four, "output differs between --jobs 1 and --jobs 4 ({fmt:?})");
        ensure!(!one.is_empty(), "empty search output");
    }
    Ok("text, json and tsv byte-identical".into())
}

fn i1_irreducibles() -> Verdict {
    for q in [3u64, 5] {
        let f = field(q);
        for d in 1..=4usize {
            let list = monic_irreducibles(&f, d)?;
            let n = count_irreducibles(q, d)?;
            ensure!(list.len() as u128 == n, "q = {q}, d = {d}: listed {}, counted {n}", list.len());
            ensure!(list.windows(2).all(|w| w[0] < w[1]), "q = {q}, d = {d}: not sorted");
            let total: u128 = (1..=d)
                .filter(|e| d % e == 0)
                .map(|e| e as u128 * count_irreducibles(q, e).unwrap())
                .sum();
            ensure!(total == (q as u128).pow(d as u32), "q = {q}, d = {d}: sum e N_e = {total}");
            if d <= 3 {
                let sieve = monic_polys(&f, d).filter(|p| p.is_irreducible().unwrap()).count();
                ensure!(sieve == list.len(), "q = {q}, d = {d}: Rabin finds {sieve}");
            }
        }
    }
    Ok("q = 3, 5, d <= 4".into())
}

fn i2_ring() -> Verdict {
    let f = field(3);
    let small: Vec<Poly> = polys_up_to(&f, 1).collect();
    for a in &small {
        for b in &small {
            for c in &small {
                ensure!(&(a * b) * c == a * &(b * c), "associativity fails at {a}, {b}, {c}");
                ensure!(a * &(b + c) == &(a * b) + &(a * c), "distributivity fails at {a}, {b}, {c}");
            }
        }
    }
    let divisors: Vec<Poly> = polys_up_to(&f, 2).filter(|b| !b.is_zero()).collect();
    for a in polys_up_to(&f, 3) {
        for b in &divisors {
            let (quot, rem) = a.div_rem(b)?;
            ensure!(&(b * &quot) + &rem == a, "{a} != {b} * {quot} + {rem}");
            ensure!(rem.degree() < b.degree(), "deg {rem} >= deg {b}");
        }
    }
    Ok("degree <= 1 triples, degree <= 3 by degree <= 2 division".into())
}

fn i3_text() -> Verdict {
    let f9 = Fq::with_order(9, Some(vec![1, 0, 1]))?;
    for f in [field(3), field(5), f9] {
        for p in polys_up_to(&f, 2) {
            let back = parse_poly(&f, &p.to_string())?;
            ensure!(back == p, "{p} re-parses as {back}");
        }
    }
    Ok("all polynomials of degree <= 2".into())
}

fn i4_symbols() -> Verdict {
    let f = field(3);
    let polys: Vec<Poly> = polys_up_to(&f, 2).collect();
    for x in places_up_to(&f, 2)? {
        for a in &polys {
            for b in &polys {
                let lhs = legendre_fast(&(a * b), &x)?;
                let rhs = legendre_fast(a, &x)? * legendre_fast(b, &x)?;
                ensure!(lhs == rhs, "({a} * {b} / {x}) = {lhs}, product {rhs}");
            }
        }
        let plus = polys_up_to(&f, x.degree() - 1)
            .filter(|a| !a.is_zero())
            .map(|a| legendre_euler(&a, &x))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|s| *s == SymbolValue::PlusOne)
            .count() as u128;
        ensure!(plus == (x.residue_size() - 1) / 2, "{x}: {plus} nonzero squares");
    }
    Ok("q = 3, degree <= 2".into())
}

fn i5_lpoly() -> Verdict {
    let mut n = 0;
    for q in [3u64, 5] {
        let f = field(q);
        let dmax = if q == 3 { 5 } else { 3 };
        for d in imaginary_discriminants(&f, dmax)?.iter().step_by(7) {
            let l = l_polynomial(d)?;
            let g = d.genus();
            ensure!(l.coeffs()[2 * g] == (q as i128).pow(g as u32), "{d}: a_2g = {}", l.coeffs()[2 * g]);
            let predicted = l.predicted_counts(2 * g)?;
            for i in g + 1..=2 * g {
                let actual = (affine_count(d, i)? + d.points_at_infinity(i)) as i128;
                ensure!(predicted[i - 1] == actual, "{d}: N_{i} predicted {}, counted {actual}", predicted[i - 1]);
            }
            n += 1;
        }
    }
    Ok(format!("{n} curves"))
}

fn i6_xi() -> Verdict {
    let mut n = 0;
    for q in [3u64, 5, 7] {
        let f = field(q);
        let xi = f.nonsquare_xi()?;
        for p in monic_irreducibles(&f, 2)?.iter().chain(&monic_irreducibles(&f, 3)?).take(6) {
            let base = class_number(&QuadDisc::from_place(xi, p)?)?;
            for s in f.units() {
                let twisted = f.mul(xi, f.mul(s, s));
                let h = class_number(&QuadDisc::from_place(twisted, p)?)?;
                ensure!(h == base, "q = {q}, p = {p}: h changes from {base} to {h} at xi s^2, s = {}", f.fmt_elem(s));
            }
            n += 1;
        }
    }
    Ok(format!("{n} places"))
}

fn i7_integrality() -> Verdict {
    let (mut even_rows, mut odd_rows, mut fractional) = (0, 0, 0);
    for q in [3u64, 5] {
        let places = places_up_to(&field(q), 3)?;
        for (i, x) in places.iter().enumerate() {
            for y in &places[i + 1..] {
                let r = pair(x, y)?;
                genus_xr(&r)?;
                for w in [x, y] {
                    match genus_quotient(&r, w) {
                        Ok(_) => {
                            if w.is_odd_degree() {
                                odd_rows += 1;
                            } else {
                                even_rows += 1;
                            }
                        }
                        Err(crate::Error::Internal(_)) if w.is_odd_degree() => fractional += 1,
                        Err(e) => return Err(Fail(format!("R = {{{x}, {y}}}, y = {w}: {e}"))),
                    }
                }
            }
        }
    }
    Ok(format!(
        "{even_rows} even-degree y integral; odd-degree y: {odd_rows} integral, {fractional} fractional"
    ))
}

fn i8_consistency() -> Verdict {
    let f4 = Fq::with_order(4, Some(vec![1, 1, 1]))?;
    let mut n = 0;
    for (f, d) in [(field(3), 3), (field(5), 3), (f4, 2)] {
        let places = places_up_to(&f, d)?;
        for (i, x) in places.iter().enumerate() {
            for y in &places[i + 1..] {
                let r = pair(x, y)?;
                let all = deficient_places_xr(&r).0.len() == r.len();
                let g = genus_xr(&r)?;
                ensure!(all == (g % 2 == 0), "q = {}, R = {{{x}, {y}}}: genus {g}, deficient = R is {all}", f.q());
                n += 1;
            }
        }
    }
    Ok(format!("{n} sets"))
}

fn i9_fix_shape() -> Verdict {
    let mut n = 0;
    for q in [3u64, 5] {
        let f = field(q);
        let xi = f.nonsquare_xi()?;
        let places = places_up_to(&f, 2)?;
        for chunk in places.chunks(4).filter(|c| c.len() == 4) {
            for size in [2, 4] {
                let r = RamSet::new(chunk[..size].to_vec())?;
                for y in &r {
                    let fix = fixed_points(&r, y)?;
                    let h = class_number(&QuadDisc::from_place(xi, y)?)?;
                    let ok = fix == 0 || fix == h << (size - 1);
                    ensure!(ok, "R of size {size}, y = {y}: Fix = {fix}, h = {h}");
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} involutions"))
}

fn i10_divisors() -> Verdict {
    let f = field(3);
    let places = places_up_to(&f, 2)?;
    let r = RamSet::new(places[..4].to_vec())?;
    let mut targets: Vec<AnyPlace> = places.iter().cloned().map(AnyPlace::from).collect();
    targets.push(AnyPlace::Infinity);
    for x in &targets {
        for d in -3..=3 {
            let v = divisor_existence(&Curve::XR, x, d, &r)?;
            ensure!(v.status != DivisorStatus::Undetermined, "x = {x}, d = {d}: undetermined");
        }
    }
    Ok(format!("{} places, d in -3..=3", targets.len()))
}
