//! F-singularity invariants: ν-invariants, F-pure threshold bounds, truncated
//! test ideals, F-purity and strong F-regularity at finite level.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frobenius::{pe_root, FrobeniusLevel};
use crate::groebner::Ideal;
use crate::report::{Check, Report, Status};
use crate::ring::{Monomial, Polynomial, RationalParam};

/// Default truncation level for test-ideal sums.
pub const DEFAULT_EMAX: u32 = 2;

/// Row-echelon span of polynomials over `F_p`, keyed by leading monomial.
struct Echelon {
    rows: Vec<Polynomial>,
    pivots: HashMap<Monomial, usize>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: HashMap::new() }
    }

    fn reduce(&self, mut p: Polynomial) -> Polynomial {
        while let Some((k, c)) = p.terms().iter().find_map(|(m, c)| self.pivots.get(m).map(|&k| (k, *c))) {
            p = &p - &self.rows[k].scale(c);
        }
        p
    }

    /// Adds `p` if it is independent of the current rows.
    fn insert(&mut self, p: Polynomial) -> bool {
        let r = self.reduce(p);
        if r.is_zero() {
            return false;
        }
        let r = r.monic();
        self.pivots.insert(r.leading_monomial().unwrap().clone(), self.rows.len());
        self.rows.push(r);
        true
    }
}

/// `f·g` with every term having some exponent `≥ q` dropped.
fn mul_truncated(f: &Polynomial, g: &Polynomial, q: u32) -> Polynomial {
    let field = f.ring().field();
    let mut acc: HashMap<Monomial, u32> = HashMap::new();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            if a.exps().iter().zip(b.exps()).any(|(x, y)| x + y >= q) {
                continue;
            }
            let m = a.mul(b);
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, field.mul(*ca, *cb));
        }
    }
    Polynomial::from_terms(f.ring(), acc.into_iter().filter(|(_, c)| *c != 0).collect::<Vec<_>>())
}

fn truncate(f: &Polynomial, q: u32) -> Polynomial {
    Polynomial::from_terms(
        f.ring(),
        f.terms().iter().filter(|(m, _)| m.exps().iter().all(|&x| x < q)).cloned().collect::<Vec<_>>(),
    )
}

/// True when `m` is `(x_1, ..., x_n)` up to generator order.
fn is_origin(m: &Ideal) -> bool {
    let n = m.ring().nvars();
    let mut seen = vec![false; n];
    for g in m.generators() {
        if !g.is_monomial() || g.total_degree() != Some(1) {
            return false;
        }
        let i = g.leading_monomial().unwrap().exps().iter().position(|&x| x == 1).unwrap();
        seen[i] = true;
    }
    seen.iter().all(|&s| s)
}

/// `ν_I(q) = max{ r : I^r ⊄ m^{[q]} }`.
pub fn nu(i: &Ideal, m: &Ideal, level: FrobeniusLevel) -> Result<u64> {
    i.check_ring(m.ring())?;
    if i.is_zero() {
        return Err(Error::invalid("ν of the zero ideal is undefined"));
    }
    if m.is_unit() {
        return Err(Error::invalid("the maximal ideal must be proper"));
    }
    if let Some(f) = m.first_outside(i)? {
        return Err(Error::invalid(format!("ideal is not contained in the maximal ideal: {f}")));
    }
    if level.p() != i.ring().characteristic() {
        return Err(Error::invalid("Frobenius level and ring characteristic differ"));
    }
    if is_origin(m) {
        Ok(nu_at_origin(i, level.q()))
    } else {
        nu_by_search(i, m, level)
    }
}

/// Scans `r = 1, 2, ...` keeping an `F_p`-basis of `I^r` modulo `m^{[q]}`;
/// stops once the span is zero. Terminates by `r = n(q-1) + 1`.
fn nu_at_origin(i: &Ideal, q: u32) -> u64 {
    let gens: Vec<Polynomial> = i.generators().to_vec();
    let mut span = Echelon::new();
    for g in &gens {
        span.insert(truncate(g, q));
    }
    let mut r = 0u64;
    while !span.rows.is_empty() {
        r += 1;
        let mut next = Echelon::new();
        for h in &span.rows {
            for g in &gens {
                next.insert(mul_truncated(h, g, q));
            }
        }
        span = next;
    }
    r
}

/// Binary search on `r ∈ [0, μ_m (q-1)]` with Gröbner membership tests.
fn nu_by_search(i: &Ideal, m: &Ideal, level: FrobeniusLevel) -> Result<u64> {
    let target = m.bracket_power(level.e())?;
    let outside = |r: u64| -> Result<bool> { Ok(!target.contains_ideal(&i.power(r)?)?) };
    let (mut lo, mut hi) = (0u64, m.generators().len() as u64 * (level.q() as u64 - 1) + 1);
    // outside(lo) holds, outside(hi) fails.
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if outside(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Certified bounds on the F-pure threshold from a ν table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptBounds {
    pub nu_values: Vec<(u32, u64)>,
    /// `max_e ν_e / p^e`.
    pub lower: RationalParam,
    /// `(ν_e + 1)/p^e` at the largest level, principal ideals only.
    pub upper: Option<RationalParam>,
}

impl FptBounds {
    /// `(lower, upper]` when an upper bound exists, else `[lower, inf)`.
    pub fn interval(&self) -> String {
        match &self.upper {
            Some(u) => format!("({}, {}]", self.lower, u),
            None => format!("[{}, inf)", self.lower),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.upper.as_ref() == Some(&self.lower)
    }
}

pub fn fpt_bounds(i: &Ideal, e_max: u32) -> Result<FptBounds> {
    fpt_bounds_at(i, &Ideal::maximal_at_origin(i.ring()), e_max)
}

pub fn fpt_bounds_at(i: &Ideal, m: &Ideal, e_max: u32) -> Result<FptBounds> {
    if e_max == 0 {
        return Err(Error::invalid("e_max must be at least 1"));
    }
    if i.is_unit() {
        return Err(Error::invalid("F-pure threshold of the unit ideal is undefined"));
    }
    let p = i.ring().characteristic();
    let levels = (1..=e_max).map(|e| FrobeniusLevel::new(p, e)).collect::<Result<Vec<_>>>()?;
    let nus: Vec<u64> = levels.par_iter().map(|l| nu(i, m, *l)).collect::<Result<_>>()?;
    let mut lower = RationalParam::integer(0);
    for (l, v) in levels.iter().zip(&nus) {
        let r = RationalParam::new(*v, l.q() as u64)?;
        if r > lower {
            lower = r;
        }
    }
    let upper = if i.generators().len() == 1 {
        let last = levels.last().unwrap();
        Some(RationalParam::new(nus.last().unwrap() + 1, last.q() as u64)?)
    } else {
        None
    };
    let nu_values = levels.iter().map(|l| l.e()).zip(nus).collect();
    Ok(FptBounds { nu_values, lower, upper })
}

/// A truncated test-ideal sum with its per-level contributions.
#[derive(Clone, Debug)]
pub struct TestIdealResult {
    pub ideal: Ideal,
    pub t: RationalParam,
    pub e_max: u32,
    pub per_level: Vec<(u32, Ideal)>,
    /// The last two partial sums agree.
    pub stabilized: bool,
}

impl TestIdealResult {
    /// Partial sums over `e = 0..=k` for each `k`.
    pub fn partial_sums(&self) -> Result<Vec<Ideal>> {
        let mut out: Vec<Ideal> = Vec::with_capacity(self.per_level.len());
        for (_, c) in &self.per_level {
            let next = match out.last() {
                None => c.clone(),
                Some(s) => s.sum(c)?,
            };
            out.push(next);
        }
        Ok(out)
    }
}

fn with_level(err: Error, e: u32) -> Error {
    match err {
        Error::GeneratorCeiling { context, ceiling } => {
            Error::GeneratorCeiling { context: format!("{context} at level e={e}"), ceiling }
        }
        other => other,
    }
}

/// Level-`e` term `(I^{⌈t p^e⌉})^{[1/p^e]}`.
pub fn test_ideal_level(i: &Ideal, t: &RationalParam, e: u32) -> Result<Ideal> {
    let level = FrobeniusLevel::for_ring(i.ring(), e)?;
    let power = i.power(t.ceil_mul(level.q() as u64)).map_err(|err| with_level(err, e))?;
    pe_root(&power, level)
}

/// `Σ_{e=0}^{e_max} (I^{⌈t p^e⌉})^{[1/p^e]}`.
pub fn test_ideal(i: &Ideal, t: &RationalParam, e_max: u32) -> Result<TestIdealResult> {
    if i.is_zero() {
        return Err(Error::invalid("test ideal of the zero ideal"));
    }
    let levels: Vec<Ideal> =
        (0..=e_max).into_par_iter().map(|e| test_ideal_level(i, t, e)).collect::<Result<_>>()?;
    let per_level: Vec<(u32, Ideal)> = (0..=e_max).zip(levels).collect();
    let mut sum = per_level[0].1.clone();
    let mut stabilized = false;
    for (_, c) in &per_level[1..] {
        let next = sum.sum(c)?;
        stabilized = next.equals(&sum)?;
        sum = next;
    }
    Ok(TestIdealResult { ideal: sum.minimalized(), t: *t, e_max, per_level, stabilized })
}

/// `(R, I^t)` splits at level `e`: `1 ∈ (I^{⌊t(q-1)⌋})^{[1/q]}`.
pub fn is_f_pure_level(i: &Ideal, t: &RationalParam, level: FrobeniusLevel) -> Result<bool> {
    if i.is_zero() {
        return Err(Error::invalid("F-purity of the zero ideal"));
    }
    let power = i.power(t.floor_mul(level.q() as u64 - 1))?;
    Ok(pe_root(&power, level)?.is_unit())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularity {
    Yes,
    Inconclusive,
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regularity::Yes => "yes",
            Regularity::Inconclusive => "inconclusive",
        })
    }
}

/// "yes" when the truncated test ideal is the unit ideal; never "no".
pub fn is_strongly_f_regular_level(i: &Ideal, t: &RationalParam, e_max: u32) -> Result<Regularity> {
    let tau = test_ideal(i, t, e_max)?;
    Ok(if tau.ideal.is_unit() { Regularity::Yes } else { Regularity::Inconclusive })
}

fn witness_outside(big: &Ideal, small: &Ideal) -> Result<Option<String>> {
    Ok(big.first_outside(small)?.map(|f| f.to_string()))
}

/// Checks the inclusions behind `τ(I^c) = I` at truncation `e_max`.
pub fn verify_ein(i: &Ideal, c: u64, t: &RationalParam, e_max: u32) -> Result<Report> {
    if t < &RationalParam::integer(1) {
        return Err(Error::invalid("t must be at least 1"));
    }
    if c == 0 {
        return Err(Error::invalid("height must be positive"));
    }
    let mut rep = Report::new("ein");
    rep.assume("I unmixed: asserted by caller, not verified");
    rep.assume(format!("c = {c} is the height of I"));
    rep.value("c", c);
    rep.value("t", t);
    rep.value("emax", e_max);

    let cpar = RationalParam::integer(c);
    let tau_c = test_ideal(i, &cpar, e_max)?;
    rep.value("tau", tau_c.ideal.reduced_string());
    rep.value("stabilized", tau_c.stabilized);

    let mut a = Check::new("tau_c_in_I", Status::Pass).level(e_max);
    if let Some(w) = witness_outside(i, &tau_c.ideal)? {
        a = Check::new("tau_c_in_I", Status::Fail).level(e_max).witness(w);
    }
    rep.push(a);

    let tau_t = if *t == cpar { tau_c.clone() } else { test_ideal(i, t, e_max)? };
    let t_minus = t.minus_one().expect("t >= 1");
    for e in 0..=e_max {
        let level = FrobeniusLevel::for_ring(i.ring(), e)?;
        let qm1 = level.q() as u64 - 1;
        let low = i.power(t_minus.ceil_mul(qm1))?;
        let high = i.power(t.ceil_mul(qm1))?;
        let mut check = Check::new(format!("product_inclusion_e{e}"), Status::Pass).level(e);
        for a in tau_t.ideal.generators() {
            let lhs = i.product(&pe_root(&low.scale(a)?, level)?)?;
            let rhs = pe_root(&high.scale(a)?, level)?;
            if let Some(w) = witness_outside(&rhs, &lhs)? {
                check = Check::new(format!("product_inclusion_e{e}"), Status::Fail)
                    .level(e)
                    .detail(format!("a = {a}"))
                    .witness(w);
                break;
            }
        }
        rep.push(check);
    }

    let below = test_ideal(i, &RationalParam::integer(c - 1), e_max)?;
    let name = "unit_below_forces_equality";
    if below.ideal.is_unit() {
        if tau_c.ideal.equals(i)? {
            rep.push(Check::new(name, Status::Pass).level(e_max));
        } else {
            let w = witness_outside(&tau_c.ideal, i)?.unwrap_or_else(|| tau_c.ideal.reduced_string());
            rep.push(Check::new(name, Status::Fail).level(e_max).witness(w));
        }
    } else {
        rep.push(Check::new(name, Status::Pass).level(e_max).detail("premise not met: truncated tau(I^(c-1)) is proper"));
    }
    Ok(rep)
}

/// Compares truncated test ideals of `I` and of a declared reduction level by
/// level. Agreement and disagreement are both reported as evidence.
pub fn reduction_evidence(i: &Ideal, reduction: &Ideal, t: &RationalParam, e_max: u32) -> Result<Report> {
    if !i.contains_ideal(reduction)? {
        return Err(Error::invalid("declared reduction is not contained in the ideal"));
    }
    let mut rep = Report::new("reduction");
    rep.assume("reduction declared by the caller, not verified");
    let a = test_ideal(i, t, e_max)?.partial_sums()?;
    let b = test_ideal(reduction, t, e_max)?.partial_sums()?;
    for (e, (x, y)) in a.iter().zip(&b).enumerate() {
        let name = format!("partial_sum_e{e}");
        let check = if x.equals(y)? {
            Check::new(name, Status::Evidence).level(e as u32).detail("agree")
        } else {
            let w = witness_outside(y, x)?.or(witness_outside(x, y)?).unwrap_or_default();
            Check::new(name, Status::Evidence).level(e as u32).detail("differ").witness(w)
        };
        rep.push(check);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;

    fn ring(p: u64, vars: &[&str]) -> RingContext {
        RingContext::grevlex(p, vars).unwrap()
    }

    fn lvl(p: u32, e: u32) -> FrobeniusLevel {
        FrobeniusLevel::new(p, e).unwrap()
    }

    fn rp(s: &str) -> RationalParam {
        s.parse().unwrap()
    }

    #[test]
    fn nu_examples() {
        let r = ring(2, &["x"]);
        let i = Ideal::parse("x", &r).unwrap();
        assert_eq!(nu(&i, &Ideal::maximal_at_origin(&r), lvl(2, 1)).unwrap(), 1);
        let r2 = ring(2, &["x", "y"]);
        let m2 = Ideal::maximal_at_origin(&r2);
        assert_eq!(nu(&Ideal::parse("x,y", &r2).unwrap(), &m2, lvl(2, 1)).unwrap(), 2);
        let r3 = ring(3, &["x"]);
        assert_eq!(nu(&Ideal::parse("x^2", &r3).unwrap(), &Ideal::maximal_at_origin(&r3), lvl(3, 1)).unwrap(), 1);
    }

    #[test]
    fn nu_errors() {
        let r = ring(2, &["x", "y"]);
        let m = Ideal::maximal_at_origin(&r);
        assert!(nu(&Ideal::zero(&r), &m, lvl(2, 1)).is_err());
        assert!(nu(&Ideal::parse("x+1", &r).unwrap(), &m, lvl(2, 1)).is_err());
    }

    #[test]
    fn nu_search_agrees_with_scan() {
        let r = ring(3, &["x", "y"]);
        let m = Ideal::maximal_at_origin(&r);
        let shifted = Ideal::parse("y, x", &r).unwrap();
        for text in ["x^2, y^3", "x*y", "x^2+y^2, x*y", "x+y^2"] {
            let i = Ideal::parse(text, &r).unwrap();
            for e in 1..=2 {
                let a = nu_at_origin(&i, lvl(3, e).q());
                let b = nu_by_search(&i, &shifted, lvl(3, e)).unwrap();
                assert_eq!(a, b, "{text} e={e}");
                assert_eq!(nu(&i, &m, lvl(3, e)).unwrap(), a);
            }
        }
    }

    #[test]
    fn fpt_examples() {
        let r = ring(2, &["x", "y"]);
        let b = fpt_bounds(&Ideal::parse("x", &r).unwrap(), 2).unwrap();
        assert_eq!(b.nu_values, vec![(1, 1), (2, 3)]);
        assert_eq!(b.lower, rp("3/4"));
        assert_eq!(b.upper, Some(rp("1")));
        let r3 = ring(3, &["x"]);
        let b = fpt_bounds(&Ideal::parse("x^2", &r3).unwrap(), 1).unwrap();
        assert_eq!(b.interval(), "(1/3, 2/3]");
        let b = fpt_bounds(&Ideal::parse("x,y", &r).unwrap(), 2).unwrap();
        assert_eq!(b.nu_values, vec![(1, 2), (2, 6)]);
        assert_eq!(b.lower, rp("3/2"));
        assert_eq!(b.upper, None);
    }

    #[test]
    fn test_ideal_examples() {
        let r3 = ring(3, &["x"]);
        let x = Ideal::parse("x", &r3).unwrap();
        assert!(test_ideal(&x, &rp("1/2"), 1).unwrap().ideal.is_unit());
        assert!(test_ideal(&x, &rp("1"), 2).unwrap().ideal.equals(&x).unwrap());
        let r2 = ring(2, &["x", "y"]);
        let m = Ideal::parse("x,y", &r2).unwrap();
        let tau = test_ideal(&m, &rp("2"), 2).unwrap();
        assert!(tau.ideal.equals(&m).unwrap());
        assert!(tau.stabilized);
        assert_eq!(tau.per_level.len(), 3);
    }

    #[test]
    fn f_purity_examples() {
        let r2 = ring(2, &["x", "y"]);
        assert!(is_f_pure_level(&Ideal::parse("x,y", &r2).unwrap(), &rp("2"), lvl(2, 1)).unwrap());
        assert!(is_f_pure_level(&Ideal::parse("x", &r2).unwrap(), &rp("1"), lvl(2, 1)).unwrap());
        let r3 = ring(3, &["x"]);
        assert!(!is_f_pure_level(&Ideal::parse("x^2", &r3).unwrap(), &rp("1"), lvl(3, 1)).unwrap());
    }

    #[test]
    fn strong_regularity_examples() {
        let r3 = ring(3, &["x"]);
        let x = Ideal::parse("x", &r3).unwrap();
        assert_eq!(is_strongly_f_regular_level(&x, &rp("1/2"), 1).unwrap(), Regularity::Yes);
        assert_eq!(is_strongly_f_regular_level(&x, &rp("1"), 3).unwrap(), Regularity::Inconclusive);
        let r2 = ring(2, &["x", "y"]);
        let m = Ideal::parse("x,y", &r2).unwrap();
        assert_eq!(is_strongly_f_regular_level(&m, &rp("1"), 1).unwrap(), Regularity::Yes);
    }

    #[test]
    fn inclusion_report_examples() {
        let r2 = ring(2, &["x", "y"]);
        let rep = verify_ein(&Ideal::parse("x,y", &r2).unwrap(), 2, &rp("2"), 2).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.get_value("tau"), Some("(x, y)"));
        let r3 = ring(3, &["x"]);
        let rep = verify_ein(&Ideal::parse("x", &r3).unwrap(), 1, &rp("1"), 2).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.get_value("tau"), Some("(x)"));
        let r = ring(2, &["x", "y", "z"]);
        let i = Ideal::parse("x, y*z", &r).unwrap();
        assert_eq!(i.dimension_height().unwrap().1, 2);
        let rep = verify_ein(&i, 2, &rp("2"), 2).unwrap();
        assert_eq!(rep.get("tau_c_in_I").unwrap().status, Status::Pass);
        assert!(!rep.failed());
    }

    #[test]
    fn reduction_of_square() {
        let r = ring(2, &["x", "y"]);
        let i = Ideal::parse("x^2, x*y, y^2", &r).unwrap();
        let red = Ideal::parse("x^2, y^2", &r).unwrap();
        let rep = reduction_evidence(&i, &red, &rp("1"), 2).unwrap();
        assert_eq!(rep.checks.len(), 3);
        assert!(rep.checks.iter().all(|c| c.status == Status::Evidence));
        assert!(reduction_evidence(&red, &i, &rp("1"), 1).is_err());
    }
}
