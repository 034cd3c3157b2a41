//! Parameter test submodule of `S/J` and its comparison with `τ(I^c)`.

use rayon::prelude::*;

use super::{Assumptions, GenericLink, LinkReport};
use crate::error::{Error, Result};
use crate::frobenius::{pe_root, FrobeniusLevel};
use crate::fsing::test_ideal;
use crate::groebner::Ideal;
use crate::report::{Check, Report, Status};
use crate::ring::{Polynomial, RationalParam};

/// Default exponent `N` of the test element `f_k^N`: `n(p^{e_max} - 1) + 1`.
pub fn default_test_power(link: &GenericLink, e_max: u32) -> Result<u64> {
    let q = FrobeniusLevel::for_ring(&link.base, e_max)?.q() as u64;
    Ok(link.base.nvars() as u64 * (q - 1) + 1)
}

fn check_k(link: &GenericLink, k: usize) -> Result<()> {
    let top = link.c.min(link.r());
    if k == 0 || k > top {
        return Err(Error::invalid(format!("k must lie in 1..={top} (got {k})")));
    }
    Ok(())
}

fn g_product(link: &GenericLink) -> Result<Polynomial> {
    let mut acc = Polynomial::one(&link.ext);
    for g in &link.g {
        acc = acc.try_mul(g)?;
    }
    Ok(acc)
}

/// `f_k^N · IS`.
fn seed(link: &GenericLink, k: usize, n_pow: u64) -> Result<Ideal> {
    link.extended_ideal().scale(&link.f_ext(k).try_pow(n_pow)?)
}

/// `Σ_{e=0}^{e_max} ((g_1⋯g_c)^{q-1} f_k^N IS)^{[1/q]}`.
pub fn param_test_submodule(link: &GenericLink, k: usize, n_pow: u64, e_max: u32) -> Result<Ideal> {
    check_k(link, k)?;
    let base = seed(link, k, n_pow)?;
    let g = g_product(link)?;
    let parts: Vec<Ideal> = (0..=e_max)
        .into_par_iter()
        .map(|e| {
            let level = FrobeniusLevel::for_ring(&link.ext, e)?;
            let h = g.try_pow(level.q() as u64 - 1)?;
            pe_root(&base.scale(&h)?, level)
        })
        .collect::<Result<_>>()?;
    let mut sum = parts[0].clone();
    for p in &parts[1..] {
        sum = sum.sum(p)?;
    }
    Ok(sum.minimalized())
}

/// One application of the level-one trace twisted by `(g_1⋯g_c)^{p-1}`.
fn phi(link: &GenericLink, g_twist: &Polynomial, k_ideal: &Ideal) -> Result<Ideal> {
    let level = FrobeniusLevel::for_ring(&link.ext, 1)?;
    pe_root(&k_ideal.minimalized().scale(g_twist)?, level)
}

/// `K_0 + Φ(K_0) + ... + Φ^steps(K_0)` computed by iterating `Φ`.
#[cfg(test)]
fn phi_iterates(link: &GenericLink, start: Ideal, steps: usize) -> Result<Ideal> {
    let twist = g_product(link)?.try_pow(link.ext.characteristic() as u64 - 1)?;
    let mut k = start;
    for _ in 0..steps {
        k = k.sum(&phi(link, &twist, &k)?)?.minimalized();
    }
    Ok(k)
}

/// Fixed point of `K ↦ K + Φ(K)` from `K_0 = f_k^N IS + (g)`.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub ideal: Ideal,
    /// Applications of `Φ` until the chain stopped growing.
    pub iterations: usize,
}

/// Iterates the twisted level-one trace until the ascending chain stabilizes.
/// The fixed point is the untruncated sum over all levels.
pub fn param_test_closure(link: &GenericLink, k: usize, n_pow: u64, max_iter: usize) -> Result<ClosureResult> {
    check_k(link, k)?;
    let twist = g_product(link)?.try_pow(link.ext.characteristic() as u64 - 1)?;
    let mut cur = seed(link, k, n_pow)?.sum(&link.g_ideal())?.minimalized();
    for it in 1..=max_iter {
        let next = cur.sum(&phi(link, &twist, &cur)?)?.minimalized();
        if next.equals(&cur)? {
            return Ok(ClosureResult { ideal: cur, iterations: it - 1 });
        }
        cur = next;
    }
    Err(Error::IterationCeiling(format!("trace closure did not stabilize within {max_iter} steps")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompareOptions {
    /// Index of `f_k` in the test element, 1-based.
    pub k: usize,
    /// Exponent `N`; `None` selects [`default_test_power`].
    pub n_pow: Option<u64>,
    pub max_iter: usize,
    pub assumptions: Assumptions,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions { k: 1, n_pow: None, max_iter: 64, assumptions: Assumptions::default() }
    }
}

fn witness(a: &Ideal, b: &Ideal) -> Result<Option<String>> {
    Ok(a.first_outside(b)?.map(|w| w.to_string()))
}

/// Compares the parameter test submodule `τ(ω_{S/J})` with `τ(I^c)·(S/J)`.
///
/// Checks, in order: truncated LHS ⊆ truncated RHS; truncated RHS ⊆ closure
/// LHS; closure LHS = truncated RHS; closure stable under `N → 2N`; closure
/// independent of `k`.
pub fn theorem33_compare(link: &GenericLink, e_max: u32, opts: &CompareOptions) -> Result<LinkReport> {
    check_k(link, opts.k)?;
    let c = link.c;
    let n_pow = match opts.n_pow {
        Some(n) => n,
        None => default_test_power(link, e_max)?,
    };
    if n_pow + 1 < c as u64 {
        return Err(Error::invalid(format!("N must be at least c - 1 = {}", c - 1)));
    }
    let reduction = opts.assumptions.reduction_size.unwrap_or(link.r());

    let mut rep = Report::new("thm33");
    opts.assumptions.banner(&mut rep);
    rep.value("c", c);
    rep.value("r", link.r());
    rep.value("k", opts.k);
    rep.value("N", n_pow);
    rep.value("emax", e_max);

    let j = &link.j;
    let tau = test_ideal(&link.base_ideal(), &RationalParam::integer(c as u64), e_max)?;
    let rhs = tau.ideal.to_ring(&link.ext)?.sum(j)?.minimalized();
    let lhs_trunc = param_test_submodule(link, opts.k, n_pow, e_max)?.sum(j)?.minimalized();

    let top = c.min(link.r());
    let mut jobs: Vec<(usize, u64)> = vec![(opts.k, n_pow), (opts.k, 2 * n_pow)];
    jobs.extend((1..=top).filter(|&kk| kk != opts.k).map(|kk| (kk, n_pow)));
    let closures: Vec<(Ideal, usize)> = jobs
        .par_iter()
        .map(|&(kk, nn)| {
            let cl = param_test_closure(link, kk, nn, opts.max_iter)?;
            Ok((cl.ideal.sum(j)?.minimalized(), cl.iterations))
        })
        .collect::<Result<_>>()?;
    let lhs = &closures[0].0;

    rep.value("tau", tau.ideal.reduced_string());
    rep.value("rhs", rhs.reduced_string());
    rep.value("lhs", lhs.reduced_string());
    rep.value("lhs_truncated", lhs_trunc.reduced_string());
    rep.value("closure_iterations", closures[0].1);

    let name = "lhs_in_rhs";
    rep.push(match witness(&rhs, &lhs_trunc)? {
        None => Check::new(name, Status::Pass).level(e_max),
        Some(w) => Check::new(name, Status::Fail).level(e_max).witness(w),
    });

    let name = "rhs_in_lhs";
    let in_hyp = reduction <= c + 1;
    rep.push(match witness(lhs, &rhs)? {
        None => Check::new(name, Status::Pass).level(e_max),
        Some(w) if in_hyp => Check::new(name, Status::Fail).level(e_max).witness(w),
        Some(w) => Check::new(name, Status::Evidence)
            .level(e_max)
            .detail(format!("reduction size {reduction} exceeds c+1 = {}", c + 1))
            .witness(w),
    });

    let name = "equality";
    rep.push(if lhs.equals(&rhs)? {
        Check::new(name, Status::Pass).level(e_max)
    } else {
        let w = witness(&rhs, lhs)?.or(witness(lhs, &rhs)?).unwrap_or_default();
        Check::new(name, Status::Evidence).level(e_max).detail("rerun with larger e_max").witness(w)
    });

    let name = "n_doubling";
    let doubled = &closures[1].0;
    rep.push(if doubled.equals(lhs)? {
        Check::new(name, Status::Pass).detail(format!("N = {n_pow} and {}", 2 * n_pow))
    } else {
        let w = witness(doubled, lhs)?.unwrap_or_default();
        Check::new(name, Status::Fail).detail(format!("N = {n_pow} and {}", 2 * n_pow)).witness(w)
    });

    let name = "k_independence";
    let mut check = Check::new(name, Status::Pass).detail(format!("k in 1..={top}"));
    for ((kk, _), (other, _)) in jobs.iter().zip(&closures).skip(2) {
        if !other.equals(lhs)? {
            let w = witness(other, lhs)?.or(witness(lhs, other)?).unwrap_or_default();
            check = Check::new(name, Status::Fail).detail(format!("k = {kk} differs")).witness(w);
            break;
        }
    }
    rep.push(check);
    Ok(rep)
}

/// The test-ideal half of the F-rationality criterion: `τ(I^c) = I`.
pub fn f_rational_criterion(i: &Ideal, e_max: u32, assumptions: &Assumptions) -> Result<LinkReport> {
    if !assumptions.unmixed {
        return Err(Error::invalid("hypothesis not asserted: unmixed"));
    }
    if !assumptions.reduced {
        return Err(Error::invalid("hypothesis not asserted: reduced"));
    }
    if i.is_zero() || i.is_unit() {
        return Err(Error::invalid("ideal must be nonzero and proper"));
    }
    let (_, c) = i.dimension_height()?;
    let reduction = assumptions.reduction_size.unwrap_or(i.generators().len());
    if reduction > c + 1 {
        return Err(Error::invalid(format!(
            "needs a reduction with at most c+1 = {} generators (declared {reduction})",
            c + 1
        )));
    }
    let mut rep = Report::new("frational");
    assumptions.banner(&mut rep);
    rep.assume("S/J Cohen-Macaulay: not checked");
    let tau = test_ideal(i, &RationalParam::integer(c as u64), e_max)?;
    rep.value("c", c);
    rep.value("emax", e_max);
    rep.value("tau", tau.ideal.reduced_string());
    let name = "tau_c_in_I";
    rep.push(match witness(i, &tau.ideal)? {
        None => Check::new(name, Status::Pass).level(e_max),
        Some(w) => Check::new(name, Status::Fail).level(e_max).witness(w),
    });
    let equal = tau.ideal.equals(i)?;
    rep.value("criterion", if equal { "satisfied" } else { "not certified" });
    let name = "tau_c_equals_I";
    rep.push(if equal {
        Check::new(name, Status::Pass).level(e_max)
    } else {
        let w = witness(&tau.ideal, i)?.unwrap_or_default();
        Check::new(name, Status::Evidence).level(e_max).detail("rerun with larger e_max").witness(w)
    });
    Ok(rep)
}
