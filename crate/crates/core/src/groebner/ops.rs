//! Elimination-based ideal operations and the free-function surface.

use std::collections::HashSet;

use super::buchberger::Reducer;
use super::ideal::{GroebnerBasis, Ideal};
use crate::error::{Error, Result};
use crate::ring::{Monomial, MonomialOrder, Polynomial, RingContext};

/// A variable name not used by `ring`.
fn fresh_name(ring: &RingContext, stem: &str) -> String {
    if ring.var_index(stem).is_none() {
        return stem.to_string();
    }
    (1..).map(|k| format!("{stem}{k}")).find(|n| ring.var_index(n).is_none()).unwrap()
}

/// `ring` with one tag variable prepended, under an order eliminating it.
fn tagged_ring(ring: &RingContext) -> Result<(RingContext, usize)> {
    let tag = fresh_name(ring, "w");
    let mut vars = vec![tag];
    vars.extend(ring.vars().iter().cloned());
    let order = match ring.order() {
        MonomialOrder::Lex => MonomialOrder::Lex,
        MonomialOrder::Grevlex => MonomialOrder::Elimination { block: 1 },
        MonomialOrder::Elimination { block } => MonomialOrder::Elimination { block: block + 1 },
    };
    Ok((RingContext::new(ring.characteristic() as u64, &vars, order)?, 0))
}

/// Exact quotient `h / f`; fails if `f` does not divide `h`.
fn div_exact(h: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    let (q, r) = Reducer::new(std::iter::once(f)).divide(h);
    if !r.is_zero() {
        return Err(Error::invalid(format!("{f} does not divide {h}")));
    }
    Ok(q.into_iter().next().expect("one divisor"))
}

impl Ideal {
    /// `I ∩ J` by eliminating `w` from `w·I + (1 − w)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other.ring())?;
        let ring = self.ring();
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        if self.is_monomial() && other.is_monomial() {
            return Ok(monomial_intersection(self, other));
        }
        let (t, tag) = tagged_ring(ring)?;
        let into: Vec<Option<usize>> = (0..ring.nvars()).map(|i| Some(i + 1)).collect();
        let w = Polynomial::var(&t, tag);
        let one_minus_w = &Polynomial::one(&t) - &w;
        let mut gens = Vec::new();
        for f in self.generators() {
            gens.push(&f.map_vars(&t, &into)? * &w);
        }
        for g in other.generators() {
            gens.push(&g.map_vars(&t, &into)? * &one_minus_w);
        }
        let big = Ideal::new(&t, gens)?;
        let back: Vec<Option<usize>> = (0..t.nvars()).map(|i| i.checked_sub(1)).collect();
        let kept = big
            .basis()
            .iter()
            .filter(|f| f.terms().iter().all(|(m, _)| m.exps()[tag] == 0))
            .map(|f| f.map_vars(ring, &back))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, kept)
    }

    /// `I : (f)`, computed as `(I ∩ (f)) / f`.
    pub fn colon_poly(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_ring(f.ring())?;
        if f.is_zero() {
            return Err(Error::invalid("colon by the zero ideal"));
        }
        if self.contains(f)? {
            return Ok(Ideal::unit(self.ring()));
        }
        let inter = self.intersect(&Ideal::principal(f.clone()))?;
        let gens = inter.generators().iter().map(|h| div_exact(h, f)).collect::<Result<Vec<_>>>()?;
        Ideal::new(self.ring(), gens)
    }

    /// `I : J = ∩_j (I : f_j)`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other.ring())?;
        if other.is_zero() {
            return Err(Error::invalid("colon by the zero ideal"));
        }
        let mut acc: Option<Ideal> = None;
        for f in other.generators() {
            let part = self.colon_poly(f)?;
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect(&part)?,
            });
        }
        Ok(acc.expect("nonzero ideal has generators"))
    }

    /// `I^n` with the default generator ceiling.
    pub fn power(&self, n: u64) -> Result<Ideal> {
        self.power_with_ceiling(n, super::generator_ceiling())
    }

    /// `I^n` generated by all degree-`n` products of generators. Monomial
    /// products divisible by another product are dropped. Fails once more
    /// than `ceiling` generators would be needed.
    pub fn power_with_ceiling(&self, n: u64, ceiling: usize) -> Result<Ideal> {
        let ring = self.ring();
        if n == 0 {
            return Ok(Ideal::unit(ring));
        }
        if self.is_zero() {
            return Ok(Ideal::zero(ring));
        }
        let gens = if self.is_monomial() { minimal_monomials(self.generators()) } else { self.generators().to_vec() };
        if gens.iter().any(|f| f.is_constant()) {
            return Ok(Ideal::unit(ring));
        }
        if gens.len() == 1 {
            return Ideal::new(ring, vec![gens[0].try_pow(n)?]);
        }
        let count = multiset_count(gens.len() as u64, n);
        let monomial = self.is_monomial();
        if !monomial && count.is_none_or(|c| c > ceiling as u64) {
            return Err(Error::GeneratorCeiling { context: format!("power {n} of a {}-generated ideal", gens.len()), ceiling });
        }
        let mut current: Vec<Polynomial> = gens.clone();
        // Products are built as multisets of generator indices so no product is formed twice.
        let mut last_index: Vec<usize> = (0..gens.len()).collect();
        for step in 2..=n {
            let mut next = Vec::new();
            let mut next_index = Vec::new();
            for (h, &li) in current.iter().zip(last_index.iter()) {
                for (k, f) in gens.iter().enumerate().skip(li) {
                    next.push(h.try_mul(f)?);
                    next_index.push(k);
                }
            }
            if monomial {
                let (pruned, idx) = prune_monomials(next, next_index);
                next = pruned;
                next_index = idx;
            }
            if next.len() > ceiling {
                return Err(Error::GeneratorCeiling {
                    context: format!("power {step} (of {n}) of a {}-generated ideal", gens.len()),
                    ceiling,
                });
            }
            current = next;
            last_index = next_index;
        }
        Ideal::new(ring, current)
    }

    /// `I^{[p^e]}`.
    pub fn bracket_power(&self, e: u32) -> Result<Ideal> {
        let gens = self.generators().iter().map(|f| f.frobenius_power(e)).collect::<Result<Vec<_>>>()?;
        Ideal::new(self.ring(), gens)
    }

    /// Krull dimension of `R/I` and `n − dim`.
    pub fn dimension_height(&self) -> Result<(usize, usize)> {
        let n = self.ring().nvars();
        if self.is_zero() {
            return Ok((n, 0));
        }
        if self.is_unit() {
            return Err(Error::invalid("dimension of the unit ideal is undefined"));
        }
        if n > 24 {
            return Err(Error::invalid("dimension search supports at most 24 variables"));
        }
        let masks: Vec<u64> =
            self.basis().iter().map(|f| f.leading_monomial().unwrap().support_mask()).collect();
        let dim = max_independent_set(n, &masks);
        Ok((dim, n - dim))
    }

    /// Same generators in `R[new_vars]`.
    pub fn extend_ring<S: AsRef<str>>(&self, new_vars: &[S]) -> Result<Ideal> {
        let target = self.ring().extend(new_vars)?;
        self.to_ring(&target)
    }
}

/// Largest set of variables containing the support of no leading monomial.
pub(crate) fn max_independent_set(n: usize, lead_masks: &[u64]) -> usize {
    let mut best = 0;
    for u in 0u64..(1u64 << n) {
        let size = u.count_ones() as usize;
        if size <= best {
            continue;
        }
        if lead_masks.iter().all(|m| m & !u != 0) {
            best = size;
        }
    }
    best
}

fn multiset_count(kinds: u64, size: u64) -> Option<u64> {
    // C(size + kinds - 1, kinds - 1)
    let k = kinds - 1;
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (size as u128 + i) / i;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

fn minimal_monomials(gens: &[Polynomial]) -> Vec<Polynomial> {
    let (kept, _) = prune_monomials(gens.to_vec(), vec![0; gens.len()]);
    kept
}

/// Drops monomials divisible by another (earlier-kept) one, keeping the
/// companion index of each survivor.
fn prune_monomials(mut polys: Vec<Polynomial>, idx: Vec<usize>) -> (Vec<Polynomial>, Vec<usize>) {
    let mut order: Vec<usize> = (0..polys.len()).collect();
    order.sort_by_key(|&i| polys[i].leading_monomial().unwrap().degree());
    let mut kept: Vec<usize> = Vec::new();
    let mut seen: HashSet<Monomial> = HashSet::new();
    for i in order {
        let m = polys[i].leading_monomial().unwrap();
        if seen.contains(m) {
            continue;
        }
        if kept.iter().any(|&k| polys[k].leading_monomial().unwrap().divides(m)) {
            continue;
        }
        seen.insert(m.clone());
        kept.push(i);
    }
    kept.sort_unstable();
    let out_idx = kept.iter().map(|&i| idx[i]).collect();
    let mut taken: Vec<Option<Polynomial>> = polys.drain(..).map(Some).collect();
    let out = kept.iter().map(|&i| taken[i].take().unwrap().monic()).collect();
    (out, out_idx)
}

fn monomial_intersection(a: &Ideal, b: &Ideal) -> Ideal {
    let ring = a.ring();
    let mut gens = Vec::new();
    for f in a.generators() {
        for g in b.generators() {
            let l = f.leading_monomial().unwrap().lcm(g.leading_monomial().unwrap());
            gens.push(Polynomial::monomial(ring, l, 1));
        }
    }
    Ideal::new(ring, minimal_monomials(&gens)).expect("same ring")
}

/// Reduced Gröbner basis of `I` for its ring's order.
pub fn reduced_groebner(i: &Ideal) -> GroebnerBasis {
    i.groebner().clone()
}

pub fn normal_form(f: &Polynomial, i: &Ideal) -> Result<Polynomial> {
    i.normal_form(f)
}

pub fn contains(i: &Ideal, f: &Polynomial) -> Result<bool> {
    i.contains(f)
}

pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    i.equals(j)
}

pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.intersect(j)
}

pub fn colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.colon(j)
}

pub fn ideal_power(i: &Ideal, n: u64) -> Result<Ideal> {
    i.power(n)
}

pub fn bracket_power(i: &Ideal, e: u32) -> Result<Ideal> {
    i.bracket_power(e)
}

pub fn dimension_height(i: &Ideal) -> Result<(usize, usize)> {
    i.dimension_height()
}

pub fn extend_ring<S: AsRef<str>>(i: &Ideal, new_vars: &[S]) -> Result<Ideal> {
    i.extend_ring(new_vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, vars: &[&str]) -> RingContext {
        RingContext::grevlex(p, vars).unwrap()
    }

    fn id(text: &str, r: &RingContext) -> Ideal {
        Ideal::parse(text, r).unwrap()
    }

    #[test]
    fn groebner_examples() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(id("x", &r).reduced_string(), "(x)");
        let lex = RingContext::new(3, &["x", "y"], MonomialOrder::Lex).unwrap();
        assert_eq!(id("x-y, y^2", &lex).reduced_string(), "(x + 2*y, y^2)");
        let gb = reduced_groebner(&id("x^2, x*y+y^2", &r));
        let y3 = Polynomial::monomial(&r, Monomial::new(vec![0, 3]).unwrap(), 1);
        assert!(gb.elements().contains(&y3));
        assert!(gb.satisfies_buchberger_criterion());
        assert!(reduced_groebner(&Ideal::zero(&r)).is_empty());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(2, &["x", "y"]);
        let x2 = crate::ring::parse_poly("x^2", &r).unwrap();
        assert!(normal_form(&x2, &id("x", &r)).unwrap().is_zero());
        let lex = RingContext::new(3, &["x", "y"], MonomialOrder::Lex).unwrap();
        let f = crate::ring::parse_poly("x+y", &lex).unwrap();
        assert_eq!(normal_form(&f, &id("x-y", &lex)).unwrap().to_string(), "2*y");
        let one = Polynomial::one(&r);
        assert!(normal_form(&one, &id("x,y", &r)).unwrap().is_one());
    }

    #[test]
    fn containment_examples() {
        let r = ring(3, &["x", "y"]);
        let p = |s: &str| crate::ring::parse_poly(s, &r).unwrap();
        assert!(contains(&id("x^2, y", &r), &p("x^2+y")).unwrap());
        assert!(!contains(&id("x^2, y", &r), &p("x")).unwrap());
        assert!(contains(&id("x+y, y", &r), &p("x")).unwrap());
    }

    #[test]
    fn equality_examples() {
        let r = ring(2, &["x", "y"]);
        assert!(ideal_equal(&id("x, y", &r), &id("x+y, y", &r)).unwrap());
        assert!(!ideal_equal(&id("x", &r), &id("x^2", &r)).unwrap());
        assert!(ideal_equal(&Ideal::zero(&r), &Ideal::zero(&r)).unwrap());
        let other = ring(3, &["x", "y"]);
        assert_eq!(ideal_equal(&id("x", &r), &id("x", &other)).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn intersection_examples() {
        let r = ring(2, &["x", "y"]);
        assert!(intersect(&id("x", &r), &id("y", &r)).unwrap().equals(&id("x*y", &r)).unwrap());
        assert!(intersect(&id("x", &r), &id("x", &r)).unwrap().equals(&id("x", &r)).unwrap());
        assert!(intersect(&id("x,y", &r), &id("x^2,y", &r)).unwrap().equals(&id("x^2,y", &r)).unwrap());
        // Non-monomial route.
        let got = intersect(&id("x+y", &r), &id("x", &r)).unwrap();
        assert!(got.equals(&id("x^2+x*y", &r)).unwrap());
    }

    #[test]
    fn colon_examples() {
        let r = ring(2, &["x", "y"]);
        assert!(colon(&id("x^2", &r), &id("x", &r)).unwrap().equals(&id("x", &r)).unwrap());
        assert!(colon(&id("x*y", &r), &id("x", &r)).unwrap().equals(&id("y", &r)).unwrap());
        assert!(colon(&id("x", &r), &Ideal::zero(&r)).is_err());
        let s = ring(2, &["x", "y", "u11", "u12", "u21", "u22"]);
        let got = colon(&id("u11*x+u12*y, u21*x+u22*y", &s), &id("x, y", &s)).unwrap();
        let want = id("u11*x+u12*y, u21*x+u22*y, u11*u22+u12*u21", &s);
        assert!(got.equals(&want).unwrap());
    }

    #[test]
    fn power_examples() {
        let r = ring(2, &["x", "y"]);
        assert!(ideal_power(&id("x,y", &r), 2).unwrap().equals(&id("x^2, x*y, y^2", &r)).unwrap());
        assert!(ideal_power(&id("x,y", &r), 0).unwrap().is_unit());
        let cube = ideal_power(&id("x,y", &r), 3).unwrap();
        assert_eq!(cube.generators().len(), 4);
        assert!(cube.equals(&id("x^3, x^2*y, x*y^2, y^3", &r)).unwrap());
        assert!(matches!(
            id("x+y, x+1, y+1", &r).power_with_ceiling(10, 20),
            Err(Error::GeneratorCeiling { .. })
        ));
    }

    #[test]
    fn bracket_power_examples() {
        let r2 = ring(2, &["x", "y"]);
        assert!(bracket_power(&id("x,y", &r2), 1).unwrap().equals(&id("x^2, y^2", &r2)).unwrap());
        assert!(bracket_power(&id("x+y", &r2), 1).unwrap().equals(&id("x^2+y^2", &r2)).unwrap());
        let r3 = ring(3, &["x", "y"]);
        assert!(bracket_power(&id("x, y^2", &r3), 1).unwrap().equals(&id("x^3, y^6", &r3)).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(dimension_height(&id("x", &r)).unwrap(), (1, 1));
        assert_eq!(dimension_height(&id("x,y", &r)).unwrap(), (0, 2));
        assert_eq!(dimension_height(&id("x*y", &ring(3, &["x", "y"]))).unwrap(), (1, 1));
        assert!(dimension_height(&id("1", &r)).is_err());
    }

    #[test]
    fn extension_examples() {
        let r = ring(2, &["x"]);
        let big = extend_ring(&id("x", &r), &["u"]).unwrap();
        assert_eq!(big.ring().vars(), &["x", "u"]);
        assert_eq!(big.reduced_string(), "(x)");
        assert!(extend_ring(&Ideal::zero(&r), &["u"]).unwrap().is_zero());
        assert!(extend_ring(&id("x", &r), &["x"]).is_err());
        let r2 = ring(2, &["x", "y"]);
        let y = crate::ring::parse_poly("y", &r2).unwrap();
        let i = id("x,y", &r2);
        assert!(i.contains(&y).unwrap());
        let ext = i.extend_ring(&["u"]).unwrap();
        assert!(ext.contains(&y.to_ring(ext.ring()).unwrap()).unwrap());
    }
}
