//! Trace of Frobenius and `p^e`-th roots of ideals.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ring::{Monomial, Polynomial, RingContext};

/// A Frobenius level `e` together with `q = p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FrobeniusLevel {
    p: u32,
    e: u32,
    q: u32,
}

impl FrobeniusLevel {
    /// Level `e` over characteristic `p`. Level 0 is the identity (`q = 1`).
    pub fn new(p: u32, e: u32) -> Result<Self> {
        let q = p.checked_pow(e).ok_or(Error::LevelTooLarge { p, e })?;
        Ok(FrobeniusLevel { p, e, q })
    }

    pub fn for_ring(ring: &RingContext, e: u32) -> Result<Self> {
        Self::new(ring.characteristic(), e)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    fn check(&self, ring: &RingContext) -> Result<()> {
        if ring.characteristic() != self.p {
            return Err(Error::invalid(format!(
                "Frobenius level over p={} used in characteristic {}",
                self.p,
                ring.characteristic()
            )));
        }
        Ok(())
    }
}

/// `Tr^e(f)`: each monomial `x^i` goes to `x^{(i-(q-1))/q}` when every entry
/// is integral and to 0 otherwise; extended linearly.
pub fn trace(f: &Polynomial, level: FrobeniusLevel) -> Result<Polynomial> {
    level.check(f.ring())?;
    let q = level.q;
    let terms = f.terms().iter().filter_map(|(m, c)| {
        let mut out = Vec::with_capacity(m.nvars());
        for &i in m.exps() {
            if i < q - 1 || !(i - (q - 1)).is_multiple_of(q) {
                return None;
            }
            out.push((i - (q - 1)) / q);
        }
        Some((Monomial::new(out).expect("exponents shrink"), *c))
    });
    Ok(Polynomial::from_terms(f.ring(), terms.collect::<Vec<_>>()))
}

/// The components `g_a` of `h = Σ_a g_a^q x^a`, one per residue class `a`.
pub fn root_components(h: &Polynomial, level: FrobeniusLevel) -> Result<Vec<Polynomial>> {
    level.check(h.ring())?;
    let q = level.q;
    let ring = h.ring();
    let mut classes: BTreeMap<Vec<u32>, Vec<(Monomial, u32)>> = BTreeMap::new();
    for (m, c) in h.terms() {
        let residue: Vec<u32> = m.exps().iter().map(|&i| i % q).collect();
        let quotient = Monomial::new(m.exps().iter().map(|&i| i / q).collect()).expect("exponents shrink");
        classes.entry(residue).or_default().push((quotient, *c));
    }
    Ok(classes.into_values().map(|t| Polynomial::from_terms(ring, t)).collect())
}

/// `I^{[1/q]}`: the smallest ideal `K` with `I ⊆ K^{[q]}`.
pub fn pe_root(i: &Ideal, level: FrobeniusLevel) -> Result<Ideal> {
    level.check(i.ring())?;
    if level.e == 0 {
        return Ok(i.clone());
    }
    let parts: Vec<Vec<Polynomial>> =
        i.generators().par_iter().map(|h| root_components(h, level)).collect::<Result<_>>()?;
    let mut gens: Vec<Polynomial> = parts.into_iter().flatten().map(|g| g.monic()).collect();
    sort_polys(&mut gens);
    gens.dedup();
    Ideal::new(i.ring(), gens)
}

/// Sorts by descending leading terms, then by length; a total deterministic order.
pub(crate) fn sort_polys(polys: &mut [Polynomial]) {
    polys.sort_by(|a, b| cmp_polys(b, a));
}

fn cmp_polys(a: &Polynomial, b: &Polynomial) -> Ordering {
    let order = a.ring().order();
    for (x, y) in a.terms().iter().zip(b.terms()) {
        let c = order.cmp(&x.0, &y.0).then(x.1.cmp(&y.1));
        if c != Ordering::Equal {
            return c;
        }
    }
    a.len().cmp(&b.len())
}
