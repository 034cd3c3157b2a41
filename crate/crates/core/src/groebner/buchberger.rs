//! Buchberger's algorithm with the normal selection strategy.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::ring::{Monomial, Polynomial, RingContext};

/// Leading-monomial data cached for fast divisor lookup.
#[derive(Clone)]
struct Lead {
    mono: Monomial,
    mask: u64,
}

impl Lead {
    fn of(f: &Polynomial) -> Lead {
        let mono = f.leading_monomial().expect("nonzero").clone();
        Lead { mask: mono.support_mask(), mono }
    }

    #[inline]
    fn divides(&self, m: &Monomial, mask: u64) -> bool {
        self.mask & !mask == 0 && self.mono.divides(m)
    }
}

/// Divisors available for reduction: monic polynomials plus their leads.
pub(crate) struct Reducer<'a> {
    polys: Vec<&'a Polynomial>,
    leads: Vec<Lead>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new<I: IntoIterator<Item = &'a Polynomial>>(polys: I) -> Self {
        let polys: Vec<&Polynomial> = polys.into_iter().filter(|f| !f.is_zero()).collect();
        let leads = polys.iter().map(|f| Lead::of(f)).collect();
        Reducer { polys, leads }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        self.leads.iter().position(|l| l.divides(m, mask))
    }

    /// Full reduction: no term of the result is divisible by a leading monomial.
    pub(crate) fn reduce(&self, f: &Polynomial) -> Polynomial {
        let ring = f.ring().clone();
        let field = ring.field();
        let order = ring.order();
        let mut rem: Vec<(Monomial, u32)> = Vec::new();
        let mut p: Vec<(Monomial, u32)> = f.terms().to_vec();
        let mut start = 0;
        while start < p.len() {
            let (m, c) = &p[start];
            match self.find(m) {
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
                Some(k) => {
                    let g = self.polys[k];
                    let lc_inv = field.inv(g.leading_coeff());
                    let factor = field.neg(field.mul(*c, lc_inv));
                    let shift = self.leads[k].mono.quotient_of(m);
                    p = merge_scaled(&p[start..], g, &shift, factor, &ring);
                    start = 0;
                }
            }
        }
        debug_assert!(rem.windows(2).all(|w| order.cmp(&w[0].0, &w[1].0).is_gt()));
        Polynomial::from_sorted_unchecked(&ring, rem)
    }

    /// Quotients and remainder of `f` divided by the (ordered) divisor list.
    pub(crate) fn divide(&self, f: &Polynomial) -> (Vec<Polynomial>, Polynomial) {
        let ring = f.ring().clone();
        let field = ring.field();
        let mut quots: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); self.polys.len()];
        let mut rem: Vec<(Monomial, u32)> = Vec::new();
        let mut p: Vec<(Monomial, u32)> = f.terms().to_vec();
        let mut start = 0;
        while start < p.len() {
            let (m, c) = &p[start];
            match self.find(m) {
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
                Some(k) => {
                    let g = self.polys[k];
                    let q = field.mul(*c, field.inv(g.leading_coeff()));
                    let shift = self.leads[k].mono.quotient_of(m);
                    quots[k].push((shift.clone(), q));
                    p = merge_scaled(&p[start..], g, &shift, field.neg(q), &ring);
                    start = 0;
                }
            }
        }
        let quots = quots.into_iter().map(|t| Polynomial::from_terms(&ring, t)).collect();
        (quots, Polynomial::from_sorted_unchecked(&ring, rem))
    }
}

/// `p + factor * shift * g`, with `p` and `g` sorted descending.
fn merge_scaled(
    p: &[(Monomial, u32)],
    g: &Polynomial,
    shift: &Monomial,
    factor: u32,
    ring: &RingContext,
) -> Vec<(Monomial, u32)> {
    let field = ring.field();
    let order = ring.order();
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut gi = g.terms().iter().map(|(m, c)| (m.mul(shift), field.mul(*c, factor))).peekable();
    let mut pi = p.iter().peekable();
    loop {
        match (pi.peek(), gi.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(pi.next().unwrap().clone()),
            (None, Some(_)) => out.push(gi.next().unwrap()),
            (Some((a, ca)), Some((b, cb))) => match order.cmp(a, b) {
                std::cmp::Ordering::Greater => out.push(pi.next().unwrap().clone()),
                std::cmp::Ordering::Less => out.push(gi.next().unwrap()),
                std::cmp::Ordering::Equal => {
                    let c = field.add(*ca, *cb);
                    if c != 0 {
                        out.push((a.clone(), c));
                    }
                    pi.next();
                    gi.next();
                }
            },
        }
    }
    out
}

/// S-polynomial of two nonzero polynomials.
pub(crate) fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.ring().field();
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l), field.inv(*cf));
    let b = g.mul_term(&mg.quotient_of(&l), field.inv(*cg));
    &a - &b
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine {
    ring: RingContext,
    basis: Vec<Polynomial>,
    leads: Vec<Monomial>,
    pairs: Vec<Pair>,
    pending: HashSet<(usize, usize)>,
}

impl Engine {
    fn new(ring: &RingContext) -> Self {
        Engine { ring: ring.clone(), basis: Vec::new(), leads: Vec::new(), pairs: Vec::new(), pending: HashSet::new() }
    }

    fn reduce(&self, f: &Polynomial) -> Polynomial {
        Reducer::new(self.basis.iter()).reduce(f)
    }

    fn insert(&mut self, h: Polynomial) {
        let h = h.monic();
        let lead = h.leading_monomial().expect("nonzero").clone();
        let idx = self.basis.len();
        for i in 0..idx {
            let lcm = self.leads[i].lcm(&lead);
            self.pairs.push(Pair { i, j: idx, lcm });
            self.pending.insert((i, idx));
        }
        self.basis.push(h);
        self.leads.push(lead);
    }

    /// Buchberger's two criteria. Removes the pair from the pending set.
    fn useless(&mut self, pair: &Pair) -> bool {
        self.pending.remove(&(pair.i, pair.j));
        if self.leads[pair.i].is_coprime(&self.leads[pair.j]) {
            return true;
        }
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        (0..self.basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && self.leads[k].divides(&pair.lcm)
                && !self.pending.contains(&key(pair.i, k))
                && !self.pending.contains(&key(pair.j, k))
        })
    }

    /// Index of the pair with the smallest lcm, ties broken by indices.
    fn select(&self) -> usize {
        let order = self.ring.order();
        let mut best = 0;
        for (k, p) in self.pairs.iter().enumerate().skip(1) {
            let b = &self.pairs[best];
            let c = order.cmp(&p.lcm, &b.lcm).then((p.i, p.j).cmp(&(b.i, b.j)));
            if c.is_lt() {
                best = k;
            }
        }
        best
    }

    fn run_sequential(&mut self) {
        while !self.pairs.is_empty() {
            let k = self.select();
            let pair = self.pairs.swap_remove(k);
            if self.useless(&pair) {
                continue;
            }
            let s = s_polynomial(&self.basis[pair.i], &self.basis[pair.j]);
            let h = self.reduce(&s);
            if !h.is_zero() {
                self.insert(h);
            }
        }
    }

    /// Batches all pairs of minimal lcm degree and reduces them concurrently.
    fn run_parallel(&mut self) {
        while !self.pairs.is_empty() {
            let min_deg = self.pairs.iter().map(|p| p.lcm.degree()).min().unwrap();
            let mut batch = Vec::new();
            let mut rest = Vec::new();
            for p in std::mem::take(&mut self.pairs) {
                if p.lcm.degree() == min_deg {
                    batch.push(p);
                } else {
                    rest.push(p);
                }
            }
            self.pairs = rest;
            batch.sort_by_key(|a| (a.i, a.j));
            let mut live = Vec::new();
            for p in batch {
                if !self.useless(&p) {
                    live.push(p);
                }
            }
            let reducer = Reducer::new(self.basis.iter());
            let reduced: Vec<Polynomial> = live
                .par_iter()
                .map(|p| reducer.reduce(&s_polynomial(&self.basis[p.i], &self.basis[p.j])))
                .collect();
            for h in reduced {
                if h.is_zero() {
                    continue;
                }
                let h = self.reduce(&h);
                if !h.is_zero() {
                    self.insert(h);
                }
            }
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// decreasing leading monomial.
pub(crate) fn reduced_basis(ring: &RingContext, gens: &[Polynomial], parallel: bool) -> Vec<Polynomial> {
    let order = ring.order();
    let mut input: Vec<Polynomial> = gens.iter().filter(|f| !f.is_zero()).map(|f| f.monic()).collect();
    if input.iter().any(|f| f.is_constant()) {
        return vec![Polynomial::one(ring)];
    }
    input.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut engine = Engine::new(ring);
    for f in input {
        let h = engine.reduce(&f);
        if !h.is_zero() {
            engine.insert(h);
        }
    }
    if parallel {
        engine.run_parallel();
    } else {
        engine.run_sequential();
    }
    interreduce(ring, engine.basis)
}

/// Minimal, fully reduced, monic, sorted by decreasing leading monomial.
pub(crate) fn interreduce(ring: &RingContext, basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let order = ring.order();
    if basis.iter().any(|f| f.is_constant() && !f.is_zero()) {
        return vec![Polynomial::one(ring)];
    }
    let mut basis: Vec<Polynomial> = basis.into_iter().filter(|f| !f.is_zero()).collect();
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for f in basis {
        let lm = f.leading_monomial().unwrap();
        if !minimal.iter().any(|g| g.leading_monomial().unwrap().divides(lm)) {
            minimal.push(f);
        }
    }
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others = Reducer::new(minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g));
            let lead = Polynomial::from_sorted_unchecked(ring, vec![minimal[k].terms()[0].clone()]);
            let tail = Polynomial::from_sorted_unchecked(ring, minimal[k].terms()[1..].to_vec());
            (&lead + &others.reduce(&tail)).monic()
        })
        .collect();
    out.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    out
}
