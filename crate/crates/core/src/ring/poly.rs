//! Sparse multivariate polynomials over a prime field.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::context::RingContext;
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A polynomial in a [`RingContext`].
///
/// Terms are kept sorted by strictly decreasing monomial in the ring's order,
/// with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingContext,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero(ring: &RingContext) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &RingContext, c: u64) -> Self {
        let c = ring.field().reduce(c);
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &RingContext) -> Self {
        Self::constant(ring, 1)
    }

    /// The variable with index `i`.
    pub fn var(ring: &RingContext, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::monomial(ring, Monomial::var(ring.nvars(), i), 1)
    }

    pub fn var_named(ring: &RingContext, name: &str) -> Option<Self> {
        ring.var_index(name).map(|i| Self::var(ring, i))
    }

    pub fn monomial(ring: &RingContext, m: Monomial, c: u32) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial arity does not match ring");
        let c = ring.field().reduce(c as u64);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I>(ring: &RingContext, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u32)>,
    {
        let field = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity does not match ring");
            let c = field.reduce(c as u64);
            if c == 0 {
                continue;
            }
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, c);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &RingContext, acc: HashMap<Monomial, u32>) -> Self {
        let order = ring.order();
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Terms already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(ring: &RingContext, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Polynomial { ring: ring.clone(), terms }
    }

    #[inline]
    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coeff_of(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|(t, _)| t == m).map_or(0, |t| t.1)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let field = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let fix = |c: u32| if negate_other { field.neg(c) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, ca) = &self.terms[i];
            let (b, cb) = &other.terms[j];
            match order.cmp(a, b) {
                Ordering::Greater => {
                    out.push((a.clone(), *ca));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.clone(), fix(*cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(*ca, fix(*cb));
                    if c != 0 {
                        out.push((a.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), fix(*c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    /// Exact product. Fails on ring mismatch or exponent overflow.
    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.try_mul_term(m, *c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.try_mul_term(m, *c);
        }
        let field = self.ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m = a.checked_mul(b)?;
                let e = acc.entry(m).or_insert(0);
                *e = field.add(*e, field.mul(*ca, *cb));
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    /// Multiplication by the single term `c * m`. Monomial orders are
    /// multiplicative, so sortedness is preserved.
    pub fn try_mul_term(&self, m: &Monomial, c: u32) -> Result<Polynomial> {
        let field = self.ring.field();
        let c = field.reduce(c as u64);
        if c == 0 {
            return Ok(Polynomial::zero(&self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, ct)| Ok((t.checked_mul(m)?, field.mul(*ct, c))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        self.try_mul_term(m, c).expect("exponent overflow")
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    /// Scaled so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scale(self.ring.field().inv(*c)),
        }
    }

    pub fn try_pow(&self, mut n: u64) -> Result<Polynomial> {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, n: u64) -> Polynomial {
        self.try_pow(n).expect("exponent overflow")
    }

    /// `f^(p^e)`. Over `F_p` every coefficient is fixed by Frobenius, so this
    /// only scales exponent vectors by `p^e`.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        let p = self.ring.characteristic();
        let q = p.checked_pow(e).ok_or(Error::LevelTooLarge { p, e })?;
        self.scale_exponents(q)
    }

    pub(crate) fn scale_exponents(&self, q: u32) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.scaled(q)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Reinterprets the polynomial in `target`, sending variable `i` to
    /// variable `index_map[i]`. Variables mapped to `None` must not occur.
    pub fn map_vars(&self, target: &RingContext, index_map: &[Option<usize>]) -> Result<Polynomial> {
        assert_eq!(index_map.len(), self.ring.nvars());
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; n];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match index_map[i] {
                    Some(j) => exps[j] = e,
                    None => {
                        return Err(Error::invalid(format!(
                            "variable `{}` has no image in {}",
                            self.ring.vars()[i],
                            target
                        )))
                    }
                }
            }
            terms.push((Monomial::new(exps)?, *c));
        }
        if target.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn to_ring(&self, target: &RingContext) -> Result<Polynomial> {
        if self.ring.same(target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.ring.vars().iter().map(|v| target.var_index(v)).collect();
        self.map_vars(target, &map)
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::invalid("substitution needs one image per variable"));
        }
        let target = match images.first() {
            Some(f) => f.ring().clone(),
            None => self.ring.clone(),
        };
        if images.iter().any(|f| !f.ring().same(&target)) {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(&target)]; images.len()];
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        let field = target.field();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, *c as u64);
            for (i, &e) in m.exps().iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.try_mul(&powers[i][e])?;
                }
            }
            for (tm, tc) in term.terms {
                let slot = acc.entry(tm).or_insert(0);
                *slot = field.add(*slot, tc);
            }
        }
        Ok(Self::from_map(&target, acc))
    }

    /// Re-sorts the terms for a ring with the same variables but another order.
    pub fn reorder(&self, target: &RingContext) -> Polynomial {
        assert_eq!(target.vars(), self.ring.vars());
        let mut terms = self.terms.clone();
        let order = target.order();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: target.clone(), terms }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut first = true;
            if *c != 1 || m.is_one() {
                write!(f, "{c}")?;
                first = false;
            }
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(&vars[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch or exponent overflow in product")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(*c))).collect(),
        }
    }
}

/// Exact product of two polynomials.
pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.try_mul(g)
}

/// `f^(p^e)`.
pub fn frobenius_power(f: &Polynomial, e: u32) -> Result<Polynomial> {
    f.frobenius_power(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn ring(p: u64, vars: &[&str]) -> RingContext {
        RingContext::grevlex(p, vars).unwrap()
    }

    #[test]
    fn freshmans_dream() {
        let r = ring(2, &["x", "y"]);
        let f = parse_poly("x+y", &r).unwrap();
        assert_eq!((&f * &f).to_string(), "x^2 + y^2");
        assert!((&f * &Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn product_over_f3() {
        let r = ring(3, &["x"]);
        let f = parse_poly("x+1", &r).unwrap();
        let g = parse_poly("x+2", &r).unwrap();
        assert_eq!(poly_mul(&f, &g).unwrap(), parse_poly("x^2+2", &r).unwrap());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let f = parse_poly("x", &ring(2, &["x"])).unwrap();
        let g = parse_poly("x", &ring(3, &["x"])).unwrap();
        assert_eq!(poly_mul(&f, &g).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn frobenius_examples() {
        let r2 = ring(2, &["x", "y"]);
        let f = parse_poly("x+y", &r2).unwrap();
        assert_eq!(frobenius_power(&f, 1).unwrap().to_string(), "x^2 + y^2");
        let r3 = ring(3, &["x", "y"]);
        let f = parse_poly("2*x", &r3).unwrap();
        assert_eq!(frobenius_power(&f, 2).unwrap().to_string(), "2*x^9");
        let f = parse_poly("x^2+x", &r3).unwrap();
        assert_eq!(frobenius_power(&f, 1).unwrap().to_string(), "x^6 + x^3");
    }

    #[test]
    fn frobenius_level_overflow() {
        let r = ring(3, &["x"]);
        let f = parse_poly("x", &r).unwrap();
        assert!(matches!(f.frobenius_power(40), Err(Error::LevelTooLarge { .. })));
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let r = ring(5, &["x", "y"]);
        let f = parse_poly("x^2*y + 3*y", &r).unwrap();
        let images = vec![parse_poly("x+y", &r).unwrap(), parse_poly("2*x", &r).unwrap()];
        let got = f.substitute(&images).unwrap();
        let xy = parse_poly("x+y", &r).unwrap();
        let want = &(&(&xy * &xy) * &images[1]) + &images[1].scale(3);
        assert_eq!(got, want);
    }

    #[test]
    fn printing_is_descending_and_canonical() {
        let r = ring(7, &["x", "y", "z"]);
        let f = parse_poly("3 + z - x*y + 2*x^2", &r).unwrap();
        assert_eq!(f.to_string(), "2*x^2 + 6*x*y + z + 3");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }
}
