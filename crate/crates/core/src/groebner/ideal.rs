use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::buchberger::{self, Reducer};
use crate::error::{Error, Result};
use crate::ring::{parse_poly_list, MonomialOrder, Polynomial, RingContext};

/// Reduced Gröbner basis for the order of its ring.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: RingContext,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub(crate) fn compute(ring: &RingContext, gens: &[Polynomial]) -> Self {
        let elements = buchberger::reduced_basis(ring, gens, super::parallel_spairs());
        GroebnerBasis { ring: ring.clone(), elements }
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    /// Monic elements sorted by decreasing leading monomial.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        Reducer::new(self.elements.iter()).reduce(f)
    }

    /// Every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let red = Reducer::new(self.elements.iter());
        for (i, f) in self.elements.iter().enumerate() {
            for g in &self.elements[i + 1..] {
                if !red.reduce(&super::s_polynomial(f, g)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// No leading monomial divides another, every element is monic and fully
    /// reduced against the rest.
    pub fn is_reduced(&self) -> bool {
        self.elements.iter().enumerate().all(|(k, f)| {
            f.leading_coeff() == 1 && {
                let others = Reducer::new(self.elements.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g));
                others.reduce(f) == *f
            }
        })
    }
}

/// Ideal of a polynomial ring, given by generators, with a lazily computed
/// reduced Gröbner basis.
#[derive(Clone)]
pub struct Ideal {
    ring: RingContext,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl Ideal {
    /// Zero generators are dropped; exact duplicates (up to scaling) are merged.
    pub fn new(ring: &RingContext, gens: Vec<Polynomial>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(gens.len());
        for f in gens {
            if !f.ring().same(ring) {
                return Err(Error::RingMismatch);
            }
            if f.is_zero() {
                continue;
            }
            if seen.insert(f.monic()) {
                kept.push(f);
            }
        }
        Ok(Ideal { ring: ring.clone(), gens: kept, gb: OnceLock::new() })
    }

    pub(crate) fn from_basis(gb: GroebnerBasis) -> Self {
        let ring = gb.ring.clone();
        let gens = gb.elements.clone();
        let cell = OnceLock::new();
        let _ = cell.set(Arc::new(gb));
        Ideal { ring, gens, gb: cell }
    }

    /// Comma-separated generators.
    pub fn parse(text: &str, ring: &RingContext) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(Self::zero(ring));
        }
        Self::new(ring, parse_poly_list(text, ring)?)
    }

    pub fn zero(ring: &RingContext) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &RingContext) -> Self {
        Ideal::principal(Polynomial::one(ring))
    }

    pub fn principal(f: Polynomial) -> Self {
        let ring = f.ring().clone();
        Ideal::new(&ring, vec![f]).expect("same ring")
    }

    /// `(x_1, ..., x_n)`.
    pub fn maximal_at_origin(ring: &RingContext) -> Self {
        Ideal::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect()).expect("same ring")
    }

    pub fn ring(&self) -> &RingContext {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|f| f.is_monomial())
    }

    /// The cached reduced Gröbner basis.
    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| Arc::new(GroebnerBasis::compute(&self.ring, &self.gens)))
    }

    /// Reduced basis elements.
    pub fn basis(&self) -> &[Polynomial] {
        self.groebner().elements()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|f| f.is_constant()) || self.groebner().is_unit()
    }

    pub(crate) fn check_ring(&self, ring: &RingContext) -> Result<()> {
        if self.ring.same(ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_ring(f.ring())?;
        Ok(self.groebner().normal_form(f))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.check_ring(f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        if self.is_monomial() && f.is_monomial() {
            let m = f.leading_monomial().unwrap();
            return Ok(self.gens.iter().any(|g| g.leading_monomial().unwrap().divides(m)));
        }
        Ok(self.groebner().normal_form(f).is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(&other.ring)?;
        for f in &other.gens {
            if !self.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First generator of `other` outside `self`, if any.
    pub fn first_outside(&self, other: &Ideal) -> Result<Option<Polynomial>> {
        self.check_ring(&other.ring)?;
        for f in &other.gens {
            if !self.contains(f)? {
                return Ok(Some(f.clone()));
            }
        }
        Ok(None)
    }

    /// Equality of reduced bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(&other.ring)?;
        Ok(self.basis() == other.basis())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.try_mul(g)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `f · I`.
    pub fn scale(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_ring(f.ring())?;
        let gens = self.gens.iter().map(|g| g.try_mul(f)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// The same ideal with the reduced basis as generator list.
    pub fn minimalized(&self) -> Ideal {
        Ideal::from_basis(self.groebner().clone())
    }

    /// Moves the ideal into `target`, matching variables by name.
    pub fn to_ring(&self, target: &RingContext) -> Result<Ideal> {
        let gens = self.gens.iter().map(|f| f.to_ring(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// Reduced basis rendered as `(g1, g2, ...)`.
    pub fn reduced_string(&self) -> String {
        if self.is_zero() {
            return "(0)".into();
        }
        format_list(self.basis())
    }
}

pub(crate) fn format_list(polys: &[Polynomial]) -> String {
    let inner: Vec<String> = polys.iter().map(|f| f.to_string()).collect();
    format!("({})", inner.join(", "))
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        f.write_str(&format_list(&self.gens))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self} in {:?}", self.ring)
    }
}
