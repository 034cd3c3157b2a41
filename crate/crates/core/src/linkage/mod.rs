//! First generic links `J = (g_1, ..., g_c) : IS` and the checks built on them.

mod extension;
mod param;
mod split;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::report::{Check, Report, Status};
use crate::ring::{Polynomial, RingContext};

pub use extension::{fpt_inequality_check, generator_extension_check};
pub use param::{
    default_test_power, f_rational_criterion, param_test_closure, param_test_submodule, theorem33_compare,
    ClosureResult, CompareOptions,
};
pub use split::{split_exponents, validate_split};

/// Report type for linkage checks.
pub type LinkReport = Report;

/// Hypotheses the caller asserts about `I`; none of them is verified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Assumptions {
    pub unmixed: bool,
    pub reduced: bool,
    /// Number of generators of a declared reduction of `I`.
    pub reduction_size: Option<usize>,
}

impl Assumptions {
    pub(crate) fn banner(&self, rep: &mut Report) {
        let said = |b: bool| if b { "asserted by caller, not verified" } else { "not asserted" };
        rep.assume(format!("I unmixed: {}", said(self.unmixed)));
        rep.assume(format!("I reduced: {}", said(self.reduced)));
        match self.reduction_size {
            Some(r) => rep.assume(format!("reduction of I with {r} generators: declared by caller, not verified")),
            None => rep.assume("reduction of I: none declared"),
        }
    }
}

/// Name of the generic coefficient `u_{ij}` (1-based).
pub fn u_name(i: usize, j: usize) -> String {
    format!("u_{i}_{j}")
}

/// The first generic link of `I = (f_1, ..., f_r)` of height `c`.
#[derive(Clone, Debug)]
pub struct GenericLink {
    pub base: RingContext,
    pub ext: RingContext,
    /// Generators of `I` in the base ring.
    pub f: Vec<Polynomial>,
    pub c: usize,
    /// `g_i = Σ_j u_{ij} f_j` in the extended ring.
    pub g: Vec<Polynomial>,
    pub j: Ideal,
}

impl GenericLink {
    pub fn r(&self) -> usize {
        self.f.len()
    }

    /// `I` in the base ring.
    pub fn base_ideal(&self) -> Ideal {
        Ideal::new(&self.base, self.f.clone()).expect("same ring")
    }

    /// `IS`.
    pub fn extended_ideal(&self) -> Ideal {
        let gens = self.f.iter().map(|f| f.to_ring(&self.ext).expect("base embeds")).collect();
        Ideal::new(&self.ext, gens).expect("same ring")
    }

    /// `(g_1, ..., g_c)`.
    pub fn g_ideal(&self) -> Ideal {
        Ideal::new(&self.ext, self.g.clone()).expect("same ring")
    }

    /// `f_k` in the extended ring, 1-based.
    pub(crate) fn f_ext(&self, k: usize) -> Polynomial {
        self.f[k - 1].to_ring(&self.ext).expect("base embeds")
    }
}

/// Builds the generic link with `c` computed as the height of `I`.
pub fn generic_link(i: &Ideal) -> Result<GenericLink> {
    if i.is_zero() {
        return Err(Error::invalid("generic link of the zero ideal"));
    }
    if i.is_unit() {
        return Err(Error::invalid("generic link of the unit ideal"));
    }
    let (_, c) = i.dimension_height()?;
    generic_link_with_height(i.ring(), i.generators(), c)
}

/// Builds the generic link of `(f_1, ..., f_r)` with the given height.
pub fn generic_link_with_height(base: &RingContext, f: &[Polynomial], c: usize) -> Result<GenericLink> {
    if c == 0 {
        return Err(Error::invalid("height 0: no generic link"));
    }
    if f.is_empty() || f.iter().any(|x| x.is_zero()) {
        return Err(Error::invalid("generators must be nonzero"));
    }
    if c > f.len() {
        return Err(Error::invalid(format!("height {c} exceeds the generator count {}", f.len())));
    }
    let r = f.len();
    let names: Vec<String> = (1..=c).flat_map(|i| (1..=r).map(move |j| u_name(i, j))).collect();
    let ext = base.extend(&names)?;
    let fs: Vec<Polynomial> = f.iter().map(|x| x.to_ring(&ext)).collect::<Result<_>>()?;
    let mut g = Vec::with_capacity(c);
    for i in 1..=c {
        let mut gi = Polynomial::zero(&ext);
        for (j, fj) in fs.iter().enumerate() {
            let u = Polynomial::var(&ext, ext.var_index(&u_name(i, j + 1)).unwrap());
            gi = gi.try_add(&u.try_mul(fj)?)?;
        }
        g.push(gi);
    }
    let is = Ideal::new(&ext, fs)?;
    let j = Ideal::new(&ext, g.clone())?.colon(&is)?.minimalized();
    Ok(GenericLink { base: base.clone(), ext, f: f.to_vec(), c, g, j })
}

fn inequality_witness(a: &Ideal, b: &Ideal) -> Result<String> {
    Ok(match a.first_outside(b)? {
        Some(w) => w.to_string(),
        None => b.first_outside(a)?.map(|w| w.to_string()).unwrap_or_default(),
    })
}

/// Checks `IS = (g) : J` and `IS ∩ J = (g)`.
pub fn verify_geometric_link(link: &GenericLink, assumptions: &Assumptions) -> Result<LinkReport> {
    let mut rep = Report::new("geomcheck");
    assumptions.banner(&mut rep);
    let is = link.extended_ideal();
    let g = link.g_ideal();
    let back = g.colon(&link.j)?;
    let name = "colon_recovers_IS";
    if back.equals(&is)? {
        rep.push(Check::new(name, Status::Pass));
    } else {
        rep.push(Check::new(name, Status::Fail).witness(inequality_witness(&back, &is)?));
    }
    let meet = is.intersect(&link.j)?;
    let name = "intersection_is_g";
    if meet.equals(&g)? {
        rep.push(Check::new(name, Status::Pass));
    } else {
        rep.push(Check::new(name, Status::Fail).witness(inequality_witness(&meet, &g)?));
    }
    Ok(rep)
}
