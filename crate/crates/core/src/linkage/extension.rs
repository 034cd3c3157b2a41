//! Independence of the generating set, and F-pure-threshold comparisons.

use super::{generic_link, generic_link_with_height, u_name, GenericLink, LinkReport};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusLevel;
use crate::fsing::{fpt_bounds, nu, FptBounds};
use crate::groebner::Ideal;
use crate::report::{Check, Report, Status};
use crate::ring::{Polynomial, RationalParam};

/// Adds `f_{r+1} = Σ a_j f_j`, builds the larger link and checks that
/// `u_{ij} ↦ u_{ij} + u_{i,r+1} a_j` carries `J_1 S_2` onto `J_2`.
pub fn generator_extension_check(link: &GenericLink, a: &[Polynomial]) -> Result<LinkReport> {
    let r = link.r();
    if a.len() != r {
        return Err(Error::invalid(format!("coefficient vector has length {}, expected {r}", a.len())));
    }
    let mut f_new = Polynomial::zero(&link.base);
    for (aj, fj) in a.iter().zip(&link.f) {
        f_new = f_new.try_add(&aj.try_mul(fj)?)?;
    }
    if f_new.is_zero() {
        return Err(Error::invalid("new generator must be nonzero"));
    }
    let mut gens = link.f.clone();
    gens.push(f_new.clone());
    let big = generic_link_with_height(&link.base, &gens, link.c)?;
    let s2 = &big.ext;

    let mut images = Vec::with_capacity(s2.nvars());
    for (idx, name) in s2.vars().iter().enumerate() {
        let var = Polynomial::var(s2, idx);
        let mut image = var.clone();
        for i in 1..=link.c {
            for (j, aj) in a.iter().enumerate() {
                if *name == u_name(i, j + 1) {
                    let extra = Polynomial::var(s2, s2.var_index(&u_name(i, r + 1)).unwrap());
                    image = var.try_add(&extra.try_mul(&aj.to_ring(s2)?)?)?;
                }
            }
        }
        images.push(image);
    }
    let moved = link
        .j
        .generators()
        .iter()
        .map(|g| g.to_ring(s2)?.substitute(&images))
        .collect::<Result<Vec<_>>>()?;
    let moved = Ideal::new(s2, moved)?;

    let mut rep = Report::new("extend");
    rep.value("f_new", &f_new);
    rep.value("j1", link.j.reduced_string());
    rep.value("j2", big.j.reduced_string());
    let name = "automorphism_maps_link";
    rep.push(if moved.equals(&big.j)? {
        Check::new(name, Status::Pass)
    } else {
        let w = moved.first_outside(&big.j)?.or(big.j.first_outside(&moved)?);
        Check::new(name, Status::Fail).witness(w.map(|w| w.to_string()).unwrap_or_default())
    });

    let level = FrobeniusLevel::for_ring(&link.ext, 1)?;
    let nu1 = nu(&link.j, &Ideal::maximal_at_origin(&link.ext), level)?;
    let nu2 = nu(&big.j, &Ideal::maximal_at_origin(s2), level)?;
    rep.value("nu_j1", nu1);
    rep.value("nu_j2", nu2);
    let name = "nu_invariance";
    rep.push(if nu1 == nu2 {
        Check::new(name, Status::Pass).level(1)
    } else {
        Check::new(name, Status::Fail).level(1).witness(format!("nu_J1 = {nu1}, nu_J2 = {nu2}"))
    });
    Ok(rep)
}

fn table(b: &FptBounds) -> String {
    b.nu_values.iter().map(|(e, v)| format!("{e}:{v}")).collect::<Vec<_>>().join(",")
}

/// Certified-bound consistency of `fpt_S(J) ≥ fpt_S(g) ≥ (c/r)·fpt_R(I)`.
pub fn fpt_inequality_check(i: &Ideal, reduction_size: usize, e_max: u32) -> Result<LinkReport> {
    let link = generic_link(i)?;
    let c = link.c;
    if reduction_size < c {
        return Err(Error::invalid(format!("reduction size {reduction_size} is below the height {c}")));
    }
    let b_i = fpt_bounds(i, e_max)?;
    let b_g = fpt_bounds(&link.g_ideal(), e_max)?;
    let b_j = fpt_bounds(&link.j, e_max)?;

    let mut rep = Report::new("fptcheck");
    rep.assume(format!("reduction of I with {reduction_size} generators: declared by caller, not verified"));
    rep.value("c", c);
    rep.value("r", reduction_size);
    rep.value("nu_I", table(&b_i));
    rep.value("nu_g", table(&b_g));
    rep.value("nu_J", table(&b_j));
    rep.value("fpt_I", b_i.interval());
    rep.value("fpt_g", b_g.interval());
    rep.value("fpt_J", b_j.interval());

    let target = b_i.lower.scaled(c as u64, reduction_size as u64)?;
    let reference = b_i.upper.unwrap_or(b_i.lower).scaled(c as u64, reduction_size as u64)?;
    for (e, v) in &b_g.nu_values {
        let q = FrobeniusLevel::for_ring(&link.ext, *e)?.q() as u64;
        let ratio = RationalParam::new(*v, q)?;
        rep.push(
            Check::new(format!("nu_g_e{e}"), Status::Evidence)
                .level(*e)
                .detail(format!("nu_g/q = {ratio} vs (c/r)*fpt_I bound = {reference}")),
        );
    }

    let mut check = Check::new("certified_consistency", Status::Pass).detail(format!("(c/r)*lower(fpt_I) = {target}"));
    for (label, b) in [("g", &b_g), ("J", &b_j)] {
        if let Some(u) = b.upper {
            if u < target {
                check = Check::new("certified_consistency", Status::Fail)
                    .witness(format!("upper bound {u} on fpt_{label} is below {target}"));
            }
        }
    }
    rep.push(check);

    let p = i.ring().characteristic() as u64;
    let mut growth = Check::new("nu_growth", Status::Pass);
    for (label, b) in [("I", &b_i), ("g", &b_g), ("J", &b_j)] {
        for w in b.nu_values.windows(2) {
            if w[1].1 < p * w[0].1 {
                growth = Check::new("nu_growth", Status::Fail)
                    .witness(format!("nu_{label}: level {} gives {} < p * {}", w[1].0, w[1].1, w[0].1));
            }
        }
    }
    rep.push(growth);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_poly, RingContext};

    fn link_of(p: u64, vars: &[&str], text: &str) -> GenericLink {
        let r = RingContext::grevlex(p, vars).unwrap();
        generic_link(&Ideal::parse(text, &r).unwrap()).unwrap()
    }

    #[test]
    fn extension_by_existing_generator() {
        let l = link_of(2, &["x", "y"], "x, y");
        let a = vec![parse_poly("1", &l.base).unwrap(), parse_poly("0", &l.base).unwrap()];
        let rep = generator_extension_check(&l, &a).unwrap();
        assert!(rep.all_pass(), "{rep:#?}");
    }

    #[test]
    fn extension_of_principal() {
        let l = link_of(2, &["x", "y"], "x");
        let rep = generator_extension_check(&l, &[parse_poly("1", &l.base).unwrap()]).unwrap();
        assert!(rep.all_pass(), "{rep:#?}");
    }

    #[test]
    fn extension_rejects_degenerate() {
        let l = link_of(2, &["x", "y"], "x, y");
        let zero = Polynomial::zero(&l.base);
        assert!(generator_extension_check(&l, &[zero.clone(), zero.clone()]).is_err());
        assert!(generator_extension_check(&l, &[zero]).is_err());
    }

    #[test]
    fn fpt_check_maximal_ideal() {
        let r = RingContext::grevlex(2, &["x", "y"]).unwrap();
        let rep = fpt_inequality_check(&Ideal::parse("x, y", &r).unwrap(), 2, 2).unwrap();
        assert_eq!(rep.get_value("nu_g"), Some("1:2,2:6"));
        assert!(!rep.failed(), "{rep:#?}");
    }

    #[test]
    fn fpt_check_principal() {
        let r = RingContext::grevlex(2, &["x", "y"]).unwrap();
        let rep = fpt_inequality_check(&Ideal::parse("x", &r).unwrap(), 1, 2).unwrap();
        assert_eq!(rep.get_value("nu_g"), Some("1:1,2:3"));
        assert_eq!(rep.get_value("fpt_g"), Some("(3/4, 1]"));
        assert!(!rep.failed());
    }
}
