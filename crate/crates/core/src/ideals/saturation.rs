use crate::groebner::engine::{Config, Engine};
use crate::groebner::vector::{Ambient, Term, Vector};
use crate::groebner::{syzygies_with_degrees, ModuleElement};
use crate::ring::{Polynomial, Ring};

use super::{intersect, minimal_generators, IdealError, Submodule};

/// `A : f = { v : f v ∈ A }`, from the syzygies of `(A's generators, f e_j)`.
pub fn quotient(a: &Submodule, f: &Polynomial) -> Result<Submodule, IdealError> {
    let ring = a.ring();
    if f.is_zero() {
        return Err(IdealError::ZeroPolynomial);
    }
    let df = f.multidegree(ring)?;
    if f.as_constant().is_some() {
        return Ok(a.clone());
    }
    let k = a.ambient().rank();
    let na = a.generators().len();
    let mut gens = a.generators().to_vec();
    let mut degrees = a.degrees();
    for (j, d) in a.ambient().degrees().iter().enumerate() {
        let mut e = ModuleElement::zero(k);
        e.coords[j] = f.clone();
        gens.push(e);
        degrees.push(&df + d);
    }
    let syz = syzygies_with_degrees(ring, a.ambient(), &gens, &degrees);
    let out = syz
        .generators
        .into_iter()
        .map(|s| ModuleElement::new(s.coords[na..].to_vec()))
        .collect();
    Ok(minimal_generators(&Submodule::new_unchecked(ring, a.ambient().clone(), out)))
}

/// `A : f^∞` by iterating [`quotient`] until it stabilizes.
pub fn saturate_by_quotients(a: &Submodule, f: &Polynomial) -> Result<Submodule, IdealError> {
    let mut cur = a.clone();
    loop {
        let next = quotient(&cur, f)?;
        if next.is_subset(&cur)? {
            return Ok(cur);
        }
        cur = next;
    }
}

/// `A : f^∞`. Monomials are handled one variable at a time with a
/// reverse-lex basis; other `f` go through [`saturate_by_quotients`].
pub fn saturate(a: &Submodule, f: &Polynomial) -> Result<Submodule, IdealError> {
    if f.is_zero() {
        return Err(IdealError::ZeroPolynomial);
    }
    f.multidegree(a.ring())?;
    if f.len() != 1 {
        return saturate_by_quotients(a, f);
    }
    let m = f.terms()[0].0;
    let mut cur = a.clone();
    for x in 0..a.ring().nvars() {
        if m.exponent(x) > 0 {
            cur = saturate_by_variable(&cur, x);
        }
    }
    Ok(cur)
}

/// `A : x^∞` by computing a basis in which `x` is the cheapest variable and
/// dividing out the powers of `x`.
pub(crate) fn saturate_by_variable(a: &Submodule, x: usize) -> Submodule {
    let ring = a.ring();
    if a.is_zero() {
        return a.clone();
    }
    let alt: Ring = ring.with_last_variable(x);
    let amb = Ambient::top(&alt, a.ambient().degrees());
    let vecs: Vec<Vector> = a.generators().iter().map(|g| amb.from_coords(&alt, &g.coords)).collect();
    let degrees = a.degrees();
    let cfg = Config { graded: true, select: true, ..Config::default() };
    let out = Engine::new(&alt, &amb, cfg).run(&vecs, &degrees);
    let xv = alt.var(x);
    let gens: Vec<ModuleElement> = out
        .basis
        .iter()
        .map(|v| {
            let e = v[0].key.exponent(x);
            let mut xe = crate::ring::Monomial::one();
            for _ in 0..e {
                xe = xe.mul(&xv);
            }
            let w: Vec<Term> = v.iter().map(|t| Term { key: t.key.div_exact(&xe), ..*t }).collect();
            ModuleElement::new(
                amb.to_coords(&w)
                    .into_iter()
                    .map(|p| Polynomial::from_terms(ring, p.into_terms()))
                    .collect(),
            )
        })
        .collect();
    minimal_generators(&Submodule::new_unchecked(ring, a.ambient().clone(), gens))
}

/// `A : J^∞ = ∩_j A : f_j^∞` over the generators of J.
pub fn saturate_by_ideal(a: &Submodule, j: &Submodule) -> Result<Submodule, IdealError> {
    let fs = j.polynomials()?;
    if fs.is_empty() {
        return Err(IdealError::ZeroIdeal);
    }
    let mut acc: Option<Submodule> = None;
    for f in &fs {
        let s = saturate(a, f)?;
        if s.is_whole() {
            continue;
        }
        acc = Some(match acc {
            None => s,
            Some(prev) => intersect(&prev, &s)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Submodule::whole(a.ring(), a.ambient().clone())))
}

/// `A : B^∞`, saturating by each irrelevant prime in turn.
pub fn b_saturate(a: &Submodule) -> Result<Submodule, IdealError> {
    let ring = a.ring().clone();
    let mut cur = a.clone();
    for i in 0..ring.irrelevant_primes().len() {
        let p = super::irrelevant_prime(&ring, i);
        cur = saturate_by_ideal(&cur, &p)?;
    }
    Ok(cur)
}
