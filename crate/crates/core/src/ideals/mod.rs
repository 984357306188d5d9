//! Submodules of twisted free modules and the ideal operations built on
//! them: intersection, colon, saturation, truncation, Hilbert functions.

mod saturation;

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::groebner::engine::{Config, Engine};
use crate::groebner::vector::{Ambient, Vector};
use crate::groebner::{
    generator_degrees, groebner_basis, syzygies_with_degrees, FreeModule, GroebnerBasis, GroebnerError,
    ModuleElement, ModuleOrder,
};
use crate::ring::{Monomial, Multidegree, Polynomial, Ring, RingError, RingRef};

pub use saturation::{b_saturate, quotient, saturate, saturate_by_ideal, saturate_by_quotients};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("submodules live in different free modules")]
    AmbientMismatch,
    #[error("expected an ideal (rank one ambient module)")]
    NotAnIdeal,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("the ideal is zero")]
    ZeroIdeal,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("exponent vector {0:?} has a negative entry or the wrong length")]
    BadExponent(Vec<i64>),
    #[error("lower module is not contained in the upper module")]
    NotContained,
    #[error("Hilbert function enumeration for degree {0} did not terminate")]
    Enumeration(Multidegree),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A submodule of a free module, given by homogeneous generators, with a
/// lazily computed Gröbner basis.
#[derive(Clone)]
pub struct Submodule {
    ring: RingRef,
    ambient: FreeModule,
    gens: Vec<ModuleElement>,
    gb: Arc<OnceLock<GroebnerBasis>>,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Submodule")
            .field("rank", &self.ambient.rank())
            .field("generators", &self.gens.len())
            .finish()
    }
}

impl Submodule {
    /// Zero generators are dropped.
    pub fn new(ring: &RingRef, ambient: FreeModule, gens: Vec<ModuleElement>) -> Result<Self, IdealError> {
        generator_degrees(ring, &ambient, &gens)?;
        Ok(Self::new_unchecked(ring, ambient, gens))
    }

    pub(crate) fn new_unchecked(ring: &RingRef, ambient: FreeModule, gens: Vec<ModuleElement>) -> Self {
        Submodule {
            ring: ring.clone(),
            ambient,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: Arc::new(OnceLock::new()),
        }
    }

    /// An ideal of S.
    pub fn ideal(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Self, IdealError> {
        Self::new(ring, FreeModule::ring(ring.r()), gens.into_iter().map(ModuleElement::scalar).collect())
    }

    /// The whole free module.
    pub fn whole(ring: &RingRef, ambient: FreeModule) -> Self {
        let k = ambient.rank();
        Self::new_unchecked(ring, ambient, (0..k).map(|j| ModuleElement::unit(k, j)).collect())
    }

    pub fn unit_ideal(ring: &RingRef) -> Self {
        Self::whole(ring, FreeModule::ring(ring.r()))
    }

    pub fn zero(ring: &RingRef, ambient: FreeModule) -> Self {
        Self::new_unchecked(ring, ambient, Vec::new())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.gens
    }

    pub fn is_ideal(&self) -> bool {
        self.ambient.rank() == 1
    }

    /// Generators of an ideal as polynomials.
    pub fn polynomials(&self) -> Result<Vec<Polynomial>, IdealError> {
        if !self.is_ideal() {
            return Err(IdealError::NotAnIdeal);
        }
        Ok(self.gens.iter().map(|g| g.coords[0].clone()).collect())
    }

    /// Degrees of the generators.
    pub fn degrees(&self) -> Vec<Multidegree> {
        self.gens
            .iter()
            .map(|g| g.degree(&self.ring, &self.ambient).ok().flatten().expect("homogeneous nonzero generator"))
            .collect()
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            groebner_basis(&self.ring, &self.ambient, &self.gens, ModuleOrder::TermOverPosition)
                .expect("generators were checked on construction")
        })
    }

    pub fn contains(&self, v: &ModuleElement) -> Result<bool, IdealError> {
        Ok(self.gb().contains(v)?)
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Submodule) -> Result<bool, IdealError> {
        self.check_same(other)?;
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as submodules, via mutual normal forms.
    pub fn equals(&self, other: &Submodule) -> Result<bool, IdealError> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.gb().is_whole_module()
    }

    fn check_same(&self, other: &Submodule) -> Result<(), IdealError> {
        if *self.ring != *other.ring || self.ambient != other.ambient {
            return Err(IdealError::AmbientMismatch);
        }
        Ok(())
    }

    /// Same submodule, generated by the Gröbner basis.
    pub fn with_gb_generators(&self) -> Submodule {
        let gb = self.gb().clone();
        Submodule {
            ring: self.ring.clone(),
            ambient: self.ambient.clone(),
            gens: gb.elements().to_vec(),
            gb: Arc::new(OnceLock::from(gb)),
        }
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.display(&self.ring)).collect();
        format!("<{}>", parts.join(", "))
    }
}

/// A minimal generating set, chosen greedily degree by degree.
pub fn minimal_generators(a: &Submodule) -> Submodule {
    let ring = &a.ring;
    let amb = Ambient::top(ring, a.ambient.degrees());
    let vecs: Vec<Vector> = a.gens.iter().map(|g| amb.from_coords(ring, &g.coords)).collect();
    let degrees = a.degrees();
    let cfg = Config { graded: true, select: true, ..Config::default() };
    let out = Engine::new(ring, &amb, cfg).run(&vecs, &degrees);
    let gb = GroebnerBasis::from_vectors(ring.clone(), a.ambient.clone(), ModuleOrder::TermOverPosition, amb, out.basis);
    Submodule {
        ring: ring.clone(),
        ambient: a.ambient.clone(),
        gens: out.gens.iter().map(|&k| a.gens[k].clone()).collect(),
        gb: Arc::new(OnceLock::from(gb)),
    }
}

/// `A ∩ B` by elimination: the submodule `t A + (1 - t) B` of the free
/// module over S[t], intersected with the t-free part.
pub fn intersect(a: &Submodule, b: &Submodule) -> Result<Submodule, IdealError> {
    a.check_same(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Submodule::zero(&a.ring, a.ambient.clone()));
    }
    if let Some(m) = monomial_intersection(a, b) {
        return Ok(m);
    }
    let ring = &a.ring;
    let (ext, t) = ring.with_elimination_variable();
    let amb = Ambient::top(&ext, a.ambient.degrees());
    let tvar = ext.var(t);
    let mut cands: Vec<Vector> = Vec::new();
    for g in &a.gens {
        let coords: Vec<Polynomial> = g
            .coords
            .iter()
            .map(|p| Polynomial::from_terms(&ext, p.terms().iter().map(|&(m, c)| (m.mul(&tvar), c)).collect()))
            .collect();
        cands.push(amb.from_coords(&ext, &coords));
    }
    let f = ring.field();
    for g in &b.gens {
        let coords: Vec<Polynomial> = g
            .coords
            .iter()
            .map(|p| {
                let mut terms = Vec::new();
                for &(m, c) in p.terms() {
                    terms.push((m, c));
                    terms.push((m.mul(&tvar), f.neg(c)));
                }
                Polynomial::from_terms(&ext, terms)
            })
            .collect();
        cands.push(amb.from_coords(&ext, &coords));
    }
    let degrees = vec![Multidegree::zero(ring.r()); cands.len()];
    let cfg = Config { tail_reduce: true, ..Config::default() };
    let out = Engine::new(&ext, &amb, cfg).run(&cands, &degrees);
    let gens: Vec<ModuleElement> = out
        .basis
        .iter()
        .filter(|v| v[0].key.exponent(t) == 0)
        .map(|v| {
            let coords = amb.to_coords(v);
            ModuleElement::new(
                coords
                    .into_iter()
                    .map(|p| Polynomial::from_terms(ring, p.into_terms()))
                    .collect(),
            )
        })
        .collect();
    Ok(minimal_generators(&Submodule::new_unchecked(ring, a.ambient.clone(), gens)))
}

/// `A ∩ B` from the syzygies of the concatenated generators; used to
/// cross-check [`intersect`].
pub fn intersect_via_syzygies(a: &Submodule, b: &Submodule) -> Result<Submodule, IdealError> {
    a.check_same(b)?;
    let ring = &a.ring;
    let mut gens = a.gens.clone();
    gens.extend(b.gens.iter().cloned());
    let mut degrees = a.degrees();
    degrees.extend(b.degrees());
    let syz = syzygies_with_degrees(ring, &a.ambient, &gens, &degrees);
    let na = a.gens.len();
    let out: Vec<ModuleElement> = syz
        .generators
        .iter()
        .map(|s| {
            let mut acc = ModuleElement::zero(a.ambient.rank());
            for (c, g) in s.coords[..na].iter().zip(&a.gens) {
                if !c.is_zero() {
                    acc = acc.add(&g.mul_poly(c, ring), ring);
                }
            }
            acc
        })
        .collect();
    Ok(minimal_generators(&Submodule::new_unchecked(ring, a.ambient.clone(), out)))
}

/// Is every generator a monomial times a basis vector?
fn monomial_generators(a: &Submodule) -> Option<Vec<(Monomial, usize)>> {
    a.gens
        .iter()
        .map(|g| {
            let mut nz = g.coords.iter().enumerate().filter(|(_, p)| !p.is_zero());
            let (j, p) = nz.next()?;
            if nz.next().is_some() || p.len() != 1 {
                return None;
            }
            Some((p.terms()[0].0, j))
        })
        .collect()
}

fn monomial_intersection(a: &Submodule, b: &Submodule) -> Option<Submodule> {
    let ma = monomial_generators(a)?;
    let mb = monomial_generators(b)?;
    let ring = &a.ring;
    let mut out: Vec<(Monomial, usize)> = Vec::new();
    for (u, i) in &ma {
        for (v, j) in &mb {
            if i == j {
                out.push((ring.lcm(u, v), *i));
            }
        }
    }
    Some(monomial_submodule(ring, a.ambient.clone(), out))
}

/// Minimal monomial submodule generated by `terms`.
pub(crate) fn monomial_submodule(ring: &RingRef, ambient: FreeModule, mut terms: Vec<(Monomial, usize)>) -> Submodule {
    terms.sort_by(|a, b| a.1.cmp(&b.1).then(ring.cmp(&a.0, &b.0)));
    terms.dedup();
    let mut keep: Vec<(Monomial, usize)> = Vec::new();
    for (m, j) in terms {
        if !keep.iter().any(|(u, i)| *i == j && u.divides(&m)) {
            keep.push((m, j));
        }
    }
    let k = ambient.rank();
    let gens = keep
        .into_iter()
        .map(|(m, j)| {
            let mut e = ModuleElement::zero(k);
            e.coords[j] = Polynomial::term(ring, m, 1);
            e
        })
        .collect();
    Submodule::new_unchecked(ring, ambient, gens)
}

/// B^a = ∩ P_i^{a_i}, one exponent per irrelevant prime.
pub fn irrelevant_power(ring: &RingRef, a: &[i64]) -> Result<Submodule, IdealError> {
    let primes = ring.irrelevant_primes();
    if a.len() != primes.len() || a.iter().any(|&x| x < 0) {
        return Err(IdealError::BadExponent(a.to_vec()));
    }
    let ambient = FreeModule::ring(ring.r());
    let mut cur = vec![(Monomial::one(), 0usize)];
    for (prime, &ai) in primes.iter().zip(a) {
        let pow = prime_power_monomials(ring, prime, ai as u32);
        let mut next = Vec::new();
        for (u, _) in &cur {
            for v in &pow {
                next.push((ring.lcm(u, v), 0));
            }
        }
        cur = monomial_submodule(ring, ambient.clone(), next)
            .gens
            .iter()
            .map(|g| (g.coords[0].terms()[0].0, 0))
            .collect();
    }
    Ok(monomial_submodule(ring, ambient, cur))
}

/// Monomials of total degree `e` in the variables `vars`.
fn prime_power_monomials(ring: &Ring, vars: &[usize], e: u32) -> Vec<Monomial> {
    crate::ring::compositions(e, vars.len())
        .into_iter()
        .map(|c| {
            let mut exps = vec![0u32; ring.nvars()];
            for (&v, &x) in vars.iter().zip(&c) {
                exps[v] = x;
            }
            ring.monomial(&exps)
        })
        .collect()
}

/// The irrelevant ideal B.
pub fn irrelevant_ideal(ring: &RingRef) -> Submodule {
    let ones = vec![1; ring.irrelevant_primes().len()];
    irrelevant_power(ring, &ones).expect("valid exponent")
}

/// The prime P_i (0-based).
pub fn irrelevant_prime(ring: &RingRef, i: usize) -> Submodule {
    let gens = ring.irrelevant_primes()[i].iter().map(|&v| Polynomial::var(ring, v)).collect();
    Submodule::ideal(ring, gens).expect("variables are homogeneous")
}

/// M_{≥a}: each generator of degree c times all monomials of degree
/// max(a - c, 0).
pub fn truncate(m: &Submodule, a: &Multidegree) -> Result<Submodule, IdealError> {
    let ring = &m.ring;
    ring.product_dims()?;
    ring.check_degree_len(a)?;
    let mut gens = Vec::new();
    for (g, c) in m.gens.iter().zip(m.degrees()) {
        let shift = (a - &c).join(&Multidegree::zero(ring.r()));
        for x in ring.monomials_of_degree(&shift) {
            gens.push(ModuleElement::new(
                g.coords.iter().map(|p| p.mul_term(&x, 1, ring)).collect(),
            ));
        }
    }
    Ok(minimal_generators(&Submodule::new_unchecked(ring, m.ambient.clone(), gens)))
}

/// dim_k (F/A)_b: count standard monomials of degree b.
pub fn hilbert_function(a: &Submodule, b: &Multidegree) -> Result<usize, IdealError> {
    let ring = &a.ring;
    ring.check_degree_len(b)?;
    let leads = a.gb().leads();
    let mut count = 0;
    for (j, c) in a.ambient.degrees().iter().enumerate() {
        let d = b - c;
        let ms = ring.monomials_of_degree(&d);
        count += ms
            .iter()
            .filter(|m| !leads.iter().any(|(l, i)| *i == j && l.divides(m)))
            .count();
    }
    Ok(count)
}

/// Codimension of an ideal from its initial ideal.
pub fn codim(i: &Submodule) -> Result<usize, IdealError> {
    if !i.is_ideal() {
        return Err(IdealError::NotAnIdeal);
    }
    if i.is_whole() {
        return Err(IdealError::UnitIdeal);
    }
    let n = i.ring.nvars();
    let masks: Vec<u32> = i.gb().leads().iter().map(|(m, _)| m.mask()).collect();
    // largest variable set containing no lead-term support
    let mut best = 0;
    for s in 0u32..(1 << n) {
        let size = s.count_ones() as usize;
        if size > best && masks.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    Ok(n - best)
}

/// U/W with W ⊆ U.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub upper: Submodule,
    pub lower: Submodule,
}

impl Subquotient {
    pub fn new(upper: Submodule, lower: Submodule) -> Result<Self, IdealError> {
        if !lower.is_subset(&upper)? {
            return Err(IdealError::NotContained);
        }
        Ok(Subquotient { upper, lower })
    }

    /// U = W.
    pub fn is_zero(&self) -> Result<bool, IdealError> {
        self.upper.is_subset(&self.lower)
    }
}

/// Is U/W supported on the irrelevant locus, i.e. U ⊆ (W : B^∞)?
pub fn is_b_torsion(h: &Subquotient) -> Result<bool, IdealError> {
    if h.is_zero()? {
        return Ok(true);
    }
    let sat = b_saturate(&h.lower)?;
    h.upper.is_subset(&sat)
}
