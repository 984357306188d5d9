//! Gröbner bases, normal forms and syzygies for submodules of twisted free
//! modules.

pub(crate) mod engine;
pub(crate) mod vector;

use std::fmt;

use thiserror::Error;

use crate::ring::{Monomial, Multidegree, Polynomial, Ring, RingError, RingRef};

use engine::{Config, Engine};
use vector::{sub_mul, Ambient, Term, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("generator {index} is not homogeneous: {source}")]
    Inhomogeneous { index: usize, source: RingError },
    #[error("generator {0} is zero and has no degree")]
    ZeroGenerator(usize),
    #[error("element has {got} coordinates but the ambient module has rank {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The free module ⊕ S(-a_j), stored by its generator degrees a_j.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModule {
    degrees: Vec<Multidegree>,
}

impl FreeModule {
    pub fn new(degrees: Vec<Multidegree>) -> Self {
        FreeModule { degrees }
    }

    /// S itself.
    pub fn ring(r: usize) -> Self {
        FreeModule { degrees: vec![Multidegree::zero(r)] }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Generator degrees a_j.
    pub fn degrees(&self) -> &[Multidegree] {
        &self.degrees
    }

    /// Twists -a_j, as written in S(-a_j).
    pub fn twists(&self) -> Vec<Multidegree> {
        self.degrees.iter().map(|d| -d).collect()
    }
}

/// A vector of polynomials, one per generator of its ambient free module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    pub coords: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn new(coords: Vec<Polynomial>) -> Self {
        ModuleElement { coords }
    }

    pub fn zero(rank: usize) -> Self {
        ModuleElement { coords: vec![Polynomial::zero(); rank] }
    }

    /// An element of S viewed as a rank-one vector.
    pub fn scalar(p: Polynomial) -> Self {
        ModuleElement { coords: vec![p] }
    }

    pub fn unit(rank: usize, j: usize) -> Self {
        let mut e = Self::zero(rank);
        e.coords[j] = Polynomial::one();
        e
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, o: &Self, ring: &Ring) -> Self {
        ModuleElement {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.add(b, ring)).collect(),
        }
    }

    pub fn sub(&self, o: &Self, ring: &Ring) -> Self {
        ModuleElement {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.sub(b, ring)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &Polynomial, ring: &Ring) -> Self {
        ModuleElement { coords: self.coords.iter().map(|a| a.mul(f, ring)).collect() }
    }

    pub fn scale(&self, c: u32, ring: &Ring) -> Self {
        ModuleElement { coords: self.coords.iter().map(|a| a.scale(c, ring)).collect() }
    }

    /// Degree in the ambient module, `None` for zero.
    pub fn degree(&self, ring: &Ring, ambient: &FreeModule) -> Result<Option<Multidegree>, GroebnerError> {
        if self.rank() != ambient.rank() {
            return Err(GroebnerError::AmbientMismatch { expected: ambient.rank(), got: self.rank() });
        }
        let mut out: Option<(Multidegree, usize)> = None;
        for (j, p) in self.coords.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = &p.multidegree(ring)? + &ambient.degrees[j];
            match &out {
                None => out = Some((d, j)),
                Some((d0, j0)) if *d0 != d => {
                    let (m0, m1) = (self.coords[*j0].terms()[0].0, p.terms()[0].0);
                    return Err(RingError::Inhomogeneous {
                        first: format!("{}*e{}", ring.fmt_monomial(&m0), j0),
                        first_degree: d0.clone(),
                        second: format!("{}*e{}", ring.fmt_monomial(&m1), j),
                        second_degree: d,
                    }
                    .into());
                }
                _ => {}
            }
        }
        Ok(out.map(|(d, _)| d))
    }

    pub fn display(&self, ring: &Ring) -> String {
        if self.rank() == 1 {
            return self.coords[0].display(ring);
        }
        let parts: Vec<String> = self.coords.iter().map(|p| p.display(ring)).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Module term orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Compare monomials first, positions (by degree, then index) second.
    TermOverPosition,
    /// Compare positions first.
    PositionOverTerm,
    /// Compare `m * T_j` first, then the index; `T_j` are given.
    Schreyer(Vec<Monomial>),
}

impl ModuleOrder {
    pub(crate) fn ambient(&self, ring: &Ring, module: &FreeModule) -> Ambient {
        match self {
            ModuleOrder::TermOverPosition => Ambient::top(ring, module.degrees()),
            ModuleOrder::PositionOverTerm => Ambient::pot(ring, module.degrees()),
            ModuleOrder::Schreyer(t) => Ambient::schreyer(ring, module.degrees(), t.clone()),
        }
    }
}

/// A reduced Gröbner basis of a submodule.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: RingRef,
    ambient: FreeModule,
    order: ModuleOrder,
    amb: Ambient,
    vecs: Vec<Vector>,
    elements: Vec<ModuleElement>,
    by_comp: Vec<Vec<usize>>,
    reduced: bool,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("rank", &self.ambient.rank())
            .field("elements", &self.elements.len())
            .field("reduced", &self.reduced)
            .finish()
    }
}

/// Check every generator is homogeneous and return its degree.
pub(crate) fn generator_degrees(
    ring: &Ring,
    ambient: &FreeModule,
    gens: &[ModuleElement],
) -> Result<Vec<Option<Multidegree>>, GroebnerError> {
    gens.iter()
        .enumerate()
        .map(|(index, g)| {
            g.degree(ring, ambient).map_err(|e| match e {
                GroebnerError::Ring(source) => GroebnerError::Inhomogeneous { index, source },
                other => other,
            })
        })
        .collect()
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn groebner_basis(
    ring: &RingRef,
    ambient: &FreeModule,
    gens: &[ModuleElement],
    order: ModuleOrder,
) -> Result<GroebnerBasis, GroebnerError> {
    let degs = generator_degrees(ring, ambient, gens)?;
    let amb = order.ambient(ring, ambient);
    let (vecs, degrees): (Vec<Vector>, Vec<Multidegree>) = gens
        .iter()
        .zip(degs)
        .filter_map(|(g, d)| d.map(|d| (amb.from_coords(ring, &g.coords), d)))
        .unzip();
    let cfg = Config {
        graded: true,
        select: true,
        tail_reduce: true,
        product_criterion: ambient.rank() == 1,
        ..Config::default()
    };
    let out = Engine::new(ring, &amb, cfg).run(&vecs, &degrees);
    Ok(GroebnerBasis::from_vectors(ring.clone(), ambient.clone(), order, amb, out.basis))
}

impl GroebnerBasis {
    /// Interreduce a Gröbner basis given as engine vectors.
    pub(crate) fn from_vectors(
        ring: RingRef,
        ambient: FreeModule,
        order: ModuleOrder,
        amb: Ambient,
        basis: Vec<Vector>,
    ) -> Self {
        let mut idx: Vec<usize> = (0..basis.len()).collect();
        idx.sort_by(|&a, &b| amb.cmp(&ring, &basis[a][0], &basis[b][0]).then(a.cmp(&b)));
        let mut keep: Vec<usize> = Vec::new();
        for i in idx {
            let l = basis[i][0];
            if keep.iter().any(|&k| {
                let lk = basis[k][0];
                lk.comp == l.comp && lk.key.divides(&l.key)
            }) {
                continue;
            }
            keep.push(i);
        }
        let mut gb = GroebnerBasis {
            by_comp: vec![Vec::new(); ambient.rank()],
            vecs: keep.iter().map(|&i| basis[i].clone()).collect(),
            elements: Vec::new(),
            ring,
            ambient,
            order,
            amb,
            reduced: false,
        };
        for (k, v) in gb.vecs.iter().enumerate() {
            gb.by_comp[v[0].comp as usize].push(k);
        }
        // tail reduction; leads are mutually non-divisible so they survive
        for k in 0..gb.vecs.len() {
            let v = std::mem::take(&mut gb.vecs[k]);
            let lead = v[0];
            let tail = gb.reduce_skipping(v[1..].to_vec(), Some(k));
            let mut w = vec![lead];
            w.extend(tail);
            let inv = gb.ring.field().inv(lead.coef);
            vector::scale(&gb.ring, inv, &mut w);
            gb.vecs[k] = w;
        }
        gb.elements = gb
            .vecs
            .iter()
            .map(|v| ModuleElement::new(gb.amb.to_coords(v)))
            .collect();
        gb.reduced = true;
        gb
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Lead terms as (monomial, component).
    pub fn leads(&self) -> Vec<(Monomial, usize)> {
        self.vecs
            .iter()
            .map(|v| {
                let t = v[0];
                (t.key.div_exact(&self.amb.shifts[t.comp as usize]), t.comp as usize)
            })
            .collect()
    }

    /// Is the unit vector of some component, or 1 for ideals, in the basis?
    pub fn is_whole_module(&self) -> bool {
        (0..self.ambient.rank()).all(|c| {
            self.by_comp[c].iter().any(|&k| {
                let t = self.vecs[k][0];
                t.key == self.amb.shifts[c]
            })
        })
    }

    fn divisor(&self, t: &Term, skip: Option<usize>) -> Option<usize> {
        self.by_comp[t.comp as usize]
            .iter()
            .copied()
            .find(|&k| Some(k) != skip && self.vecs[k][0].key.divides(&t.key))
    }

    fn reduce_skipping(&self, mut v: Vector, skip: Option<usize>) -> Vector {
        let mut k = 0;
        while k < v.len() {
            let t = v[k];
            match self.divisor(&t, skip) {
                Some(i) => {
                    let g = &self.vecs[i];
                    let c = self.ring.field().mul(t.coef, self.ring.field().inv(g[0].coef));
                    let m = t.key.div_exact(&g[0].key);
                    let tail = sub_mul(&self.ring, &self.amb, &v[k..], c, &m, g);
                    v.truncate(k);
                    v.extend(tail);
                }
                None => k += 1,
            }
        }
        v
    }

    pub(crate) fn reduce_vector(&self, v: Vector) -> Vector {
        self.reduce_skipping(v, None)
    }

    /// Remainder of `v` on division by the basis.
    pub fn normal_form(&self, v: &ModuleElement) -> Result<ModuleElement, GroebnerError> {
        if v.rank() != self.ambient.rank() {
            return Err(GroebnerError::AmbientMismatch { expected: self.ambient.rank(), got: v.rank() });
        }
        let r = self.reduce_vector(self.amb.from_coords(&self.ring, &v.coords));
        Ok(ModuleElement::new(self.amb.to_coords(&r)))
    }

    pub fn contains(&self, v: &ModuleElement) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Buchberger's criterion: every S-pair reduces to zero.
    pub fn satisfies_buchberger(&self) -> bool {
        let ring = &self.ring;
        for i in 0..self.vecs.len() {
            for j in i + 1..self.vecs.len() {
                let (a, b) = (&self.vecs[i], &self.vecs[j]);
                if a[0].comp != b[0].comp {
                    continue;
                }
                let l = ring.lcm(&a[0].key, &b[0].key);
                let f = ring.field();
                let s = sub_mul(
                    ring,
                    &self.amb,
                    &vector::mul_term(ring, f.inv(a[0].coef), &l.div_exact(&a[0].key), a),
                    f.inv(b[0].coef),
                    &l.div_exact(&b[0].key),
                    b,
                );
                if !self.reduce_vector(s).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Result of a syzygy computation.
#[derive(Clone, Debug)]
pub struct Syzygies {
    /// ⊕ S(-deg g_j).
    pub source: FreeModule,
    pub generators: Vec<ModuleElement>,
}

/// Minimal generators of the kernel of `e_j ↦ gens[j]`.
pub fn syzygy_module(
    ring: &RingRef,
    ambient: &FreeModule,
    gens: &[ModuleElement],
) -> Result<Syzygies, GroebnerError> {
    let degs = generator_degrees(ring, ambient, gens)?;
    let degrees = degs
        .into_iter()
        .enumerate()
        .map(|(k, d)| d.ok_or(GroebnerError::ZeroGenerator(k)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(syzygies_with_degrees(ring, ambient, gens, &degrees))
}

/// Like [`syzygy_module`] with the source degrees supplied, which allows
/// zero generators.
pub(crate) fn syzygies_with_degrees(
    ring: &Ring,
    ambient: &FreeModule,
    gens: &[ModuleElement],
    degrees: &[Multidegree],
) -> Syzygies {
    let amb = Ambient::top(ring, ambient.degrees());
    let vecs: Vec<Vector> = gens.iter().map(|g| amb.from_coords(ring, &g.coords)).collect();
    let cfg = Config { track: true, graded: true, tail_reduce: true, ..Config::default() };
    let out = Engine::new(ring, &amb, cfg).run(&vecs, degrees);
    let gen_amb = out.gen_amb;
    let syz_degrees: Vec<Multidegree> =
        out.syzygies.iter().map(|s| gen_amb.degree(ring, &s[0])).collect();
    let cfg = Config { graded: true, select: true, ..Config::default() };
    let minimal = Engine::new(ring, &gen_amb, cfg).run(&out.syzygies, &syz_degrees);
    Syzygies {
        source: FreeModule::new(degrees.to_vec()),
        generators: minimal
            .gens
            .iter()
            .map(|&k| ModuleElement::new(gen_amb.to_coords(&out.syzygies[k])))
            .collect(),
    }
}

/// Apply `e_j ↦ gens[j]` to `v`.
pub fn apply_map(ring: &Ring, gens: &[ModuleElement], target_rank: usize, v: &ModuleElement) -> ModuleElement {
    let mut acc = ModuleElement::zero(target_rank);
    for (c, g) in v.coords.iter().zip(gens) {
        if !c.is_zero() {
            acc = acc.add(&g.mul_poly(c, ring), ring);
        }
    }
    acc
}
