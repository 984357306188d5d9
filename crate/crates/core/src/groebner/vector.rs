//! Sparse vectors in a twisted free module, as used inside the engine.
//!
//! A term `c * m * e_j` is stored with key `m * T_j` where `T_j` is a fixed
//! per-component monomial. Comparing keys first and component second gives
//! term-over-position (all `T_j = 1`) or a Schreyer-type order (each `T_j`
//! the lead monomial of the image of `e_j`) with the same code.

use std::cmp::Ordering;

use crate::ring::{Monomial, Multidegree, Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub key: Monomial,
    pub comp: u32,
    pub coef: u32,
}

pub(crate) type Vector = Vec<Term>;

/// Layout and order of a free module as seen by the engine.
#[derive(Clone, Debug)]
pub(crate) struct Ambient {
    /// `T_j`.
    pub shifts: Vec<Monomial>,
    /// Generator degree minus `deg T_j`, so a term has degree `deg key + offset`.
    pub offsets: Vec<Multidegree>,
    /// Order weight of each offset.
    pub woffsets: Vec<i64>,
    /// Position tie-break: a smaller rank is a larger term.
    pub rank: Vec<u32>,
    pub pot: bool,
}

impl Ambient {
    /// Plain term-over-position with positions ranked by degree, then index.
    pub fn top(ring: &Ring, degrees: &[Multidegree]) -> Self {
        let mut idx: Vec<usize> = (0..degrees.len()).collect();
        idx.sort_by(|&a, &b| degrees[a].cmp(&degrees[b]).then(a.cmp(&b)));
        let mut rank = vec![0u32; degrees.len()];
        for (r, &i) in idx.iter().enumerate() {
            rank[i] = r as u32;
        }
        Ambient {
            shifts: vec![Monomial::one(); degrees.len()],
            woffsets: degrees.iter().map(|d| ring.weight_of_degree(d)).collect(),
            offsets: degrees.to_vec(),
            rank,
            pot: false,
        }
    }

    pub fn pot(ring: &Ring, degrees: &[Multidegree]) -> Self {
        Ambient {
            shifts: vec![Monomial::one(); degrees.len()],
            woffsets: degrees.iter().map(|d| ring.weight_of_degree(d)).collect(),
            offsets: degrees.to_vec(),
            rank: (0..degrees.len() as u32).collect(),
            pot: true,
        }
    }

    /// Schreyer-type layout: component `j` has generator degree `degrees[j]`
    /// and key shift `shifts[j]`; ties are broken by index.
    pub fn schreyer(ring: &Ring, degrees: &[Multidegree], shifts: Vec<Monomial>) -> Self {
        let offsets: Vec<Multidegree> = degrees
            .iter()
            .zip(shifts.iter())
            .map(|(d, t)| d - &ring.degree_of(t))
            .collect();
        Ambient {
            woffsets: offsets.iter().map(|d| ring.weight_of_degree(d)).collect(),
            offsets,
            shifts,
            rank: (0..degrees.len() as u32).collect(),
            pot: false,
        }
    }

    pub fn rank_len(&self) -> usize {
        self.shifts.len()
    }

    /// Term order. Position-over-term compares positions, then monomials.
    /// Otherwise: eliminated block, weight of the term's twisted degree,
    /// reverse-lex on keys, position.
    #[inline]
    pub fn cmp(&self, ring: &Ring, a: &Term, b: &Term) -> Ordering {
        let pos = || self.rank[b.comp as usize].cmp(&self.rank[a.comp as usize]);
        if self.pot {
            pos().then_with(|| ring.cmp(&a.key, &b.key))
        } else {
            ring.cmp_eliminated(&a.key, &b.key)
                .then_with(|| self.weight(a).cmp(&self.weight(b)))
                .then_with(|| ring.cmp_revlex(&a.key, &b.key))
                .then_with(pos)
        }
    }

    #[inline]
    pub fn weight(&self, t: &Term) -> i64 {
        t.key.weight() as i64 + self.woffsets[t.comp as usize]
    }

    pub fn degree(&self, ring: &Ring, t: &Term) -> Multidegree {
        &ring.degree_of(&t.key) + &self.offsets[t.comp as usize]
    }

    /// Weighted degree of a whole vector (max over terms, the sugar).
    pub fn sugar(&self, v: &[Term]) -> i64 {
        v.iter().map(|t| self.weight(t)).max().unwrap_or(i64::MIN)
    }

    /// Convert coordinates to a vector.
    pub fn from_coords(&self, ring: &Ring, coords: &[Polynomial]) -> Vector {
        let mut v: Vector = Vec::new();
        for (j, p) in coords.iter().enumerate() {
            for &(m, c) in p.terms() {
                v.push(Term { key: m.mul(&self.shifts[j]), comp: j as u32, coef: c });
            }
        }
        v.sort_by(|a, b| self.cmp(ring, b, a));
        v
    }

    /// Convert a vector back to coordinates.
    pub fn to_coords(&self, v: &[Term]) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); self.rank_len()];
        // Terms of one component appear in descending order already.
        for t in v {
            parts[t.comp as usize].push((t.key.div_exact(&self.shifts[t.comp as usize]), t.coef));
        }
        parts.into_iter().map(Polynomial::from_sorted).collect()
    }

    /// The basis vector `e_j`.
    pub fn unit(&self, j: usize) -> Vector {
        vec![Term { key: self.shifts[j], comp: j as u32, coef: 1 }]
    }
}

/// `a - c * m * b`.
pub(crate) fn sub_mul(
    ring: &Ring,
    amb: &Ambient,
    a: &[Term],
    c: u32,
    m: &Monomial,
    b: &[Term],
) -> Vector {
    let f = ring.field();
    let nc = f.neg(c);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let next_b = |j: usize| Term {
        key: b[j].key.mul(m),
        comp: b[j].comp,
        coef: f.mul(nc, b[j].coef),
    };
    let mut bt = (j < b.len()).then(|| next_b(j));
    while i < a.len() {
        let Some(t) = bt else { break };
        match amb.cmp(ring, &a[i], &t) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(t);
                j += 1;
                bt = (j < b.len()).then(|| next_b(j));
            }
            Ordering::Equal => {
                let s = f.add(a[i].coef, t.coef);
                if s != 0 {
                    out.push(Term { coef: s, ..a[i] });
                }
                i += 1;
                j += 1;
                bt = (j < b.len()).then(|| next_b(j));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push(next_b(j));
        j += 1;
    }
    out
}

/// `c * m * b`.
pub(crate) fn mul_term(ring: &Ring, c: u32, m: &Monomial, b: &[Term]) -> Vector {
    let f = ring.field();
    b.iter()
        .map(|t| Term { key: t.key.mul(m), comp: t.comp, coef: f.mul(c, t.coef) })
        .collect()
}

pub(crate) fn scale(ring: &Ring, c: u32, v: &mut [Term]) {
    let f = ring.field();
    for t in v {
        t.coef = f.mul(c, t.coef);
    }
}

