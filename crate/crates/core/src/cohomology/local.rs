//! Local cohomology H^i_B(M)_p, computed as the colimit of
//! Ext^i(S/B^[t], M)_p over Frobenius powers B^[t], with a certified fast
//! path read off the line-bundle cohomology of a free resolution of M.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use super::{h_line, euler_char_from_betti, CohomologyError};
use crate::complexes::{free_resolution, BettiTable, FreeComplex};
use crate::groebner::ModuleElement;
use crate::ideals::{b_saturate, hilbert_function, irrelevant_ideal, Submodule};
use crate::linalg::sparse_rank;
use crate::ring::{box_points, Monomial, Multidegree, Polynomial, RingRef};

/// A dimension together with how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCohomology {
    pub dim: u64,
    /// Exact, read off the resolution without any colimit.
    pub certified: bool,
    /// For colimit values: two consecutive Frobenius powers agreed.
    pub stabilized: bool,
    /// Last Frobenius exponent used (0 when certified).
    pub t: u32,
}

impl LocalCohomology {
    fn exact(dim: u64) -> Self {
        LocalCohomology { dim, certified: true, stabilized: true, t: 0 }
    }
}

type Key = (Monomial, usize);

/// Standard monomials of a graded piece of M = F/N.
struct Piece {
    basis: Vec<Key>,
    index: HashMap<Key, usize>,
}

/// Cohomology of one module M = ambient / N, with caches shared across
/// degrees.
pub struct ModuleCohomology {
    m: Submodule,
    ring: RingRef,
    n: Vec<usize>,
    table: BettiTable,
    saturated: bool,
    leads: Vec<Key>,
    koszul_b: FreeComplex,
    pieces: RefCell<HashMap<Multidegree, Rc<Piece>>>,
    times_var: RefCell<HashMap<(Key, usize), Rc<Vec<(Key, u32)>>>>,
}

impl ModuleCohomology {
    pub fn new(m: &Submodule) -> Result<Self, CohomologyError> {
        let ring = m.ring().clone();
        let n = ring.product_dims().map_err(|_| CohomologyError::CustomRing)?.to_vec();
        let table = free_resolution(m, true, None)?.betti();
        let saturated = b_saturate(m)?.equals(m)?;
        let koszul_b = free_resolution(&irrelevant_ideal(&ring), true, None)?;
        Ok(ModuleCohomology {
            leads: m.gb().leads(),
            m: m.clone(),
            ring,
            n,
            table,
            saturated,
            koszul_b,
            pieces: RefCell::new(HashMap::new()),
            times_var: RefCell::new(HashMap::new()),
        })
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn betti(&self) -> &BettiTable {
        &self.table
    }

    pub fn dims(&self) -> &[usize] {
        &self.n
    }

    fn total(&self) -> usize {
        self.n.iter().sum()
    }

    fn is_standard(&self, k: &Key) -> bool {
        !self.leads.iter().any(|(l, j)| *j == k.1 && l.divides(&k.0))
    }

    fn piece(&self, e: &Multidegree) -> Rc<Piece> {
        if let Some(p) = self.pieces.borrow().get(e) {
            return p.clone();
        }
        let mut basis = Vec::new();
        for (j, c) in self.m.ambient().degrees().iter().enumerate() {
            for mono in self.ring.monomials_of_degree(&(e - c)) {
                let k = (mono, j);
                if self.is_standard(&k) {
                    basis.push(k);
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let p = Rc::new(Piece { basis, index });
        self.pieces.borrow_mut().insert(e.clone(), p.clone());
        p
    }

    /// Normal form of x_v * (standard monomial).
    fn mul_var(&self, k: &Key, v: usize) -> Rc<Vec<(Key, u32)>> {
        if let Some(x) = self.times_var.borrow().get(&(*k, v)) {
            return x.clone();
        }
        let prod = (k.0.mul(&self.ring.var(v)), k.1);
        let out = if self.is_standard(&prod) {
            vec![(prod, 1)]
        } else {
            let mut coords = vec![Polynomial::zero(); self.m.ambient().rank()];
            coords[k.1] = Polynomial::term(&self.ring, prod.0, 1);
            let nf = self.m.gb().normal_form(&ModuleElement::new(coords)).expect("rank matches");
            nf.coords
                .iter()
                .enumerate()
                .flat_map(|(j, p)| p.terms().iter().map(move |(mono, c)| ((*mono, j), *c)))
                .collect()
        };
        let out = Rc::new(out);
        self.times_var.borrow_mut().insert((*k, v), out.clone());
        out
    }

    /// mono^t * v, as a normal form.
    fn mul_monomial(&self, v: Vec<(Key, u32)>, mono: &Monomial, t: u32) -> Vec<(Key, u32)> {
        let f = self.ring.field();
        let mut cur = v;
        for var in 0..self.ring.nvars() {
            for _ in 0..mono.exponent(var) * t {
                let mut acc: HashMap<Key, u32> = HashMap::new();
                for (k, c) in &cur {
                    for (k2, c2) in self.mul_var(k, var).iter() {
                        let e = acc.entry(*k2).or_insert(0);
                        *e = f.add(*e, f.mul(*c, *c2));
                    }
                }
                cur = acc.into_iter().filter(|(_, c)| *c != 0).collect();
            }
        }
        cur
    }

    /// Degree-b part of Hom(G_k, M) where G resolves S/B^[t].
    fn cochain_pieces(&self, k: usize, b: &Multidegree, t: u32) -> Vec<Rc<Piece>> {
        match self.koszul_b.module(k) {
            Some(g) => g.degrees().iter().map(|c| self.piece(&(b + &c.scaled(t as i32)))).collect(),
            None => Vec::new(),
        }
    }

    /// Rank of Hom(G_k, M)_b → Hom(G_{k+1}, M)_b.
    fn coboundary_rank(&self, k: usize, b: &Multidegree, t: u32) -> usize {
        let Ok(d) = self.koszul_b.differential(k + 1) else { return 0 };
        let src = self.cochain_pieces(k, b, t);
        let dst = self.cochain_pieces(k + 1, b, t);
        let mut offsets = Vec::with_capacity(dst.len());
        let mut acc = 0;
        for p in &dst {
            offsets.push(acc);
            acc += p.basis.len();
        }
        let f = self.ring.field();
        let mut rows = Vec::new();
        for (s, piece) in src.iter().enumerate() {
            for key in &piece.basis {
                let mut row = Vec::new();
                for (col, target) in dst.iter().enumerate() {
                    let entry = d.entry(s, col);
                    for (mono, c) in entry.terms() {
                        for (k2, c2) in self.mul_monomial(vec![(*key, 1)], mono, t) {
                            let idx = target.index[&k2];
                            row.push((offsets[col] + idx, f.mul(*c, c2)));
                        }
                    }
                }
                // merge repeated columns
                row.sort_unstable_by_key(|x| x.0);
                let mut merged: Vec<(usize, u32)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match merged.last_mut() {
                        Some(last) if last.0 == c => last.1 = f.add(last.1, v),
                        _ => merged.push((c, v)),
                    }
                }
                rows.push(merged);
            }
        }
        sparse_rank(f, rows)
    }

    /// dim Ext^i(S/B^[t], M)_b.
    pub fn ext_dim(&self, i: usize, b: &Multidegree, t: u32) -> u64 {
        let dim: usize = self.cochain_pieces(i, b, t).iter().map(|p| p.basis.len()).sum();
        let out = self.coboundary_rank(i, b, t);
        let inc = if i == 0 { 0 } else { self.coboundary_rank(i - 1, b, t) };
        (dim - out - inc) as u64
    }

    /// The colimit over t, stopping once two consecutive values agree.
    pub fn ext_colimit(&self, i: usize, b: &Multidegree, t_max: u32) -> LocalCohomology {
        let mut prev = self.ext_dim(i, b, 1);
        for t in 2..=t_max.max(2) {
            let cur = self.ext_dim(i, b, t);
            if cur == prev {
                return LocalCohomology { dim: cur, certified: false, stabilized: true, t };
            }
            prev = cur;
        }
        LocalCohomology { dim: prev, certified: false, stabilized: false, t: t_max.max(2) }
    }

    /// Total dimension of the E_1 page of the hypercohomology spectral
    /// sequence in total degree j.
    fn e1(&self, j: i64, p: &Multidegree) -> u64 {
        self.table
            .entries()
            .filter_map(|(k, a, r)| {
                let q = j + k as i64;
                (q >= 0).then(|| r as u64 * h_line(&self.n, (p - a).as_slice(), q as usize))
            })
            .sum()
    }

    /// h^j(M~(p)) where the E_1 page forces it: a zero E_1 term kills it, and
    /// a term with zero neighbours survives unchanged. One remaining unknown
    /// is recovered from χ.
    fn certified_sheaf(&self, p: &Multidegree) -> Vec<Option<u64>> {
        let total = self.total() as i64;
        let e: Vec<u64> = (-1..=total + 1).map(|j| self.e1(j, p)).collect();
        let mut out: Vec<Option<u64>> = (0..=total)
            .map(|j| {
                let (below, here, above) = (e[j as usize], e[j as usize + 1], e[j as usize + 2]);
                if here == 0 || (below == 0 && above == 0) {
                    Some(here)
                } else {
                    None
                }
            })
            .collect();
        let unknown: Vec<usize> = (0..out.len()).filter(|&j| out[j].is_none()).collect();
        if let [j] = unknown[..] {
            let chi = euler_char_from_betti(&self.n, &self.table, p);
            let rest: i64 = out
                .iter()
                .enumerate()
                .filter_map(|(q, v)| v.map(|v| if q % 2 == 0 { v as i64 } else { -(v as i64) }))
                .sum();
            let v = if j % 2 == 0 { chi - rest } else { rest - chi };
            if v >= 0 {
                out[j] = Some(v as u64);
            }
        }
        out
    }

    /// h^j(M~(p)).
    pub fn sheaf_cohomology(&self, j: usize, p: &Multidegree, t_max: u32) -> Result<LocalCohomology, CohomologyError> {
        self.check(p)?;
        if j > self.total() {
            return Ok(LocalCohomology::exact(0));
        }
        if let Some(v) = self.certified_sheaf(p)[j] {
            return Ok(LocalCohomology::exact(v));
        }
        if j >= 1 {
            return Ok(self.ext_colimit(j + 1, p, t_max));
        }
        // 0 → H^0_B(M)_p → M_p → H^0(M~(p)) → H^1_B(M)_p → 0
        let hf = hilbert_function(&self.m, p)? as u64;
        let h1 = self.ext_colimit(1, p, t_max);
        let h0 = if self.saturated { LocalCohomology::exact(0) } else { self.ext_colimit(0, p, t_max) };
        Ok(LocalCohomology {
            dim: hf + h1.dim - h0.dim,
            certified: false,
            stabilized: h1.stabilized && h0.stabilized,
            t: h1.t.max(h0.t),
        })
    }

    /// dim H^i_B(M)_p.
    pub fn local_cohomology(&self, i: usize, p: &Multidegree, t_max: u32) -> Result<LocalCohomology, CohomologyError> {
        self.check(p)?;
        if i > self.total() + 1 {
            return Ok(LocalCohomology::exact(0));
        }
        match i {
            0 if self.saturated => Ok(LocalCohomology::exact(0)),
            0 => Ok(self.ext_colimit(0, p, t_max)),
            1 => {
                if self.saturated {
                    if let Some(h0) = self.certified_sheaf(p)[0] {
                        let hf = hilbert_function(&self.m, p)? as u64;
                        return Ok(LocalCohomology::exact(h0 - hf));
                    }
                }
                Ok(self.ext_colimit(1, p, t_max))
            }
            _ => match self.certified_sheaf(p)[i - 1] {
                Some(v) => Ok(LocalCohomology::exact(v)),
                None => Ok(self.ext_colimit(i, p, t_max)),
            },
        }
    }

    fn check(&self, p: &Multidegree) -> Result<(), CohomologyError> {
        if p.len() != self.n.len() {
            return Err(CohomologyError::DegreeLength(p.clone()));
        }
        Ok(())
    }

    /// Default window: from -n-1 up to d+n+1 plus the largest generator
    /// degree of the relations.
    pub fn default_window(&self, d: &Multidegree) -> (Multidegree, Multidegree) {
        let r = self.n.len();
        let nn = Multidegree::from(self.n.iter().map(|&x| x as i32 + 1).collect::<Vec<_>>());
        let gens = self
            .m
            .generators()
            .iter()
            .filter_map(|g| g.degree(&self.ring, self.m.ambient()).ok().flatten())
            .fold(Multidegree::zero(r), |acc, g| acc.join(&g));
        (-&nn, &(d + &nn) + &gens)
    }
}

/// dim H^i_B(M)_b for M = ambient / `m`.
pub fn local_cohomology_dim(m: &Submodule, i: usize, b: &Multidegree, t_max: u32) -> Result<LocalCohomology, CohomologyError> {
    ModuleCohomology::new(m)?.local_cohomology(i, b, t_max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentInWindow,
    Refuted,
}

/// A nonzero local cohomology group inside the region that must vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: usize,
    pub p: Multidegree,
    pub dim: u64,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub d: Multidegree,
    pub window: (Multidegree, Multidegree),
    pub failures: Vec<Witness>,
    /// Groups checked, and how many of them needed the Ext colimit.
    pub checked: usize,
    pub via_colimit: usize,
    /// Colimit values that never stabilized before t_max.
    pub unstable: usize,
    pub verdict: Verdict,
}

impl fmt::Display for RegularityReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = &self.window;
        match self.verdict {
            Verdict::ConsistentInWindow => writeln!(out, "{} is consistent with regularity in the window {lo}..{hi}", self.d)?,
            Verdict::Refuted => writeln!(out, "{} is not in the regularity", self.d)?,
        }
        for w in &self.failures {
            let how = if w.certified { "" } else { " (colimit)" };
            writeln!(out, "  H^{}_B(M)_{} has dimension {}{how}", w.i, w.p, w.dim)?;
        }
        write!(
            out,
            "{} groups checked, {} through the Ext colimit, {} unstable",
            self.checked, self.via_colimit, self.unstable
        )
    }
}

/// Tests H^i_B(M)_p = 0 for i ≥ 1 and p ∈ (d - q + N^r) ∩ window, |q| = i - 1.
pub fn regularity_check(
    m: &Submodule,
    d: &Multidegree,
    window: Option<(Multidegree, Multidegree)>,
) -> Result<RegularityReport, CohomologyError> {
    let mc = ModuleCohomology::new(m)?;
    mc.regularity_check(d, window, super::DEFAULT_T_MAX)
}

impl ModuleCohomology {
    pub fn regularity_check(
        &self,
        d: &Multidegree,
        window: Option<(Multidegree, Multidegree)>,
        t_max: u32,
    ) -> Result<RegularityReport, CohomologyError> {
        self.check(d)?;
        if !self.saturated {
            return Err(CohomologyError::NotSaturated);
        }
        let (lo, hi) = window.unwrap_or_else(|| self.default_window(d));
        self.check(&lo)?;
        self.check(&hi)?;
        if !lo.le(&hi) {
            return Err(CohomologyError::EmptyWindow { lo, hi });
        }
        let mut report = RegularityReport {
            d: d.clone(),
            window: (lo.clone(), hi.clone()),
            failures: Vec::new(),
            checked: 0,
            via_colimit: 0,
            unstable: 0,
            verdict: Verdict::ConsistentInWindow,
        };
        for p in box_points(&lo, &hi) {
            // smallest |q| with p ≥ d - q
            let need: i64 = d.as_slice().iter().zip(p.as_slice()).map(|(&a, &b)| (a - b).max(0) as i64).sum();
            for i in (need as usize + 1).max(1)..=self.total() + 1 {
                let h = self.local_cohomology(i, &p, t_max)?;
                report.checked += 1;
                if !h.certified {
                    report.via_colimit += 1;
                    if !h.stabilized {
                        report.unstable += 1;
                    }
                }
                if h.dim != 0 {
                    report.failures.push(Witness { i, p: p.clone(), dim: h.dim, certified: h.certified });
                }
            }
        }
        if !report.failures.is_empty() {
            report.verdict = Verdict::Refuted;
        }
        Ok(report)
    }
}
