//! Cohomology on products of projective spaces: line bundles, Euler
//! characteristics of twisted modules, local cohomology and regularity in a
//! bounded window, the sets Δ_i, and Beilinson shapes.

mod local;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::complexes::{free_resolution, BettiTable, ComplexError, FreeComplex};
use crate::ideals::{IdealError, Submodule};
use crate::ring::{binom_poly, box_points, compositions, Multidegree, RingError};

pub use local::{local_cohomology_dim, regularity_check, LocalCohomology, ModuleCohomology, RegularityReport, Verdict, Witness};

pub const DEFAULT_T_MAX: u32 = 6;

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error("cohomology is only available over products of projective spaces")]
    CustomRing,
    #[error("empty degree window {lo}..{hi}")]
    EmptyWindow { lo: Multidegree, hi: Multidegree },
    #[error("index {i} out of range 0..={max}")]
    IndexOutOfRange { i: usize, max: usize },
    #[error("degree {0} has the wrong number of entries")]
    DegreeLength(Multidegree),
    #[error("the module is not B-saturated")]
    NotSaturated,
    #[error("vanishing assumption violated: chi = {chi} for the block u = {u} at d = {d}")]
    VanishingViolated { u: Multidegree, d: Multidegree, chi: i64 },
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Nonzero cohomology dimensions h^q of a line bundle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CohomologyProfile {
    pub dims: BTreeMap<usize, u64>,
}

impl CohomologyProfile {
    pub fn h(&self, q: usize) -> u64 {
        self.dims.get(&q).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn euler(&self) -> i64 {
        self.dims.iter().map(|(&q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

fn check_len(n: &[usize], a: &Multidegree) -> Result<(), CohomologyError> {
    if a.len() != n.len() {
        return Err(CohomologyError::DegreeLength(a.clone()));
    }
    Ok(())
}

/// Künneth: each factor contributes in degree 0 or n_i, or kills everything.
pub fn line_bundle_cohomology(n: &[usize], a: &Multidegree) -> Result<CohomologyProfile, CohomologyError> {
    check_len(n, a)?;
    let mut q = 0;
    let mut dim: u64 = 1;
    for (&ni, &ai) in n.iter().zip(a.as_slice()) {
        let (ai, ni64) = (ai as i64, ni as i64);
        if ai >= 0 {
            dim *= binom_poly(ai + ni64, ni as u32) as u64;
        } else if ai <= -ni64 - 1 {
            q += ni;
            dim *= binom_poly(-ai - 1, ni as u32) as u64;
        } else {
            return Ok(CohomologyProfile::default());
        }
    }
    Ok(CohomologyProfile { dims: BTreeMap::from([(q, dim)]) })
}

/// h^q(O(a)) for a single q, without building a profile.
pub(crate) fn h_line(n: &[usize], a: &[i32], q: usize) -> u64 {
    let mut total = 0;
    let mut dim: u64 = 1;
    for (&ni, &ai) in n.iter().zip(a) {
        let (ai, ni64) = (ai as i64, ni as i64);
        if ai >= 0 {
            dim *= binom_poly(ai + ni64, ni as u32) as u64;
        } else if ai <= -ni64 - 1 {
            total += ni;
            dim *= binom_poly(-ai - 1, ni as u32) as u64;
        } else {
            return 0;
        }
    }
    if total == q {
        dim
    } else {
        0
    }
}

/// χ(O(a)) = ∏ binom(a_i + n_i, n_i) as a polynomial in a.
pub fn euler_char_line(n: &[usize], a: &Multidegree) -> i64 {
    n.iter().zip(a.as_slice()).map(|(&ni, &ai)| binom_poly(ai as i64 + ni as i64, ni as u32)).product()
}

/// χ(M~(b)) from a Betti table of M.
pub fn euler_char_from_betti(n: &[usize], table: &BettiTable, b: &Multidegree) -> i64 {
    table
        .entries()
        .map(|(i, a, r)| {
            let x = r as i64 * euler_char_line(n, &(b - a));
            if i % 2 == 0 {
                x
            } else {
                -x
            }
        })
        .sum()
}

/// χ(M~(b)) for M = ambient / `m`.
pub fn sheaf_euler_char(m: &Submodule, b: &Multidegree) -> Result<i64, CohomologyError> {
    let n = m.ring().product_dims().map_err(|_| CohomologyError::CustomRing)?.to_vec();
    check_len(&n, b)?;
    let f = free_resolution(m, true, None)?;
    Ok(euler_char_from_betti(&n, &f.betti(), b))
}

/// Twists of the i-th step of the minimal resolution of S/B.
pub fn delta_set(n: &[usize], i: usize) -> Result<BTreeSet<Multidegree>, CohomologyError> {
    let total: usize = n.iter().sum();
    if i > total {
        return Err(CohomologyError::IndexOutOfRange { i, max: total });
    }
    let r = n.len();
    if i == 0 {
        return Ok(BTreeSet::from([Multidegree::zero(r)]));
    }
    // a - 1 is a composition of i - 1 bounded by n
    Ok(compositions((i - 1) as u32, r)
        .into_iter()
        .filter(|c| c.iter().zip(n).all(|(&x, &ni)| x as usize <= ni))
        .map(|c| Multidegree::from(c.iter().map(|&x| -(x as i32) - 1).collect::<Vec<_>>()))
        .collect())
}

/// Whether every summand S(-c) of F_i satisfies d - c ∈ Δ_i + N^r, i.e.
/// F twisted by d has the shape of a linear truncation.
pub fn check_linear_truncation(f: &FreeComplex, d: &Multidegree) -> Result<bool, CohomologyError> {
    let n = f.ring().product_dims().map_err(|_| CohomologyError::CustomRing)?.to_vec();
    check_len(&n, d)?;
    let total: usize = n.iter().sum();
    for (i, c, _) in f.betti().entries() {
        if i > total {
            return Ok(false);
        }
        let twist = d - c;
        if !delta_set(&n, i)?.iter().any(|delta| delta.le(&twist)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One block of a Beilinson shape: the summand S(-d-u)^rank at index |u|.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BeilinsonBlock {
    pub u: Multidegree,
    pub twist: Multidegree,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BeilinsonShape {
    pub d: Multidegree,
    /// Blocks grouped by homological index.
    pub blocks: Vec<Vec<BeilinsonBlock>>,
    /// `None` unless vanishing was checked.
    pub vanishing_verified: Option<bool>,
}

impl BeilinsonShape {
    pub fn ranks(&self, i: usize) -> Vec<(Multidegree, usize)> {
        self.blocks.get(i).map_or_else(Vec::new, |b| b.iter().map(|x| (x.twist.clone(), x.rank)).collect())
    }

    pub fn totals(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.iter().map(|x| x.rank).sum()).collect()
    }
}

impl fmt::Display for BeilinsonShape {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, blocks) in self.blocks.iter().enumerate() {
            let parts: Vec<String> = blocks
                .iter()
                .filter(|b| b.rank > 0)
                .map(|b| format!("S({})^{}", b.twist.as_slice().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","), b.rank))
                .collect();
            let body = if parts.is_empty() { "0".to_string() } else { parts.join(" ⊕ ") };
            writeln!(out, "F_{i}: {body}")?;
        }
        match self.vanishing_verified {
            Some(true) => write!(out, "higher cohomology vanishing verified"),
            Some(false) => write!(out, "higher cohomology vanishing NOT verified"),
            None => write!(out, "higher cohomology vanishing assumed"),
        }
    }
}

/// χ(M~ ⊗ Ω^u(u) (d)) through the truncated Koszul resolution
/// 0 → Ω^u(u) → ∧^u V ⊗ O → ∧^{u-1} V ⊗ O(1) → ... → O(u) → 0 on each factor.
fn omega_chi(n: &[usize], table: &BettiTable, u: &[i32], d: &Multidegree) -> i64 {
    let zero = Multidegree::zero(n.len());
    box_points(&zero, &Multidegree::from(u.to_vec()))
        .into_iter()
        .map(|k| {
            let coeff: i64 = n
                .iter()
                .zip(u)
                .zip(k.as_slice())
                .map(|((&ni, &ui), &ki)| binom_poly(ni as i64 + 1, (ui - ki) as u32))
                .product();
            let sign = if k.total() % 2 == 0 { 1 } else { -1 };
            sign * coeff * euler_char_from_betti(n, table, &(d + &k))
        })
        .sum()
}

/// Ranks h^0(M~ ⊗ Ω^u(u+d)) for 0 ≤ u ≤ n, computed as Euler characteristics.
pub fn beilinson_shape(m: &Submodule, d: &Multidegree, verify_vanishing: bool) -> Result<BeilinsonShape, CohomologyError> {
    let n = m.ring().product_dims().map_err(|_| CohomologyError::CustomRing)?.to_vec();
    check_len(&n, d)?;
    let table = free_resolution(m, true, None)?.betti();
    let total: usize = n.iter().sum();
    let mut blocks = vec![Vec::new(); total + 1];
    let top = Multidegree::from(n.iter().map(|&x| x as i32).collect::<Vec<_>>());
    for u in box_points(&Multidegree::zero(n.len()), &top) {
        let chi = omega_chi(&n, &table, u.as_slice(), d);
        if chi < 0 {
            return Err(CohomologyError::VanishingViolated { u, d: d.clone(), chi });
        }
        let i = u.total() as usize;
        blocks[i].push(BeilinsonBlock { twist: -&(d + &u), u, rank: chi as usize });
    }
    let vanishing_verified = if verify_vanishing {
        Some(verify_omega_vanishing(m, &n, d)?)
    } else {
        None
    };
    Ok(BeilinsonShape { d: d.clone(), blocks, vanishing_verified })
}

/// Sufficient check that M~ ⊗ Ω^u(u+d) has no higher cohomology for every u,
/// via the left resolution of Ω^u(u) by sums of O(-k), 1 ≤ k ≤ n+1-u, with
/// O(-k) sitting in position |k| - r: it suffices that
/// h^{j + |k| - r}(M~(d-k)) = 0 for all j ≥ 1.
fn verify_omega_vanishing(m: &Submodule, n: &[usize], d: &Multidegree) -> Result<bool, CohomologyError> {
    let mc = ModuleCohomology::new(m)?;
    let total: usize = n.iter().sum();
    let r = n.len() as i64;
    let ones = Multidegree::from(vec![1; n.len()]);
    let top = Multidegree::from(n.iter().map(|&x| x as i32 + 1).collect::<Vec<_>>());
    for k in box_points(&ones, &top) {
        let pos = (k.total() - r) as usize;
        let p = d - &k;
        for j in (1 + pos)..=total {
            if mc.sheaf_cohomology(j, &p, DEFAULT_T_MAX)?.dim != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
