//! Zero-dimensional subschemes: point ideals, general points, the `I ∩ B^a`
//! construction, Hilbert-Burch matrices and Koszul pairs on P^1 x P^1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::complexes::{free_resolution, is_virtual, koszul, ComplexError, FreeComplex, Matrix, VirtualReport};
use crate::groebner::{syzygy_module, FreeModule, GroebnerError, ModuleElement};
use crate::ideals::{b_saturate, hilbert_function, intersect, irrelevant_power, saturate, IdealError, Submodule};
use crate::linalg::{integer_kernel, DenseMatrix};
use crate::ring::{box_points, Multidegree, Polynomial, Ring, RingError, RingRef};

#[derive(Debug, Error)]
pub enum PunctualError {
    #[error("point {0} has wrong length or an all-zero factor")]
    BadPoint(usize),
    #[error("points {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("points off the torus are only supported on products of projective spaces (point {0})")]
    OffTorus(usize),
    #[error("no point count given")]
    NoPoints,
    #[error("non-generic sample: Hilbert function {got} != {expected} in degree {degree}")]
    NonGeneric { degree: Multidegree, got: usize, expected: usize },
    #[error("no exponent up to {bound} gives projective dimension {target}; best seen {best}")]
    SearchExhausted { bound: u32, target: usize, best: usize },
    #[error("resolution is not of Hilbert-Burch shape: totals {0:?}")]
    NotHilbertBurch(Vec<usize>),
    #[error("not enough vanishing forms of degree {0}; the points are not general")]
    NotEnoughForms(Multidegree),
    #[error("Koszul pairs are built on P^1 x P^1 only")]
    NotP1xP1,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Points given by Cox coordinates, one vector of length `nvars` each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    pub points: Vec<Vec<u32>>,
    pub seed: Option<u64>,
}

impl PointConfig {
    pub fn new(points: Vec<Vec<u32>>) -> Self {
        PointConfig { points, seed: None }
    }

    /// `count` uniformly random points of a product of projective spaces.
    pub fn random(ring: &Ring, count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = ring.characteristic();
        let nvars = ring.nvars();
        let points = (0..count)
            .map(|_| loop {
                let v: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..p)).collect();
                if ring.irrelevant_primes().iter().all(|pr| pr.iter().any(|&k| v[k] != 0)) {
                    break v;
                }
            })
            .collect();
        PointConfig { points, seed: Some(seed) }
    }
}

/// The ideal of one point.
pub fn point_ideal(ring: &RingRef, coords: &[u32]) -> Result<Submodule, PunctualError> {
    let f = ring.field();
    if coords.len() != ring.nvars() || ring.irrelevant_primes().iter().any(|pr| pr.iter().all(|&k| coords[k] == 0)) {
        return Err(PunctualError::BadPoint(0));
    }
    if ring.is_product() {
        // 2x2 minors of (variables ; coordinates) in each factor
        let mut gens = Vec::new();
        for block in ring.irrelevant_primes() {
            let &piv = block.iter().find(|&&k| coords[k] != 0).expect("checked");
            for &k in block {
                if k == piv {
                    continue;
                }
                let a = Polynomial::var(ring, k).scale(coords[piv], ring);
                let b = Polynomial::var(ring, piv).scale(coords[k], ring);
                gens.push(a.sub(&b, ring));
            }
        }
        return Ok(Submodule::ideal(ring, gens)?);
    }
    if coords.iter().any(|&c| c == 0) {
        return Err(PunctualError::OffTorus(0));
    }
    // Torus orbit: binomials from the lattice of exponent relations,
    // saturated by every variable.
    let degs: Vec<Vec<i64>> = (0..ring.r())
        .map(|i| (0..ring.nvars()).map(|k| ring.var_degree(k).as_slice()[i] as i64).collect())
        .collect();
    let mut gens = Vec::new();
    for u in integer_kernel(&degs) {
        let (mut pos, mut neg) = (vec![0u32; ring.nvars()], vec![0u32; ring.nvars()]);
        for (k, &x) in u.iter().enumerate() {
            if x > 0 {
                pos[k] = x as u32;
            } else {
                neg[k] = (-x) as u32;
            }
        }
        let value = |e: &[u32]| e.iter().zip(coords).fold(1, |acc, (&x, &c)| f.mul(acc, f.pow(c, x as u64)));
        let a = Polynomial::term(ring, ring.monomial(&pos), value(&neg));
        let b = Polynomial::term(ring, ring.monomial(&neg), value(&pos));
        gens.push(a.sub(&b, ring));
    }
    let mut cur = Submodule::ideal(ring, gens)?;
    for k in 0..ring.nvars() {
        cur = saturate(&cur, &Polynomial::var(ring, k))?;
    }
    Ok(cur)
}

/// The ideal of a set of distinct points (an intersection of B-saturated
/// ideals, hence B-saturated).
pub fn points_ideal(ring: &RingRef, config: &PointConfig) -> Result<Submodule, PunctualError> {
    if config.points.is_empty() {
        return Err(PunctualError::NoPoints);
    }
    let mut ideals = Vec::new();
    for (i, p) in config.points.iter().enumerate() {
        let id = point_ideal(ring, p).map_err(|e| match e {
            PunctualError::BadPoint(_) => PunctualError::BadPoint(i),
            PunctualError::OffTorus(_) => PunctualError::OffTorus(i),
            other => other,
        })?;
        for (j, q) in config.points[..i].iter().enumerate() {
            let polys = id.polynomials()?;
            if polys.iter().all(|g| g.eval(q, ring) == 0) {
                return Err(PunctualError::Duplicate(j, i));
            }
        }
        ideals.push(id);
    }
    // balanced pairwise intersections keep the intermediate ideals small
    while ideals.len() > 1 {
        let mut next = Vec::with_capacity(ideals.len().div_ceil(2));
        let mut it = ideals.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(intersect(&a, &b)?),
                None => next.push(a),
            }
        }
        ideals = next;
    }
    Ok(ideals.pop().expect("nonempty"))
}

/// Check that `dim (S/I)_b = min(dim S_b, m)` wherever `dim S_b <= m + 4`.
pub fn genericity_gate(ideal: &Submodule, m: usize) -> Result<(), PunctualError> {
    let ring = ideal.ring();
    let r = ring.r();
    let zero = Multidegree::zero(r);
    let top = Multidegree::from(vec![(m + 4) as i32; r]);
    for b in box_points(&zero, &top) {
        let full = ring.monomials_of_degree(&b).len();
        if full > m + 4 {
            continue;
        }
        let got = hilbert_function(ideal, &b)?;
        let expected = full.min(m);
        if got != expected {
            return Err(PunctualError::NonGeneric { degree: b, got, expected });
        }
    }
    Ok(())
}

/// `m` general points: sample with `seed`, resampling with `seed + k` for
/// `k = 1..=5` while the genericity gate fails. Returns the configuration
/// that passed and its ideal.
pub fn general_points(ring: &RingRef, m: usize, seed: u64) -> Result<(PointConfig, Submodule), PunctualError> {
    let mut last = None;
    for k in 0..=5 {
        let config = PointConfig::random(ring, m, seed.wrapping_add(k));
        let ideal = match points_ideal(ring, &config) {
            Ok(i) => i,
            Err(e @ PunctualError::Duplicate(..)) => {
                last = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        match genericity_gate(&ideal, m) {
            Ok(()) => return Ok((config, ideal)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// `I ∩ B^a`.
pub fn intersect_with_irrelevant_power(i: &Submodule, a: &[i64]) -> Result<Submodule, PunctualError> {
    let q = irrelevant_power(i.ring(), a)?;
    Ok(intersect(i, &q)?)
}

/// The dimension of the variety: number of variables minus rank of the
/// grading (`|n|` on a product of projective spaces).
pub fn target_length(ring: &Ring) -> usize {
    ring.nvars() - ring.r()
}

/// Exponent vectors with last entry 0 and others in `0..=bound`, by total
/// then lexicographically.
pub fn candidate_exponents(r: usize, bound: u32) -> Vec<Vec<i64>> {
    let lo = Multidegree::zero(r.saturating_sub(1));
    let hi = Multidegree::from(vec![bound as i32; r.saturating_sub(1)]);
    let mut v: Vec<Vec<i64>> = box_points(&lo, &hi)
        .into_iter()
        .map(|d| d.as_slice().iter().map(|&x| x as i64).chain([0]).collect())
        .collect();
    v.sort_by_key(|a| (a.iter().sum::<i64>(), a.clone()));
    v
}

/// The first exponent `a` (see [`candidate_exponents`]) for which the
/// minimal resolution of `S/(I ∩ B^a)` has the length of the dimension of
/// the variety.
pub fn search_short_resolution_exponent(
    i: &Submodule,
    bound: u32,
) -> Result<(Vec<i64>, FreeComplex), PunctualError> {
    let ring = i.ring();
    let target = target_length(ring);
    let mut best = usize::MAX;
    for a in candidate_exponents(ring.r(), bound) {
        let j = intersect_with_irrelevant_power(i, &a)?;
        let f = free_resolution(&j, true, None)?;
        if f.length() == target {
            return Ok((a, f));
        }
        best = best.min(f.length());
    }
    Err(PunctualError::SearchExhausted { bound, target, best })
}

/// A Hilbert-Burch matrix together with its checks.
#[derive(Clone, Debug)]
pub struct HilbertBurchCertificate {
    /// The `(m+1) x m` second differential.
    pub matrix: Matrix,
    pub ideal: Submodule,
    pub minors: Vec<Polynomial>,
    pub minors_generate: bool,
    /// Filled in when a saturated ideal to compare with was given.
    pub saturation_recovers: Option<bool>,
}

/// Maximal minors of an `(m+1) x m` matrix, the `k`-th omitting row `k`.
pub fn maximal_minors(ring: &Ring, phi: &Matrix) -> Vec<Polynomial> {
    let (rows, cols) = (phi.rows(), phi.cols());
    assert_eq!(rows, cols + 1, "need an (m+1) x m matrix");
    // det[S] for row sets S of size k over the first k columns
    let mut det: std::collections::HashMap<u32, Polynomial> = std::collections::HashMap::new();
    det.insert(0, Polynomial::one());
    for k in 1..=cols {
        let mut next = std::collections::HashMap::new();
        for s in (0u32..1 << rows).filter(|s| s.count_ones() as usize == k) {
            let mut acc = Polynomial::zero();
            let mut sign_pos = 0;
            for i in 0..rows {
                if s >> i & 1 == 0 {
                    continue;
                }
                let entry = phi.entry(i, k - 1);
                let sub = &det[&(s & !(1 << i))];
                if !entry.is_zero() && !sub.is_zero() {
                    let t = entry.mul(sub, ring);
                    // row i is the sign_pos-th element of s
                    acc = if (sign_pos + k - 1) % 2 == 0 { acc.add(&t, ring) } else { acc.sub(&t, ring) };
                }
                sign_pos += 1;
            }
            next.insert(s, acc);
        }
        det = next;
    }
    let full = (1u32 << rows) - 1;
    (0..rows).map(|k| det[&(full & !(1 << k))].clone()).collect()
}

/// Extract the Hilbert-Burch matrix of `j` from its minimal resolution and
/// check that its maximal minors generate `j`; with `saturated`, also check
/// that `j` saturates to it.
pub fn hilbert_burch(j: &Submodule, saturated: Option<&Submodule>) -> Result<HilbertBurchCertificate, PunctualError> {
    let ring = j.ring();
    let f = free_resolution(j, true, None)?;
    let totals = f.betti().totals();
    if f.length() != 2 || totals[0] != 1 || totals[1] != totals[2] + 1 {
        return Err(PunctualError::NotHilbertBurch(totals));
    }
    let phi = f.differential(2)?.clone();
    let minors = maximal_minors(ring, &phi);
    let minor_ideal = Submodule::ideal(ring, minors.clone())?;
    let minors_generate = minor_ideal.equals(j)?;
    let saturation_recovers = match saturated {
        Some(i) => Some(b_saturate(j)?.equals(i)?),
        None => None,
    };
    Ok(HilbertBurchCertificate { matrix: phi, ideal: j.clone(), minors, minors_generate, saturation_recovers })
}

/// Forms of degree `d` vanishing at all the points.
pub fn vanishing_forms(ring: &RingRef, points: &[Vec<u32>], d: &Multidegree) -> Vec<Polynomial> {
    let monos = ring.monomials_of_degree(d);
    let rows: Vec<Vec<u32>> = points
        .iter()
        .map(|p| monos.iter().map(|m| Polynomial::term(ring, *m, 1).eval(p, ring)).collect())
        .collect();
    DenseMatrix::from_rows(rows, monos.len())
        .kernel(ring.field())
        .into_iter()
        .map(|v| Polynomial::from_terms(ring, monos.iter().copied().zip(v).filter(|(_, c)| *c != 0).collect()))
        .collect()
}

/// A Koszul complex on two forms through `m` general points of P^1 x P^1,
/// with its virtuality report against the points ideal.
pub fn koszul_pair_for_points(
    ring: &RingRef,
    config: &PointConfig,
) -> Result<(FreeComplex, VirtualReport), PunctualError> {
    if ring.dims() != Some(&[1, 1][..]) {
        return Err(PunctualError::NotP1xP1);
    }
    let m = config.points.len();
    let k = (m / 2) as i32;
    let d1 = Multidegree::from([1, k]);
    let first = vanishing_forms(ring, &config.points, &d1);
    let (f, g) = if m % 2 == 0 {
        if first.len() < 2 {
            return Err(PunctualError::NotEnoughForms(d1));
        }
        (first[0].clone(), first[1].clone())
    } else {
        let f = first.first().cloned().ok_or_else(|| PunctualError::NotEnoughForms(d1.clone()))?;
        let d2 = Multidegree::from([1, k + 1]);
        let second = vanishing_forms(ring, &config.points, &d2);
        // pick a form outside f * <x20, x21>
        let multiples = Submodule::ideal(ring, vec![f.clone()])?;
        let g = second
            .into_iter()
            .find(|g| !multiples.contains(&ModuleElement::scalar(g.clone())).unwrap_or(true))
            .ok_or(PunctualError::NotEnoughForms(d2))?;
        (f, g)
    };
    let pair = vec![f, g];
    let syz = syzygy_module(ring, &FreeModule::ring(2), &pair.iter().cloned().map(ModuleElement::scalar).collect::<Vec<_>>())?;
    if syz.generators.len() != 1 {
        return Err(PunctualError::NotEnoughForms(d1));
    }
    let k = koszul(ring, &pair)?;
    let ideal = points_ideal(ring, config)?;
    let report = is_virtual(&k, &ideal)?;
    Ok((k, report))
}
