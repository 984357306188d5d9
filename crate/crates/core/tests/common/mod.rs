//! Property suites shared by the `properties` tests and the acceptance
//! harness. Each suite runs a deterministic proptest runner and returns the
//! first failure as text.

#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use virtres::cli::fixtures::{self, load_fixture};
use virtres::cohomology::{delta_set, line_bundle_cohomology};
use virtres::complexes::{free_resolution, is_virtual, virtual_of_pair, winnow, FreeComplex};
use virtres::ideals::{
    b_saturate, codim, hilbert_function, intersect, irrelevant_ideal, irrelevant_power, quotient, saturate,
    truncate, Submodule,
};
use virtres::punctual::{general_points, intersect_with_irrelevant_power, koszul_pair_for_points, points_ideal, vanishing_forms, PointConfig};
use virtres::ring::{Multidegree, Polynomial, Ring, RingRef};

pub const P: u32 = 32003;

pub fn ring(dims: &[usize]) -> RingRef {
    Arc::new(Ring::product(dims, P).unwrap())
}

pub fn md(v: &[i32]) -> Multidegree {
    Multidegree::from(v.to_vec())
}

/// One generator: a degree and a list of (monomial index, coefficient).
#[derive(Clone, Debug)]
pub struct GenSpec {
    pub degree: Vec<i32>,
    pub terms: Vec<(usize, u32)>,
}

pub fn gen_spec(r: usize, max_deg: i32) -> impl Strategy<Value = GenSpec> {
    (
        prop::collection::vec(0..=max_deg, r).prop_filter("nonzero degree", |d| d.iter().any(|&x| x > 0)),
        prop::collection::vec((0usize..64, 1u32..P), 1..=4),
    )
        .prop_map(|(degree, terms)| GenSpec { degree, terms })
}

pub fn ideal_spec(r: usize, max_deg: i32, max_gens: usize) -> impl Strategy<Value = Vec<GenSpec>> {
    prop::collection::vec(gen_spec(r, max_deg), 1..=max_gens)
}

pub fn polynomial(ring: &Ring, g: &GenSpec) -> Polynomial {
    let monos = ring.monomials_of_degree(&md(&g.degree));
    let terms = g.terms.iter().map(|&(k, c)| (monos[k % monos.len()], c)).collect();
    Polynomial::from_terms(ring, terms)
}

/// Nonzero generators of a random spec.
pub fn generators(ring: &Ring, spec: &[GenSpec]) -> Vec<Polynomial> {
    spec.iter().map(|g| polynomial(ring, g)).filter(|f| !f.is_zero()).collect()
}

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn finish(r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// Independent S-pair reduction with plain polynomial arithmetic.
fn s_pairs_reduce(i: &Submodule) -> bool {
    let ring = i.ring();
    let f = ring.field();
    let gb: Vec<Polynomial> = i.gb().elements().iter().map(|e| e.coords[0].clone()).collect();
    for (a, g) in gb.iter().enumerate() {
        for h in &gb[a + 1..] {
            let (&(mg, cg), &(mh, ch)) = (g.lead().unwrap(), h.lead().unwrap());
            let l = ring.lcm(&mg, &mh);
            let s = g
                .mul_term(&l.div_exact(&mg), f.inv(cg), ring)
                .sub(&h.mul_term(&l.div_exact(&mh), f.inv(ch), ring), ring);
            if !i.gb().normal_form(&virtres::groebner::ModuleElement::scalar(s)).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

pub fn buchberger_criterion() -> Result<(), String> {
    let mut out = Ok(());
    for dims in [&[1, 1][..], &[1, 2]] {
        let r = ring(dims);
        let strategy = (ideal_spec(dims.len(), 2, 3), prop::collection::vec(gen_spec(dims.len(), 1), 3));
        out = out.and(finish(runner(24).run(&strategy, |(spec, mults)| {
            let gens = generators(&r, &spec);
            prop_assume!(!gens.is_empty());
            let i = Submodule::ideal(&r, gens.clone()).unwrap();
            let sat = b_saturate(&i).unwrap();
            let b = irrelevant_ideal(&r);
            let cap = intersect(&i, &b).unwrap();
            for (name, m) in [("ideal", &i), ("saturation", &sat), ("intersection", &cap)] {
                check(m.gb().satisfies_buchberger(), || format!("{name}: S-pair does not reduce"))?;
                check(s_pairs_reduce(m), || format!("{name}: independent S-pair does not reduce"))?;
            }
            // combinations of the input generators reduce to zero
            let mut comb = Polynomial::zero();
            for (g, h) in gens.iter().zip(mults.iter().map(|m| polynomial(&r, m))) {
                comb = comb.add(&g.mul(&h, &r), &r);
            }
            let v = virtres::groebner::ModuleElement::scalar(comb);
            check(i.contains(&v).unwrap(), || "combination of generators not in the ideal".into())
        })));
    }
    out
}

fn exact_and_minimal(f: &FreeComplex) -> Result<(), TestCaseError> {
    check(f.is_complex(), || "not a complex".into())?;
    check(f.is_minimal(), || "a differential has a unit entry".into())?;
    for k in 1..=f.length() {
        check(f.homology(k).unwrap().is_zero().unwrap(), || format!("H_{k} is nonzero"))?;
    }
    Ok(())
}

pub fn exactness_and_minimality() -> Result<(), String> {
    let mut out = Ok(());
    for dims in [&[1, 1][..], &[1, 2]] {
        let r = ring(dims);
        out = out.and(finish(runner(24).run(&(ideal_spec(dims.len(), 2, 4), any::<prop::sample::Index>()), |(spec, rot)| {
            let gens = generators(&r, &spec);
            prop_assume!(!gens.is_empty());
            let f = free_resolution(&Submodule::ideal(&r, gens.clone()).unwrap(), true, None).unwrap();
            exact_and_minimal(&f)?;
            // Betti numbers do not depend on the order of the generators
            let mut moved = gens.clone();
            moved.rotate_left(rot.index(gens.len()));
            moved.reverse();
            let g = free_resolution(&Submodule::ideal(&r, moved).unwrap(), true, None).unwrap();
            check(f.betti() == g.betti(), || format!("Betti tables differ:\n{}\n{}", f.betti(), g.betti()))
        })));
    }
    out
}

pub fn saturation_idempotence() -> Result<(), String> {
    let mut out = Ok(());
    for dims in [&[1, 1][..], &[1, 2]] {
        let r = ring(dims);
        out = out.and(finish(runner(24).run(&(ideal_spec(dims.len(), 2, 3), gen_spec(dims.len(), 1)), |(spec, f)| {
            let gens = generators(&r, &spec);
            prop_assume!(!gens.is_empty());
            let i = Submodule::ideal(&r, gens).unwrap();
            let s = b_saturate(&i).unwrap();
            check(b_saturate(&s).unwrap().equals(&s).unwrap(), || "saturation is not idempotent".into())?;
            check(i.is_subset(&s).unwrap(), || "I is not inside its saturation".into())?;
            let f = polynomial(&r, &f);
            prop_assume!(!f.is_zero());
            let q = quotient(&i, &f).unwrap();
            let sf = saturate(&i, &f).unwrap();
            check(i.is_subset(&q).unwrap() && q.is_subset(&sf).unwrap(), || "A ⊆ A:f ⊆ A:f^∞ fails".into())
        })));
    }
    out
}

/// Winnowing the minimal resolution agrees with the direct algorithm on 20
/// random B-saturated ideals per ring.
pub fn winnow_agreement() -> Result<(), String> {
    let mut out = Ok(());
    for dims in [&[1, 1][..], &[1, 2]] {
        let r = ring(dims);
        let deg = prop::collection::vec(0..=2i32, dims.len());
        out = out.and(finish(runner(20).run(&(ideal_spec(dims.len(), 2, 3), deg), |(spec, d)| {
            let gens = generators(&r, &spec);
            prop_assume!(!gens.is_empty());
            let i = b_saturate(&Submodule::ideal(&r, gens).unwrap()).unwrap();
            prop_assume!(!i.is_whole());
            let d = md(&d);
            let w = winnow(&free_resolution(&i, true, None).unwrap(), &d).unwrap();
            let g = virtual_of_pair(&i, &d, false).unwrap();
            check(w.betti() == g.betti(), || format!("at {d}: winnow\n{}pair\n{}", w.betti(), g.betti()))
        })));
    }
    out
}

/// h^{|a|+i}(O(b - a)) = 0 for b ∈ Δ_i + N^r and a ∈ N^r \ {0}.
pub fn lemma_vanishing() -> Result<(), String> {
    let mut out = Ok(());
    for dims in [&[1, 1][..], &[1, 2], &[1, 1, 2], &[2, 3]] {
        let total: usize = dims.iter().sum();
        let r = dims.len();
        let strategy = (
            0..=total,
            any::<prop::sample::Index>(),
            prop::collection::vec(0..4i32, r),
            prop::collection::vec(0..5i32, r).prop_filter("a ≠ 0", |a| a.iter().any(|&x| x > 0)),
        );
        out = out.and(finish(runner(64).run(&strategy, |(i, pick, c, a)| {
            let deltas: Vec<Multidegree> = delta_set(dims, i).unwrap().into_iter().collect();
            let b = &deltas[pick.index(deltas.len())] + &md(&c);
            let a = md(&a);
            let q = a.total() as usize + i;
            let h = line_bundle_cohomology(dims, &(&b - &a)).unwrap().h(q);
            check(h == 0, || format!("h^{q}(O({})) = {h} on P{dims:?}", &b - &a))
        })));
    }
    out
}

pub fn serre_duality() -> Result<(), String> {
    let mut out = Ok(());
    for dims in [&[1, 1][..], &[1, 2], &[2, 2], &[1, 1, 2]] {
        let total: usize = dims.iter().sum();
        let strategy = prop::collection::vec(-6..6i32, dims.len());
        out = out.and(finish(runner(64).run(&strategy, |a| {
            let a = md(&a);
            let dual = md(&dims.iter().zip(a.as_slice()).map(|(&n, &x)| -x - n as i32 - 1).collect::<Vec<_>>());
            let (p, q) = (line_bundle_cohomology(dims, &a).unwrap(), line_bundle_cohomology(dims, &dual).unwrap());
            for k in 0..=total {
                check(p.h(k) == q.h(total - k), || format!("h^{k}(O({a})) vs h^{}(O({dual}))", total - k))?;
            }
            Ok(())
        })));
    }
    out
}

/// Δ_i against the twists of the minimal resolution of S/B.
pub fn delta_sets_match_resolutions() -> Result<(), String> {
    for dims in [&[1, 1][..], &[1, 2], &[1, 1, 2]] {
        let r = ring(dims);
        let f = free_resolution(&irrelevant_ideal(&r), true, None).map_err(|e| e.to_string())?;
        let total: usize = dims.iter().sum();
        if f.length() != total + 1 {
            return Err(format!("S/B on P{dims:?} has length {}", f.length()));
        }
        for i in 0..=total {
            let want = delta_set(dims, i).map_err(|e| e.to_string())?;
            let got: std::collections::BTreeSet<Multidegree> = f.betti().column(i).into_iter().map(|(a, _)| -&a).collect();
            if got != want {
                return Err(format!("Δ_{i} on P{dims:?}: {want:?} vs {got:?}"));
            }
        }
    }
    Ok(())
}

/// Every virtual resolution produced by the fixtures is at least as long as
/// the codimension of its ideal.
pub fn length_at_least_codim() -> Result<(), String> {
    let e = |x: &dyn std::fmt::Display| x.to_string();
    let mut cases: Vec<(String, FreeComplex, Submodule)> = Vec::new();
    let (_, curve) = load_fixture(fixtures::CURVE).map_err(|x| e(&x))?;
    let i = &curve[0];
    let pair = virtual_of_pair(i, &md(&[2, 1]), false).map_err(|x| e(&x))?;
    cases.push(("curve pair".into(), pair, i.clone()));
    let pts = ring(&[1, 1, 2]);
    let (_, six) = general_points(&pts, 6, fixtures::SIX_POINTS_SEED).map_err(|x| e(&x))?;
    let full = free_resolution(&six, true, None).map_err(|x| e(&x))?;
    for (d, _, _) in fixtures::SIX_POINTS_PAIRS {
        cases.push((format!("six points winnowed at {d:?}"), winnow(&full, &md(&d)).map_err(|x| e(&x))?, six.clone()));
    }
    for (a, _, _) in fixtures::SIX_POINTS_POWERS {
        let j = intersect_with_irrelevant_power(&six, &a).map_err(|x| e(&x))?;
        cases.push((format!("six points ∩ B^{a:?}"), free_resolution(&j, true, None).map_err(|x| e(&x))?, six.clone()));
    }
    let p1 = ring(&[1, 1]);
    for m in [4, 5] {
        let (config, i) = general_points(&p1, m, fixtures::KOSZUL_SEED).map_err(|x| e(&x))?;
        let (k, _) = koszul_pair_for_points(&p1, &config).map_err(|x| e(&x))?;
        cases.push((format!("Koszul pair through {m} points"), k, i));
    }
    let (dp, _) = load_fixture(fixtures::DEL_PEZZO).map_err(|x| e(&x))?;
    let config = PointConfig::new(fixtures::DEL_PEZZO_POINTS.iter().map(|p| p.to_vec()).collect());
    let z = points_ideal(&dp, &config).map_err(|x| e(&x))?;
    let forms = Submodule::ideal(&dp, vanishing_forms(&dp, &config.points, &md(&[0, 2, 0]))).map_err(|x| e(&x))?;
    cases.push(("del Pezzo forms".into(), free_resolution(&forms, true, None).map_err(|x| e(&x))?, z));
    let (hz, hi) = load_fixture(fixtures::HIRZEBRUCH).map_err(|x| e(&x))?;
    let h = b_saturate(&hi[0]).map_err(|x| e(&x))?;
    let hq = intersect(&h, &irrelevant_power(&hz, &[4, 0]).map_err(|x| e(&x))?).map_err(|x| e(&x))?;
    cases.push(("Hirzebruch ∩ B^(4,0)".into(), free_resolution(&hq, true, None).map_err(|x| e(&x))?, h));
    for (name, f, i) in cases {
        let c = codim(&i).map_err(|x| e(&x))?;
        if f.length() < c {
            return Err(format!("{name}: length {} < codim {c}", f.length()));
        }
    }
    Ok(())
}

/// Truncation keeps the Hilbert function above the truncation degree.
pub fn truncation_hilbert_functions() -> Result<(), String> {
    let r = ring(&[1, 2]);
    let strategy = (ideal_spec(2, 2, 3), prop::collection::vec(0..3i32, 2), prop::collection::vec(0..3i32, 2));
    finish(runner(16).run(&strategy, |(spec, a, c)| {
        let gens = generators(&r, &spec);
        prop_assume!(!gens.is_empty());
        let i = Submodule::ideal(&r, gens).unwrap();
        let a = md(&a);
        let t = truncate(&i, &a).unwrap();
        let b = &a + &md(&c);
        let (x, y) = (hilbert_function(&t, &b).unwrap(), hilbert_function(&i, &b).unwrap());
        check(x == y, || format!("HF at {b}: {x} vs {y}"))
    }))
}

/// Resolutions of saturated monomial ideals are virtual.
pub fn saturated_monomial_resolutions_are_virtual() -> Result<(), String> {
    let r = ring(&[1, 1]);
    let mono = (prop::collection::vec(0..=2i32, 2), 0usize..64).prop_map(|(degree, k)| GenSpec { degree, terms: vec![(k, 1)] });
    finish(runner(16).run(&prop::collection::vec(mono, 1..=4), |spec| {
        let gens = generators(&r, &spec);
        prop_assume!(gens.iter().all(|g| !g.is_unit()));
        let s = b_saturate(&Submodule::ideal(&r, gens).unwrap()).unwrap();
        prop_assume!(!s.is_whole());
        let f = free_resolution(&s, true, None).unwrap();
        check(is_virtual(&f, &s).unwrap().is_virtual(), || "resolution is not virtual".into())
    }))
}

pub type Suite = (&'static str, fn() -> Result<(), String>);

pub const SUITES: &[Suite] = &[
    ("Buchberger criterion on emitted bases", buchberger_criterion),
    ("exactness and minimality of resolutions", exactness_and_minimality),
    ("saturation idempotence", saturation_idempotence),
    ("winnow and direct pair algorithm agree on 20 + 20 saturated ideals", winnow_agreement),
    ("vanishing h^{|a|+i}(O(b-a)) on Δ_i + N^r", lemma_vanishing),
    ("Serre duality on line bundles", serre_duality),
    ("Δ_i from the resolution of S/B on three rings", delta_sets_match_resolutions),
    ("length ≥ codim on fixture virtual resolutions", length_at_least_codim),
    ("truncation keeps Hilbert functions", truncation_hilbert_functions),
    ("saturated monomial resolutions are virtual", saturated_monomial_resolutions_are_virtual),
];

