//! Bundled regression fixtures with their expected Betti tables and reports.
//!
//! Expected values are for the default characteristic 32003 and the seeds
//! written below, so the suite ignores `VIRTRES_CHAR`.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use super::parse::parse_job_with;
use super::CliError;
use crate::cohomology::{beilinson_shape, ModuleCohomology, Verdict};
use crate::complexes::{free_resolution, is_virtual, virtual_of_pair, winnow, BettiTable};
use crate::ideals::{b_saturate, hilbert_function, intersect, irrelevant_power, Submodule};
use crate::punctual::{
    general_points, hilbert_burch, intersect_with_irrelevant_power, koszul_pair_for_points, points_ideal,
    search_short_resolution_exponent, vanishing_forms, PointConfig,
};
use crate::ring::{box_points, Multidegree, Ring, RingRef, DEFAULT_CHARACTERISTIC};

pub const CURVE: &str = include_str!("../../fixtures/curve.vr");
pub const TWO_PLANES: &str = include_str!("../../fixtures/two_planes.vr");
pub const SURFACE: &str = include_str!("../../fixtures/surface.vr");
pub const HIRZEBRUCH: &str = include_str!("../../fixtures/hirzebruch.vr");
pub const DEL_PEZZO: &str = include_str!("../../fixtures/del_pezzo.vr");

/// Seed of the six points in P^1 x P^1 x P^2.
pub const SIX_POINTS_SEED: u64 = 42;
/// Seed of the points on P^1 x P^1 carrying Koszul pairs.
pub const KOSZUL_SEED: u64 = 11;

type Rows = &'static [(usize, &'static [i32], usize)];

pub const CURVE_MINIMAL: Rows = &[
    (0, &[0, 0], 1),
    (1, &[3, 1], 1),
    (1, &[2, 2], 1),
    (1, &[2, 3], 2),
    (1, &[1, 5], 3),
    (1, &[0, 8], 1),
    (2, &[3, 3], 3),
    (2, &[2, 5], 6),
    (2, &[1, 7], 1),
    (2, &[1, 8], 2),
    (3, &[3, 5], 3),
    (3, &[2, 7], 2),
    (3, &[2, 8], 1),
    (4, &[3, 7], 1),
];

pub const CURVE_PAIR: Rows = &[(0, &[0, 0], 1), (1, &[3, 1], 1), (1, &[2, 2], 1), (1, &[2, 3], 2), (2, &[3, 3], 3)];

pub const TWO_PLANES_MINIMAL: Rows = &[(0, &[0, 0], 1), (1, &[1, 1], 4), (2, &[2, 1], 2), (2, &[1, 2], 2), (3, &[2, 2], 1)];

pub const SURFACE_MINIMAL: Rows = &[
    (0, &[0, 0], 1),
    (1, &[2, 2], 1),
    (1, &[1, 2], 1),
    (1, &[1, 4], 1),
    (1, &[0, 6], 1),
    (2, &[2, 4], 2),
    (2, &[1, 6], 2),
    (3, &[2, 6], 1),
];

pub const DEL_PEZZO_MINIMAL: Rows = &[
    (0, &[0, 0, 0], 1),
    (1, &[1, 0, 1], 1),
    (1, &[0, 1, 1], 1),
    (1, &[1, 1, 0], 1),
    (1, &[0, 0, 3], 1),
    (1, &[3, 0, 0], 1),
    (2, &[0, 1, 2], 1),
    (2, &[1, 1, 1], 2),
    (2, &[2, 1, 0], 1),
    (2, &[1, 0, 3], 1),
    (2, &[3, 0, 1], 1),
    (3, &[1, 1, 2], 1),
    (3, &[2, 1, 1], 1),
];

pub const DEL_PEZZO_SHORT: Rows = &[(0, &[0, 0, 0], 1), (1, &[0, 2, 0], 3), (2, &[0, 3, 0], 2)];

/// Cox coordinates of the three points on the del Pezzo surface.
pub const DEL_PEZZO_POINTS: [[u32; 5]; 3] = [[1, 1, 1, 1, 1], [2, 1, 3, 1, 5], [7, 1, 11, 1, 13]];

/// Winnowing degrees for the six points with totals and distinct twists.
pub const SIX_POINTS_PAIRS: [([i32; 3], &[usize], usize); 4] = [
    ([5, 0, 0], &[1, 24, 50, 33, 6], 18),
    ([2, 1, 0], &[1, 29, 73, 66, 21], 22),
    ([1, 0, 1], &[1, 25, 63, 57, 18], 15),
    ([0, 0, 2], &[1, 22, 51, 42, 12], 13),
];

pub const SIX_POINTS_POWERS: [([i64; 3], &[usize], usize); 2] =
    [([2, 1, 0], &[1, 17, 34, 24, 6], 12), ([3, 3, 0], &[1, 22, 42, 27, 6], 13)];

pub fn table(rows: &[(usize, &[i32], usize)]) -> BettiTable {
    BettiTable::from_entries(rows.iter().map(|(i, a, r)| (*i, Multidegree::from(a.to_vec()), *r)))
}

fn md(v: &[i32]) -> Multidegree {
    Multidegree::from(v.to_vec())
}

/// Parse a bundled job file and return its ring and ideals.
pub fn load_fixture(text: &str) -> Result<(RingRef, Vec<Submodule>), CliError> {
    let job = parse_job_with(text, DEFAULT_CHARACTERISTIC)?;
    let ideals =
        job.ideals.iter().map(|n| Submodule::ideal(&job.ring, n.generators.clone())).collect::<Result<Vec<_>, _>>()?;
    Ok((job.ring, ideals))
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Default)]
pub struct Checks(Vec<Check>);

impl Checks {
    pub fn check(&mut self, label: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { label: label.into(), pass, detail: detail.into() });
    }

    fn table(&mut self, label: &str, got: &BettiTable, rows: Rows) {
        let want = table(rows);
        let detail = if *got == want { String::new() } else { format!("got\n{got}expected\n{want}") };
        self.check(label, *got == want, detail);
    }

    fn totals(&mut self, label: String, got: &BettiTable, totals: &[usize], twists: usize) {
        let pass = got.totals() == totals && got.distinct_twists() == twists;
        let detail = format!("totals {:?}, {} distinct twists", got.totals(), got.distinct_twists());
        self.check(label, pass, if pass { String::new() } else { detail });
    }
}

pub struct Fixture {
    pub name: &'static str,
    pub about: &'static str,
    pub run: fn(&mut Checks) -> Result<(), CliError>,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "curve", about: "genus 4 curve in P^1 x P^2: resolution, pair, Hilbert-Burch, Beilinson, regularity", run: curve },
    Fixture { name: "two-planes", about: "two planes in P^2 x P^2 without a short virtual resolution", run: two_planes },
    Fixture { name: "table1", about: "six general points in P^1 x P^1 x P^2 and four pair resolutions", run: table1 },
    Fixture { name: "table2", about: "six general points intersected with powers of B", run: table2 },
    Fixture { name: "koszul", about: "Koszul pairs through 4 and 5 general points of P^1 x P^1", run: koszul },
    Fixture { name: "del-pezzo", about: "three points on a degree 7 del Pezzo surface", run: del_pezzo },
    Fixture { name: "hirzebruch", about: "two curves on the Hirzebruch surface F_2", run: hirzebruch },
    Fixture { name: "surface", about: "genus one fibration in P^1 x P^3: resolution and regularity", run: surface },
];

fn curve(c: &mut Checks) -> Result<(), CliError> {
    let (_, ideals) = load_fixture(CURVE)?;
    let i = &ideals[0];
    let f = free_resolution(i, true, None)?;
    c.table("minimal resolution", &f.betti(), CURVE_MINIMAL);
    let d = md(&[2, 1]);
    let w = winnow(&f, &d)?;
    c.table("winnow at (2,1)", &w.betti(), CURVE_PAIR);
    let pair = virtual_of_pair(i, &d, false)?;
    c.table("pair resolution at (2,1)", &pair.betti(), CURVE_PAIR);
    c.check("pair resolution is virtual", is_virtual(&pair, i)?.is_virtual(), "");
    let cert = hilbert_burch(&pair.image(1)?, Some(i))?;
    c.check(
        "Hilbert-Burch matrix is 4 x 3",
        (cert.matrix.rows(), cert.matrix.cols()) == (4, 3),
        format!("{} x {}", cert.matrix.rows(), cert.matrix.cols()),
    );
    c.check("maximal minors generate J", cert.minors_generate, "");
    c.check("saturation of J is I", cert.saturation_recovers == Some(true), "");
    let shape = beilinson_shape(i, &md(&[2, 2]), false)?;
    let ranks = |k: usize| {
        let mut v: Vec<(Multidegree, usize)> = shape.ranks(k).into_iter().filter(|x| x.1 > 0).collect();
        v.sort();
        v
    };
    let want = [
        vec![(md(&[-2, -2]), 17)],
        vec![(md(&[-3, -2]), 15), (md(&[-2, -3]), 26)],
        vec![(md(&[-3, -3]), 22), (md(&[-2, -4]), 9)],
        vec![(md(&[-3, -4]), 7)],
    ];
    let got: Vec<_> = (0..4).map(ranks).collect();
    c.check("Beilinson ranks at (2,2)", got == want, format!("{shape}"));
    let mc = ModuleCohomology::new(i)?;
    let window = Some((md(&[-2, -2]), md(&[5, 5])));
    let rep = mc.regularity_check(&d, window.clone(), 6)?;
    let witness = rep.failures.iter().any(|w| w.i == 2 && w.p == md(&[2, 0]) && w.dim == 2);
    c.check("(2,1) refuted by H^2_B at (2,0) of dimension 2", rep.verdict == Verdict::Refuted && witness, format!("{rep}"));
    let rep = mc.regularity_check(&md(&[2, 2]), window, 6)?;
    c.check("(2,2) consistent with regularity", rep.verdict == Verdict::ConsistentInWindow, format!("{rep}"));
    Ok(())
}

fn two_planes(c: &mut Checks) -> Result<(), CliError> {
    let (_, ideals) = load_fixture(TWO_PLANES)?;
    let j = &ideals[0];
    let f = free_resolution(j, true, None)?;
    c.table("minimal resolution", &f.betti(), TWO_PLANES_MINIMAL);
    let sat = b_saturate(j)?;
    let mut bad = Vec::new();
    for d in box_points(&md(&[-3, -3]), &md(&[1, 1])) {
        let w = winnow(&f, &d)?;
        if w.betti() != f.betti() && is_virtual(&w, &sat)?.is_virtual() {
            bad.push(d.to_string());
        }
    }
    c.check("every proper winnow fails to be virtual", bad.is_empty(), bad.join(" "));
    Ok(())
}

fn six_points() -> Result<Submodule, CliError> {
    let ring = std::sync::Arc::new(Ring::product(&[1, 1, 2], DEFAULT_CHARACTERISTIC)?);
    Ok(general_points(&ring, 6, SIX_POINTS_SEED)?.1)
}

fn table1(c: &mut Checks) -> Result<(), CliError> {
    let i = six_points()?;
    let f = free_resolution(&i, true, None)?;
    c.totals("minimal resolution".into(), &f.betti(), &[1, 37, 120, 166, 120, 45, 7], 78);
    for (d, totals, twists) in SIX_POINTS_PAIRS {
        let d = md(&d);
        let w = winnow(&f, &d)?;
        c.totals(format!("winnow at {d}"), &w.betti(), totals, twists);
        let g = virtual_of_pair(&i, &d, false)?;
        c.check(format!("pair resolution at {d} agrees"), g.betti() == w.betti(), "");
    }
    Ok(())
}

fn table2(c: &mut Checks) -> Result<(), CliError> {
    let i = six_points()?;
    for (a, totals, twists) in SIX_POINTS_POWERS {
        let f = free_resolution(&intersect_with_irrelevant_power(&i, &a)?, true, None)?;
        c.totals(format!("I ∩ B^{a:?}"), &f.betti(), totals, twists);
        c.check(format!("I ∩ B^{a:?} resolution is virtual"), is_virtual(&f, &i)?.is_virtual(), "");
    }
    let (a, f) = search_short_resolution_exponent(&i, 6)?;
    c.check(format!("search finds a length 4 virtual resolution at {a:?}"), f.length() == 4 && is_virtual(&f, &i)?.is_virtual(), "");
    Ok(())
}

fn koszul(c: &mut Checks) -> Result<(), CliError> {
    let ring = std::sync::Arc::new(Ring::product(&[1, 1], DEFAULT_CHARACTERISTIC)?);
    let shapes: [(usize, Rows); 2] = [
        (4, &[(0, &[0, 0], 1), (1, &[1, 2], 2), (2, &[2, 4], 1)]),
        (5, &[(0, &[0, 0], 1), (1, &[1, 2], 1), (1, &[1, 3], 1), (2, &[2, 5], 1)]),
    ];
    for (m, rows) in shapes {
        let (config, i) = general_points(&ring, m, KOSZUL_SEED)?;
        let mut wrong = Vec::new();
        for b in box_points(&md(&[0, 0]), &md(&[4, 4])) {
            let (x, y) = (b.as_slice()[0] as usize, b.as_slice()[1] as usize);
            let h = hilbert_function(&i, &b)?;
            if h != ((x + 1) * (y + 1)).min(m) {
                wrong.push(format!("{b}: {h}"));
            }
        }
        c.check(format!("{m} points: Hilbert function is min((i+1)(j+1), {m})"), wrong.is_empty(), wrong.join(", "));
        let (k, report) = koszul_pair_for_points(&ring, &config)?;
        c.table(&format!("{m} points: Koszul pair"), &k.betti(), rows);
        c.check(format!("{m} points: Koszul pair is virtual"), report.is_virtual(), format!("{report}"));
    }
    Ok(())
}

fn del_pezzo(c: &mut Checks) -> Result<(), CliError> {
    let (ring, _) = load_fixture(DEL_PEZZO)?;
    let config = PointConfig::new(DEL_PEZZO_POINTS.iter().map(|p| p.to_vec()).collect());
    let i = points_ideal(&ring, &config)?;
    c.table("minimal resolution", &free_resolution(&i, true, None)?.betti(), DEL_PEZZO_MINIMAL);
    let forms = vanishing_forms(&ring, &config.points, &md(&[0, 2, 0]));
    let g = free_resolution(&Submodule::ideal(&ring, forms)?, true, None)?;
    c.table("forms of degree (0,2,0)", &g.betti(), DEL_PEZZO_SHORT);
    c.check("length 2 resolution is virtual", is_virtual(&g, &i)?.is_virtual(), "");
    Ok(())
}

fn hirzebruch(c: &mut Checks) -> Result<(), CliError> {
    let (ring, ideals) = load_fixture(HIRZEBRUCH)?;
    let i = b_saturate(&ideals[0])?;
    let pdim = free_resolution(&i, true, None)?.length();
    c.check("pdim S/I = 3", pdim == 3, format!("{pdim}"));
    let j = intersect(&i, &irrelevant_power(&ring, &[4, 0])?)?;
    let pdim = free_resolution(&j, true, None)?.length();
    c.check("pdim S/(I ∩ <y0,y1>^4) = 2", pdim == 2, format!("{pdim}"));
    Ok(())
}

fn surface(c: &mut Checks) -> Result<(), CliError> {
    let (_, ideals) = load_fixture(SURFACE)?;
    let i = &ideals[0];
    c.table("minimal resolution", &free_resolution(i, true, None)?.betti(), SURFACE_MINIMAL);
    let mc = ModuleCohomology::new(i)?;
    let rep = mc.regularity_check(&md(&[1, 1]), None, 6)?;
    let witness = rep.failures.iter().any(|w| w.i == 3 && w.p == md(&[0, 0]) && w.dim == 2);
    c.check("(1,1) refuted by H^3_B at (0,0) of dimension 2", rep.verdict == Verdict::Refuted && witness, format!("{rep}"));
    let rep = mc.regularity_check(&md(&[2, 2]), None, 6)?;
    c.check("(2,2) consistent with regularity", rep.verdict == Verdict::ConsistentInWindow, format!("{rep}"));
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub seconds: f64,
}

impl FixtureResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Serialize)]
pub struct FixtureReport {
    pub results: Vec<FixtureResult>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(FixtureResult::passed)
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(out, "{} {} ({:.2}s)", if r.passed() { "PASS" } else { "FAIL" }, r.name, r.seconds)?;
            for c in &r.checks {
                writeln!(out, "  [{}] {}", if c.pass { "ok" } else { "FAIL" }, c.label)?;
                if !c.pass && !c.detail.is_empty() {
                    for line in c.detail.lines() {
                        writeln!(out, "      {line}")?;
                    }
                }
            }
            if let Some(e) = &r.error {
                writeln!(out, "  error: {e}")?;
            }
        }
        let passed = self.results.iter().filter(|r| r.passed()).count();
        writeln!(out, "{passed}/{} fixtures passed", self.results.len())
    }
}

pub fn run_fixture(f: &Fixture) -> FixtureResult {
    let start = Instant::now();
    let mut checks = Checks::default();
    let error = (f.run)(&mut checks).err().map(|e| e.to_string());
    FixtureResult { name: f.name.to_string(), checks: checks.0, error, seconds: start.elapsed().as_secs_f64() }
}

/// Run all fixtures, or the one called `filter`, on up to `jobs` threads.
/// Results come back in suite order.
pub fn run_fixtures(filter: Option<&str>, jobs: usize) -> Result<FixtureReport, CliError> {
    let selected: Vec<&Fixture> = match filter {
        None => FIXTURES.iter().collect(),
        Some(name) => vec![FIXTURES.iter().find(|f| f.name == name).ok_or_else(|| CliError::UnknownFixture(name.into()))?],
    };
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<FixtureResult>>> = Mutex::new(selected.iter().map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, selected.len()) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some(f) = selected.get(k) else { break };
                let r = run_fixture(f);
                slots.lock().expect("no fixture thread panics while holding the lock")[k] = Some(r);
            });
        }
    });
    let results = slots.into_inner().expect("lock is free").into_iter().map(|r| r.expect("every fixture ran")).collect();
    Ok(FixtureReport { results })
}
