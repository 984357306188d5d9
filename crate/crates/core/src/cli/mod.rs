//! Command-line front end.
//!
//! Every subcommand reads a job file (see [`parse`]) or builds its input
//! from flags, runs one library operation and prints a text or JSON report.
//! Exit codes: 0 on success, 1 when a mathematical check fails or a degree
//! is refuted, 2 on usage, parse or input errors.

pub mod fixtures;
pub mod parse;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use crate::cohomology::{self, beilinson_shape, CohomologyError, ModuleCohomology, Verdict};
use crate::complexes::{free_resolution, is_virtual, virtual_of_pair, winnow, ComplexError, FreeComplex};
use crate::ideals::{b_saturate, truncate, IdealError, Submodule};
use crate::punctual::{
    general_points, hilbert_burch, intersect_with_irrelevant_power, koszul_pair_for_points,
    search_short_resolution_exponent, PunctualError,
};
use crate::ring::{Ring, RingError, RingRef};

use parse::{default_characteristic, parse_degree, parse_int_list, parse_job_with, parse_window, JobSpec, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}:{source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Flag(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Punctual(#[from] PunctualError),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "virtres", version, about = "Minimal and virtual resolutions over products of projective spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Job file with a `ring` line and `ideal` lines
    #[arg(long = "ideal", value_name = "PATH")]
    pub path: PathBuf,
    /// Which ideal of the file to use (default: the first)
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal free resolution, with differentials
    Res {
        #[command(flatten)]
        input: Input,
    },
    /// Betti table of the minimal free resolution
    Betti {
        #[command(flatten)]
        input: Input,
    },
    /// Saturation by the irrelevant ideal
    Saturate {
        #[command(flatten)]
        input: Input,
    },
    /// The truncation I_{>=d}
    Truncate {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// Resolution of the pair (S/I, d) computed directly
    VirtualOfPair {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        /// Also check that the result is virtual
        #[arg(long)]
        verify: bool,
    },
    /// Winnow the minimal resolution at d
    Winnow {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
    },
    /// Check the winnowed resolution at --degree, or the resolution of
    /// I ∩ B^a for --exponent, against the saturation of I
    IsVirtual {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "exponent")]
        degree: Option<String>,
        #[arg(long)]
        exponent: Option<String>,
    },
    /// Test a degree against the multigraded regularity in a window
    RegCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        /// Degree box `lo:hi`, e.g. `-2,-2:5,5`
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Largest Frobenius power used for the Ext colimit
        #[arg(long, default_value_t = cohomology::DEFAULT_T_MAX)]
        t_max: u32,
    },
    /// Ranks of the Beilinson-type virtual resolution at d
    Beilinson {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        /// Check the cohomology vanishing the ranks rely on
        #[arg(long)]
        verify: bool,
    },
    /// General points in a product of projective spaces
    Points {
        /// Dimension vector, e.g. `1,1,2`
        #[arg(long)]
        space: String,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Winnow the resolution at these degrees (`;`-separated)
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<String>,
        /// Resolve I ∩ B^a for these exponents (`;`-separated)
        #[arg(long)]
        exponent: Option<String>,
        /// On P^1 x P^1, build the Koszul pair through the points
        #[arg(long)]
        koszul: bool,
        #[arg(long)]
        json: bool,
    },
    /// Resolution of I ∩ B^a, for a given or searched exponent
    BsatPower {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        exponent: Option<String>,
        /// Search bound when no exponent is given
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// Hilbert-Burch matrix of a codimension two ideal
    HilbertBurch {
        #[command(flatten)]
        input: Input,
        /// Use the ideal generated by the first differential of the pair resolution at d
        #[arg(long, allow_hyphen_values = true, conflicts_with = "exponent")]
        degree: Option<String>,
        /// Use I ∩ B^a
        #[arg(long)]
        exponent: Option<String>,
    },
    /// Run the bundled fixture suite
    Fixtures {
        /// Run only this fixture
        name: Option<String>,
        /// Number of fixtures run at once
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
        /// List the fixtures instead of running them
        #[arg(long)]
        list: bool,
    },
}

/// Outcome of a subcommand: 0 or 1 (a failed check).
pub type Status = i32;

/// Parse arguments, run and print. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli.command, &mut out) {
        Ok(status) => status,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn load_job(path: &Path) -> Result<JobSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    let p = default_characteristic()?;
    parse_job_with(&text, p).map_err(|source| CliError::Parse { path: path.to_owned(), source })
}

fn load(input: &Input) -> Result<(JobSpec, Submodule), CliError> {
    let job = load_job(&input.path)?;
    let named = job.ideal(input.name.as_deref())?;
    if named.generators.is_empty() {
        return Err(ParseError::NoIdeal.into());
    }
    let ideal = Submodule::ideal(&job.ring, named.generators.clone())?;
    Ok((job, ideal))
}

fn exponent(text: &str, r: usize) -> Result<Vec<i64>, CliError> {
    let a = parse_int_list(text)?;
    if a.len() != r {
        return Err(ParseError::DegreeLength { text: text.into(), expected: r, got: a.len() }.into());
    }
    if a.iter().any(|&x| x < 0) {
        return Err(CliError::Usage(format!("exponent `{text}` has a negative entry")));
    }
    Ok(a)
}

fn print_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json values serialize"))?;
    Ok(())
}

fn complex_json(f: &FreeComplex) -> serde_json::Value {
    json!({ "length": f.length(), "betti": f.betti().to_json() })
}

fn print_differentials(out: &mut dyn Write, f: &FreeComplex) -> Result<(), CliError> {
    for (k, d) in f.differentials().iter().enumerate() {
        writeln!(out, "d_{}: {} x {}", k + 1, d.rows(), d.cols())?;
        writeln!(out, "{}", d.display(f.ring()))?;
    }
    Ok(())
}

pub fn run(command: &Command, out: &mut dyn Write) -> Result<Status, CliError> {
    match command {
        Command::Res { input } | Command::Betti { input } => {
            let (_, i) = load(input)?;
            let f = free_resolution(&i, true, None)?;
            if input.json {
                print_json(out, &complex_json(&f))?;
            } else {
                write!(out, "{}", f.betti())?;
                if matches!(command, Command::Res { .. }) {
                    print_differentials(out, &f)?;
                }
            }
            Ok(0)
        }
        Command::Saturate { input } => {
            let (_, i) = load(input)?;
            let s = b_saturate(&i)?;
            let changed = !s.equals(&i)?;
            let gens: Vec<String> = s.polynomials()?.iter().map(|g| g.display(s.ring())).collect();
            if input.json {
                print_json(out, &json!({ "generators": gens, "changed": changed }))?;
            } else {
                writeln!(out, "{}", if changed { "saturation is strictly larger" } else { "already saturated" })?;
                for g in gens {
                    writeln!(out, "{g}")?;
                }
            }
            Ok(0)
        }
        Command::Truncate { input, degree } => {
            let (job, i) = load(input)?;
            let d = parse_degree(degree, job.ring.r())?;
            let t = truncate(&i, &d)?;
            let gens: Vec<String> = t.polynomials()?.iter().map(|g| g.display(t.ring())).collect();
            if input.json {
                print_json(out, &json!({ "degree": d.as_slice(), "generators": gens }))?;
            } else {
                writeln!(out, "{} generators", gens.len())?;
                for g in gens {
                    writeln!(out, "{g}")?;
                }
            }
            Ok(0)
        }
        Command::VirtualOfPair { input, degree, verify } => {
            let (job, i) = load(input)?;
            let d = parse_degree(degree, job.ring.r())?;
            let f = virtual_of_pair(&i, &d, *verify)?;
            report_complex(out, input.json, &f, None)?;
            Ok(0)
        }
        Command::Winnow { input, degree } => {
            let (job, i) = load(input)?;
            let d = parse_degree(degree, job.ring.r())?;
            let f = winnow(&free_resolution(&i, true, None)?, &d)?;
            report_complex(out, input.json, &f, None)?;
            Ok(0)
        }
        Command::IsVirtual { input, degree, exponent: exp } => {
            let (job, i) = load(input)?;
            let f = match (degree, exp) {
                (Some(d), None) => winnow(&free_resolution(&i, true, None)?, &parse_degree(d, job.ring.r())?)?,
                (None, Some(a)) => {
                    free_resolution(&intersect_with_irrelevant_power(&i, &exponent(a, job.ring.r())?)?, true, None)?
                }
                _ => return Err(CliError::Usage("give exactly one of --degree and --exponent".into())),
            };
            let report = is_virtual(&f, &b_saturate(&i)?)?;
            if input.json {
                let higher: Vec<String> = report.higher.iter().map(|s| format!("{s:?}").to_lowercase()).collect();
                print_json(
                    out,
                    &json!({
                        "complex": complex_json(&f),
                        "h0_matches": report.h0_matches,
                        "higher": higher,
                        "virtual": report.is_virtual(),
                    }),
                )?;
            } else {
                write!(out, "{}", f.betti())?;
                writeln!(out, "{report}")?;
            }
            Ok(if report.is_virtual() { 0 } else { 1 })
        }
        Command::RegCheck { input, degree, window, t_max } => {
            let (job, i) = load(input)?;
            let r = job.ring.r();
            let d = parse_degree(degree, r)?;
            let window = window.as_deref().map(|w| parse_window(w, r)).transpose()?;
            let rep = ModuleCohomology::new(&i)?.regularity_check(&d, window, *t_max)?;
            if input.json {
                print_json(out, &serde_json::to_value(&rep).expect("report serializes"))?;
            } else {
                writeln!(out, "{rep}")?;
            }
            Ok(if rep.verdict == Verdict::Refuted { 1 } else { 0 })
        }
        Command::Beilinson { input, degree, verify } => {
            let (job, i) = load(input)?;
            let d = parse_degree(degree, job.ring.r())?;
            let shape = beilinson_shape(&i, &d, *verify)?;
            if input.json {
                print_json(out, &serde_json::to_value(&shape).expect("shape serializes"))?;
            } else {
                writeln!(out, "{shape}")?;
            }
            Ok(if shape.vanishing_verified == Some(false) { 1 } else { 0 })
        }
        Command::Points { space, count, seed, degree, exponent: exp, koszul, json: as_json } => {
            points(out, space, *count, *seed, degree.as_deref(), exp.as_deref(), *koszul, *as_json)
        }
        Command::BsatPower { input, exponent: exp, bound } => {
            let (job, i) = load(input)?;
            let (a, f) = match exp {
                Some(a) => {
                    let a = exponent(a, job.ring.r())?;
                    let f = free_resolution(&intersect_with_irrelevant_power(&i, &a)?, true, None)?;
                    (a, f)
                }
                None => search_short_resolution_exponent(&i, *bound)?,
            };
            let report = is_virtual(&f, &b_saturate(&i)?)?;
            if input.json {
                print_json(out, &json!({ "exponent": a, "complex": complex_json(&f), "virtual": report.is_virtual() }))?;
            } else {
                writeln!(out, "a = {a:?}")?;
                write!(out, "{}", f.betti())?;
                writeln!(out, "virtual: {}", if report.is_virtual() { "yes" } else { "no" })?;
            }
            Ok(if report.is_virtual() { 0 } else { 1 })
        }
        Command::HilbertBurch { input, degree, exponent: exp } => {
            let (job, i) = load(input)?;
            let r = job.ring.r();
            let j = match (degree, exp) {
                (Some(d), _) => virtual_of_pair(&i, &parse_degree(d, r)?, false)?.image(1)?,
                (None, Some(a)) => intersect_with_irrelevant_power(&i, &exponent(a, r)?)?,
                (None, None) => i.clone(),
            };
            let sat = b_saturate(&i)?;
            let cert = hilbert_burch(&j, Some(&sat))?;
            let ok = cert.minors_generate && cert.saturation_recovers != Some(false);
            if input.json {
                let ring = j.ring();
                let matrix: Vec<Vec<String>> = (0..cert.matrix.rows())
                    .map(|row| (0..cert.matrix.cols()).map(|c| cert.matrix.entry(row, c).display(ring)).collect())
                    .collect();
                let minors: Vec<String> = cert.minors.iter().map(|m| m.display(ring)).collect();
                print_json(
                    out,
                    &json!({
                        "matrix": matrix,
                        "minors": minors,
                        "minors_generate": cert.minors_generate,
                        "saturation_recovers": cert.saturation_recovers,
                    }),
                )?;
            } else {
                writeln!(out, "{} x {} matrix", cert.matrix.rows(), cert.matrix.cols())?;
                writeln!(out, "{}", cert.matrix.display(j.ring()))?;
                writeln!(out, "maximal minors generate the ideal: {}", yes_no(cert.minors_generate))?;
                if let Some(s) = cert.saturation_recovers {
                    writeln!(out, "saturation recovers the saturated ideal: {}", yes_no(s))?;
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Fixtures { name, jobs, json: as_json, list } => {
            if *list {
                for f in fixtures::FIXTURES {
                    writeln!(out, "{:<12} {}", f.name, f.about)?;
                }
                return Ok(0);
            }
            let report = fixtures::run_fixtures(name.as_deref(), *jobs)?;
            if *as_json {
                print_json(out, &serde_json::to_value(&report).expect("report serializes"))?;
            } else {
                write!(out, "{report}")?;
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_complex(out: &mut dyn Write, as_json: bool, f: &FreeComplex, header: Option<&str>) -> Result<(), CliError> {
    if as_json {
        return print_json(out, &complex_json(f));
    }
    if let Some(h) = header {
        writeln!(out, "{h}")?;
    }
    write!(out, "{}", f.betti())?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn points(
    out: &mut dyn Write,
    space: &str,
    count: usize,
    seed: u64,
    degrees: Option<&str>,
    exponents: Option<&str>,
    koszul: bool,
    as_json: bool,
) -> Result<Status, CliError> {
    let dims: Vec<usize> = parse_int_list(space)?
        .into_iter()
        .map(|x| usize::try_from(x).map_err(|_| CliError::Usage(format!("bad dimension in `{space}`"))))
        .collect::<Result<_, _>>()?;
    let ring: RingRef = Arc::new(Ring::product(&dims, default_characteristic()?)?);
    let r = ring.r();
    let (config, ideal) = general_points(&ring, count, seed)?;
    let used_seed = config.seed.unwrap_or(seed);
    let f = free_resolution(&ideal, true, None)?;
    let mut status = 0;
    let mut extra = Vec::new();
    let mut text = String::new();
    let split = |s: Option<&str>| s.map(|s| s.split(';').map(str::to_owned).collect::<Vec<_>>()).unwrap_or_default();
    for d in split(degrees) {
        let d = parse_degree(&d, r)?;
        let w = winnow(&f, &d)?;
        text += &format!("winnowed at {d}:\n{}", w.betti());
        extra.push(json!({ "degree": d.as_slice(), "complex": complex_json(&w) }));
    }
    for a in split(exponents) {
        let a = exponent(&a, r)?;
        let g = free_resolution(&intersect_with_irrelevant_power(&ideal, &a)?, true, None)?;
        let v = is_virtual(&g, &ideal)?.is_virtual();
        if !v {
            status = 1;
        }
        text += &format!("I ∩ B^{a:?}:\n{}virtual: {}\n", g.betti(), yes_no(v));
        extra.push(json!({ "exponent": a, "complex": complex_json(&g), "virtual": v }));
    }
    if koszul {
        let (k, report) = koszul_pair_for_points(&ring, &config)?;
        if !report.is_virtual() {
            status = 1;
        }
        text += &format!("Koszul pair:\n{}{report}\n", k.betti());
        extra.push(json!({ "koszul": complex_json(&k), "virtual": report.is_virtual() }));
    }
    if as_json {
        print_json(
            out,
            &json!({
                "seed": used_seed,
                "space": dims,
                "points": config.points,
                "resolution": complex_json(&f),
                "derived": extra,
            }),
        )?;
    } else {
        writeln!(out, "# seed {used_seed}")?;
        for p in &config.points {
            writeln!(out, "point {p:?}")?;
        }
        write!(out, "{}", f.betti())?;
            write!(out, "{text}")?;
    }
    Ok(status)
}

#[cfg(test)]
mod tests;
