//! Minimal free resolution of a hyperelliptic genus 4 curve in P^1 x P^2.
use virtres::cli::fixtures::{load_fixture, CURVE};
use virtres::complexes::free_resolution;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (_, ideals) = load_fixture(CURVE)?;
    let f = free_resolution(&ideals[0], true, None)?;
    print!("{}", f.betti());
    println!("totals {:?}, minimal: {}, complex: {}", f.betti().totals(), f.is_minimal(), f.is_complex());
    println!("{}", serde_json::to_string_pretty(&f.betti().to_json())?);
    Ok(())
}
