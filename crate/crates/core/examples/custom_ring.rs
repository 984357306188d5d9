//! Resolutions over the Cox ring of a Hirzebruch surface, where intersecting
//! with a power of an irrelevant prime shortens the resolution.
use virtres::cli::fixtures::{load_fixture, HIRZEBRUCH};
use virtres::complexes::free_resolution;
use virtres::ideals::{b_saturate, intersect, irrelevant_power};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (ring, ideals) = load_fixture(HIRZEBRUCH)?;
    println!("{}", ring.describe());
    let i = b_saturate(&ideals[0])?;
    println!("pdim S/I = {}", free_resolution(&i, true, None)?.length());
    for a in 0..=5 {
        let j = intersect(&i, &irrelevant_power(&ring, &[a, 0])?)?;
        let f = free_resolution(&j, true, None)?;
        println!("a = {a}: pdim {}, totals {:?}", f.length(), f.betti().totals());
    }
    Ok(())
}
