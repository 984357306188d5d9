//! Virtual resolution of the pair (S/I, (2,1)) for the curve, by winnowing
//! and by the direct algorithm, with a virtuality check.
use virtres::cli::fixtures::{load_fixture, CURVE};
use virtres::complexes::{free_resolution, is_virtual, virtual_of_pair, winnow};
use virtres::ring::Multidegree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (_, ideals) = load_fixture(CURVE)?;
    let i = &ideals[0];
    let d = Multidegree::from(vec![2, 1]);
    let w = winnow(&free_resolution(i, true, None)?, &d)?;
    let g = virtual_of_pair(i, &d, false)?;
    println!("winnowed at {d}:\n{}", w.betti());
    println!("direct:\n{}", g.betti());
    println!("same Betti table: {}", w.betti() == g.betti());
    println!("{}", is_virtual(&g, i)?);
    Ok(())
}
