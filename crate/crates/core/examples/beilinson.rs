//! The Beilinson-type virtual resolution shape of the curve at (2,2).
use virtres::cli::fixtures::{load_fixture, CURVE};
use virtres::cohomology::beilinson_shape;
use virtres::ring::Multidegree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (_, ideals) = load_fixture(CURVE)?;
    let shape = beilinson_shape(&ideals[0], &Multidegree::from(vec![2, 2]), true)?;
    println!("{shape}");
    println!("totals {:?}", shape.totals());
    Ok(())
}
