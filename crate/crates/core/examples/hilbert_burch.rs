//! Hilbert-Burch matrix of the ideal J cut out by the first map of the
//! curve's pair resolution.
use virtres::cli::fixtures::{load_fixture, CURVE};
use virtres::complexes::virtual_of_pair;
use virtres::punctual::hilbert_burch;
use virtres::ring::Multidegree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (ring, ideals) = load_fixture(CURVE)?;
    let i = &ideals[0];
    let j = virtual_of_pair(i, &Multidegree::from(vec![2, 1]), false)?.image(1)?;
    let cert = hilbert_burch(&j, Some(i))?;
    println!("{} x {} matrix:\n{}", cert.matrix.rows(), cert.matrix.cols(), cert.matrix.display(&ring));
    for (k, m) in cert.minors.iter().enumerate() {
        println!("minor {k}: {}", m.display(&ring));
    }
    println!("minors generate J: {}", cert.minors_generate);
    println!("J : B^∞ = I: {:?}", cert.saturation_recovers);
    Ok(())
}
