//! Cohomology of line bundles on P^1 x P^2, Euler characteristics of a
//! twisted module and the sets Δ_i.
use virtres::cli::fixtures::{load_fixture, CURVE};
use virtres::cohomology::{delta_set, euler_char_line, line_bundle_cohomology, sheaf_euler_char};
use virtres::ring::Multidegree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = [1, 2];
    for a in [[0, 0], [-2, 1], [-2, -3], [1, -1], [3, -4]] {
        let a = Multidegree::from(a.to_vec());
        let h = line_bundle_cohomology(&n, &a)?;
        println!("O{a}: h = {:?}, χ = {}", h.dims, euler_char_line(&n, &a));
    }
    let (_, ideals) = load_fixture(CURVE)?;
    for b in [[0, 0], [2, 1], [1, 3]] {
        let b = Multidegree::from(b.to_vec());
        println!("χ(O_C{b}) = {}", sheaf_euler_char(&ideals[0], &b)?);
    }
    for i in 0..=3 {
        println!("Δ_{i} = {:?}", delta_set(&n, i)?.iter().map(|d| d.to_string()).collect::<Vec<_>>());
    }
    Ok(())
}
