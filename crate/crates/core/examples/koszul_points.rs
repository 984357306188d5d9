//! Koszul complexes on two forms through m general points of P^1 x P^1.
use std::sync::Arc;

use virtres::ideals::hilbert_function;
use virtres::punctual::{general_points, koszul_pair_for_points};
use virtres::ring::{Multidegree, Ring};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = Arc::new(Ring::product(&[1, 1], 32003)?);
    for m in 1..=6 {
        let (config, i) = general_points(&ring, m, 11)?;
        let (k, report) = koszul_pair_for_points(&ring, &config)?;
        let hf: Vec<usize> = (0..4).map(|a| hilbert_function(&i, &Multidegree::from(vec![a, a]))).collect::<Result<_, _>>()?;
        println!("m = {m}: HF on the diagonal {hf:?}");
        print!("{}", k.betti());
        println!("virtual: {}\n", report.is_virtual());
    }
    Ok(())
}
