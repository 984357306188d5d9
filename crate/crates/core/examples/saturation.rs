//! Saturation, intersection with powers of B, truncation and Hilbert functions.
use std::sync::Arc;

use virtres::cli::parse::parse_job_with;
use virtres::ideals::{b_saturate, hilbert_function, irrelevant_ideal, intersect, truncate, Submodule};
use virtres::ring::Multidegree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a point of P^1 x P^1 with an embedded component at the irrelevant locus
    let job = parse_job_with("ring P(1,1) char 32003\nideal I = x11*x10, x11^2, x21", 32003)?;
    let ring = Arc::clone(&job.ring);
    let i = Submodule::ideal(&ring, job.ideals[0].generators.clone())?;
    let s = b_saturate(&i)?;
    println!("I       = {}", i.display());
    println!("I : B^∞ = {}", s.display());

    let j = intersect(&s, &irrelevant_ideal(&ring))?;
    println!("(I : B^∞) ∩ B = {}", j.display());
    let t = truncate(&s, &Multidegree::from(vec![1, 1]))?;
    println!("truncation at (1,1) has {} generators", t.generators().len());
    for b in [[0, 0], [1, 0], [2, 2], [3, 1]] {
        let b = Multidegree::from(b.to_vec());
        println!("HF(S/I, {b}) = {}, HF(S/(I:B^∞), {b}) = {}", hilbert_function(&i, &b)?, hilbert_function(&s, &b)?);
    }
    Ok(())
}
