//! Six general points in P^1 x P^1 x P^2: the minimal resolution, pair
//! resolutions, and short resolutions of I ∩ B^a.
use std::sync::Arc;

use virtres::complexes::{free_resolution, is_virtual, winnow};
use virtres::punctual::{general_points, intersect_with_irrelevant_power, search_short_resolution_exponent};
use virtres::ring::{Multidegree, Ring};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(42);
    let ring = Arc::new(Ring::product(&[1, 1, 2], 32003)?);
    let (config, i) = general_points(&ring, 6, seed)?;
    println!("# seed {}", config.seed.unwrap_or(seed));
    let f = free_resolution(&i, true, None)?;
    println!("minimal: totals {:?}, {} twists", f.betti().totals(), f.betti().distinct_twists());
    for d in [[5, 0, 0], [2, 1, 0], [1, 0, 1], [0, 0, 2]] {
        let w = winnow(&f, &Multidegree::from(d.to_vec()))?.betti();
        println!("pair at {d:?}: totals {:?}, {} twists", w.totals(), w.distinct_twists());
    }
    for a in [[2, 1, 0], [3, 3, 0]] {
        let g = free_resolution(&intersect_with_irrelevant_power(&i, &a)?, true, None)?;
        let b = g.betti();
        println!("I ∩ B^{a:?}: totals {:?}, {} twists, virtual {}", b.totals(), b.distinct_twists(), is_virtual(&g, &i)?.is_virtual());
    }
    let (a, g) = search_short_resolution_exponent(&i, 6)?;
    println!("first exponent with a length {} resolution: {a:?}", g.length());
    Ok(())
}
