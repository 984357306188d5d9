//! Gröbner basis and syzygies of three quadrics on P^1 x P^1.
use std::sync::Arc;

use virtres::cli::parse::parse_job_with;
use virtres::groebner::{groebner_basis, syzygy_module, FreeModule, ModuleElement, ModuleOrder};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let job = parse_job_with("ring P(1,1) char 32003\nideal I = x10*x20, x11*x21, x10*x21 + x11*x20", 32003)?;
    let ring = Arc::clone(&job.ring);
    let gens: Vec<ModuleElement> = job.ideals[0].generators.iter().cloned().map(ModuleElement::scalar).collect();
    let ambient = FreeModule::ring(ring.r());

    let gb = groebner_basis(&ring, &ambient, &gens, ModuleOrder::TermOverPosition)?;
    println!("Gröbner basis ({} elements):", gb.len());
    for g in gb.elements() {
        println!("  {}", g.display(&ring));
    }
    println!("Buchberger criterion holds: {}", gb.satisfies_buchberger());

    let syz = syzygy_module(&ring, &ambient, &gens)?;
    println!("syzygies, source twists {:?}:", syz.source.twists());
    for s in &syz.generators {
        println!("  {}", s.display(&ring));
    }
    Ok(())
}
