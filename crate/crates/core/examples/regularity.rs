//! Testing degrees against the multigraded regularity of the curve through
//! local cohomology in a window.
use virtres::cli::fixtures::{load_fixture, CURVE};
use virtres::cohomology::ModuleCohomology;
use virtres::ring::Multidegree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (_, ideals) = load_fixture(CURVE)?;
    let mc = ModuleCohomology::new(&ideals[0])?;
    let window = Some((Multidegree::from(vec![-2, -2]), Multidegree::from(vec![5, 5])));
    for d in [[2, 1], [2, 2], [4, 1]] {
        let rep = mc.regularity_check(&Multidegree::from(d.to_vec()), window.clone(), 6)?;
        println!("{rep}\n");
    }
    // h^1(O_C(a,0)): the hyperelliptic series and its multiples
    for a in 0..5 {
        let p = Multidegree::from(vec![a, 0]);
        println!("h^1(O_C{p}) = {}", mc.sheaf_cohomology(1, &p, 6)?.dim);
    }
    Ok(())
}
