use crate::groebner::engine::{Config, Engine};
use crate::groebner::vector::{Ambient, Vector};
use crate::groebner::{FreeModule, ModuleElement};
use crate::ideals::Submodule;
use crate::ring::{Multidegree, RingRef};

use super::{is_virtual, ComplexError, FreeComplex, Matrix};

/// Resolve `ambient / a`. With `minimal` the generators of `a` are pruned
/// first and the result is minimal; otherwise the given generators are
/// used as they are and later steps are still minimal. Stops after
/// `length_cap` differentials (default: number of variables) and flags the
/// result as truncated if the kernel was not yet zero.
pub fn free_resolution(a: &Submodule, minimal: bool, length_cap: Option<usize>) -> Result<FreeComplex, ComplexError> {
    let ring = a.ring();
    let cap = length_cap.unwrap_or(ring.nvars() + 1);
    let gens: Vec<ModuleElement> = a.generators().to_vec();
    let degrees = a.degrees();
    Ok(resolve(ring, a.ambient(), &gens, &degrees, None, minimal, cap))
}

/// The virtual resolution of the pair `(ambient / a, d)`: each kernel is
/// cut down to its part generated in degrees at most `d + n`.
/// `a` must be B-saturated and `d` in the regularity of the quotient.
/// With `verify` the output is checked with [`is_virtual`] and a failure is
/// reported as [`ComplexError::NotVirtual`].
pub fn virtual_of_pair(a: &Submodule, d: &Multidegree, verify: bool) -> Result<FreeComplex, ComplexError> {
    let ring = a.ring();
    let dims = ring.product_dims()?;
    ring.check_degree_len(d)?;
    let n = Multidegree::from(dims.iter().map(|&x| x as i32).collect::<Vec<_>>());
    let bound = d + &n;
    let gens = a.generators().to_vec();
    let degrees = a.degrees();
    let cap = ring.nvars() + 1;
    let g = resolve(ring, a.ambient(), &gens, &degrees, Some(bound), true, cap);
    if g.is_truncated() {
        return Err(ComplexError::Truncated(cap));
    }
    if verify && !is_virtual(&g, a)?.is_virtual() {
        return Err(ComplexError::NotVirtual);
    }
    Ok(g)
}

/// Iterated syzygies. Each step runs the engine over the previous kernel
/// generators, in the layout the previous step produced, selecting a
/// minimal generating set and collecting its syzygies.
pub(crate) fn resolve(
    ring: &RingRef,
    f0: &FreeModule,
    gens: &[ModuleElement],
    degrees: &[Multidegree],
    bound: Option<Multidegree>,
    minimal: bool,
    cap: usize,
) -> FreeComplex {
    let mut amb = Ambient::top(ring, f0.degrees());
    let mut cands: Vec<Vector> = gens.iter().map(|g| amb.from_coords(ring, &g.coords)).collect();
    let mut cand_degrees: Vec<Multidegree> = degrees.to_vec();
    let mut modules = vec![f0.clone()];
    let mut maps = Vec::new();
    let mut truncated = false;
    let mut level = 0;
    loop {
        if let Some(b) = &bound {
            let keep: Vec<usize> = (0..cands.len()).filter(|&k| cand_degrees[k].le(b)).collect();
            cands = keep.iter().map(|&k| std::mem::take(&mut cands[k])).collect();
            cand_degrees = keep.iter().map(|&k| cand_degrees[k].clone()).collect();
        }
        if cands.iter().all(|v| v.is_empty()) {
            break;
        }
        if level == cap {
            truncated = true;
            break;
        }
        let select = minimal || level > 0;
        let cfg = Config { track: true, select, graded: true, bound: bound.clone(), tail_reduce: true, ..Config::default() };
        let out = Engine::new(ring, &amb, cfg).run(&cands, &cand_degrees);
        let chosen: Vec<usize> = if select {
            out.gens.clone()
        } else {
            (0..cands.len()).filter(|&k| !cands[k].is_empty()).collect()
        };
        let target = modules.last().expect("nonempty").clone();
        let source = FreeModule::new(chosen.iter().map(|&k| cand_degrees[k].clone()).collect());
        let columns = chosen.iter().map(|&k| ModuleElement::new(amb.to_coords(&cands[k]))).collect();
        maps.push(Matrix::new(target, source.clone(), columns));
        modules.push(source);
        let gen_amb = out.gen_amb;
        let mut syz = out.syzygies;
        if !select {
            // Keep-all mode indexes every candidate; drop the zero ones.
            let index: Vec<Option<usize>> = {
                let mut pos = 0;
                (0..cands.len())
                    .map(|k| {
                        if cands[k].is_empty() {
                            None
                        } else {
                            pos += 1;
                            Some(pos - 1)
                        }
                    })
                    .collect()
            };
            let mut sub = Ambient::schreyer(ring, &[], Vec::new());
            for (k, i) in index.iter().enumerate() {
                if i.is_some() {
                    sub.shifts.push(gen_amb.shifts[k]);
                    sub.offsets.push(gen_amb.offsets[k].clone());
                    sub.woffsets.push(gen_amb.woffsets[k]);
                    sub.rank.push(sub.rank.len() as u32);
                }
            }
            syz = syz
                .into_iter()
                .map(|v| {
                    v.into_iter()
                        .filter_map(|mut t| {
                            index[t.comp as usize].map(|i| {
                                t.comp = i as u32;
                                t
                            })
                        })
                        .collect()
                })
                .filter(|v: &Vector| !v.is_empty())
                .collect();
            cand_degrees = syz.iter().map(|v| sub.degree(ring, &v[0])).collect();
            amb = sub;
        } else {
            cand_degrees = syz.iter().map(|v| gen_amb.degree(ring, &v[0])).collect();
            amb = gen_amb;
        }
        cands = syz;
        level += 1;
    }
    FreeComplex::from_parts(ring, modules, maps, truncated)
}
