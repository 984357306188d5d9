//! Buchberger's algorithm with optional cofactor tracking.
//!
//! In graded mode the engine walks weighted degrees upward. At each degree
//! it first reduces the S-pairs, then the input candidates of that degree.
//! A candidate that reduces to zero is redundant; one that survives is a
//! new minimal generator. With tracking on, every basis element carries its
//! expression in terms of the accepted generators, so an S-pair reducing to
//! zero yields a syzygy among them for free.

use crate::ring::{Monomial, Multidegree, Ring};

use super::vector::{mul_term, scale, sub_mul, Ambient, Term, Vector};

#[derive(Clone, Debug, Default)]
pub(crate) struct Config {
    /// Keep cofactors and collect syzygies.
    pub track: bool,
    /// Drop candidates that reduce to zero instead of keeping them as
    /// generators.
    pub select: bool,
    /// Degree-by-degree processing; requires homogeneous input.
    pub graded: bool,
    /// Ignore pairs and candidates whose degree is not `<=` this bound.
    pub bound: Option<Multidegree>,
    pub tail_reduce: bool,
    /// Buchberger's coprime-lead criterion; only valid for ideals without
    /// tracking.
    pub product_criterion: bool,
}

pub(crate) struct Output {
    pub basis: Vec<Vector>,
    /// Candidate index of each generator, in generator order.
    pub gens: Vec<usize>,
    /// Layout of the generator module (meaningful when tracking).
    pub gen_amb: Ambient,
    pub syzygies: Vec<Vector>,
}

struct Elem {
    v: Vector,
    cof: Vector,
    lead: Term,
    mask: u32,
    sugar: i64,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    sugar: i64,
}

pub(crate) struct Engine<'a> {
    ring: &'a Ring,
    amb: &'a Ambient,
    cfg: Config,
    elems: Vec<Elem>,
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    gen_amb: Ambient,
    gens: Vec<usize>,
    syzygies: Vec<Vector>,
}

impl<'a> Engine<'a> {
    pub fn new(ring: &'a Ring, amb: &'a Ambient, cfg: Config) -> Self {
        Engine {
            ring,
            amb,
            cfg,
            elems: Vec::new(),
            by_comp: vec![Vec::new(); amb.rank_len()],
            pairs: Vec::new(),
            gen_amb: Ambient::schreyer(ring, &[], Vec::new()),
            gens: Vec::new(),
            syzygies: Vec::new(),
        }
    }

    /// Run on `cands`; `degrees[k]` is the degree of candidate `k` (needed
    /// for zero candidates and for the generator layout).
    pub fn run(mut self, cands: &[Vector], degrees: &[Multidegree]) -> Output {
        let ring = self.ring;
        if !self.cfg.select {
            let shifts = cands
                .iter()
                .map(|v| v.first().map_or(Monomial::one(), |t| t.key))
                .collect();
            self.gen_amb = Ambient::schreyer(ring, degrees, shifts);
        }
        if self.cfg.graded {
            let mut order: Vec<usize> = (0..cands.len()).collect();
            let w: Vec<i64> = degrees.iter().map(|d| ring.weight_of_degree(d)).collect();
            order.sort_by_key(|&k| (w[k], k));
            let mut ci = 0;
            loop {
                let pd = self.pairs.iter().map(|p| p.sugar).min();
                let cd = order.get(ci).map(|&k| w[k]);
                let t = match (pd, cd) {
                    (None, None) => break,
                    (Some(a), None) | (None, Some(a)) => a,
                    (Some(a), Some(b)) => a.min(b),
                };
                if pd == Some(t) {
                    let (mut batch, rest): (Vec<Pair>, Vec<Pair>) =
                        std::mem::take(&mut self.pairs).into_iter().partition(|p| p.sugar == t);
                    self.pairs = rest;
                    batch.sort_by(|a, b| {
                        ring.cmp(&a.lcm, &b.lcm).then(a.comp.cmp(&b.comp)).then((a.i, a.j).cmp(&(b.i, b.j)))
                    });
                    for p in batch {
                        self.process_pair(&p);
                    }
                }
                while ci < order.len() && w[order[ci]] == t {
                    let k = order[ci];
                    self.process_candidate(k, &cands[k], &degrees[k]);
                    ci += 1;
                }
            }
        } else {
            for (k, v) in cands.iter().enumerate() {
                self.process_candidate(k, v, &degrees[k]);
            }
            while !self.pairs.is_empty() {
                let best = (0..self.pairs.len())
                    .min_by(|&a, &b| {
                        let (p, q) = (&self.pairs[a], &self.pairs[b]);
                        p.sugar.cmp(&q.sugar).then(ring.cmp(&p.lcm, &q.lcm))
                    })
                    .unwrap();
                let p = self.pairs.swap_remove(best);
                self.process_pair(&p);
            }
        }
        let basis = self.elems.into_iter().map(|e| e.v).collect();
        Output {
            basis,
            gens: self.gens,
            gen_amb: self.gen_amb,
            syzygies: self.syzygies,
        }
    }

    fn within_bound(&self, d: &Multidegree) -> bool {
        self.cfg.bound.as_ref().map_or(true, |b| d.le(b))
    }

    fn process_pair(&mut self, p: &Pair) {
        let ring = self.ring;
        let (gi, gj) = (&self.elems[p.i], &self.elems[p.j]);
        let mi = p.lcm.div_exact(&gi.lead.key);
        let mj = p.lcm.div_exact(&gj.lead.key);
        let s = sub_mul(ring, self.amb, &mul_term(ring, 1, &mi, &gi.v), 1, &mj, &gj.v);
        let cof = if self.cfg.track {
            sub_mul(ring, &self.gen_amb, &mul_term(ring, 1, &mi, &gi.cof), 1, &mj, &gj.cof)
        } else {
            Vec::new()
        };
        let (r, cof) = self.reduce(s, cof, self.cfg.tail_reduce);
        if r.is_empty() {
            if self.cfg.track && !cof.is_empty() {
                self.syzygies.push(cof);
            }
        } else {
            self.add_element(r, cof, p.sugar);
        }
    }

    fn process_candidate(&mut self, k: usize, v: &Vector, degree: &Multidegree) {
        if !self.within_bound(degree) {
            return;
        }
        let ring = self.ring;
        let sugar = if self.cfg.graded {
            ring.weight_of_degree(degree)
        } else {
            self.amb.sugar(v)
        };
        if self.cfg.select {
            if v.is_empty() {
                return;
            }
            let (r, cof) = self.reduce(v.clone(), Vec::new(), self.cfg.tail_reduce);
            if r.is_empty() {
                return;
            }
            let j = self.gens.len();
            self.gens.push(k);
            self.gen_amb.shifts.push(v[0].key);
            let off = degree - &ring.degree_of(&v[0].key);
            self.gen_amb.woffsets.push(ring.weight_of_degree(&off));
            self.gen_amb.offsets.push(off);
            self.gen_amb.rank.push(j as u32);
            let cof = if self.cfg.track {
                let unit = self.gen_amb.unit(j);
                sub_mul(ring, &self.gen_amb, &unit, ring.field().neg(1), &Monomial::one(), &cof)
            } else {
                Vec::new()
            };
            self.add_element(r, cof, sugar);
        } else {
            self.gens.push(k);
            let start = if self.cfg.track { self.gen_amb.unit(k) } else { Vec::new() };
            let (r, cof) = self.reduce(v.clone(), start, self.cfg.tail_reduce);
            if r.is_empty() {
                if self.cfg.track {
                    self.syzygies.push(cof);
                }
            } else {
                self.add_element(r, cof, sugar);
            }
        }
    }

    fn find_divisor(&self, t: &Term) -> Option<usize> {
        let mask = t.key.mask();
        self.by_comp[t.comp as usize]
            .iter()
            .copied()
            .find(|&i| {
                let e = &self.elems[i];
                e.mask & !mask == 0 && e.lead.key.divides(&t.key)
            })
    }

    fn reduce(&self, mut v: Vector, mut cof: Vector, full: bool) -> (Vector, Vector) {
        let ring = self.ring;
        let mut k = 0;
        while k < v.len() {
            let t = v[k];
            match self.find_divisor(&t) {
                Some(i) => {
                    let g = &self.elems[i];
                    let m = t.key.div_exact(&g.lead.key);
                    let tail = sub_mul(ring, self.amb, &v[k..], t.coef, &m, &g.v);
                    v.truncate(k);
                    v.extend(tail);
                    if self.cfg.track {
                        cof = sub_mul(ring, &self.gen_amb, &cof, t.coef, &m, &g.cof);
                    }
                }
                None if full => k += 1,
                None => break,
            }
        }
        (v, cof)
    }

    fn add_element(&mut self, mut v: Vector, mut cof: Vector, sugar: i64) {
        let ring = self.ring;
        let inv = ring.field().inv(v[0].coef);
        scale(ring, inv, &mut v);
        scale(ring, inv, &mut cof);
        let lead = v[0];
        let k = self.elems.len();
        let c = lead.comp;
        self.elems.push(Elem { lead, mask: lead.key.mask(), v, cof, sugar });
        self.update_pairs(k);
        self.by_comp[c as usize].push(k);
    }

    /// Gebauer-Moeller update for the new element `k`.
    fn update_pairs(&mut self, k: usize) {
        let ring = self.ring;
        let lk = self.elems[k].lead;
        let c = lk.comp;
        let elems = &self.elems;
        self.pairs.retain(|p| {
            !(p.comp == c
                && lk.key.divides(&p.lcm)
                && ring.lcm(&elems[p.i].lead.key, &lk.key) != p.lcm
                && ring.lcm(&elems[p.j].lead.key, &lk.key) != p.lcm)
        });
        let mut fresh: Vec<(Pair, bool)> = self.by_comp[c as usize]
            .iter()
            .map(|&i| {
                let li = elems[i].lead.key;
                let lcm = ring.lcm(&li, &lk.key);
                let sugar = if self.cfg.graded {
                    lcm.weight() as i64 + self.amb.woffsets[c as usize]
                } else {
                    let si = elems[i].sugar + lcm.div_exact(&li).weight() as i64;
                    let sk = elems[k].sugar + lcm.div_exact(&lk.key).weight() as i64;
                    si.max(sk)
                };
                (Pair { i, j: k, lcm, comp: c, sugar }, li.is_coprime(&lk.key))
            })
            .collect();
        fresh.sort_by(|(a, ca), (b, cb)| ring.cmp(&a.lcm, &b.lcm).then(cb.cmp(ca)).then(a.i.cmp(&b.i)));
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        for (p, coprime) in fresh {
            if kept.iter().any(|(q, _)| q.lcm.divides(&p.lcm)) {
                continue;
            }
            kept.push((p, coprime));
        }
        for (p, coprime) in kept {
            if coprime && self.cfg.product_criterion {
                continue;
            }
            if self.cfg.bound.is_some() {
                let d = &ring.degree_of(&p.lcm) + &self.amb.offsets[c as usize];
                if !self.within_bound(&d) {
                    continue;
                }
            }
            self.pairs.push(p);
        }
    }
}
