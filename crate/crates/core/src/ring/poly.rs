use std::cmp::Ordering;

use super::{Monomial, Multidegree, Ring, RingError};

/// A polynomial as a list of `(monomial, coefficient)` pairs, sorted
/// descending in the ring's term order, with no zero coefficients.
///
/// Arithmetic needs the ring (for the field and the order), so every
/// operation takes it explicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        Self::term(ring, Monomial::one(), ring.field().from_i64(c))
    }

    pub fn one() -> Self {
        Polynomial { terms: vec![(Monomial::one(), 1)] }
    }

    /// `c * m`, where `c` is already reduced mod p.
    pub fn term(_ring: &Ring, m: Monomial, c: u32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Polynomial { terms: vec![(ring.var(i), 1)] }
    }

    /// Build from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, u32)>) -> Self {
        let f = ring.field();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c % f.characteristic())),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { terms: out }
    }

    /// Trust the caller that `terms` is already canonical.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, u32)>) -> Self {
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// The coefficient if this is a constant, `None` otherwise.
    pub fn as_constant(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        matches!(self.as_constant(), Some(c) if c != 0)
    }

    pub fn add(&self, other: &Self, ring: &Ring) -> Self {
        self.combine(other, 1, ring)
    }

    pub fn sub(&self, other: &Self, ring: &Ring) -> Self {
        self.combine(other, ring.field().neg(1), ring)
    }

    /// `self + c * other`.
    pub fn combine(&self, other: &Self, c: u32, ring: &Ring) -> Self {
        let f = ring.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let v = f.mul(c, b[j].1);
                    if v != 0 {
                        out.push((b[j].0, v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].1, f.mul(c, b[j].1));
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let v = f.mul(c, t.1);
            if v != 0 {
                out.push((t.0, v));
            }
        }
        Polynomial { terms: out }
    }

    pub fn neg(&self, ring: &Ring) -> Self {
        self.scale(ring.field().neg(1), ring)
    }

    pub fn scale(&self, c: u32, ring: &Ring) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let f = ring.field();
        Polynomial { terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect() }
    }

    /// `c * m * self`; the order is multiplicative so no re-sorting happens.
    pub fn mul_term(&self, m: &Monomial, c: u32, ring: &Ring) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let f = ring.field();
        Polynomial {
            terms: self.terms.iter().map(|&(t, a)| (t.mul(m), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self, ring: &Ring) -> Self {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero();
        for &(m, c) in &small.terms {
            acc = acc.add(&big.mul_term(&m, c, ring), ring);
        }
        acc
    }

    pub fn pow(&self, e: u32, ring: &Ring) -> Self {
        let mut r = Polynomial::one();
        for _ in 0..e {
            r = r.mul(self, ring);
        }
        r
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self, ring: &Ring) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(&(_, c)) => self.scale(ring.field().inv(c), ring),
        }
    }

    /// The common multidegree of all terms.
    pub fn multidegree(&self, ring: &Ring) -> Result<Multidegree, RingError> {
        let (m0, _) = self.terms.first().ok_or(RingError::ZeroPolynomial)?;
        let d0 = ring.degree_of(m0);
        for (m, _) in &self.terms[1..] {
            let d = ring.degree_of(m);
            if d != d0 {
                return Err(RingError::Inhomogeneous {
                    first: ring.fmt_monomial(m0),
                    first_degree: d0,
                    second: ring.fmt_monomial(m),
                    second_degree: d,
                });
            }
        }
        Ok(d0)
    }

    pub fn is_homogeneous(&self, ring: &Ring) -> bool {
        self.is_zero() || self.multidegree(ring).is_ok()
    }

    /// Evaluate at a point given by one value per variable.
    pub fn eval(&self, point: &[u32], ring: &Ring) -> u32 {
        let f = ring.field();
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (k, &x) in point.iter().enumerate() {
                let e = m.exponent(k);
                if e > 0 {
                    v = f.mul(v, f.pow(x, e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Human-readable form using the ring's variable names.
    pub fn display(&self, ring: &Ring) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let c = ring.field().to_i64(*c);
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs == 1 {
                s.push_str(&ring.fmt_monomial(m));
            } else {
                s.push_str(&format!("{abs}*{}", ring.fmt_monomial(m)));
            }
        }
        s
    }
}
