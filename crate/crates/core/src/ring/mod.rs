//! Multigraded polynomial rings: products of projective spaces and custom
//! toric gradings, together with monomials, polynomials and term orders.

mod degree;
mod field;
mod monomial;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use degree::{box_points, Multidegree};
pub use field::{is_prime, PrimeField};
pub use monomial::{Monomial, MAX_VARS};
pub use poly::Polynomial;

/// Characteristic used when none is given.
pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("dimension vector is empty")]
    EmptyDimensions,
    #[error("degree list is empty")]
    EmptyDegrees,
    #[error("{0} variables exceed the supported maximum of {MAX_VARS}")]
    TooManyVariables(usize),
    #[error("variable degrees have inconsistent lengths")]
    DegreeLength,
    #[error("no weight vector makes every variable degree positive; graded pieces are not finite")]
    NotPositivelyGraded,
    #[error("irrelevant prime refers to variable {0}, which does not exist")]
    BadPrime(usize),
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("inhomogeneous polynomial: {first} has degree {first_degree} but {second} has degree {second_degree}")]
    Inhomogeneous {
        first: String,
        first_degree: Multidegree,
        second: String,
        second_degree: Multidegree,
    },
    #[error("expected a degree of length {expected}, got {got}")]
    WrongDegreeLength { expected: usize, got: usize },
    #[error("operation requires a product of projective spaces")]
    NotProductRing,
}

/// The term order on monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Weighted degree, then reverse lexicographic.
    GRevLex,
    /// The variables in the bitmask are eliminated: compare their total
    /// exponent first, then fall back to `GRevLex`.
    Elimination { block: u32 },
}

/// A Z^r-graded polynomial ring over F_p.
#[derive(Clone, Debug)]
pub struct Ring {
    dims: Option<Vec<usize>>,
    var_degrees: Vec<Multidegree>,
    names: Vec<String>,
    /// (factor, index) of each variable of a product ring.
    positions: Vec<Option<(usize, usize)>>,
    field: PrimeField,
    primes: Vec<Vec<usize>>,
    weights: Vec<u32>,
    grading_form: Vec<i64>,
    order: MonomialOrder,
    /// Variables in the order the reverse-lexicographic tie-break visits
    /// them (normally last to first).
    revlex: Vec<usize>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims
            && self.var_degrees == other.var_degrees
            && self.field == other.field
            && self.primes == other.primes
            && self.order == other.order
            && self.revlex == other.revlex
    }
}
impl Eq for Ring {}

pub type RingRef = Arc<Ring>;

impl Ring {
    /// The Cox ring of P^{n_1} x ... x P^{n_r} with `deg x_{i,j} = e_i`.
    pub fn product(dims: &[usize], p: u32) -> Result<Ring, RingError> {
        if dims.is_empty() {
            return Err(RingError::EmptyDimensions);
        }
        let field = PrimeField::new(p)?;
        let r = dims.len();
        let nvars: usize = dims.iter().map(|n| n + 1).sum();
        if nvars > MAX_VARS - 1 {
            return Err(RingError::TooManyVariables(nvars));
        }
        let mut var_degrees = Vec::new();
        let mut names = Vec::new();
        let mut positions = Vec::new();
        let mut primes = Vec::new();
        for (i, &n) in dims.iter().enumerate() {
            let mut prime = Vec::new();
            for j in 0..=n {
                prime.push(var_degrees.len());
                var_degrees.push(Multidegree::unit(r, i));
                names.push(format!("x{}{}", i + 1, j));
                positions.push(Some((i + 1, j)));
            }
            primes.push(prime);
        }
        Ok(Ring {
            dims: Some(dims.to_vec()),
            weights: vec![1; nvars],
            grading_form: vec![1; r],
            var_degrees,
            names,
            positions,
            field,
            primes,
            order: MonomialOrder::GRevLex,
            revlex: (0..nvars).rev().collect(),
        })
    }

    /// A ring with arbitrary variable degrees in Z^r and irrelevant primes
    /// given as variable index sets.
    pub fn custom(
        var_degrees: Vec<Multidegree>,
        primes: Vec<Vec<usize>>,
        p: u32,
    ) -> Result<Ring, RingError> {
        if var_degrees.is_empty() {
            return Err(RingError::EmptyDegrees);
        }
        let field = PrimeField::new(p)?;
        let r = var_degrees[0].len();
        if r == 0 || var_degrees.iter().any(|d| d.len() != r) {
            return Err(RingError::DegreeLength);
        }
        let nvars = var_degrees.len();
        if nvars > MAX_VARS - 1 {
            return Err(RingError::TooManyVariables(nvars));
        }
        if let Some(&bad) = primes.iter().flatten().find(|&&v| v >= nvars) {
            return Err(RingError::BadPrime(bad));
        }
        let grading_form = positive_form(&var_degrees).ok_or(RingError::NotPositivelyGraded)?;
        let weights = var_degrees
            .iter()
            .map(|d| dot(&grading_form, d) as u32)
            .collect();
        Ok(Ring {
            dims: None,
            names: (0..nvars).map(|k| format!("y{k}")).collect(),
            positions: vec![None; nvars],
            var_degrees,
            field,
            primes,
            weights,
            grading_form,
            order: MonomialOrder::GRevLex,
            revlex: (0..nvars).rev().collect(),
        })
    }

    /// This ring plus one extra variable `t` of degree 0, with an
    /// elimination order for `t`. Returns the new ring and the index of `t`.
    pub fn with_elimination_variable(&self) -> (Ring, usize) {
        let t = self.nvars();
        assert!(t < MAX_VARS, "no room for an elimination variable");
        let mut ext = self.clone();
        ext.var_degrees.push(Multidegree::zero(self.r()));
        ext.names.push("t".into());
        ext.positions.push(None);
        ext.weights.push(1);
        ext.order = MonomialOrder::Elimination { block: 1 << t };
        ext.revlex.insert(0, t);
        (ext, t)
    }

    /// The same ring with the term order changed so that `x` acts as the
    /// last variable of the reverse-lexicographic tie-break. Then a
    /// homogeneous element whose lead term is divisible by `x` is divisible
    /// by `x`.
    pub fn with_last_variable(&self, x: usize) -> Ring {
        let mut r = self.clone();
        r.revlex.retain(|&v| v != x);
        r.revlex.insert(0, x);
        r
    }

    pub fn nvars(&self) -> usize {
        self.var_degrees.len()
    }

    /// Rank r of the grading group.
    pub fn r(&self) -> usize {
        self.var_degrees[0].len()
    }

    pub fn dims(&self) -> Option<&[usize]> {
        self.dims.as_deref()
    }

    /// The dimension vector, or an error for custom rings.
    pub fn product_dims(&self) -> Result<&[usize], RingError> {
        self.dims().ok_or(RingError::NotProductRing)
    }

    pub fn is_product(&self) -> bool {
        self.dims.is_some()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn var_degree(&self, i: usize) -> &Multidegree {
        &self.var_degrees[i]
    }

    pub fn var_degrees(&self) -> &[Multidegree] {
        &self.var_degrees
    }

    pub fn irrelevant_primes(&self) -> &[Vec<usize>] {
        &self.primes
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// (factor, index) of variable `i` in a product ring; factors count from 1.
    pub fn var_position(&self, i: usize) -> Option<(usize, usize)> {
        self.positions[i]
    }

    /// Index of the variable `x_{i,j}` of a product ring.
    pub fn var_index(&self, factor: usize, j: usize) -> Option<usize> {
        self.positions.iter().position(|p| *p == Some((factor, j)))
    }

    pub fn var_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The variable `x_i` as a monomial.
    pub fn var(&self, i: usize) -> Monomial {
        let mut m = Monomial::one();
        m.e[i] = 1;
        m.w = self.weights[i];
        m
    }

    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        assert!(exps.len() <= self.nvars());
        let mut m = Monomial::one();
        for (k, &x) in exps.iter().enumerate() {
            m.e[k] = u16::try_from(x).expect("exponent overflow");
            m.w += x * self.weights[k];
        }
        m
    }

    pub fn lcm(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        for k in 0..self.nvars() {
            m.e[k] = a.e[k].max(b.e[k]);
            m.w += m.e[k] as u32 * self.weights[k];
        }
        m
    }

    pub fn gcd(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let mut m = Monomial::one();
        for k in 0..self.nvars() {
            m.e[k] = a.e[k].min(b.e[k]);
            m.w += m.e[k] as u32 * self.weights[k];
        }
        m
    }

    /// Multidegree of a monomial.
    pub fn degree_of(&self, m: &Monomial) -> Multidegree {
        let mut d = Multidegree::zero(self.r());
        for k in 0..self.nvars() {
            let x = m.e[k] as i32;
            if x != 0 {
                for (a, b) in d.0.iter_mut().zip(self.var_degrees[k].0.iter()) {
                    *a += x * b;
                }
            }
        }
        d
    }

    /// The weight `w . d` the term order assigns to monomials of degree `d`.
    pub fn weight_of_degree(&self, d: &Multidegree) -> i64 {
        dot(&self.grading_form, d)
    }

    /// Compare two monomials in the ring's term order.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_eliminated(a, b)
            .then_with(|| a.w.cmp(&b.w))
            .then_with(|| self.cmp_revlex(a, b))
    }

    /// The elimination-block part of the order (equal for plain grevlex).
    #[inline]
    pub(crate) fn cmp_eliminated(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Elimination { block } => block_degree(a, block).cmp(&block_degree(b, block)),
            MonomialOrder::GRevLex => Ordering::Equal,
        }
    }

    /// Reverse-lexicographic tie-break: a smaller exponent in the first
    /// differing variable of the visiting order is larger.
    #[inline]
    pub(crate) fn cmp_revlex(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &k in &self.revlex {
            if a.e[k] != b.e[k] {
                return b.e[k].cmp(&a.e[k]);
            }
        }
        Ordering::Equal
    }

    /// All monomials of multidegree `d`, in descending term order.
    ///
    /// Returns `None` only if the grading makes the piece infinite, which a
    /// positively graded ring rules out.
    pub fn monomials_of_degree(&self, d: &Multidegree) -> Vec<Monomial> {
        let target = self.weight_of_degree(d);
        let mut out = Vec::new();
        if target < 0 {
            return out;
        }
        if let Some(dims) = &self.dims {
            if !d.is_nonnegative() {
                return out;
            }
            // product of per-factor enumerations
            let mut partial = vec![Monomial::one()];
            let mut offset = 0;
            for (i, &n) in dims.iter().enumerate() {
                let block = compositions(d.0[i] as u32, n + 1);
                let mut next = Vec::with_capacity(partial.len() * block.len());
                for m in &partial {
                    for c in &block {
                        let mut e = *m;
                        for (j, &x) in c.iter().enumerate() {
                            e.e[offset + j] = x as u16;
                            e.w += x;
                        }
                        next.push(e);
                    }
                }
                partial = next;
                offset += n + 1;
            }
            out = partial;
        } else {
            let mut cur = Monomial::one();
            self.enumerate_weighted(0, target as u32, &mut cur, d, &mut out);
        }
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }

    fn enumerate_weighted(
        &self,
        k: usize,
        remaining: u32,
        cur: &mut Monomial,
        d: &Multidegree,
        out: &mut Vec<Monomial>,
    ) {
        let n = self.nvars();
        if k == n {
            if remaining == 0 && self.degree_of(cur) == *d {
                out.push(*cur);
            }
            return;
        }
        let w = self.weights[k];
        let mut x = 0u32;
        loop {
            cur.e[k] = x as u16;
            cur.w += x * w;
            self.enumerate_weighted(k + 1, remaining - x * w, cur, d, out);
            cur.w -= x * w;
            cur.e[k] = 0;
            x += 1;
            if x * w > remaining {
                break;
            }
        }
    }

    /// Render a monomial with variable names, e.g. `x10^2*x21`.
    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for k in 0..self.nvars() {
            match m.e[k] {
                0 => {}
                1 => parts.push(self.names[k].clone()),
                x => parts.push(format!("{}^{}", self.names[k], x)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// The ring description line understood by the job parser.
    pub fn describe(&self) -> String {
        match &self.dims {
            Some(dims) => format!(
                "ring P({}) char {}",
                dims.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","),
                self.characteristic()
            ),
            None => format!(
                "ring custom degrees [{}] primes [{}] char {}",
                self.var_degrees
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                self.primes
                    .iter()
                    .map(|p| format!(
                        "[{}]",
                        p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                    ))
                    .collect::<Vec<_>>()
                    .join(","),
                self.characteristic()
            ),
        }
    }

    pub(crate) fn check_degree_len(&self, d: &Multidegree) -> Result<(), RingError> {
        if d.len() != self.r() {
            return Err(RingError::WrongDegreeLength { expected: self.r(), got: d.len() });
        }
        Ok(())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[inline]
fn block_degree(m: &Monomial, block: u32) -> u32 {
    let mut s = 0;
    let mut b = block;
    while b != 0 {
        let k = b.trailing_zeros() as usize;
        s += m.e[k] as u32;
        b &= b - 1;
    }
    s
}

fn dot(w: &[i64], d: &Multidegree) -> i64 {
    w.iter().zip(d.0.iter()).map(|(a, &b)| a * b as i64).sum()
}

/// Smallest-weight integer form that is positive on every variable degree.
fn positive_form(degs: &[Multidegree]) -> Option<Vec<i64>> {
    let r = degs[0].len();
    let bound = 8i64;
    let mut best: Option<(i64, Vec<i64>)> = None;
    let mut w = vec![-bound; r];
    loop {
        let vals: Vec<i64> = degs.iter().map(|d| dot(&w, d)).collect();
        if vals.iter().all(|&v| v > 0) {
            let s: i64 = vals.iter().sum();
            if best.as_ref().map_or(true, |(b, _)| s < *b) {
                best = Some((s, w.clone()));
            }
        }
        let mut k = r;
        loop {
            if k == 0 {
                return best.map(|(_, w)| w);
            }
            k -= 1;
            if w[k] < bound {
                w[k] += 1;
                break;
            }
            w[k] = -bound;
        }
    }
}

/// Exponent vectors of length `parts` summing to `total`, lexicographically.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k + 1 == cur.len() {
            cur[k] = left;
            out.push(cur.clone());
            return;
        }
        for x in (0..=left).rev() {
            cur[k] = x;
            rec(k + 1, left - x, cur, out);
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// `binom(m, k)` as a polynomial in `m`: m(m-1)...(m-k+1)/k!.
pub fn binom_poly(m: i64, k: u32) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 0..k as i64 {
        num *= (m - j) as i128;
        den *= (j + 1) as i128;
    }
    (num / den) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_ring_layout() {
        let s = Ring::product(&[1, 2], 32003).unwrap();
        assert_eq!(s.nvars(), 5);
        assert_eq!(s.var_degree(0), &Multidegree::from([1, 0]));
        assert_eq!(s.var_degree(4), &Multidegree::from([0, 1]));
        assert_eq!(s.irrelevant_primes(), &[vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(s.var_index(2, 2), Some(4));
        let p1 = Ring::product(&[1], 2).unwrap();
        assert_eq!(p1.r(), 1);
        assert_eq!(Ring::product(&[1, 1, 2], 32003).unwrap().nvars(), 7);
    }

    #[test]
    fn ring_errors() {
        assert_eq!(Ring::product(&[], 7), Err(RingError::EmptyDimensions));
        assert_eq!(Ring::product(&[1], 9), Err(RingError::NotPrime(9)));
        assert_eq!(Ring::custom(vec![], vec![], 7), Err(RingError::EmptyDegrees));
    }

    #[test]
    fn custom_weights_are_positive() {
        let degs = [[1, 0, 0], [-1, 1, 0], [1, -1, 1], [0, 1, -1], [0, 0, 1]]
            .iter()
            .map(|d| Multidegree::from(*d))
            .collect();
        let s = Ring::custom(degs, vec![], 32003).unwrap();
        assert!(s.weights.iter().all(|&w| w > 0));
        let h = Ring::custom(
            vec![[1, 0].into(), [1, 0].into(), [-2, 1].into(), [0, 1].into()],
            vec![vec![0, 1], vec![2, 3]],
            32003,
        )
        .unwrap();
        // (1,1) on the Hirzebruch surface: y0*y3, y1*y3, y0^3*y2, ...
        let ms = h.monomials_of_degree(&Multidegree::from([1, 1]));
        for m in &ms {
            assert_eq!(h.degree_of(m), Multidegree::from([1, 1]));
        }
        assert_eq!(ms.len(), 2 + 4);
    }

    #[test]
    fn enumeration_counts() {
        let s = Ring::product(&[1, 2], 32003).unwrap();
        assert_eq!(s.monomials_of_degree(&Multidegree::from([2, 1])).len(), 9);
        assert_eq!(s.monomials_of_degree(&Multidegree::from([-1, 1])).len(), 0);
        let custom = Ring::custom(vec![[1].into(), [1].into(), [1].into()], vec![vec![0, 1, 2]], 5)
            .unwrap();
        assert_eq!(custom.monomials_of_degree(&Multidegree::from([2])).len(), 6);
    }

    #[test]
    fn polynomial_binomials() {
        assert_eq!(binom_poly(5, 2), 10);
        assert_eq!(binom_poly(-1, 1), -1);
        assert_eq!(binom_poly(-2, 2), 3);
        assert_eq!(binom_poly(3, 0), 1);
        assert_eq!(binom_poly(1, 2), 0);
    }

    #[test]
    fn grevlex_basics() {
        let s = Ring::product(&[1, 1], 7).unwrap();
        let a = s.monomial(&[1, 0, 0, 1]);
        let b = s.monomial(&[0, 1, 1, 0]);
        // equal degree, b has smaller exponent in the last variable
        assert_eq!(s.cmp(&b, &a), Ordering::Greater);
        assert_eq!(s.cmp(&Monomial::one(), &a), Ordering::Less);
    }
}
