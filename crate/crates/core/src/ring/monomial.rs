use std::hash::{Hash, Hasher};

/// Hard cap on the number of variables (including an elimination variable).
pub const MAX_VARS: usize = 16;

/// A monomial as a dense exponent vector.
///
/// `w` caches the order weight so the term order can compare total
/// degrees without touching the exponents. It is maintained by the
/// owning [`super::Ring`]; multiplication and division keep it exact.
#[derive(Clone, Copy)]
pub struct Monomial {
    pub(crate) w: u32,
    pub(crate) e: [u16; MAX_VARS],
}

impl PartialEq for Monomial {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        self.e == other.e
    }
}
impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.e.hash(state)
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.e.iter().rposition(|&x| x != 0).map_or(0, |k| k + 1);
        write!(f, "m{:?}", &self.e[..last])
    }
}

impl Default for Monomial {
    fn default() -> Self {
        Monomial::one()
    }
}

impl Monomial {
    pub const fn one() -> Self {
        Monomial { w: 0, e: [0; MAX_VARS] }
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.e
    }

    /// Order weight (weighted total degree).
    #[inline]
    pub fn weight(&self) -> u32 {
        self.w
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.e.iter().map(|&x| x as u32).sum()
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(o.e.iter()) {
            *a += *b;
        }
        Monomial { w: self.w + o.w, e }
    }

    /// Does `self` divide `o`?
    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.w <= o.w && self.e.iter().zip(o.e.iter()).all(|(a, b)| a <= b)
    }

    /// `self / o`, assuming `o` divides `self`.
    #[inline]
    pub fn div_exact(&self, o: &Monomial) -> Monomial {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(o.e.iter()) {
            debug_assert!(*a >= *b);
            *a -= *b;
        }
        Monomial { w: self.w - o.w, e }
    }

    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        o.divides(self).then(|| self.div_exact(o))
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.e.iter().zip(o.e.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Support bitmask, used to reject divisibility quickly.
    #[inline]
    pub fn mask(&self) -> u32 {
        let mut m = 0u32;
        for (i, &x) in self.e.iter().enumerate() {
            if x != 0 {
                m |= 1 << i;
            }
        }
        m
    }
}
