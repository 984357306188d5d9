use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// An element of Z^r indexing the Picard grading.
///
/// The derived `Ord` is lexicographic and only serves canonical sorting.
/// The componentwise partial order is [`Multidegree::le`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(pub SmallVec<[i32; 4]>);

impl Multidegree {
    pub fn zero(r: usize) -> Self {
        Multidegree(SmallVec::from_elem(0, r))
    }

    pub fn unit(r: usize, i: usize) -> Self {
        let mut d = Self::zero(r);
        d.0[i] = 1;
        d
    }

    pub fn from_slice(v: &[i32]) -> Self {
        Multidegree(SmallVec::from_slice(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// |a|, the sum of entries.
    pub fn total(&self) -> i64 {
        self.0.iter().map(|&a| a as i64).sum()
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Self) -> Self {
        Multidegree(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Self) -> Self {
        Multidegree(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn scaled(&self, k: i32) -> Self {
        Multidegree(self.0.iter().map(|a| a * k).collect())
    }
}

impl Add for &Multidegree {
    type Output = Multidegree;
    fn add(self, rhs: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Multidegree {
    type Output = Multidegree;
    fn sub(self, rhs: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Multidegree {
    type Output = Multidegree;
    fn neg(self) -> Multidegree {
        Multidegree(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for Multidegree {
    type Output = Multidegree;
    fn add(self, rhs: Multidegree) -> Multidegree {
        &self + &rhs
    }
}

impl Sub for Multidegree {
    type Output = Multidegree;
    fn sub(self, rhs: Multidegree) -> Multidegree {
        &self - &rhs
    }
}

impl Neg for Multidegree {
    type Output = Multidegree;
    fn neg(self) -> Multidegree {
        -&self
    }
}

impl From<Vec<i32>> for Multidegree {
    fn from(v: Vec<i32>) -> Self {
        Multidegree(SmallVec::from_vec(v))
    }
}

impl From<&[i32]> for Multidegree {
    fn from(v: &[i32]) -> Self {
        Multidegree::from_slice(v)
    }
}

impl<const N: usize> From<[i32; N]> for Multidegree {
    fn from(v: [i32; N]) -> Self {
        Multidegree::from_slice(&v)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All `a` with `lo <= a <= hi` componentwise, in lexicographic order.
pub fn box_points(lo: &Multidegree, hi: &Multidegree) -> Vec<Multidegree> {
    let r = lo.len();
    if !lo.le(hi) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        out.push(cur.clone());
        let mut k = r;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur.0[k] < hi.0[k] {
                cur.0[k] += 1;
                break;
            }
            cur.0[k] = lo.0[k];
        }
    }
}
