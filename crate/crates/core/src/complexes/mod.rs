//! Free complexes, resolutions and virtual resolutions.

use std::fmt;

use thiserror::Error;

use crate::groebner::{apply_map, syzygies_with_degrees, FreeModule, GroebnerError, ModuleElement};
use crate::ideals::{b_saturate, is_b_torsion, IdealError, Submodule, Subquotient};
use crate::ring::{Multidegree, Polynomial, Ring, RingError, RingRef};

mod betti;
mod resolution;

pub use betti::{BettiEntry, BettiJson, BettiTable};
pub use resolution::{free_resolution, virtual_of_pair};

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("homological index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("the resolution did not close within {0} steps")]
    Truncated(usize),
    #[error("the result is not a virtual resolution; the degree is likely not in the regularity")]
    NotVirtual,
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A map `source -> target` stored by columns: column `j` is the image of
/// the `j`-th basis vector of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub target: FreeModule,
    pub source: FreeModule,
    pub columns: Vec<ModuleElement>,
}

impl Matrix {
    pub fn new(target: FreeModule, source: FreeModule, columns: Vec<ModuleElement>) -> Self {
        debug_assert_eq!(source.rank(), columns.len());
        debug_assert!(columns.iter().all(|c| c.rank() == target.rank()));
        Matrix { target, source, columns }
    }

    pub fn zero(target: FreeModule, source: FreeModule) -> Self {
        let columns = (0..source.rank()).map(|_| ModuleElement::zero(target.rank())).collect();
        Matrix { target, source, columns }
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.columns[col].coords[row]
    }

    /// `self * other`.
    pub fn compose(&self, ring: &Ring, other: &Matrix) -> Matrix {
        let cols = other.columns.iter().map(|v| apply_map(ring, &self.columns, self.rows(), v)).collect();
        Matrix::new(self.target.clone(), other.source.clone(), cols)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Keep the listed rows and columns.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let target = FreeModule::new(rows.iter().map(|&r| self.target.degrees()[r].clone()).collect());
        let source = FreeModule::new(cols.iter().map(|&c| self.source.degrees()[c].clone()).collect());
        let columns = cols
            .iter()
            .map(|&c| ModuleElement::new(rows.iter().map(|&r| self.columns[c].coords[r].clone()).collect()))
            .collect();
        Matrix { target, source, columns }
    }

    /// Every nonzero entry has degree `source twist - target twist`.
    pub fn is_homogeneous(&self, ring: &Ring) -> bool {
        self.columns.iter().enumerate().all(|(c, col)| {
            col.coords.iter().enumerate().all(|(r, p)| {
                p.is_zero()
                    || p.multidegree(ring).is_ok_and(|d| {
                        d == &self.source.degrees()[c] - &self.target.degrees()[r]
                    })
            })
        })
    }

    pub fn display(&self, ring: &Ring) -> String {
        let mut s = String::new();
        for r in 0..self.rows() {
            let row: Vec<String> = (0..self.cols()).map(|c| self.entry(r, c).display(ring)).collect();
            s.push_str(&format!("[{}]\n", row.join(", ")));
        }
        s
    }
}

/// `F_0 <- F_1 <- ... <- F_p`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: RingRef,
    modules: Vec<FreeModule>,
    /// `maps[i]` is `d_{i+1} : F_{i+1} -> F_i`.
    maps: Vec<Matrix>,
    truncated: bool,
}

impl FreeComplex {
    /// Build from the differentials `d_1, d_2, ...`; `f0` is used when there
    /// are none.
    pub fn new(ring: &RingRef, f0: FreeModule, maps: Vec<Matrix>) -> Result<Self, ComplexError> {
        let mut modules = vec![f0];
        for (i, m) in maps.iter().enumerate() {
            if m.target != modules[i] {
                return Err(ComplexError::NotAComplex(format!("d_{} has the wrong target", i + 1)));
            }
            modules.push(m.source.clone());
        }
        Ok(FreeComplex { ring: ring.clone(), modules, maps, truncated: false })
    }

    pub(crate) fn from_parts(ring: &RingRef, modules: Vec<FreeModule>, maps: Vec<Matrix>, truncated: bool) -> Self {
        let mut c = FreeComplex { ring: ring.clone(), modules, maps, truncated };
        c.trim();
        c
    }

    /// Drop trailing zero modules.
    fn trim(&mut self) {
        while self.modules.len() > 1 && self.modules.last().is_some_and(|m| m.rank() == 0) {
            self.modules.pop();
            self.maps.pop();
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Index of the last nonzero module (0 for the zero complex).
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> Option<&FreeModule> {
        self.modules.get(i)
    }

    /// `d_i : F_i -> F_{i-1}` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> Result<&Matrix, ComplexError> {
        if i == 0 {
            return Err(ComplexError::IndexOutOfRange(0));
        }
        self.maps.get(i - 1).ok_or(ComplexError::IndexOutOfRange(i))
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.maps
    }

    /// Whether a length cap stopped the computation before exactness.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_modules(&self.modules)
    }

    /// `d_i ∘ d_{i+1} = 0` and all entries homogeneous.
    pub fn is_complex(&self) -> bool {
        self.maps.iter().all(|m| m.is_homogeneous(&self.ring))
            && self.maps.windows(2).all(|w| w[0].compose(&self.ring, &w[1]).is_zero())
    }

    /// No differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.columns.iter().all(|c| c.coords.iter().all(|p| !p.is_unit())))
    }

    /// `ker d_i / im d_{i+1}` inside `F_i`.
    pub fn homology(&self, i: usize) -> Result<Subquotient, ComplexError> {
        let fi = self.modules.get(i).ok_or(ComplexError::IndexOutOfRange(i))?;
        let upper = if i == 0 {
            Submodule::whole(&self.ring, fi.clone())
        } else {
            let d = &self.maps[i - 1];
            let syz = syzygies_with_degrees(&self.ring, &d.target, &d.columns, fi.degrees());
            Submodule::new(&self.ring, fi.clone(), syz.generators)?
        };
        let lower = self.image(i + 1)?;
        Ok(Subquotient::new(upper, lower)?)
    }

    /// `im d_i` as a submodule of `F_{i-1}`; zero past the end.
    pub fn image(&self, i: usize) -> Result<Submodule, ComplexError> {
        let target = self.modules.get(i.wrapping_sub(1)).ok_or(ComplexError::IndexOutOfRange(i))?;
        Ok(match self.maps.get(i.wrapping_sub(1)) {
            Some(d) => Submodule::new(&self.ring, target.clone(), d.columns.clone())?,
            None => Submodule::zero(&self.ring, target.clone()),
        })
    }

    pub fn display(&self) -> String {
        format!("{}", self.betti())
    }
}

impl fmt::Display for FreeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.betti())
    }
}

/// Cancel unit entries until none are left.
pub fn minimalize(f: &FreeComplex) -> FreeComplex {
    let ring = f.ring.clone();
    let field = ring.field().clone();
    let mut modules = f.modules.clone();
    let mut maps = f.maps.clone();
    let mut k = 0;
    while k < maps.len() {
        let pivot = maps[k].columns.iter().enumerate().find_map(|(c, col)| {
            col.coords.iter().position(|p| p.is_unit()).map(|r| (r, c))
        });
        let Some((r, c)) = pivot else {
            k += 1;
            continue;
        };
        // d_{k+1} : F_{k+1} -> F_k has a unit at (r, c).
        let d = &maps[k];
        let u = d.entry(r, c).as_constant().expect("pivot is constant");
        let uinv = field.inv(u);
        let pivot_col = d.columns[c].clone();
        let mut cols = Vec::with_capacity(d.cols() - 1);
        for (j, col) in d.columns.iter().enumerate() {
            if j == c {
                continue;
            }
            let a = &col.coords[r];
            let new = if a.is_zero() {
                col.clone()
            } else {
                col.sub(&pivot_col.mul_poly(&a.scale(uinv, &ring), &ring), &ring)
            };
            cols.push(new);
        }
        let keep_rows: Vec<usize> = (0..d.rows()).filter(|&x| x != r).collect();
        let keep_cols: Vec<usize> = (0..d.cols()).filter(|&x| x != c).collect();
        let tmp = Matrix::new(d.target.clone(), FreeModule::new(keep_cols.iter().map(|&j| d.source.degrees()[j].clone()).collect()), cols);
        let all: Vec<usize> = (0..tmp.cols()).collect();
        maps[k] = tmp.restrict(&keep_rows, &all);
        modules[k] = maps[k].target.clone();
        modules[k + 1] = maps[k].source.clone();
        if k > 0 {
            let prev = &maps[k - 1];
            let rows: Vec<usize> = (0..prev.rows()).collect();
            maps[k - 1] = prev.restrict(&rows, &keep_rows);
        }
        if k + 1 < maps.len() {
            let next = &maps[k + 1];
            let cols: Vec<usize> = (0..next.cols()).collect();
            maps[k + 1] = next.restrict(&keep_cols, &cols);
        }
    }
    FreeComplex::from_parts(&ring, modules, maps, f.truncated)
}

/// Keep the summands generated in degree at most `d + n`.
pub fn winnow(f: &FreeComplex, d: &Multidegree) -> Result<FreeComplex, ComplexError> {
    let ring = &f.ring;
    let dims = ring.product_dims()?;
    ring.check_degree_len(d)?;
    let n = Multidegree::from(dims.iter().map(|&x| x as i32).collect::<Vec<_>>());
    let bound = d + &n;
    let keep: Vec<Vec<usize>> = f
        .modules
        .iter()
        .map(|m| (0..m.rank()).filter(|&j| m.degrees()[j].le(&bound)).collect())
        .collect();
    let modules: Vec<FreeModule> = f
        .modules
        .iter()
        .zip(&keep)
        .map(|(m, k)| FreeModule::new(k.iter().map(|&j| m.degrees()[j].clone()).collect()))
        .collect();
    let maps = f
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| m.restrict(&keep[i], &keep[i + 1]))
        .collect();
    Ok(FreeComplex::from_parts(ring, modules, maps, f.truncated))
}

/// Status of one homology module in a virtuality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomologyStatus {
    Zero,
    Torsion,
    NotTorsion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualReport {
    /// The saturation of `im d_1` is the target submodule.
    pub h0_matches: bool,
    /// Status of `H_i` for `i = 1..=length`.
    pub higher: Vec<HomologyStatus>,
}

impl VirtualReport {
    pub fn is_virtual(&self) -> bool {
        self.h0_matches && self.higher.iter().all(|s| *s != HomologyStatus::NotTorsion)
    }
}

impl fmt::Display for VirtualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "H_0 saturates to the target: {}", if self.h0_matches { "yes" } else { "no" })?;
        for (i, s) in self.higher.iter().enumerate() {
            let t = match s {
                HomologyStatus::Zero => "zero",
                HomologyStatus::Torsion => "nonzero, B-torsion",
                HomologyStatus::NotTorsion => "not B-torsion",
            };
            writeln!(f, "H_{}: {t}", i + 1)?;
        }
        write!(f, "virtual: {}", if self.is_virtual() { "yes" } else { "no" })
    }
}

/// Check whether `f` is a virtual resolution of `F_0 / target`, where
/// `target` is B-saturated.
pub fn is_virtual(f: &FreeComplex, target: &Submodule) -> Result<VirtualReport, ComplexError> {
    if !f.is_complex() {
        return Err(ComplexError::NotAComplex("d^2 != 0 or an entry is inhomogeneous".into()));
    }
    if target.ambient() != &f.modules[0] {
        // F_0 itself is wrong, e.g. winnowed away.
        return Ok(VirtualReport { h0_matches: false, higher: Vec::new() });
    }
    let im = f.image(1)?;
    let h0_matches = if im.is_subset(target)? {
        b_saturate(&im)?.equals(target)?
    } else {
        false
    };
    let mut higher = Vec::new();
    for i in 1..=f.length() {
        let h = f.homology(i)?;
        higher.push(if h.is_zero()? {
            HomologyStatus::Zero
        } else if is_b_torsion(&h)? {
            HomologyStatus::Torsion
        } else {
            HomologyStatus::NotTorsion
        });
    }
    Ok(VirtualReport { h0_matches, higher })
}

/// The Koszul complex on `fs`.
pub fn koszul(ring: &RingRef, fs: &[Polynomial]) -> Result<FreeComplex, ComplexError> {
    let degs = fs.iter().map(|f| f.multidegree(ring)).collect::<Result<Vec<_>, _>>()?;
    let k = fs.len();
    let subsets = |size: usize| -> Vec<u32> { (0u32..1 << k).filter(|s| s.count_ones() as usize == size).collect() };
    let degree_of = |s: u32| {
        (0..k).filter(|j| s >> j & 1 == 1).fold(Multidegree::zero(ring.r()), |acc, j| &acc + &degs[j])
    };
    let module_of = |sets: &[u32]| FreeModule::new(sets.iter().map(|&s| degree_of(s)).collect());
    let mut maps = Vec::new();
    for size in 1..=k {
        let (lo, hi) = (subsets(size - 1), subsets(size));
        let cols = hi
            .iter()
            .map(|&s| {
                let mut coords = vec![Polynomial::zero(); lo.len()];
                let mut sign = 0;
                for j in 0..k {
                    if s >> j & 1 == 1 {
                        let row = lo.iter().position(|&t| t == s & !(1 << j)).expect("face");
                        let f = if sign % 2 == 0 { fs[j].clone() } else { fs[j].neg(ring) };
                        coords[row] = f;
                        sign += 1;
                    }
                }
                ModuleElement::new(coords)
            })
            .collect();
        maps.push(Matrix::new(module_of(&lo), module_of(&hi), cols));
    }
    FreeComplex::new(ring, FreeModule::ring(ring.r()), maps)
}
