//! Dense linear algebra over F_p.

use crate::ring::PrimeField;

/// Row-major dense matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<u32>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend(r);
        }
        DenseMatrix { rows: n, cols, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, f: &PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            if p != r {
                for k in 0..self.cols {
                    self.data.swap(p * self.cols + k, r * self.cols + k);
                }
            }
            let inv = f.inv(self.get(r, c));
            for k in c..self.cols {
                let v = f.mul(self.get(r, k), inv);
                self.set(r, k, v);
            }
            let pivot_row: Vec<u32> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let x = self.get(i, c);
                if x == 0 {
                    continue;
                }
                let nx = f.neg(x);
                let base = i * self.cols;
                for (k, &pv) in pivot_row.iter().enumerate() {
                    if pv != 0 {
                        let idx = base + c + k;
                        self.data[idx] = f.add(self.data[idx], f.mul(nx, pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        self.clone().rref(f).len()
    }

    /// A basis of `{ v : M v = 0 }`.
    pub fn kernel(&self, f: &PrimeField) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }
}

/// Rank of a sparse matrix given as rows of `(column, value)` pairs.
pub fn sparse_rank(f: &PrimeField, rows: Vec<Vec<(usize, u32)>>) -> usize {
    use std::collections::HashMap;
    // pivot column -> reduced row with that leading column
    let mut basis: HashMap<usize, Vec<(usize, u32)>> = HashMap::new();
    for mut row in rows {
        row.retain(|&(_, v)| v != 0);
        row.sort_unstable_by_key(|&(c, _)| c);
        loop {
            let Some(&(lc, lv)) = row.first() else { break };
            match basis.get(&lc) {
                None => {
                    let inv = f.inv(lv);
                    for e in row.iter_mut() {
                        e.1 = f.mul(e.1, inv);
                    }
                    basis.insert(lc, row);
                    break;
                }
                Some(b) => {
                    row = axpy_sparse(f, &row, f.neg(lv), b);
                }
            }
        }
    }
    basis.len()
}

/// `a + c * b` on sorted sparse rows.
fn axpy_sparse(f: &PrimeField, a: &[(usize, u32)], c: u32, b: &[(usize, u32)]) -> Vec<(usize, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(c, b[j].1)));
            j += 1;
        } else {
            let v = f.add(a[i].1, f.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A Z-basis of the integer kernel of `a` (rows of equal length).
pub fn integer_kernel(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.first().map_or(0, |r| r.len());
    // columns of A*U and of U, kept together
    let mut au: Vec<Vec<i64>> = (0..n).map(|c| a.iter().map(|r| r[c]).collect()).collect();
    let mut u: Vec<Vec<i64>> = (0..n).map(|c| (0..n).map(|k| i64::from(k == c)).collect()).collect();
    let mut next = 0;
    for row in 0..a.len() {
        loop {
            let nz: Vec<usize> = (next..n).filter(|&c| au[c][row] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&c) = nz.first() {
                    au.swap(c, next);
                    u.swap(c, next);
                    next += 1;
                }
                break;
            }
            // smallest absolute entry reduces the others
            let &p = nz.iter().min_by_key(|&&c| au[c][row].abs()).expect("nonempty");
            for &c in &nz {
                if c == p {
                    continue;
                }
                let q = au[c][row].div_euclid(au[p][row]);
                for k in 0..a.len() {
                    au[c][k] -= q * au[p][k];
                }
                for k in 0..n {
                    u[c][k] -= q * u[p][k];
                }
            }
        }
    }
    u[next..].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let f = PrimeField::new(7).unwrap();
        let m = DenseMatrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 6]], 3);
        assert_eq!(m.rank(&f), 1);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = (0..3).fold(0, |acc, c| f.add(acc, f.mul(m.get(0, c), v[c])));
            assert_eq!(s, 0);
        }
        let rows = vec![vec![(0, 1), (2, 3)], vec![(0, 2), (2, 6)], vec![(1, 5)]];
        assert_eq!(sparse_rank(&f, rows), 2);
    }

    #[test]
    fn integer_kernel_of_a_degree_matrix() {
        let a = vec![vec![1, 1, -2, 0], vec![0, 0, 1, 1]];
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                assert_eq!(row.iter().zip(v).map(|(x, y)| x * y).sum::<i64>(), 0);
            }
        }
    }
}
