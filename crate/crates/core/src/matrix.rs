//! Dense exact matrices and Gaussian elimination.
//!
//! Pivoting is deterministic: columns are scanned left to right and within a
//! column rows top to bottom, so echelon forms, kernels and chosen cokernel
//! bases are reproducible bit for bit.

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Mat<K> {
    rows: usize,
    cols: usize,
    a: Vec<K>,
}

impl<K: Scalar> std::fmt::Debug for Mat<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, " {:?}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl<K: Scalar> Mat<K> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            a: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K) -> Self {
        let mut a = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                a.push(f(r, c));
            }
        }
        Mat { rows, cols, a }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &K {
        &self.a[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K) {
        self.a[r * self.cols + c] = v;
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Mat<K>) -> Mat<K> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Mat::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let x = self.get(r, i);
                if x.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let y = rhs.get(i, c);
                    if y.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).clone();
                    out.set(r, c, cur + x.clone() * y.clone());
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hcat(&self, rhs: &Mat<K>) -> Mat<K> {
        assert_eq!(self.rows, rhs.rows);
        Mat::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn column(&self, c: usize) -> Vec<K> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.a.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self.get(row, col).inv();
            for c in col..self.cols {
                let v = self.get(row, c).clone() * inv.clone();
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c).clone() - f.clone() * self.get(row, c).clone();
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank; uses the scalar's fraction-free hook when available.
    pub fn rank(&self) -> usize {
        if let Some(r) = K::rank_hook(self.rows, self.cols, &self.a) {
            return r;
        }
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel, returned as the columns of a matrix.
    ///
    /// Free columns are parametrized in increasing order, which makes the
    /// basis canonical given the fixed pivoting rule.
    pub fn kernel(&self) -> Mat<K> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set[*c]).collect();
        let mut ker = Mat::zero(self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            ker.set(fc, j, K::one());
            for (i, &pc) in pivots.iter().enumerate() {
                ker.set(pc, j, -m.get(i, fc).clone());
            }
        }
        ker
    }

    /// rank([self | other]) computed without building the concatenation twice.
    pub fn rank_augmented(&self, other: &Mat<K>) -> usize {
        self.hcat(other).rank()
    }
}

/// Reduction data for a subspace `V = span(columns)` of `k^m`, supporting
/// canonical projection onto a complement of `V`.
///
/// Rows of `rref` form a reduced basis of `V`; `pivots` are their leading
/// coordinates.  The cokernel `k^m / V` gets the images of the non-pivot
/// unit vectors as its basis, in increasing coordinate order.
#[derive(Clone, Debug)]
pub struct SubspaceReducer<K> {
    pub ambient: usize,
    pub rref: Mat<K>,
    pub pivots: Vec<usize>,
    pub nonpivots: Vec<usize>,
}

impl<K: Scalar> SubspaceReducer<K> {
    /// Build from the columns of `span` (an `m x c` matrix).
    pub fn from_columns(span: &Mat<K>) -> Self {
        let m = span.rows();
        // transpose so rows span V, then row-reduce
        let mut t = Mat::from_fn(span.cols(), m, |r, c| span.get(c, r).clone());
        let pivots = t.rref();
        let rank = pivots.len();
        let rref = Mat::from_fn(rank, m, |r, c| t.get(r, c).clone());
        let mut is_pivot = vec![false; m];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let nonpivots = (0..m).filter(|c| !is_pivot[*c]).collect();
        SubspaceReducer {
            ambient: m,
            rref,
            pivots,
            nonpivots,
        }
    }

    pub fn subspace_dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.nonpivots.len()
    }

    /// Project `v` to the canonical representative modulo the subspace and
    /// return its coordinates on the non-pivot axes.
    pub fn reduce(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.ambient);
        let mut w: Vec<K> = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for c in 0..self.ambient {
                let d = self.rref.get(i, c).clone();
                if d.is_zero() {
                    continue;
                }
                w[c] = w[c].clone() - f.clone() * d;
            }
        }
        self.nonpivots.iter().map(|&c| w[c].clone()).collect()
    }

    /// Does `v` lie in the subspace?
    pub fn contains(&self, v: &[K]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rat};

    fn fp(n: i64) -> Fp {
        Fp::new(n, 101)
    }

    #[test]
    fn rank_and_kernel() {
        // rows: (1,2,3), (2,4,6), (0,1,1)
        let m = Mat::from_fn(3, 3, |r, c| match (r, c) {
            (0, 0) => fp(1),
            (0, 1) => fp(2),
            (0, 2) => fp(3),
            (1, 0) => fp(2),
            (1, 1) => fp(4),
            (1, 2) => fp(6),
            (2, 1) => fp(1),
            (2, 2) => fp(1),
            _ => fp(0),
        });
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.cols(), 1);
        assert!(m.mul(&ker).is_zero_matrix());
    }

    #[test]
    fn bareiss_matches_generic() {
        let data = [
            [2i64, -1, 0, 4],
            [1, 3, 3, -2],
            [3, 2, 3, 2],
            [0, 0, 0, 0],
        ];
        let mq = Mat::from_fn(4, 4, |r, c| Rat::int(data[r][c]));
        let mf = Mat::from_fn(4, 4, |r, c| Fp::new(data[r][c], 32003));
        assert_eq!(mq.rank(), mf.rank());
        assert_eq!(mq.rank(), 3);
    }

    #[test]
    fn reducer_quotient() {
        // V = span{(1,1,0),(0,0,1)} in k^3; quotient is 1-dimensional
        let span = Mat::from_fn(3, 2, |r, c| match (r, c) {
            (0, 0) => fp(1),
            (1, 0) => fp(1),
            (2, 1) => fp(1),
            _ => fp(0),
        });
        let red = SubspaceReducer::from_columns(&span);
        assert_eq!(red.quotient_dim(), 1);
        assert!(red.contains(&[fp(2), fp(2), fp(5)]));
        let class = red.reduce(&[fp(0), fp(3), fp(0)]);
        assert_eq!(class.len(), 1);
        assert!(!class[0].is_zero());
    }
}
