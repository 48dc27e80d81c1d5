//! Dense matrices over any [`RingElem`] and a division-free determinant.

use std::ops::{Index, IndexMut};

use crate::algebra::RingElem;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Clone> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Matrix::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn filled(rows: usize, cols: usize, value: R) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Clone>(&self, f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Clone, E>(&self, f: impl FnMut(&R) -> std::result::Result<S, E>) -> std::result::Result<Matrix<S>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Assembles a block matrix; every block in a block-row must have the
    /// same height and every block in a block-column the same width.
    pub fn from_blocks(blocks: &[Vec<Matrix<R>>]) -> Result<Self> {
        let heights: Vec<usize> = blocks.iter().map(|r| r.first().map_or(0, |b| b.rows)).collect();
        let widths: Vec<usize> = blocks.first().map_or(vec![], |r| r.iter().map(|b| b.cols).collect());
        for (bi, brow) in blocks.iter().enumerate() {
            if brow.len() != widths.len() {
                return Err(Error::DimensionMismatch("ragged block rows".into()));
            }
            for (bj, b) in brow.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::DimensionMismatch("incompatible block shapes".into()));
                }
            }
        }
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut data = Vec::with_capacity(rows * cols);
        for (bi, brow) in blocks.iter().enumerate() {
            for i in 0..heights[bi] {
                for b in brow {
                    data.extend_from_slice(b.row(i));
                }
            }
        }
        Matrix::new(rows, cols, data)
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;

    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.data[i * self.cols + j]
    }
}

impl<R: RingElem> Matrix<R> {
    pub fn identity(n: usize, like: &R) -> Self {
        let zero = like.zero_like();
        let one = like.one_like();
        Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn mul(&self, rhs: &Matrix<R>) -> Result<Matrix<R>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let zero = self.data.first().or(rhs.data.first()).map(RingElem::zero_like);
        let Some(zero) = zero else {
            return Ok(Matrix::new(self.rows, rhs.cols, vec![])?);
        };
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(zero.clone(), |acc, k| acc.add_ref(&self[(i, k)].mul_ref(&rhs[(k, j)])))
        }))
    }

    pub fn add(&self, rhs: &Matrix<R>) -> Result<Matrix<R>> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix sum of different shapes".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_ref(b)).collect(),
        })
    }

    pub fn scale(&self, c: &R) -> Matrix<R> {
        self.map(|a| a.mul_ref(c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElem::is_zero)
    }

    /// Determinant by Berkowitz's algorithm: no divisions, so it is valid
    /// over truncated power series and `Z / p^N` alike.
    pub fn det(&self) -> Result<R> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Err(Error::DimensionMismatch("determinant of an empty matrix".into()));
        }
        let n = self.rows;
        let zero = self[(0, 0)].zero_like();
        let one = self[(0, 0)].one_like();
        // Coefficients of det(xI - A_r), leading coefficient first.
        let mut charpoly = vec![one.clone(), self[(0, 0)].neg_ref()];
        for r in 1..n {
            let a = &self[(r, r)];
            let col: Vec<R> = (0..r).map(|i| self[(i, r)].clone()).collect();
            let row: Vec<R> = (0..r).map(|j| self[(r, j)].clone()).collect();
            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(one.clone());
            toeplitz.push(a.neg_ref());
            // -R A_r^k C for k = 0..r-1
            let mut v = col;
            for k in 0..r {
                let dot = row.iter().zip(&v).fold(zero.clone(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y)));
                toeplitz.push(dot.neg_ref());
                if k + 1 < r {
                    v = (0..r)
                        .map(|i| (0..r).fold(zero.clone(), |acc, j| acc.add_ref(&self[(i, j)].mul_ref(&v[j]))))
                        .collect();
                }
            }
            let next: Vec<R> = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r)).fold(zero.clone(), |acc, j| acc.add_ref(&toeplitz[i - j].mul_ref(&charpoly[j])))
                })
                .collect();
            charpoly = next;
        }
        let constant = charpoly.pop().expect("nonempty characteristic polynomial");
        Ok(if n % 2 == 0 { constant } else { constant.neg_ref() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug, Clone, PartialEq)]
    struct Z(i64);

    impl RingElem for Z {
        fn zero_like(&self) -> Self {
            Z(0)
        }
        fn one_like(&self) -> Self {
            Z(1)
        }
        fn add_ref(&self, r: &Self) -> Self {
            Z(self.0 + r.0)
        }
        fn sub_ref(&self, r: &Self) -> Self {
            Z(self.0 - r.0)
        }
        fn mul_ref(&self, r: &Self) -> Self {
            Z(self.0 * r.0)
        }
        fn neg_ref(&self) -> Self {
            Z(-self.0)
        }
        fn is_zero(&self) -> bool {
            self.0 == 0
        }
    }

    fn cofactor(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * cofactor(&minor)
            })
            .sum()
    }

    #[test]
    fn berkowitz_matches_cofactor_expansion() {
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 11) as i64 - 5
        };
        for n in 1..=5 {
            for _ in 0..20 {
                let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Z(x)).collect()).collect()).unwrap();
                assert_eq!(m.det().unwrap().0, cofactor(&rows));
            }
        }
    }

    #[test]
    fn non_square_rejected() {
        let m = Matrix::filled(2, 3, Z(1));
        assert_eq!(m.det(), Err(Error::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn blocks_assemble_in_order() {
        let a = Matrix::filled(1, 1, Z(1));
        let b = Matrix::filled(1, 2, Z(2));
        let c = Matrix::filled(2, 1, Z(3));
        let d = Matrix::filled(2, 2, Z(4));
        let m = Matrix::from_blocks(&[vec![a, b], vec![c, d]]).unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.row(0), &[Z(1), Z(2), Z(2)]);
        assert_eq!(m.row(2), &[Z(3), Z(4), Z(4)]);
    }
}
