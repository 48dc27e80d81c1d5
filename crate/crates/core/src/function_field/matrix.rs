use super::poly::FpPoly;
use super::rational::FpRational;
use crate::algebra::RingElem;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

fn lcm(a: &FpPoly, b: &FpPoly) -> FpPoly {
    let g = a.gcd(b);
    a.mul_ref(b).exact_div(&g).expect("gcd divides product").monic()
}

/// Clears denominators row by row. Returns the polynomial matrix and the
/// product of the row multipliers.
fn clear_denominators(a: &Matrix<FpRational>) -> (Matrix<FpPoly>, FpPoly) {
    let p = a.entries()[0].p();
    let mut total = FpPoly::constant(p, 1);
    let mut rows = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let d = a.row(i).iter().fold(FpPoly::constant(p, 1), |acc, x| lcm(&acc, x.denominator()));
        rows.push(
            a.row(i)
                .iter()
                .map(|x| {
                    x.numerator()
                        .mul_ref(&d.exact_div(x.denominator()).expect("lcm is a multiple"))
                })
                .collect(),
        );
        total = total.mul_ref(&d);
    }
    (Matrix::from_rows(rows).expect("rectangular"), total)
}

/// Finds the nonzero entry of least degree in the trailing submatrix.
fn min_degree_pivot(m: &Matrix<FpPoly>, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in k..m.rows() {
        for j in k..m.cols() {
            if let Some(d) = m[(i, j)].degree() {
                if best.map_or(true, |(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Fraction-free (Bareiss) elimination with full pivoting. Returns the
/// rank and, for square input, the determinant.
fn bareiss(mut m: Matrix<FpPoly>) -> (usize, FpPoly) {
    let p = m.entries().first().map_or(2, FpPoly::p);
    let steps = m.rows().min(m.cols());
    let mut negate = false;
    let mut prev = FpPoly::constant(p, 1);
    for k in 0..steps {
        let Some((pi, pj)) = min_degree_pivot(&m, k) else {
            return (k, FpPoly::zero(p));
        };
        if pi != k {
            m.swap_rows(pi, k);
            negate = !negate;
        }
        if pj != k {
            m.swap_cols(pj, k);
            negate = !negate;
        }
        let pivot = m[(k, k)].clone();
        for i in k + 1..m.rows() {
            for j in k + 1..m.cols() {
                let num = m[(i, j)].mul_ref(&pivot).sub_ref(&m[(i, k)].mul_ref(&m[(k, j)]));
                m[(i, j)] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[(i, k)] = FpPoly::zero(p);
        }
        prev = pivot;
    }
    let det = if m.is_square() { prev } else { FpPoly::zero(p) };
    (steps, if negate { det.neg_ref() } else { det })
}

/// Determinant of a polynomial matrix over `F_p[T]`.
pub fn poly_det(a: &Matrix<FpPoly>) -> Result<FpPoly> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() == 0 {
        return Err(Error::DimensionMismatch("determinant of an empty matrix".into()));
    }
    Ok(bareiss(a.clone()).1)
}

/// Exact determinant over `F_p(T)`, in lowest terms.
pub fn ff_det(a: &Matrix<FpRational>) -> Result<FpRational> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() == 0 {
        return Err(Error::DimensionMismatch("determinant of an empty matrix".into()));
    }
    let (polys, scale) = clear_denominators(a);
    let det = bareiss(polys).1;
    Ok(FpRational::new(det, scale))
}

/// Exact rank over `F_p(T)`.
pub fn ff_rank(a: &Matrix<FpRational>) -> usize {
    if a.rows() == 0 || a.cols() == 0 {
        return 0;
    }
    let (polys, _) = clear_denominators(a);
    bareiss(polys).0
}
