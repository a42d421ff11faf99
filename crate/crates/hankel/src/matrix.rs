//! Dense matrices and the exact determinant kernels.
//!
//! Two independent determinant kernels are provided and kept in agreement
//! by tests: fraction-free (Bareiss) elimination with full pivot search,
//! and Dodgson condensation driven by Jacobi's minor identity with a
//! fraction-free fallback wherever an interior minor vanishes. The
//! characteristic polynomial uses Faddeev-LeVerrier, which divides only by
//! integers and therefore works verbatim for polynomial entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::ring::{Ring, RingRef};

/// Row-major dense matrix over an exact scalar ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T>
where
    for<'a> &'a T: RingRef<T>,
{
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadDimensions {
                rows,
                cols,
                got: data.len(),
                expected: rows * cols,
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn matmul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * other.get(k, j));
            }
            acc
        })
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Copy of the connected `size`x`size` block with top-left corner
    /// `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, size: usize) -> Matrix<T> {
        Matrix::from_fn(size, size, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Copy with the listed rows and columns removed (0-based).
    pub fn minor_removing(&self, drop_rows: &[usize], drop_cols: &[usize]) -> Matrix<T> {
        let keep_rows: Vec<usize> = (0..self.rows).filter(|i| !drop_rows.contains(i)).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|j| !drop_cols.contains(j)).collect();
        Matrix::from_fn(keep_rows.len(), keep_cols.len(), |i, j| {
            self.get(keep_rows[i], keep_cols[j]).clone()
        })
    }

    /// Kronecker (tensor) product; dimensions multiply.
    pub fn kronecker(&self, other: &Matrix<T>) -> Matrix<T> {
        Matrix::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                self.get(i / other.rows, j / other.cols)
                    * other.get(i % other.rows, j % other.cols)
            },
        )
    }

    /// Exact determinant by fraction-free (Bareiss) elimination with full
    /// pivot search. Intermediate values are k x k minors of the input, so
    /// every division is exact in the entry ring.
    #[allow(clippy::needless_range_loop)]
    pub fn det_fraction_free(&self) -> Result<T> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign_flip = false;
        let mut prev_pivot = T::one();
        for k in 0..n - 1 {
            // full pivot search over the remaining block
            let mut pivot = None;
            'search: for i in k..n {
                for j in k..n {
                    if !m[i][j].is_zero() {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => return Ok(T::zero()),
            };
            if pi != k {
                m.swap(pi, k);
                sign_flip = !sign_flip;
            }
            if pj != k {
                for row in m.iter_mut() {
                    row.swap(pj, k);
                }
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .div_exact(&prev_pivot)
                        .expect("fraction-free elimination: inexact division");
                }
                m[i][k] = T::zero();
            }
            prev_pivot = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign_flip { -&det } else { det })
    }

    /// Exact determinant by Dodgson condensation. Each stage produces the
    /// connected (k+1)-minors from the k-minors via Jacobi's identity;
    /// whenever the interior divisor vanishes the affected minor is
    /// delegated to the fraction-free kernel instead.
    pub fn det_condensation(&self) -> Result<T> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(T::one());
        }
        // interior[i][j] = det of the connected (k-1)-minor at (i+1, j+1)
        let mut interior: Vec<Vec<T>> = vec![vec![T::one(); n + 1]; n + 1];
        let mut current: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        for k in 1..n {
            let size = n - k;
            let mut next: Vec<Vec<T>> = Vec::with_capacity(size);
            for i in 0..size {
                let mut row = Vec::with_capacity(size);
                for j in 0..size {
                    let divisor = &interior[i + 1][j + 1];
                    let v = if divisor.is_zero() {
                        self.block(i, j, k + 1).det_fraction_free()?
                    } else {
                        let num = &(&current[i][j] * &current[i + 1][j + 1])
                            - &(&current[i][j + 1] * &current[i + 1][j]);
                        num.div_exact(divisor)
                            .expect("condensation: inexact division")
                    };
                    row.push(v);
                }
                next.push(row);
            }
            interior = current;
            current = next;
        }
        Ok(current[0][0].clone())
    }

    /// Coefficients (ascending in `X`) of `det(X*I - self)`, computed with
    /// the Faddeev-LeVerrier recurrence. Only divisions by integers occur,
    /// so polynomial entries are fine. The result is monic of degree `n`.
    pub fn char_poly(&self) -> Result<Vec<T>> {
        let n = self.require_square()?;
        // descending[i] = coefficient of X^(n-i)
        let mut descending = vec![T::one()];
        if n > 0 {
            let mut mk = self.clone();
            let mut ck = -&mk.trace();
            descending.push(ck.clone());
            for k in 2..=n {
                let mut shifted = mk;
                for i in 0..n {
                    let v = shifted.get(i, i) + &ck;
                    shifted.set(i, i, v);
                }
                mk = self.matmul(&shifted);
                ck = (-&mk.trace()).div_int(k as u64);
                descending.push(ck.clone());
            }
        }
        descending.reverse();
        Ok(descending)
    }
}

/// Jacobi's determinant identity on the minors of `m`, evaluated with
/// independent determinant calls. Indices are 1-based with
/// `i1 < i2`, `j1 < j2`. Returns whether
/// `det A * det A_(i1,i2)^(j1,j2) =
///  det A_(i1)^(j1) det A_(i2)^(j2) - det A_(i1)^(j2) det A_(i2)^(j1)`.
pub fn jacobi_identity_check<T: Ring>(
    m: &Matrix<T>,
    i1: usize,
    i2: usize,
    j1: usize,
    j2: usize,
) -> Result<bool>
where
    for<'a> &'a T: RingRef<T>,
{
    let n = if m.is_square() {
        m.rows()
    } else {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    };
    if !(1 <= i1 && i1 < i2 && i2 <= n && 1 <= j1 && j1 < j2 && j2 <= n) {
        return Err(Error::IndexOutOfBounds {
            what: format!("rows ({i1},{i2}) cols ({j1},{j2}) for size {n}"),
        });
    }
    let (i1, i2, j1, j2) = (i1 - 1, i2 - 1, j1 - 1, j2 - 1);
    let full = m.det_fraction_free()?;
    let inner = m.minor_removing(&[i1, i2], &[j1, j2]).det_fraction_free()?;
    let a = m.minor_removing(&[i1], &[j1]).det_fraction_free()?;
    let b = m.minor_removing(&[i2], &[j2]).det_fraction_free()?;
    let c = m.minor_removing(&[i1], &[j2]).det_fraction_free()?;
    let d = m.minor_removing(&[i2], &[j1]).det_fraction_free()?;
    Ok(&full * &inner == &(&a * &b) - &(&c * &d))
}

/// `prod_(i<j) (points[j] - points[i])`; empty and singleton lists give 1.
pub fn vandermonde_product<T: Ring>(points: &[T]) -> T
where
    for<'a> &'a T: RingRef<T>,
{
    let mut acc = T::one();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            acc = &acc * &(&points[j] - &points[i]);
        }
    }
    acc
}

/// Fast path for rational matrices: clear denominators row by row and run
/// Bareiss over big integers, where exact division needs no gcd work.
/// Agrees with `det_fraction_free` on every input (tested); used by the
/// Hankel-heavy call sites.
#[allow(clippy::needless_range_loop)]
pub(crate) fn det_rat(m: &Matrix<Rat>) -> Result<Rat> {
    let n = if m.is_square() {
        m.rows()
    } else {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    };
    if n == 0 {
        return Ok(Rat::one());
    }
    let mut scale = Rat::one();
    let mut work: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut lcm = BigInt::one();
        for j in 0..n {
            lcm = lcm.lcm(m.get(i, j).denom());
        }
        scale *= Rat::from_integer(lcm.clone());
        work.push(
            (0..n)
                .map(|j| {
                    let e = m.get(i, j);
                    e.numer() * (&lcm / e.denom())
                })
                .collect(),
        );
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        let mut pivot = None;
        'search: for i in k..n {
            for j in k..n {
                if !work[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => return Ok(Rat::zero()),
        };
        if pi != k {
            work.swap(pi, k);
            negate = !negate;
        }
        if pj != k {
            for row in work.iter_mut() {
                row.swap(pj, k);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &work[k][k] * &work[i][j] - &work[i][k] * &work[k][j];
                work[i][j] = num / &prev;
            }
            work[i][k] = BigInt::zero();
        }
        prev = work[k][k].clone();
    }
    let mut det = Rat::from_integer(work[n - 1][n - 1].clone()) / scale;
    if negate {
        det = -det;
    }
    Ok(det)
}
