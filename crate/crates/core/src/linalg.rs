//! Dense exact linear algebra.
//!
//! Vectors multiply matrices from the left throughout: `x · M`.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{from_usize, IntegerScalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular (determinant 0)")]
    Singular,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
}

/// Binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial<T: Scalar>(n: usize, k: i64) -> T {
    if k < 0 || k as u64 > n as u64 {
        return T::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = T::one();
    for i in 0..k {
        // acc = C(n, i) here, so the division is exact.
        acc = acc * from_usize::<T>(n - i) / from_usize::<T>(i + 1);
    }
    acc
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1))).finish()
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row = &self.data[r * self.cols..(r + 1) * self.cols];
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl<T> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from equally long rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend(row);
        }
        Self {
            rows: nrows,
            cols: ncols,
            data,
        }
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

    pub fn get(&self, r: usize, c: usize) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self
    where
        T: Clone,
    {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Submatrix on the given 0-based column indices, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Self
    where
        T: Clone,
    {
        let mut data = Vec::with_capacity(self.rows * columns.len());
        for r in 0..self.rows {
            for &c in columns {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.rows,
            cols: columns.len(),
            data,
        }
    }

    /// Submatrix on the given 0-based row and column indices.
    pub fn minor_matrix(&self, rows: &[usize], columns: &[usize]) -> Self
    where
        T: Clone,
    {
        let mut data = Vec::with_capacity(rows.len() * columns.len());
        for &r in rows {
            for &c in columns {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: rows.len(),
            cols: columns.len(),
            data,
        }
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Row vector times matrix, `x · self`.
    pub fn left_mul(&self, x: &[T]) -> Result<Vec<T>, LinalgError> {
        if x.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                actual: x.len(),
            });
        }
        let mut out = vec![T::zero(); self.cols];
        for (r, xr) in x.iter().enumerate() {
            if xr.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = o.clone() + xr.clone() * self.get(r, c).clone();
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<T, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        negate = !negate;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = v / prev.clone();
                }
            }
            prev = a[k][k].clone();
        }
        let det = if n == 0 { T::one() } else { a[n - 1][n - 1].clone() };
        Ok(if negate { -det } else { det })
    }
}

/// Solution set of `x · M = rhs` over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftSolution<T: Clone + Integer> {
    pub particular: Vec<Ratio<T>>,
    /// Integral, primitive basis of the left kernel `{y : y · M = 0}`.
    pub kernel: Vec<Vec<T>>,
}

/// Solves `x · m = rhs` with `m` square and nonsingular.
pub fn solve_square<T: IntegerScalar>(m: &Matrix<T>, rhs: &[T]) -> Result<Vec<Ratio<T>>, LinalgError> {
    if m.determinant()?.is_zero() {
        return Err(LinalgError::Singular);
    }
    let sol = solve_left(m, rhs)?.ok_or(LinalgError::Singular)?;
    debug_assert!(sol.kernel.is_empty());
    Ok(sol.particular)
}

/// All rational solutions of `x · m = rhs`, or `None` if the system is
/// inconsistent. The particular solution sets every free coordinate to zero.
pub fn solve_left<T: IntegerScalar>(m: &Matrix<T>, rhs: &[T]) -> Result<Option<LeftSolution<T>>, LinalgError> {
    if rhs.len() != m.cols {
        return Err(LinalgError::DimensionMismatch {
            expected: m.cols,
            actual: rhs.len(),
        });
    }
    // x · m = rhs  <=>  mᵀ xᵀ = rhsᵀ; augmented system has m.cols equations in m.rows unknowns.
    let unknowns = m.rows;
    let mut aug: Vec<Vec<Ratio<T>>> = (0..m.cols)
        .map(|c| {
            let mut row: Vec<Ratio<T>> = (0..unknowns)
                .map(|r| Ratio::from_integer(m.get(r, c).clone()))
                .collect();
            row.push(Ratio::from_integer(rhs[c].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut aug, unknowns);

    // A pivot-free row with a non-zero right-hand side is 0 = c.
    if aug.iter().skip(pivots.len()).any(|row| !row[unknowns].is_zero()) {
        return Ok(None);
    }

    let mut particular = vec![Ratio::zero(); unknowns];
    for (row, &col) in pivots.iter().enumerate() {
        particular[col] = aug[row][unknowns].clone();
    }

    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&fc| {
            let mut v = vec![Ratio::zero(); unknowns];
            v[fc] = Ratio::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -aug[row][fc].clone();
            }
            primitive_integer_vector(&v)
        })
        .collect();
    Ok(Some(LeftSolution { particular, kernel }))
}

/// Reduced row echelon form over the first `ncols` columns, in place.
/// Returns the pivot column of each leading row.
fn rref<T: IntegerScalar>(a: &mut [Vec<Ratio<T>>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..a.len() {
            if i != row && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                for j in 0..a[i].len() {
                    let delta = factor.clone() * a[row][j].clone();
                    a[i][j] = a[i][j].clone() - delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Clears denominators and common factors; the first non-zero entry is made positive.
pub fn primitive_integer_vector<T: IntegerScalar>(v: &[Ratio<T>]) -> Vec<T> {
    let lcm = v.iter().fold(T::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<T> = v
        .iter()
        .map(|x| (x.clone() * Ratio::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(T::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| {
            let q = x / g.clone();
            if sign_neg {
                -q
            } else {
                q
            }
        })
        .collect()
}

/// Calls `visit` with every strictly increasing `k`-subset of `0..n`, in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        // Advance the rightmost index that still has room.
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
