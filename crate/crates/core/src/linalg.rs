//! Exact linear algebra for the tiny square matrices that show up here
//! (dimension at most five). Everything is cofactor expansion and Cramer's
//! rule over `i64` or exact rationals; no pivoting, no floating point.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::Rational;

/// Dense row-major square matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

/// Integer matrix; the entry type of every weighted magic square.
pub type IntMatrix = SquareMatrix<i64>;

/// Exact rational matrix.
pub type RatMatrix = SquareMatrix<Rational>;

impl<T: Clone> SquareMatrix<T> {
    /// Builds a matrix from its rows. Returns `None` unless the rows form a
    /// non-empty square.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Option<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.as_ref().len() != n) {
            return None;
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().cloned()).collect();
        Some(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.n).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(<[T]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Submatrix on the given (sorted) row and column index sets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Option<Self> {
        if rows.len() != cols.len() {
            return None;
        }
        let m = rows.len();
        let mut data = Vec::with_capacity(m * m);
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        Some(Self { n: m, data })
    }
}

impl<T> Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for SquareMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for SquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n)).finish()
    }
}

impl<T> SquareMatrix<T>
where
    T: Clone + Zero + One + core::ops::Sub<Output = T> + core::ops::Mul<Output = T>,
{
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Determinant by Laplace expansion along the first row. The empty
    /// matrix has determinant one.
    pub fn determinant(&self) -> T {
        determinant_of(self.n, &self.data)
    }

    /// Classical adjugate, so that `self * adj = det * E`.
    pub fn adjugate(&self) -> Self {
        let n = self.n;
        if n == 1 {
            return Self::identity(1);
        }
        let idx: Vec<usize> = (0..n).collect();
        Self::from_fn(n, |i, j| {
            // adj[i][j] = (-1)^{i+j} * M_{ji}
            let rows: Vec<usize> = idx.iter().copied().filter(|&r| r != j).collect();
            let cols: Vec<usize> = idx.iter().copied().filter(|&c| c != i).collect();
            let m = self.minor(&rows, &cols).expect("same length");
            let d = m.determinant();
            if (i + j) % 2 == 0 {
                d
            } else {
                T::zero() - d
            }
        })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(T::zero(), |acc, k| {
                acc + self[(i, k)].clone() * rhs[(k, j)].clone()
            })
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.n, v.len(), "dimension mismatch");
        self.rows()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.n, v.len(), "dimension mismatch");
        (0..self.n)
            .map(|j| (0..self.n).fold(T::zero(), |acc, i| acc + v[i].clone() * self[(i, j)].clone()))
            .collect()
    }
}

fn determinant_of<T>(n: usize, data: &[T]) -> T
where
    T: Clone + Zero + One + core::ops::Sub<Output = T> + core::ops::Mul<Output = T>,
{
    match n {
        0 => T::one(),
        1 => data[0].clone(),
        2 => data[0].clone() * data[3].clone() - data[1].clone() * data[2].clone(),
        _ => {
            let mut acc = T::zero();
            let mut sub = Vec::with_capacity((n - 1) * (n - 1));
            for col in 0..n {
                if data[col].is_zero() {
                    continue;
                }
                sub.clear();
                for i in 1..n {
                    for j in 0..n {
                        if j != col {
                            sub.push(data[i * n + j].clone());
                        }
                    }
                }
                let term = data[col].clone() * determinant_of(n - 1, &sub);
                acc = if col % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

impl IntMatrix {
    pub fn to_rational(&self) -> RatMatrix {
        self.map(|&x| Rational::from_integer(x))
    }

    /// Exact inverse over the rationals, `None` when singular.
    pub fn rational_inverse(&self) -> Option<RatMatrix> {
        let det = self.determinant();
        if det == 0 {
            return None;
        }
        let adj = self.adjugate();
        Some(adj.map(|&x| Rational::new(x, det)))
    }
}

/// Solves `m x = rhs` by Cramer's rule. `None` when `m` is singular.
pub fn solve(m: &RatMatrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    let det = m.determinant();
    if det.is_zero() {
        return None;
    }
    let n = m.dim();
    let mut out = vec![Rational::zero(); n];
    for (k, slot) in out.iter_mut().enumerate() {
        let replaced = RatMatrix::from_fn(n, |i, j| if j == k { rhs[i] } else { m[(i, j)] });
        *slot = replaced.determinant() / det;
    }
    Some(out)
}
