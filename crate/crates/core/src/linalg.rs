//! Exact integer matrices, minors and determinants.
//!
//! Indices are 1-based throughout: `entry(1, 1)` is the top-left cell and an
//! [`IndexSet`] `{2, 3}` selects the second and third rows (or columns).

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Axis, Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
///
/// The only matrix with a zero dimension is the 0x0 matrix, which appears as
/// the submatrix selected by two empty index sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        let degenerate = (rows == 0) != (cols == 0);
        if degenerate || rows.checked_mul(cols) != Some(entries.len()) {
            return Err(Error::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from a list of rows; all rows must have equal length.
    pub fn from_rows<R, T>(rows: impl IntoIterator<Item = R>) -> Result<Self>
    where
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut entries = Vec::new();
        let mut width = None;
        let mut count = 0;
        for (r, row) in rows.into_iter().enumerate() {
            let before = entries.len();
            entries.extend(row.into_iter().map(Into::into));
            let found = entries.len() - before;
            match width {
                None => width = Some(found),
                Some(expected) if expected != found => {
                    return Err(Error::RaggedRow {
                        row: r + 1,
                        expected,
                        found,
                    })
                }
                Some(_) => {}
            }
            count += 1;
        }
        Self::new(count, width.unwrap_or(0), entries)
    }

    /// Builds a `rows x cols` matrix whose `(i, j)` entry (1-based) is `f(i, j)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| BigInt::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
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

    /// Row-major entries.
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&BigInt> {
        if (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j) {
            Some(&self.entries[(i - 1) * self.cols + (j - 1)])
        } else {
            None
        }
    }

    /// Entry `(i, j)`, 1-based.
    ///
    /// # Panics
    ///
    /// Panics if the position is outside the matrix.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.get(i, j).unwrap_or_else(|| {
            panic!(
                "entry ({i}, {j}) outside {}x{} matrix",
                self.rows, self.cols
            )
        })
    }

    /// Row `i`, 1-based.
    pub fn row(&self, i: usize) -> &[BigInt] {
        assert!(
            (1..=self.rows).contains(&i),
            "row {i} outside 1..={}",
            self.rows
        );
        &self.entries[(i - 1) * self.cols..i * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[BigInt]> {
        // chunks(0) panics; the 0x0 matrix has no rows anyway.
        self.entries.chunks(self.cols.max(1))
    }

    /// Returns a copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: BigInt) -> Result<Self> {
        check_index(Axis::Row, i, self.rows)?;
        check_index(Axis::Column, j, self.cols)?;
        let mut out = self.clone();
        out.entries[(i - 1) * self.cols + (j - 1)] = value;
        Ok(out)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (1..=self.rows).all(|i| ((i + 1)..=self.cols).all(|j| self.entry(i, j).is_zero()))
    }

    /// Matrix-vector product `M x`.
    pub fn mul_vector(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::VectorLength {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok(self
            .iter_rows()
            .take(self.rows)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// First position (row-major, 1-based) where two equally shaped matrices
    /// differ. `None` when they are equal or differ in shape.
    pub fn first_difference(&self, other: &ExactMatrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.cols + 1, p % self.cols + 1))
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.iter_rows().take(self.rows).enumerate() {
            if r > 0 {
                f.write_str("\n")?;
            }
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Strictly increasing list of 1-based positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Validates a nonempty, strictly increasing list of positive indices.
    /// Use [`IndexSet::empty`] for the empty set.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidIndexSet(
                "empty; use IndexSet::empty()".into(),
            ));
        }
        if indices[0] == 0 {
            return Err(Error::InvalidIndexSet(
                "indices are 1-based, found 0".into(),
            ));
        }
        if let Some(w) = indices.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSet(format!(
                "not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        Ok(IndexSet(indices))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `{lo, lo + 1, ..., hi}`; empty when `lo > hi`.
    ///
    /// # Panics
    ///
    /// Panics if `lo == 0` and the range is nonempty.
    pub fn range(lo: usize, hi: usize) -> Self {
        assert!(lo >= 1 || hi < lo, "indices are 1-based");
        IndexSet((lo..=hi).collect())
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        Self::range(1, n)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// All `size`-element subsets of `{1, ..., n}` in lexicographic order.
    pub fn subsets(n: usize, size: usize) -> Subsets {
        Subsets {
            n,
            current: if size <= n {
                Some((1..=size).collect())
            } else {
                None
            },
        }
    }
}

impl FromStr for IndexSet {
    type Err = Error;

    /// Parses a comma-separated list such as `2,3,5`.
    fn from_str(s: &str) -> Result<Self> {
        let indices = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidIndexSet(format!("cannot parse {:?}", part.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(indices)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (t, i) in self.0.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Iterator returned by [`IndexSet::subsets`].
#[derive(Debug, Clone)]
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = IndexSet;

    fn next(&mut self) -> Option<IndexSet> {
        let current = self.current.as_mut()?;
        let out = IndexSet(current.clone());
        let k = current.len();
        // Rightmost position that can still be bumped.
        match (0..k).rev().find(|&t| current[t] < self.n - (k - 1 - t)) {
            Some(t) => {
                current[t] += 1;
                for u in (t + 1)..k {
                    current[u] = current[u - 1] + 1;
                }
            }
            None => self.current = None,
        }
        Some(out)
    }
}

fn check_index(axis: Axis, index: usize, bound: usize) -> Result<()> {
    if index == 0 || index > bound {
        return Err(Error::IndexOutOfRange { axis, index, bound });
    }
    Ok(())
}

/// The submatrix with rows `rows` and columns `cols`, in index order.
pub fn submatrix(m: &ExactMatrix, rows: &IndexSet, cols: &IndexSet) -> Result<ExactMatrix> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    for i in rows.iter() {
        check_index(Axis::Row, i, m.rows)?;
    }
    for j in cols.iter() {
        check_index(Axis::Column, j, m.cols)?;
    }
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for i in rows.iter() {
        for j in cols.iter() {
            entries.push(m.entry(i, j).clone());
        }
    }
    ExactMatrix::new(rows.len(), cols.len(), entries)
}

fn require_square(m: &ExactMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    Ok(())
}

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Every division performed is exact, so all intermediate values stay
/// integers. The 0x0 determinant is 1.
pub fn determinant(m: &ExactMatrix) -> Result<BigInt> {
    require_square(m)?;
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.entries.clone();
    let at = |i: usize, j: usize| i * n + j;
    let mut negate = false;
    let mut prev_pivot = BigInt::one();
    for k in 0..n - 1 {
        if a[at(k, k)].is_zero() {
            let Some(r) = ((k + 1)..n).find(|&r| !a[at(r, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            for j in k..n {
                a.swap(at(k, j), at(r, j));
            }
            negate = !negate;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &a[at(i, j)] * &a[at(k, k)] - &a[at(i, k)] * &a[at(k, j)];
                a[at(i, j)] = v / &prev_pivot;
            }
        }
        prev_pivot = a[at(k, k)].clone();
    }
    let det = a.swap_remove(at(n - 1, n - 1));
    Ok(if negate { -det } else { det })
}

/// Determinant by cofactor expansion along the first row.
///
/// Exponential in the dimension; meant as an independent cross-check of
/// [`determinant`] on small matrices.
pub fn laplace_determinant(m: &ExactMatrix) -> Result<BigInt> {
    require_square(m)?;
    let cols: Vec<usize> = (0..m.cols).collect();
    Ok(laplace(m, 0, &cols))
}

fn laplace(m: &ExactMatrix, row: usize, cols: &[usize]) -> BigInt {
    if cols.is_empty() {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    let mut rest = Vec::with_capacity(cols.len() - 1);
    for (t, &c) in cols.iter().enumerate() {
        let a = &m.entries[row * m.cols + c];
        if a.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(
            cols.iter()
                .enumerate()
                .filter(|&(u, _)| u != t)
                .map(|(_, &c)| c),
        );
        let term = a * laplace(m, row + 1, &rest);
        if t % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// The minor `det(submatrix(m, rows, cols))`; 1 for two empty index sets.
pub fn minor_value(m: &ExactMatrix, rows: &IndexSet, cols: &IndexSet) -> Result<BigInt> {
    determinant(&submatrix(m, rows, cols)?)
}

/// `n choose k`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc holds C(n, i) here, so the division is exact.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}
