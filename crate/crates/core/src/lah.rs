//! Lah numbers, the Lah matrix and the rising/falling factorial identity.
//!
//! `L(n, k)` counts the ways to split `{1, ..., n}` into `k` nonempty
//! linearly ordered blocks. Three routes are provided and kept independent of
//! each other: the recurrence table, the closed form, and brute-force
//! enumeration. Boundary values are `L(0, 0) = 1`, `L(n, 0) = 0` for `n >= 1`
//! and `L(n, k) = 0` for `k > n`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{binomial, ExactMatrix};

/// Largest `n` accepted by [`lah_enumerate`] without forcing.
pub const ENUMERATION_LIMIT: usize = 9;

/// `L(n, k)` for `0 <= k <= n <= n_max`, filled by the recurrence
/// `L(n+1, k) = L(n, k-1) + (n+k) L(n, k)` from `L(0, 0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LahTable {
    rows: Vec<Vec<BigUint>>,
}

impl LahTable {
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `L(n, k)`; zero for `k > n`.
    ///
    /// # Panics
    ///
    /// Panics if `n` exceeds the table size.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        assert!(
            n <= self.n_max(),
            "n = {n} beyond table size {}",
            self.n_max()
        );
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    /// Row `n` as `[L(n, 0), ..., L(n, n)]`.
    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }
}

pub fn lah_recurrence_table(n_max: usize) -> LahTable {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![BigUint::one()]);
    for n in 0..n_max {
        let prev = &rows[n];
        let next = (0..=n + 1)
            .map(|k| {
                let left = if k == 0 {
                    BigUint::zero()
                } else {
                    prev[k - 1].clone()
                };
                let right = prev.get(k).map(|v| v * (n + k)).unwrap_or_default();
                left + right
            })
            .collect();
        rows.push(next);
    }
    LahTable { rows }
}

/// `L(m, k) = C(m-1, k-1) * m!/k!`, with `m!/k!` taken as the product
/// `(k+1)(k+2)...m` so no division is needed.
pub fn lah_closed_form(m: usize, k: usize) -> BigUint {
    if m == 0 || k == 0 {
        return if m == k {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    if k > m {
        return BigUint::zero();
    }
    let quotient = ((k + 1)..=m).fold(BigUint::one(), |acc, i| acc * i);
    binomial(m as u64 - 1, k as u64 - 1) * quotient
}

/// Counts splittings of `{1, ..., n}` into `k` nonempty ordered blocks by
/// exhaustive generation. Refuses `n > 9`; see [`lah_enumerate_unguarded`].
pub fn lah_enumerate(n: usize, k: usize) -> Result<BigUint> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            what: "ordered set partition enumeration",
            estimate: BigUint::from(n),
            limit: BigUint::from(ENUMERATION_LIMIT),
            advice: "use the closed form or recurrence instead",
        });
    }
    Ok(lah_enumerate_unguarded(n, k))
}

/// [`lah_enumerate`] without the size guard.
///
/// Every unordered set partition of `{1, ..., n}` into `k` blocks is generated
/// by backtracking, and each contributes the number of ways to linearly order
/// its blocks.
pub fn lah_enumerate_unguarded(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut sizes: Vec<usize> = Vec::with_capacity(k);
    let mut total = BigUint::zero();
    place(0, n, k, &mut sizes, &mut total);
    total
}

// Element `next` goes into an existing block or opens a new one. Blocks are
// opened in element order so each unordered partition is produced once.
fn place(next: usize, n: usize, k: usize, sizes: &mut Vec<usize>, total: &mut BigUint) {
    if next == n {
        if sizes.len() == k {
            let mut orders = BigUint::one();
            for &s in sizes.iter() {
                for i in 2..=s {
                    orders *= i;
                }
            }
            *total += orders;
        }
        return;
    }
    let remaining = n - next;
    if sizes.len() + remaining < k {
        return;
    }
    for b in 0..sizes.len() {
        sizes[b] += 1;
        place(next + 1, n, k, sizes, total);
        sizes[b] -= 1;
    }
    if sizes.len() < k {
        sizes.push(1);
        place(next + 1, n, k, sizes, total);
        sizes.pop();
    }
}

/// The `m x m` lower-triangular matrix with `(i, j)` entry `L(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LahMatrix {
    matrix: ExactMatrix,
}

impl LahMatrix {
    pub fn m(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.matrix
    }
}

/// Builds the Lah matrix from the recurrence and checks every entry against
/// the closed form before returning it.
pub fn lah_matrix(m: usize) -> Result<LahMatrix> {
    if m == 0 {
        return Err(Error::Domain("the Lah matrix needs m >= 1".into()));
    }
    let table = lah_recurrence_table(m);
    for i in 1..=m {
        for j in 1..=m {
            let (rec, closed) = (table.get(i, j), lah_closed_form(i, j));
            if rec != closed {
                return Err(Error::InvariantViolation(format!(
                    "L({i},{j}): recurrence gives {rec}, closed form gives {closed}"
                )));
            }
        }
    }
    let matrix = ExactMatrix::from_fn(m, m, |i, j| BigInt::from(table.get(i, j)));
    Ok(LahMatrix { matrix })
}

/// Polynomial with integer coefficients, `coefficients()[d]` multiplying `x^d`.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `x + c`.
    pub fn linear(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into(), BigInt::one()])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// Coefficient of `x^d`, zero beyond the degree.
    pub fn coefficient(&self, d: usize) -> BigInt {
        self.coefficients.get(d).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coefficients.iter().map(|a| a * c).collect())
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, a| acc * x + a)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coefficients.len().max(rhs.coefficients.len());
        IntPolynomial::new(
            (0..len)
                .map(|d| self.coefficient(d) + rhs.coefficient(d))
                .collect(),
        )
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            match (first, c.is_negative()) {
                (true, false) => {}
                (true, true) => f.write_str("-")?,
                (false, _) => write!(f, " {sign} ")?,
            }
            first = false;
            let mag = c.abs();
            if d == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{d}")?,
            }
        }
        Ok(())
    }
}

/// `x (x+1) ... (x+n-1)`; the constant 1 for `n = 0`.
pub fn rising_factorial(n: usize) -> IntPolynomial {
    (0..n).fold(IntPolynomial::constant(1), |acc, i| {
        &acc * &IntPolynomial::linear(i)
    })
}

/// `x (x-1) ... (x-k+1)`; the constant 1 for `k = 0`.
pub fn falling_factorial(k: usize) -> IntPolynomial {
    (0..k).fold(IntPolynomial::constant(1), |acc, i| {
        &acc * &IntPolynomial::linear(-BigInt::from(i))
    })
}

/// Outcome of comparing `x^(rising n)` with `sum_k L(n,k) x^(falling k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub n: usize,
    pub rising: IntPolynomial,
    pub expansion: IntPolynomial,
    /// Lowest degree whose coefficients differ, with both coefficients.
    pub first_difference: Option<(usize, BigInt, BigInt)>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.first_difference.is_none()
    }
}

/// Checks the rising-to-falling factorial expansion by full coefficient
/// comparison, summing from `k = 0`.
pub fn verify_polynomial_identity(n: usize) -> IdentityReport {
    let table = lah_recurrence_table(n);
    compare_expansion(n, |k| table.get(n, k))
}

fn compare_expansion(n: usize, coefficient: impl Fn(usize) -> BigUint) -> IdentityReport {
    let rising = rising_factorial(n);
    let expansion = (0..=n).fold(IntPolynomial::zero(), |acc, k| {
        &acc + &falling_factorial(k).scale(&BigInt::from(coefficient(k)))
    });
    let len = rising
        .coefficients()
        .len()
        .max(expansion.coefficients().len());
    let first_difference = (0..len).find_map(|d| {
        let (a, b) = (rising.coefficient(d), expansion.coefficient(d));
        (a != b).then_some((d, a, b))
    });
    IdentityReport {
        n,
        rising,
        expansion,
        first_difference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{determinant, factorial};
    use alloc::string::ToString;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn recurrence_values() {
        let t = lah_recurrence_table(6);
        assert_eq!(t.get(0, 0), big(1));
        assert_eq!(t.get(4, 1), big(24));
        assert_eq!(t.get(3, 2), big(6));
        assert_eq!(t.get(4, 2), big(36));
        assert_eq!(t.get(5, 0), big(0));
        assert_eq!(t.get(2, 5), big(0));
        assert_eq!(t.row(3), &[big(0), big(6), big(6), big(1)]);
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(lah_closed_form(5, 5), big(1));
        assert_eq!(lah_closed_form(4, 2), big(36));
        assert_eq!(lah_closed_form(6, 1), big(720));
        assert_eq!(lah_closed_form(3, 4), big(0));
        assert_eq!(lah_closed_form(0, 0), big(1));
        assert_eq!(lah_closed_form(3, 0), big(0));
        assert_eq!(lah_closed_form(0, 2), big(0));
        assert_eq!(lah_closed_form(20, 1), factorial(20));
    }

    #[test]
    fn enumeration_values() {
        assert_eq!(lah_enumerate(1, 1).unwrap(), big(1));
        assert_eq!(lah_enumerate(2, 1).unwrap(), big(2));
        assert_eq!(lah_enumerate(4, 4).unwrap(), big(1));
        assert_eq!(lah_enumerate(3, 2).unwrap(), big(6));
        assert_eq!(lah_enumerate(4, 2).unwrap(), big(36));
        assert_eq!(lah_enumerate(0, 0).unwrap(), big(1));
        assert_eq!(lah_enumerate(3, 0).unwrap(), big(0));
        assert_eq!(lah_enumerate(2, 3).unwrap(), big(0));
    }

    #[test]
    fn enumeration_guard() {
        let err = lah_enumerate(10, 3).unwrap_err();
        assert!(err.is_guard());
        assert!(err.to_string().contains("closed form"));
        assert_eq!(lah_enumerate_unguarded(10, 10), big(1));
    }

    #[test]
    fn small_lah_matrices() {
        let one = lah_matrix(1).unwrap();
        assert_eq!(one.matrix(), &ExactMatrix::from_rows([[1]]).unwrap());
        let two = lah_matrix(2).unwrap();
        assert_eq!(
            two.matrix(),
            &ExactMatrix::from_rows([[1, 0], [2, 1]]).unwrap()
        );
        let three = lah_matrix(3).unwrap();
        assert_eq!(
            three.matrix(),
            &ExactMatrix::from_rows([[1, 0, 0], [2, 1, 0], [6, 6, 1]]).unwrap()
        );
        assert!(lah_matrix(0).is_err());
    }

    #[test]
    fn lah_matrix_shape() {
        for m in 1..=10 {
            let lm = lah_matrix(m).unwrap();
            let a = lm.matrix();
            assert!(a.is_lower_triangular());
            assert!((1..=m).all(|i| a.entry(i, i).is_one()));
            assert_eq!(a.entry(m, 1), &BigInt::from(factorial(m as u64)));
            assert_eq!(determinant(a).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn row_sums_increase() {
        let t = lah_recurrence_table(12);
        for n in 1..12 {
            assert!(t.row_sum(n) > BigUint::zero());
            assert!(t.row_sum(n + 1) > t.row_sum(n));
        }
    }

    #[test]
    fn factorial_polynomials() {
        assert_eq!(rising_factorial(0), poly(&[1]));
        assert_eq!(falling_factorial(0), poly(&[1]));
        assert_eq!(rising_factorial(1), poly(&[0, 1]));
        assert_eq!(rising_factorial(2), poly(&[0, 1, 1]));
        assert_eq!(falling_factorial(2), poly(&[0, -1, 1]));
        assert_eq!(rising_factorial(3), poly(&[0, 2, 3, 1]));
        assert_eq!(falling_factorial(3), poly(&[0, 2, -3, 1]));
    }

    #[test]
    fn polynomial_display_and_eval() {
        assert_eq!(rising_factorial(2).to_string(), "x^2 + x");
        assert_eq!(falling_factorial(2).to_string(), "x^2 - x");
        assert_eq!(poly(&[-3, 0, -1]).to_string(), "-x^2 - 3");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(poly(&[0, 0, 0]).degree(), None);
        // 4*5*6
        assert_eq!(
            rising_factorial(3).evaluate(&BigInt::from(4)),
            BigInt::from(120)
        );
    }

    #[test]
    fn identity_small_cases() {
        for n in [0, 1, 3] {
            let r = verify_polynomial_identity(n);
            assert!(r.holds(), "n = {n}");
            assert_eq!(r.rising, r.expansion);
        }
        let r = verify_polynomial_identity(3);
        assert_eq!(r.rising, poly(&[0, 2, 3, 1]));
    }

    #[test]
    fn identity_reports_first_difference() {
        // L(3,2) = 6 replaced by 5; the x coefficient becomes 6 - 5 + 2.
        let r = compare_expansion(3, |k| [0u32, 6, 5, 1][k].into());
        assert!(!r.holds());
        assert_eq!(
            r.first_difference,
            Some((1, BigInt::from(2), BigInt::from(3)))
        );
    }
}
