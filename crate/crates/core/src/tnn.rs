//! Total non-negativity and sign variation.
//!
//! [`is_totally_nonnegative`] evaluates every minor in `(size, I, J)`
//! lexicographic order and stops at the first negative one.
//! [`check_variation_decreasing`] samples integer vectors `x` and records any
//! with `Var(Mx) > Var(x)`, where `Var` counts sign changes after dropping
//! zeros.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{binomial, minor_value, ExactMatrix, IndexSet};

/// Largest dimension accepted by [`is_totally_nonnegative`] without forcing.
pub const TNN_DIMENSION_LIMIT: usize = 12;

/// Name of the sampler behind [`check_variation_decreasing`].
pub const GENERATOR: &str = "ChaCha8Rng/seed_from_u64 (rand_chacha 0.9)";

/// Number of sign changes in `u` once zero entries are removed.
pub fn weak_variation<T: Zero + PartialOrd>(u: &[T]) -> Result<usize> {
    if u.is_empty() {
        return Err(Error::EmptyVector);
    }
    let zero = T::zero();
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for v in u {
        let positive = if *v > zero {
            true
        } else if *v < zero {
            false
        } else {
            continue;
        };
        if last.is_some_and(|p| p != positive) {
            changes += 1;
        }
        last = Some(positive);
    }
    Ok(changes)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub value: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TnnReport {
    pub rows: usize,
    pub cols: usize,
    pub checked_minor_count: u64,
    /// First negative minor in enumeration order, if any.
    pub witness: Option<MinorWitness>,
}

impl TnnReport {
    pub fn is_tnn(&self) -> bool {
        self.witness.is_none()
    }
}

/// `sum_{p >= 1} C(rows, p) C(cols, p)`, the number of minors of a matrix.
pub fn minor_count(rows: usize, cols: usize) -> BigUint {
    (1..=rows.min(cols))
        .map(|p| binomial(rows as u64, p as u64) * binomial(cols as u64, p as u64))
        .sum()
}

/// Certifies total non-negativity by evaluating every minor.
/// Refuses matrices larger than 12 along either side.
pub fn is_totally_nonnegative(m: &ExactMatrix) -> Result<TnnReport> {
    let largest = m.rows().max(m.cols());
    if largest > TNN_DIMENSION_LIMIT {
        return Err(Error::GuardExceeded {
            what: "total non-negativity check",
            estimate: minor_count(m.rows(), m.cols()),
            limit: minor_count(TNN_DIMENSION_LIMIT, TNN_DIMENSION_LIMIT),
            advice: "is_totally_nonnegative_unguarded skips this check",
        });
    }
    is_totally_nonnegative_unguarded(m)
}

pub fn is_totally_nonnegative_unguarded(m: &ExactMatrix) -> Result<TnnReport> {
    let mut checked = 0u64;
    for size in 1..=m.rows().min(m.cols()) {
        for rows in IndexSet::subsets(m.rows(), size) {
            for cols in IndexSet::subsets(m.cols(), size) {
                let value = minor_value(m, &rows, &cols)?;
                checked += 1;
                if value.is_negative() {
                    return Ok(TnnReport {
                        rows: m.rows(),
                        cols: m.cols(),
                        checked_minor_count: checked,
                        witness: Some(MinorWitness { rows, cols, value }),
                    });
                }
            }
        }
    }
    Ok(TnnReport {
        rows: m.rows(),
        cols: m.cols(),
        checked_minor_count: checked,
        witness: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub x: Vec<BigInt>,
    pub var_x: usize,
    pub var_mx: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariationReport {
    pub sample_count: usize,
    pub seed: u64,
    pub generator: &'static str,
    pub entry_bound: u64,
    /// Every sampled `x`, in draw order.
    pub samples: Vec<Vec<BigInt>>,
    pub violations: Vec<Violation>,
    /// Largest `Var(x) - Var(Mx)` seen; negative only if every sample violated.
    pub max_drop: i64,
}

impl VariationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Draws `samples` nonzero vectors with entries uniform in
/// `[-entry_bound, entry_bound]` and compares `Var(Mx)` with `Var(x)`.
///
/// The same `(seed, entry_bound, M.cols())` always yields the same vectors.
pub fn check_variation_decreasing(
    m: &ExactMatrix,
    samples: usize,
    seed: u64,
    entry_bound: u64,
) -> Result<VariationReport> {
    if samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    if entry_bound == 0 {
        return Err(Error::Domain("entry bound must be positive".into()));
    }
    if m.cols() == 0 {
        return Err(Error::EmptyVector);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = i128::from(entry_bound);
    let mut drawn = Vec::with_capacity(samples);
    let mut violations = Vec::new();
    let mut max_drop = i64::MIN;
    while drawn.len() < samples {
        let raw: Vec<i128> = (0..m.cols())
            .map(|_| rng.random_range(-bound..=bound))
            .collect();
        if raw.iter().all(|&v| v == 0) {
            continue;
        }
        let x: Vec<BigInt> = raw.into_iter().map(BigInt::from).collect();
        let mx = m.mul_vector(&x)?;
        let var_x = weak_variation(&x)?;
        // An empty product cannot occur: rows >= 1 whenever cols >= 1.
        let var_mx = weak_variation(&mx)?;
        max_drop = max_drop.max(var_x as i64 - var_mx as i64);
        if var_mx > var_x {
            violations.push(Violation {
                x: x.clone(),
                var_x,
                var_mx,
            });
        }
        drawn.push(x);
    }
    Ok(VariationReport {
        sample_count: samples,
        seed,
        generator: GENERATOR,
        entry_bound,
        samples: drawn,
        violations,
        max_drop,
    })
}
