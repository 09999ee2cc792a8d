//! Weight systems `(a_1, ..., a_n; h)`.
//!
//! Weights are stored in the order given; the virtual weight
//! `a_0 = h - sum(a_i)` is always derived, never stored.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

/// Smallest and largest supported number of weights.
pub const MIN_ARITY: usize = 2;
pub const MAX_ARITY: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("malformed weight system {text:?}: expected `a1,...,an;h`")]
    Malformed { text: String },
    #[error("unsupported number of weights {0} (expected {MIN_ARITY}..={MAX_ARITY})")]
    Arity(usize),
    #[error("all weights are zero")]
    AllZero,
    #[error("degree must be positive, got {0}")]
    NonPositiveDegree(i64),
    #[error("weight {index} is negative ({value})")]
    NegativeWeight { index: usize, value: i64 },
    #[error("weight {index} is zero; zero weights need an explicit opt-in")]
    ZeroWeight { index: usize },
    #[error("more than one zero weight")]
    MultipleZeroWeights,
}

/// A weight system `(a_1, ..., a_n; h)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    weights: Vec<i64>,
    degree: i64,
    allows_zero_weight: bool,
}

impl WeightSystem {
    /// A weight system with strictly positive weights.
    pub fn new(weights: Vec<i64>, degree: i64) -> Result<Self, WeightError> {
        Self::build(weights, degree, false)
    }

    /// Like [`WeightSystem::new`], but tolerates a single zero weight.
    pub fn with_zero_weight(weights: Vec<i64>, degree: i64) -> Result<Self, WeightError> {
        Self::build(weights, degree, true)
    }

    fn build(weights: Vec<i64>, degree: i64, allow_zero: bool) -> Result<Self, WeightError> {
        if !(MIN_ARITY..=MAX_ARITY).contains(&weights.len()) {
            return Err(WeightError::Arity(weights.len()));
        }
        if let Some((index, &value)) = weights.iter().enumerate().find(|(_, &w)| w < 0) {
            return Err(WeightError::NegativeWeight { index, value });
        }
        let zeros: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] == 0).collect();
        if zeros.len() == weights.len() {
            return Err(WeightError::AllZero);
        }
        if degree <= 0 {
            return Err(WeightError::NonPositiveDegree(degree));
        }
        match (zeros.len(), allow_zero) {
            (0, _) => {}
            (1, true) => {}
            (1, false) => return Err(WeightError::ZeroWeight { index: zeros[0] }),
            _ => return Err(WeightError::MultipleZeroWeights),
        }
        Ok(Self {
            weights,
            degree,
            allows_zero_weight: allow_zero && !zeros.is_empty(),
        })
    }

    /// Parses `a1,...,an;h`, accepting a single zero weight (flagged).
    pub fn parse_allowing_zero(text: &str) -> Result<Self, WeightError> {
        let (weights, degree) = parse_fields(text)?;
        Self::with_zero_weight(weights, degree)
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// True when this instance carries a zero weight.
    pub fn has_zero_weight(&self) -> bool {
        self.allows_zero_weight
    }

    /// The virtual weight `a_0 = h - sum(a_i)`.
    pub fn virtual_weight(&self) -> i64 {
        self.degree - self.weights.iter().sum::<i64>()
    }

    /// `a_0 > 0` and `a_0 | h`.
    pub fn is_calabi_yau(&self) -> bool {
        let a0 = self.virtual_weight();
        a0 > 0 && self.degree % a0 == 0
    }

    /// `gcd(a_1, ..., a_n) = 1`.
    pub fn is_reduced(&self) -> bool {
        gcd_all(&self.weights) == 1
    }

    /// Divides weights and degree by their common gcd, keeping the order.
    pub fn normalized(&self) -> Self {
        self.normalized_with_scale().0
    }

    fn normalized_with_scale(&self) -> (Self, i64) {
        let g = self.degree.gcd(&gcd_all(&self.weights));
        let out = Self {
            weights: self.weights.iter().map(|w| w / g).collect(),
            degree: self.degree / g,
            allows_zero_weight: self.allows_zero_weight,
        };
        (out, g)
    }

    /// Normalized and sorted ascending: the representative used for
    /// equivalence.
    pub fn canonical(&self) -> Self {
        reduce(self).system
    }

    /// Gcd of the weights indexed by `columns`; the degree for the empty set.
    pub fn gcd_of(&self, columns: &[usize]) -> i64 {
        if columns.is_empty() {
            return self.degree;
        }
        columns.iter().fold(0i64, |g, &j| g.gcd(&self.weights[j]))
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ";{}", self.degree)
    }
}

impl FromStr for WeightSystem {
    type Err = WeightError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (weights, degree) = parse_fields(text)?;
        Self::new(weights, degree)
    }
}

fn parse_fields(text: &str) -> Result<(Vec<i64>, i64), WeightError> {
    let malformed = || WeightError::Malformed { text: text.into() };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (lhs, rhs) = compact.split_once(';').ok_or_else(malformed)?;
    let parse_int = |s: &str| {
        if s.is_empty()
            || !s
                .trim_start_matches(['-', '+'])
                .bytes()
                .all(|b| b.is_ascii_digit())
        {
            return Err(malformed());
        }
        s.parse::<i64>().map_err(|_| malformed())
    };
    let weights = lhs.split(',').map(parse_int).collect::<Result<Vec<_>, _>>()?;
    let degree = parse_int(rhs)?;
    Ok((weights, degree))
}

fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |g, v| g.gcd(v))
}

/// Result of [`parse_and_reduce`]: the canonical representative together
/// with the transformation that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub system: WeightSystem,
    /// `permutation[i]` is the input position of canonical weight `i`.
    pub permutation: Vec<usize>,
    /// Common divisor removed from weights and degree.
    pub scale: i64,
}

fn reduce(w: &WeightSystem) -> Reduction {
    let (normalized, scale) = w.normalized_with_scale();
    let mut permutation: Vec<usize> = (0..w.len()).collect();
    permutation.sort_by_key(|&i| (normalized.weights[i], i));
    let system = WeightSystem {
        weights: permutation.iter().map(|&i| normalized.weights[i]).collect(),
        degree: normalized.degree,
        allows_zero_weight: normalized.allows_zero_weight,
    };
    Reduction {
        system,
        permutation,
        scale,
    }
}

/// Parses `a1,...,an;h` and returns the canonical (normalized, ascending)
/// representative of its equivalence class.
pub fn parse_and_reduce(text: &str) -> Result<Reduction, WeightError> {
    let w: WeightSystem = text.parse()?;
    Ok(reduce(&w))
}

/// Equivalence up to permutation and rational rescaling. Instances with a
/// zero weight are only compared up to permutation.
pub fn equivalent(w1: &WeightSystem, w2: &WeightSystem) -> bool {
    if w1.len() != w2.len() {
        return false;
    }
    if w1.has_zero_weight() || w2.has_zero_weight() {
        let sorted = |w: &WeightSystem| {
            let mut v = w.weights.clone();
            v.sort_unstable();
            (v, w.degree)
        };
        return sorted(w1) == sorted(w2);
    }
    w1.canonical() == w2.canonical()
}
