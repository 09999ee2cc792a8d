//! Reduced monodromy zeta functions of weighted magic squares.
//!
//! For a square `C` of weight `(W_a, W_b)` the reduced zeta function of the
//! monodromy of `f = sum_i x^{C_i}` is a finite product
//!
//! ```text
//! zeta_C(t) = prod_{J special} (1 - t^{h / a_J})^{(-1)^{|J|+1} a_J |det C_IJ| / h}
//! ```
//!
//! where a column set `J` is special when exactly `|J|` rows of `C` are
//! supported inside `J` (those rows form `I`), `a_J = gcd(a_j : j in J)`,
//! `a_{empty} = h` and `det C_{empty,empty} = 1`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;
use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::magic::MagicSquare;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("weight {} is zero", .index + 1)]
    ZeroWeight { index: usize },
    #[error("weights are not reduced (gcd {gcd})")]
    NotReduced { gcd: i64 },
    #[error("columns {columns:?} support {} rows {rows:?}; the subset formula is ambiguous", .rows.len())]
    DegenerateSupport { columns: Vec<usize>, rows: Vec<usize> },
    #[error("a_J = {a_j} does not divide h = {h} for columns {columns:?}")]
    OrderNotIntegral { columns: Vec<usize>, a_j: i64, h: i64 },
    #[error("exponent {numerator}/{h} for columns {columns:?} is not an integer")]
    NonIntegralExponent {
        columns: Vec<usize>,
        numerator: i64,
        h: i64,
    },
    #[error("order {order} does not divide {h}")]
    OrderDoesNotDivide { order: u64, h: u64 },
    #[error("exponent sum is {0}, not 0: the value at t = 1 is 0 or infinite")]
    NonZeroExponentSum(i64),
}

/// A formal product `prod_l (1 - t^l)^{alpha_l}` with integer exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CyclotomicProduct {
    exponents: BTreeMap<u64, i64>,
}

impl CyclotomicProduct {
    /// The constant `1`.
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a product from `(order, exponent)` pairs; exponents at equal
    /// orders are summed.
    pub fn from_pairs<I: IntoIterator<Item = (u64, i64)>>(pairs: I) -> Self {
        let mut p = Self::one();
        for (order, exponent) in pairs {
            p.add_factor(order, exponent);
        }
        p
    }

    /// Multiplies by `(1 - t^order)^exponent`.
    pub fn add_factor(&mut self, order: u64, exponent: i64) {
        assert!(order > 0, "orders are positive");
        if exponent == 0 {
            return;
        }
        let e = self.exponents.entry(order).or_insert(0);
        *e += exponent;
        if *e == 0 {
            self.exponents.remove(&order);
        }
    }

    pub fn exponent(&self, order: u64) -> i64 {
        self.exponents.get(&order).copied().unwrap_or(0)
    }

    /// `(order, exponent)` pairs in ascending order, zero exponents omitted.
    pub fn factors(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exponents.iter().map(|(&l, &a)| (l, a))
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `sum_l l * alpha_l`, the degree of the rational function.
    pub fn degree(&self) -> i64 {
        self.factors().map(|(l, a)| l as i64 * a).sum()
    }

    /// `sum_l alpha_l`.
    pub fn exponent_sum(&self) -> i64 {
        self.exponents.values().sum()
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, a) in other.factors() {
            out.add_factor(l, a);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        self.powi(-1)
    }

    pub fn powi(&self, k: i64) -> Self {
        Self::from_pairs(self.factors().map(|(l, a)| (l, a * k)))
    }

    /// Saito dual with respect to `h`: the exponent at order `m` becomes
    /// `-alpha_{h/m}`.
    pub fn saito_dual(&self, h: u64) -> Result<Self, ZetaError> {
        let mut out = Self::one();
        for (l, a) in self.factors() {
            if h == 0 || !h.is_multiple_of(l) {
                return Err(ZetaError::OrderDoesNotDivide { order: l, h });
            }
            out.add_factor(h / l, -a);
        }
        Ok(out)
    }

    /// Value at `t = 1`, defined when the exponent sum vanishes:
    /// `prod_l l^{alpha_l}`.
    pub fn value_at_one(&self) -> Result<Rational, ZetaError> {
        let s = self.exponent_sum();
        if s != 0 {
            return Err(ZetaError::NonZeroExponentSum(s));
        }
        let mut v = Rational::one();
        for (l, a) in self.factors() {
            let base = Rational::from_integer(l as i64);
            v *= num_traits::pow::pow(if a > 0 { base } else { base.recip() }, a.unsigned_abs() as usize);
        }
        Ok(v)
    }

    /// Power series coefficients through `t^max_degree`.
    pub fn expand_series(&self, max_degree: usize) -> Vec<i64> {
        let mut c = vec![0i64; max_degree + 1];
        c[0] = 1;
        for (l, a) in self.factors() {
            let l = l as usize;
            for _ in 0..a.unsigned_abs() {
                if a > 0 {
                    // times (1 - t^l)
                    for i in (l..=max_degree).rev() {
                        c[i] -= c[i - l];
                    }
                } else {
                    // divided by (1 - t^l)
                    for i in l..=max_degree {
                        c[i] += c[i - l];
                    }
                }
            }
        }
        c
    }
}

impl fmt::Display for CyclotomicProduct {
    /// `(1-t^2)(1-t^3)(1-t^30) / (1-t)(1-t^6)(1-t^15)`, orders ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, factors: &[(u64, i64)]) -> fmt::Result {
            if factors.is_empty() {
                return f.write_str("1");
            }
            for &(l, a) in factors {
                if l == 1 {
                    f.write_str("(1-t)")?;
                } else {
                    write!(f, "(1-t^{l})")?;
                }
                if a > 1 {
                    write!(f, "^{a}")?;
                }
            }
            Ok(())
        }
        let num: Vec<(u64, i64)> = self.factors().filter(|&(_, a)| a > 0).collect();
        let den: Vec<(u64, i64)> = self
            .factors()
            .filter(|&(_, a)| a < 0)
            .map(|(l, a)| (l, -a))
            .collect();
        side(f, &num)?;
        if !den.is_empty() {
            f.write_str(" / ")?;
            side(f, &den)?;
        }
        Ok(())
    }
}

/// One special column set `J` of a magic square and its contribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialSubset {
    /// Columns, zero-based and ascending.
    pub columns: Vec<usize>,
    /// Rows supported inside `columns`, zero-based and ascending.
    pub rows: Vec<usize>,
    /// `gcd(a_j : j in J)`, or `h` for the empty set.
    pub a_j: i64,
    /// `|det C_IJ|`, 1 for the empty set.
    pub det: i64,
    /// `h / a_J`.
    pub order: u64,
    /// `(-1)^{|J|+1} a_J |det C_IJ| / h`.
    pub exponent: i64,
}

impl SpecialSubset {
    /// `(-1)^{|J|+1}`.
    pub fn sign(&self) -> i64 {
        if self.columns.len() % 2 == 1 {
            1
        } else {
            -1
        }
    }
}

/// Column subsets of `{0..n}` by size, then lexicographically.
pub fn column_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..(1 << n))
        .map(|mask| (0..n).filter(|&j| mask & (1 << j) != 0).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

/// Rows of `c` whose support lies inside `columns`.
pub fn supported_rows(c: &IntMatrix, columns: &[usize]) -> Vec<usize> {
    let n = c.dim();
    (0..n)
        .filter(|&i| (0..n).all(|j| columns.contains(&j) || c[(i, j)] == 0))
        .collect()
}

/// Some `|J|` rows of `c` are supported inside `J`.
pub fn is_special(c: &IntMatrix, columns: &[usize]) -> bool {
    supported_rows(c, columns).len() >= columns.len()
}

/// Enumerates the special column sets of `ms` with their contributions.
///
/// Needs positive, reduced row weights. A non-full `J` supporting more than
/// `|J|` rows is reported as [`ZetaError::DegenerateSupport`].
pub fn special_subsets(ms: &MagicSquare) -> Result<Vec<SpecialSubset>, ZetaError> {
    let wa = ms.row_weights();
    if let Some(index) = wa.weights().iter().position(|&w| w == 0) {
        return Err(ZetaError::ZeroWeight { index });
    }
    if !wa.is_reduced() {
        return Err(ZetaError::NotReduced {
            gcd: wa.gcd_of(&(0..wa.len()).collect::<Vec<_>>()),
        });
    }
    let c = ms.entries();
    let n = ms.dim();
    let h = wa.degree();
    let mut out = Vec::new();
    for columns in column_subsets(n) {
        let rows = supported_rows(c, &columns);
        if rows.len() < columns.len() {
            continue;
        }
        if rows.len() > columns.len() {
            return Err(ZetaError::DegenerateSupport { columns, rows });
        }
        let a_j = wa.gcd_of(&columns);
        let det = c
            .minor(&rows, &columns)
            .map(|m| m.determinant().abs())
            .unwrap_or(1);
        if h % a_j != 0 {
            return Err(ZetaError::OrderNotIntegral { columns, a_j, h });
        }
        let numerator = a_j * det;
        if numerator % h != 0 {
            return Err(ZetaError::NonIntegralExponent {
                columns,
                numerator,
                h,
            });
        }
        let sign = if columns.len() % 2 == 1 { 1 } else { -1 };
        out.push(SpecialSubset {
            order: (h / a_j) as u64,
            exponent: sign * numerator / h,
            columns,
            rows,
            a_j,
            det,
        });
    }
    Ok(out)
}

/// The reduced zeta function `zeta_C(t)` of the monodromy.
pub fn reduced_zeta(ms: &MagicSquare) -> Result<CyclotomicProduct, ZetaError> {
    let subsets = special_subsets(ms)?;
    Ok(CyclotomicProduct::from_pairs(
        subsets.iter().map(|s| (s.order, s.exponent)),
    ))
}

/// Saito dual `psi*(t) = prod_{m | h} (1 - t^m)^{-alpha_{h/m}}`.
pub fn saito_dual(p: &CyclotomicProduct, h: u64) -> Result<CyclotomicProduct, ZetaError> {
    p.saito_dual(h)
}

/// `phi_C(t) = zeta_C(t)^{(-1)^{n-1}}`.
pub fn characteristic_polynomial(ms: &MagicSquare) -> Result<CyclotomicProduct, ZetaError> {
    let z = reduced_zeta(ms)?;
    Ok(if ms.dim() % 2 == 1 { z } else { z.inverse() })
}

/// Milnor number, radical dimension and (for `n = 3` with a Calabi-Yau row
/// weight system) Picard number `22 - (mu - mu_0)`.
///
/// For squares whose polynomial has a non-isolated singularity these are
/// formula values only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeInvariants {
    pub mu: i64,
    pub mu0: i64,
    pub rho: Option<i64>,
}

pub fn lattice_invariants(ms: &MagicSquare) -> Result<LatticeInvariants, ZetaError> {
    let subsets = special_subsets(ms)?;
    let h = ms.row_weights().degree();
    let outer = if ms.dim() % 2 == 1 { 1 } else { -1 };
    let mu = outer * subsets.iter().map(|s| s.sign() * s.det).sum::<i64>();
    let mu0 = outer * subsets.iter().map(|s| s.sign() * s.a_j * s.det / h).sum::<i64>();
    let rho = (ms.dim() == 3 && ms.row_weights().is_calabi_yau()).then(|| 22 - (mu - mu0));
    Ok(LatticeInvariants { mu, mu0, rho })
}

/// `p(1)` together with the lattice discriminant `(-1)^{rho-1} p(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValueAtOne {
    pub value: Rational,
    pub discriminant: Option<Rational>,
}

pub fn evaluate_at_one(p: &CyclotomicProduct, rho: Option<i64>) -> Result<ValueAtOne, ZetaError> {
    let value = p.value_at_one()?;
    let discriminant = rho.map(|r| if (r - 1).rem_euclid(2) == 0 { value } else { -value });
    Ok(ValueAtOne { value, discriminant })
}

/// True when every exponent of `p` lies in `{-1, 0, 1}`.
pub fn exponents_are_signs(p: &CyclotomicProduct) -> bool {
    p.factors().all(|(_, a)| a.abs() <= 1)
}
