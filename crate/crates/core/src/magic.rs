//! Weighted magic squares.
//!
//! A non-negative integer matrix `C` is a weighted magic square of weight
//! `(W_a, W_b)` when every row satisfies `sum_j c_ij a_j = h` and every
//! column satisfies `sum_i b_i c_ij = k`.

use alloc::vec::Vec;

use num_traits::One;
use thiserror::Error;

use crate::linalg::{IntMatrix, RatMatrix};
use crate::weights::{WeightError, WeightSystem};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagicError {
    #[error("matrix is {matrix}x{matrix} but the weight systems have {wa} and {wb} weights")]
    DimensionMismatch { matrix: usize, wa: usize, wb: usize },
    #[error("negative entry {value} at row {}, column {}", .row + 1, .col + 1)]
    NegativeEntry { row: usize, col: usize, value: i64 },
    #[error("row {} has weighted sum {sum}, expected {expected}", .row + 1)]
    RowRelation { row: usize, sum: i64, expected: i64 },
    #[error("column {} has weighted sum {sum}, expected {expected}", .col + 1)]
    ColumnRelation { col: usize, sum: i64, expected: i64 },
    #[error("B = C - 1 is singular (det B = 0)")]
    SingularB,
    #[error("recovered {side} weight system {recovered} does not match {expected}")]
    RecoveryMismatch {
        side: Side,
        recovered: alloc::string::String,
        expected: alloc::string::String,
    },
    #[error("recovered {side} weights do not form a weight system: {source}")]
    RecoveryInvalid { side: Side, source: WeightError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Row,
    Column,
}

impl core::fmt::Display for Side {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Side::Row => "row",
            Side::Column => "column",
        })
    }
}

/// A validated weighted magic square bound to its weight pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MagicSquare {
    entries: IntMatrix,
    wa: WeightSystem,
    wb: WeightSystem,
}

impl MagicSquare {
    /// Checks both defining relations exactly.
    pub fn validate(entries: IntMatrix, wa: WeightSystem, wb: WeightSystem) -> Result<Self, MagicError> {
        let n = entries.dim();
        if wa.len() != n || wb.len() != n {
            return Err(MagicError::DimensionMismatch {
                matrix: n,
                wa: wa.len(),
                wb: wb.len(),
            });
        }
        for (row, r) in entries.rows().enumerate() {
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v < 0) {
                return Err(MagicError::NegativeEntry { row, col, value });
            }
        }
        for (row, sum) in entries.mul_vec(wa.weights()).into_iter().enumerate() {
            if sum != wa.degree() {
                return Err(MagicError::RowRelation {
                    row,
                    sum,
                    expected: wa.degree(),
                });
            }
        }
        for (col, sum) in entries.vec_mul(wb.weights()).into_iter().enumerate() {
            if sum != wb.degree() {
                return Err(MagicError::ColumnRelation {
                    col,
                    sum,
                    expected: wb.degree(),
                });
            }
        }
        Ok(Self { entries, wa, wb })
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn row_weights(&self) -> &WeightSystem {
        &self.wa
    }

    pub fn column_weights(&self) -> &WeightSystem {
        &self.wb
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn determinant(&self) -> i64 {
        self.entries.determinant()
    }

    /// `B = (c_ij - 1)`.
    pub fn shifted(&self) -> IntMatrix {
        self.entries.map(|&c| c - 1)
    }

    /// Transposed square with the two weight systems swapped.
    pub fn transpose(&self) -> Self {
        Self {
            entries: self.entries.transpose(),
            wa: self.wb.clone(),
            wb: self.wa.clone(),
        }
    }

    /// Checks `det(C) a_0 = det(B) h` and `det(C) b_0 = det(B) k`.
    pub fn determinant_identity_holds(&self) -> bool {
        let dc = self.determinant();
        let db = self.shifted().determinant();
        dc * self.wa.virtual_weight() == db * self.wa.degree()
            && dc * self.wb.virtual_weight() == db * self.wb.degree()
    }

    pub fn classify(&self) -> CouplingReport {
        let det = self.determinant();
        let abs = det.abs();
        let (h, k) = (self.wa.degree(), self.wb.degree());
        let (a0, b0) = (self.wa.virtual_weight(), self.wb.virtual_weight());
        let primitive = abs == h && abs == k;
        let almost_primitive = abs == h * b0 && abs == k * a0;
        let n = self.dim();
        let rows_with_zero: Vec<bool> = self.entries.rows().map(|r| r.contains(&0)).collect();
        let columns_with_zero: Vec<bool> = (0..n).map(|j| self.entries.column(j).contains(&0)).collect();
        let strong = rows_with_zero.iter().chain(&columns_with_zero).all(|&z| z);
        let classification = if primitive {
            Classification::Primitive
        } else if almost_primitive {
            Classification::AlmostPrimitive
        } else {
            Classification::Plain
        };
        CouplingReport {
            determinant: det,
            classification,
            primitive,
            almost_primitive,
            strong,
            rows_with_zero,
            columns_with_zero,
        }
    }

    /// `B`, `A = B^{-1}` and the weight systems read back from `A`.
    pub fn inverse_data(&self) -> Result<InverseData, MagicError> {
        let b = self.shifted();
        let det_b = b.determinant();
        let a = b.rational_inverse().ok_or(MagicError::SingularB)?;
        let ones = alloc::vec![Rational::one(); self.dim()];
        let recovered_wa = recover(&a.mul_vec(&ones), Side::Row)?;
        let recovered_wb = recover(&a.vec_mul(&ones), Side::Column)?;
        for (side, got, want) in [
            (Side::Row, &recovered_wa, &self.wa),
            (Side::Column, &recovered_wb, &self.wb),
        ] {
            let want = want.normalized();
            if *got != want {
                return Err(MagicError::RecoveryMismatch {
                    side,
                    recovered: alloc::format!("{got}"),
                    expected: alloc::format!("{want}"),
                });
            }
        }
        Ok(InverseData {
            b,
            det_b,
            a,
            recovered_wa,
            recovered_wb,
        })
    }
}

/// Reads both weight systems off `C` alone via `A = (C - 1)^{-1}`, then
/// validates `C` against them. Weight systems come back normalized.
pub fn recover_weights(entries: &IntMatrix) -> Result<MagicSquare, MagicError> {
    let a = entries
        .map(|&c| c - 1)
        .rational_inverse()
        .ok_or(MagicError::SingularB)?;
    let ones = alloc::vec![Rational::one(); entries.dim()];
    let wa = recover(&a.mul_vec(&ones), Side::Row)?;
    let wb = recover(&a.vec_mul(&ones), Side::Column)?;
    MagicSquare::validate(entries.clone(), wa, wb)
}

/// Turns `(a_1/a_0, ..., a_n/a_0)` back into a normalized weight system.
fn recover(ratios: &[Rational], side: Side) -> Result<WeightSystem, MagicError> {
    use num_integer::Integer;
    // (a_1, ..., a_n, h) is proportional to (v_1, ..., v_n, sum v + 1).
    let h_ratio: Rational = ratios.iter().copied().fold(Rational::one(), |s, v| s + v);
    let mut all: Vec<Rational> = ratios.to_vec();
    all.push(h_ratio);
    let lcm = all.iter().fold(1i64, |l, v| l.lcm(v.denom()));
    let mut ints: Vec<i64> = all
        .iter()
        .map(|v| (v * Rational::from_integer(lcm)).to_integer())
        .collect();
    let g = ints.iter().fold(0i64, |g, v| g.gcd(v));
    let sign = if ints[ints.len() - 1] < 0 { -1 } else { 1 };
    if g != 0 {
        for v in &mut ints {
            *v = *v / g * sign;
        }
    }
    let degree = ints.pop().unwrap_or_default();
    WeightSystem::with_zero_weight(ints, degree)
        .map_err(|source| MagicError::RecoveryInvalid { side, source })
}

/// Coupling classification of a weighted magic square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// `|det C| = h = k`.
    Primitive,
    /// `|det C| = h b_0 = k a_0`, not primitive.
    AlmostPrimitive,
    Plain,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Primitive => "primitive",
            Classification::AlmostPrimitive => "almost_primitive",
            Classification::Plain => "plain",
        }
    }
}

impl core::fmt::Display for Classification {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingReport {
    pub determinant: i64,
    pub classification: Classification,
    pub primitive: bool,
    /// The almost-primitive criterion on its own; it can hold for a
    /// primitive square too (exactly when `a_0 = b_0 = 1`).
    pub almost_primitive: bool,
    /// Every row and every column contains a zero.
    pub strong: bool,
    pub rows_with_zero: Vec<bool>,
    pub columns_with_zero: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InverseData {
    pub b: IntMatrix,
    pub det_b: i64,
    pub a: RatMatrix,
    pub recovered_wa: WeightSystem,
    pub recovered_wb: WeightSystem,
}

impl InverseData {
    /// `A 1`, i.e. `(a_1/a_0, ..., a_n/a_0)`.
    pub fn row_ratios(&self) -> Vec<Rational> {
        self.a.mul_vec(&alloc::vec![Rational::one(); self.a.dim()])
    }

    pub fn column_ratios(&self) -> Vec<Rational> {
        self.a.vec_mul(&alloc::vec![Rational::one(); self.a.dim()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ws(weights: &[i64], h: i64) -> WeightSystem {
        WeightSystem::new(weights.to_vec(), h).unwrap()
    }

    fn square(rows: &[&[i64]], wa: WeightSystem, wb: WeightSystem) -> Result<MagicSquare, MagicError> {
        MagicSquare::validate(IntMatrix::from_rows(rows).unwrap(), wa, wb)
    }

    fn z20() -> MagicSquare {
        square(
            &[&[5, 0, 1], &[1, 3, 0], &[0, 0, 2]],
            ws(&[1, 3, 5], 10),
            ws(&[4, 10, 13], 30),
        )
        .unwrap()
    }

    fn e12() -> MagicSquare {
        let w = ws(&[6, 14, 21], 42);
        square(&[&[7, 0, 0], &[0, 3, 0], &[0, 0, 2]], w.clone(), w).unwrap()
    }

    #[test]
    fn validates_table_squares() {
        z20();
        e12();
    }

    #[test]
    fn reports_failing_row() {
        let w = ws(&[2, 3], 6);
        let err = square(&[&[3, 0], &[1, 1]], w.clone(), w).unwrap_err();
        assert_eq!(
            err,
            MagicError::RowRelation {
                row: 1,
                sum: 5,
                expected: 6
            }
        );
        assert_eq!(alloc::format!("{err}"), "row 2 has weighted sum 5, expected 6");
    }

    #[test]
    fn reports_failing_column_and_shape_errors() {
        let err = square(&[&[3, 0], &[0, 2]], ws(&[2, 3], 6), ws(&[1, 3], 6)).unwrap_err();
        assert_eq!(
            err,
            MagicError::ColumnRelation {
                col: 0,
                sum: 3,
                expected: 6
            }
        );
        let err = square(&[&[3, 0], &[0, 2]], ws(&[2, 3], 6), ws(&[1, 1, 1], 3)).unwrap_err();
        assert!(matches!(err, MagicError::DimensionMismatch { .. }));
        let err = square(&[&[4, -1], &[0, 2]], ws(&[2, 3], 6), ws(&[2, 3], 6)).unwrap_err();
        assert_eq!(
            err,
            MagicError::NegativeEntry {
                row: 0,
                col: 1,
                value: -1
            }
        );
    }

    #[test]
    fn classifies_almost_primitive_strong() {
        let r = z20().classify();
        assert_eq!(r.determinant, 30);
        assert_eq!(r.classification, Classification::AlmostPrimitive);
        assert!(r.almost_primitive && !r.primitive && r.strong);
    }

    #[test]
    fn classifies_primitive_strong() {
        let r = e12().classify();
        assert_eq!(r.determinant, 42);
        assert_eq!(r.classification, Classification::Primitive);
        assert!(r.primitive && r.almost_primitive && r.strong);
    }

    #[test]
    fn classifies_primitive_not_strong() {
        // K'_10 / L_10 of the ICIS extension, dual to W_1,0
        let ms = square(
            &[&[3, 0, 0], &[0, 0, 2], &[1, 2, 1]],
            ws(&[4, 1, 6], 12),
            ws(&[2, 3, 6], 12),
        )
        .unwrap();
        let r = ms.classify();
        assert!(r.primitive);
        assert!(!r.strong);
        assert_eq!(r.rows_with_zero, vec![true, true, false]);
        assert_eq!(r.columns_with_zero, vec![true, true, true]);
    }

    #[test]
    fn inverse_data_recovers_weights() {
        let d = e12().inverse_data().unwrap();
        assert_eq!(
            d.b.to_rows(),
            vec![vec![6, -1, -1], vec![-1, 2, -1], vec![-1, -1, 1]]
        );
        assert_eq!(d.det_b, 1);
        let int = |v: i64| Rational::from_integer(v);
        assert_eq!(d.row_ratios(), vec![int(6), int(14), int(21)]);
        assert_eq!(d.column_ratios(), vec![int(6), int(14), int(21)]);

        let d = z20().inverse_data().unwrap();
        assert_eq!(d.recovered_wa, ws(&[1, 3, 5], 10));
        assert_eq!(d.recovered_wb, ws(&[4, 10, 13], 30));
    }

    #[test]
    fn recovers_both_weight_systems_from_the_matrix() {
        let ms = recover_weights(z20().entries()).unwrap();
        assert_eq!(ms.row_weights(), &ws(&[1, 3, 5], 10));
        assert_eq!(ms.column_weights(), &ws(&[4, 10, 13], 30));
        let ms = recover_weights(e12().entries()).unwrap();
        assert_eq!(ms.column_weights(), &ws(&[6, 14, 21], 42));
        let flat = IntMatrix::from_rows(&[[2i64, 2], [2, 2]]).unwrap();
        assert_eq!(recover_weights(&flat), Err(MagicError::SingularB));
    }

    #[test]
    fn inverse_data_rejects_singular_b() {
        let ms = square(&[&[2, 2], &[2, 2]], ws(&[1, 2], 6), ws(&[1, 1], 4)).unwrap();
        assert_eq!(ms.inverse_data(), Err(MagicError::SingularB));
        // classification still works
        assert_eq!(ms.classify().determinant, 0);
    }

    #[test]
    fn determinant_identity() {
        assert!(z20().determinant_identity_holds());
        assert!(e12().determinant_identity_holds());
    }

    #[test]
    fn transpose_swaps_weights() {
        let no50 = square(
            &[&[5, 1, 0], &[0, 3, 0], &[0, 0, 2]],
            ws(&[4, 10, 15], 30),
            ws(&[6, 8, 15], 30),
        )
        .unwrap();
        let t = no50.transpose();
        assert_eq!(
            t.entries().to_rows(),
            vec![vec![5, 0, 0], vec![1, 3, 0], vec![0, 0, 2]]
        );
        assert_eq!(t.row_weights(), &ws(&[6, 8, 15], 30));
        assert_eq!(t.column_weights(), &ws(&[4, 10, 15], 30));
        MagicSquare::validate(
            t.entries().clone(),
            t.row_weights().clone(),
            t.column_weights().clone(),
        )
        .unwrap();
        assert_eq!(t.transpose(), no50);
        assert_eq!(e12().transpose(), e12());
    }
}
