//! Exhaustive enumeration of weighted magic squares for a fixed weight pair.
//!
//! Rows are the non-negative solutions of `sum_j c_j a_j = h`. Row `i` is
//! weighted by `b_i` in the column relation, so rows may only be exchanged
//! between positions carrying equal `b` weights. The canonical representative
//! lists the rows of each such class in lexicographically descending order.
//! Column sums are pruned incrementally.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::magic::MagicSquare;
use crate::weights::WeightSystem;

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search needs strictly positive weights")]
    ZeroWeight,
    #[error("weight systems have different lengths ({0} and {1})")]
    DimensionMismatch(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Filter {
    #[default]
    Any,
    AlmostPrimitive,
    Primitive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchQuery {
    pub wa: WeightSystem,
    pub wb: WeightSystem,
    pub filter: Filter,
    pub strong_only: bool,
    pub cap: usize,
}

impl SearchQuery {
    pub fn new(wa: WeightSystem, wb: WeightSystem) -> Self {
        Self {
            wa,
            wb,
            filter: Filter::Any,
            strong_only: false,
            cap: DEFAULT_CAP,
        }
    }

    pub fn filter(mut self, filter: Filter) -> Self {
        self.filter = filter;
        self
    }

    pub fn strong_only(mut self, strong: bool) -> Self {
        self.strong_only = strong;
        self
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub squares: Vec<MagicSquare>,
    /// False when the cap stopped the enumeration early.
    pub complete: bool,
}

/// All non-negative integer vectors `c` with `sum_j c_j a_j = h`, in
/// lexicographically descending order.
pub fn enumerate_rows(wa: &WeightSystem) -> Vec<Vec<i64>> {
    let a = wa.weights();
    let mut out = Vec::new();
    if a.iter().any(|&w| w <= 0) {
        return out;
    }
    let mut current = vec![0i64; a.len()];
    fill_row(a, 0, wa.degree(), &mut current, &mut out);
    out
}

fn fill_row(a: &[i64], pos: usize, remaining: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if pos + 1 == a.len() {
        if remaining % a[pos] == 0 {
            current[pos] = remaining / a[pos];
            out.push(current.clone());
        }
        return;
    }
    for c in (0..=remaining / a[pos]).rev() {
        current[pos] = c;
        fill_row(a, pos + 1, remaining - c * a[pos], current, out);
    }
}

/// Enumerates canonical weighted magic squares of weight `(q.wa, q.wb)`
/// matching the filter, in a deterministic order.
pub fn find_magic_squares(q: &SearchQuery) -> Result<SearchOutcome, SearchError> {
    let n = q.wa.len();
    if q.wb.len() != n {
        return Err(SearchError::DimensionMismatch(n, q.wb.len()));
    }
    if q.wa.has_zero_weight() || q.wb.has_zero_weight() {
        return Err(SearchError::ZeroWeight);
    }
    let rows = enumerate_rows(&q.wa);
    let mut state = Assembly {
        q,
        rows: &rows,
        chosen: Vec::with_capacity(n),
        column_sums: vec![0; n],
        found: Vec::new(),
        complete: true,
    };
    state.extend();
    Ok(SearchOutcome {
        squares: state.found,
        complete: state.complete,
    })
}

struct Assembly<'a> {
    q: &'a SearchQuery,
    rows: &'a [Vec<i64>],
    chosen: Vec<usize>,
    column_sums: Vec<i64>,
    found: Vec<MagicSquare>,
    complete: bool,
}

impl Assembly<'_> {
    fn extend(&mut self) {
        let n = self.q.wa.len();
        let b = self.q.wb.weights();
        let k = self.q.wb.degree();
        if !self.complete {
            return;
        }
        if self.chosen.len() == n {
            if self.column_sums.iter().all(|&s| s == k) {
                self.accept();
            }
            return;
        }
        let pos = self.chosen.len();
        let bi = b[pos];
        // rows of positions with equal b weight appear in descending order
        let start = (0..pos).rev().find(|&p| b[p] == bi).map_or(0, |p| self.chosen[p]);
        for idx in start..self.rows.len() {
            let row = &self.rows[idx];
            if row.iter().zip(&self.column_sums).any(|(&c, &s)| s + bi * c > k) {
                continue;
            }
            for (s, &c) in self.column_sums.iter_mut().zip(row) {
                *s += bi * c;
            }
            self.chosen.push(idx);
            self.extend();
            self.chosen.pop();
            for (s, &c) in self.column_sums.iter_mut().zip(row) {
                *s -= bi * c;
            }
            if !self.complete {
                return;
            }
        }
    }

    fn accept(&mut self) {
        let rows: Vec<&[i64]> = self.chosen.iter().map(|&i| self.rows[i].as_slice()).collect();
        let entries = IntMatrix::from_rows(&rows).expect("square by construction");
        let Ok(ms) = MagicSquare::validate(entries, self.q.wa.clone(), self.q.wb.clone()) else {
            return;
        };
        let report = ms.classify();
        let keep = match self.q.filter {
            Filter::Any => true,
            Filter::AlmostPrimitive => report.almost_primitive,
            Filter::Primitive => report.primitive,
        } && (!self.q.strong_only || report.strong);
        if !keep {
            return;
        }
        if self.found.len() >= self.q.cap {
            self.complete = false;
            return;
        }
        self.found.push(ms);
    }
}

/// Sorts rows lexicographically descending within each class of positions
/// sharing the same column-relation weight `b_i`.
pub fn canonical_rows(m: &IntMatrix, wb: &WeightSystem) -> IntMatrix {
    let b = wb.weights();
    let mut rows = m.to_rows();
    let mut seen: Vec<i64> = Vec::new();
    for &w in b {
        if seen.contains(&w) {
            continue;
        }
        seen.push(w);
        let positions: Vec<usize> = (0..b.len()).filter(|&i| b[i] == w).collect();
        let mut class: Vec<Vec<i64>> = positions.iter().map(|&i| rows[i].clone()).collect();
        class.sort_by(|x, y| y.cmp(x));
        for (&i, r) in positions.iter().zip(class) {
            rows[i] = r;
        }
    }
    IntMatrix::from_rows(&rows).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(weights: &[i64], h: i64) -> WeightSystem {
        WeightSystem::new(weights.to_vec(), h).unwrap()
    }

    /// Brute force over the box `c_j <= h / a_j`, sorted descending.
    fn brute_rows(wa: &WeightSystem) -> Vec<Vec<i64>> {
        let a = wa.weights();
        let h = wa.degree();
        let bounds: Vec<i64> = a.iter().map(|w| h / w).collect();
        let mut out = Vec::new();
        let total: i64 = bounds.iter().map(|b| b + 1).product();
        for mut code in 0..total {
            let mut v = Vec::new();
            for b in &bounds {
                v.push(code % (b + 1));
                code /= b + 1;
            }
            if v.iter().zip(a).map(|(c, w)| c * w).sum::<i64>() == h {
                out.push(v);
            }
        }
        out.sort_by(|x, y| y.cmp(x));
        out
    }

    #[test]
    fn rows_of_small_systems() {
        assert_eq!(enumerate_rows(&ws(&[2, 3], 6)), vec![vec![3, 0], vec![0, 2]]);
        assert_eq!(
            enumerate_rows(&ws(&[6, 14, 21], 42)),
            vec![vec![7, 0, 0], vec![0, 3, 0], vec![0, 0, 2]]
        );
    }

    #[test]
    fn rows_match_brute_force() {
        let w = ws(&[1, 3, 5], 10);
        let rows = enumerate_rows(&w);
        assert_eq!(rows, brute_rows(&w));
        // frozen from the brute-force oracle
        assert_eq!(rows.len(), 7);
        for r in [vec![5, 0, 1], vec![1, 3, 0], vec![0, 0, 2]] {
            assert!(rows.contains(&r));
        }
        for w in [ws(&[1, 1, 6], 12), ws(&[2, 3, 7], 14), ws(&[1, 2, 2, 3], 9)] {
            assert_eq!(enumerate_rows(&w), brute_rows(&w));
        }
    }

    #[test]
    fn e8_tilde_primitive_strong() {
        let w = ws(&[2, 3], 6);
        let out = find_magic_squares(
            &SearchQuery::new(w.clone(), w)
                .filter(Filter::Primitive)
                .strong_only(true),
        )
        .unwrap();
        assert!(out.complete);
        assert_eq!(out.squares.len(), 1);
        assert_eq!(out.squares[0].entries().to_rows(), vec![vec![3, 0], vec![0, 2]]);
    }

    #[test]
    fn e12_primitive() {
        let w = ws(&[6, 14, 21], 42);
        let out = find_magic_squares(&SearchQuery::new(w.clone(), w).filter(Filter::Primitive)).unwrap();
        assert_eq!(out.squares.len(), 1);
        assert_eq!(
            out.squares[0].entries().to_rows(),
            vec![vec![7, 0, 0], vec![0, 3, 0], vec![0, 0, 2]]
        );
    }

    #[test]
    fn z20_pair_contains_table_square() {
        let q = SearchQuery::new(ws(&[1, 3, 5], 10), ws(&[4, 10, 13], 30))
            .filter(Filter::AlmostPrimitive)
            .strong_only(true);
        let out = find_magic_squares(&q).unwrap();
        let target = vec![vec![5, 0, 1], vec![1, 3, 0], vec![0, 0, 2]];
        assert!(out.squares.iter().any(|m| m.entries().to_rows() == target));
        for m in &out.squares {
            assert!(m.classify().almost_primitive && m.classify().strong);
        }
    }

    #[test]
    fn cap_truncates() {
        let w = ws(&[1, 1], 4);
        let all = find_magic_squares(&SearchQuery::new(w.clone(), w.clone())).unwrap();
        assert!(all.complete);
        assert!(all.squares.len() > 2);
        let capped = find_magic_squares(&SearchQuery::new(w.clone(), w).cap(2)).unwrap();
        assert!(!capped.complete);
        assert_eq!(capped.squares, all.squares[..2].to_vec());
    }

    #[test]
    fn rejects_zero_weights_and_mismatch() {
        let z = WeightSystem::parse_allowing_zero("2,3,0;6").unwrap();
        assert_eq!(
            find_magic_squares(&SearchQuery::new(z.clone(), z)),
            Err(SearchError::ZeroWeight)
        );
        assert_eq!(
            find_magic_squares(&SearchQuery::new(ws(&[2, 3], 6), ws(&[1, 1, 1], 3))),
            Err(SearchError::DimensionMismatch(2, 3))
        );
    }

    #[test]
    fn canonical_rows_sort_within_equal_b() {
        let m = IntMatrix::from_rows(&[[0i64, 2], [3, 0]]).unwrap();
        assert_eq!(
            canonical_rows(&m, &ws(&[1, 1], 3)).to_rows(),
            vec![vec![3, 0], vec![0, 2]]
        );
        assert_eq!(canonical_rows(&m, &ws(&[1, 3], 6)), m);
        let m = IntMatrix::from_rows(&[[0i64, 0, 2], [1, 3, 0], [5, 0, 1]]).unwrap();
        assert_eq!(
            canonical_rows(&m, &ws(&[2, 1, 2], 6)).to_rows(),
            vec![vec![5, 0, 1], vec![1, 3, 0], vec![0, 0, 2]]
        );
    }

    #[test]
    fn row_order_matters_for_distinct_b() {
        // rows swapped are not magic for (1,3;6)
        let out = find_magic_squares(&SearchQuery::new(ws(&[1, 1], 3), ws(&[1, 3], 6))).unwrap();
        let found: Vec<_> = out.squares.iter().map(|m| m.entries().to_rows()).collect();
        assert!(found.contains(&vec![vec![0, 3], vec![2, 1]]));
        assert!(!found.contains(&vec![vec![2, 1], vec![0, 3]]));
    }
}
