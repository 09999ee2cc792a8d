//! Newton simplices and their polar duals.
//!
//! Only simplices are handled. The polar dual of a full-dimensional simplex
//! containing the origin in its interior is again a simplex; its vertex
//! opposite to primal vertex `v_i` solves `<v_j, y> = -1` for all `j != i`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{solve, RatMatrix};
use crate::magic::{MagicError, MagicSquare};
use crate::weights::WeightSystem;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("weight {} is zero", .index + 1)]
    ZeroWeight { index: usize },
    #[error("virtual weight a_0 is zero")]
    ZeroVirtualWeight,
    #[error("expected {expected} vertices in dimension {dim}, got {got}")]
    VertexCount { expected: usize, got: usize, dim: usize },
    #[error("simplex is degenerate")]
    Degenerate,
    #[error("origin is not in the interior of the simplex")]
    OriginNotInterior,
    #[error(transparent)]
    Magic(#[from] MagicError),
}

/// A simplex with exact rational vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalSimplex {
    vertices: Vec<Vec<Rational>>,
}

impl RationalSimplex {
    pub fn new(vertices: Vec<Vec<Rational>>) -> Self {
        Self { vertices }
    }

    pub fn from_integer_vertices(vertices: &[&[i64]]) -> Self {
        Self::new(
            vertices
                .iter()
                .map(|v| v.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect(),
        )
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices.first().map_or(0, Vec::len)
    }

    /// Vertices sorted, for order-independent comparison.
    pub fn sorted_vertices(&self) -> Vec<Vec<Rational>> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    pub fn same_vertex_set(&self, other: &Self) -> bool {
        self.sorted_vertices() == other.sorted_vertices()
    }

    /// Barycentric coordinates of the origin, `None` if degenerate.
    pub fn origin_barycentric(&self) -> Option<Vec<Rational>> {
        let n = self.ambient_dim();
        if self.vertices.len() != n + 1 {
            return None;
        }
        // columns are vertices, last row is the affine constraint
        let m = RatMatrix::from_fn(n + 1, |i, j| {
            if i < n {
                self.vertices[j][i]
            } else {
                Rational::one()
            }
        });
        let mut rhs = vec![Rational::zero(); n + 1];
        rhs[n] = Rational::one();
        solve(&m, &rhs)
    }
}

impl fmt::Display for RationalSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.vertices.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str("(")?;
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        f.write_str("}")
    }
}

/// The extended simplex: the full Newton diagram coned at the origin and
/// shifted by `(-1, ..., -1)`. Vertices are `-1 + (h/a_i) e_i` for each
/// `i`, followed by `(-1, ..., -1)`.
pub fn extended_diagram(wa: &WeightSystem) -> Result<RationalSimplex, PolytopeError> {
    if let Some(index) = wa.weights().iter().position(|&w| w == 0) {
        return Err(PolytopeError::ZeroWeight { index });
    }
    if wa.virtual_weight() == 0 {
        return Err(PolytopeError::ZeroVirtualWeight);
    }
    let n = wa.len();
    let minus_one = -Rational::one();
    let mut vertices: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut v = vec![minus_one; n];
            v[i] += Rational::new(wa.degree(), wa.weights()[i]);
            v
        })
        .collect();
    vertices.push(vec![minus_one; n]);
    Ok(RationalSimplex::new(vertices))
}

/// Polar dual `{y : <x, y> >= -1 for all x}` of a full-dimensional simplex
/// with the origin in its interior. Dual vertex `i` lies opposite primal
/// vertex `i`.
pub fn polar_dual(s: &RationalSimplex) -> Result<RationalSimplex, PolytopeError> {
    let n = s.ambient_dim();
    if s.vertices.len() != n + 1 || s.vertices.iter().any(|v| v.len() != n) {
        return Err(PolytopeError::VertexCount {
            expected: n + 1,
            got: s.vertices.len(),
            dim: n,
        });
    }
    let bary = s.origin_barycentric().ok_or(PolytopeError::Degenerate)?;
    if bary.iter().any(|l| *l <= Rational::zero()) {
        return Err(PolytopeError::OriginNotInterior);
    }
    let mut dual = Vec::with_capacity(n + 1);
    for skip in 0..=n {
        let others: Vec<&Vec<Rational>> = (0..=n).filter(|&j| j != skip).map(|j| &s.vertices[j]).collect();
        let m = RatMatrix::from_fn(n, |i, j| others[i][j]);
        let y = solve(&m, &vec![-Rational::one(); n]).ok_or(PolytopeError::Degenerate)?;
        dual.push(y);
    }
    debug_assert!(s
        .vertices
        .iter()
        .all(|v| dual.iter().all(|y| dot(v, y) >= -Rational::one())));
    Ok(RationalSimplex::new(dual))
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Checks `A C = E + A 1` exactly, with `A = (C - 1)^{-1}`: in the basis
/// given by the rows of `A`, the columns of `C` span a Newton diagram of the
/// partner weight system.
pub fn verify_duality_identity(ms: &MagicSquare) -> Result<bool, PolytopeError> {
    let data = ms.inverse_data()?;
    let a = &data.a;
    let n = ms.dim();
    let ac = a.mul(&ms.entries().to_rational());
    let ratios = data.row_ratios();
    let expected = RatMatrix::from_fn(n, |i, j| {
        let delta = if i == j { Rational::one() } else { Rational::zero() };
        delta + ratios[i]
    });
    let a0 = Rational::from_integer(ms.row_weights().virtual_weight());
    let ratios_match = a0 != Rational::zero()
        && ratios
            .iter()
            .zip(ms.row_weights().weights())
            .all(|(r, &w)| *r == Rational::from_integer(w) / a0);
    Ok(ac == expected && ratios_match)
}
