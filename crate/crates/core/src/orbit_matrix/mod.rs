//! Skew-symmetric matrices and the maps built on them: canonical embeddings of
//! chamber points, principal submatrices, characteristic polynomials, Pfaffians,
//! the spectrum-to-chamber map and the full GT map.
//!
//! Convention: `L(a) = [[0, -a], [a, 0]]`, so `Pf(L(a)) = -a`.

mod charpoly;
mod frame;
mod gt;
mod pfaffian;
mod spectrum;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{OrbitError, Result};
use crate::root_system::WeylPoint;
use crate::scalar::Scalar;

pub use charpoly::{char_poly, charpoly_residual, chamber_char_poly};
pub use frame::canonical_frame;
pub use gt::{gt_map, gt_torus_act, torus_element};
pub use pfaffian::{pfaffian, pfaffian_expansion, pfaffian_householder};
pub use spectrum::{spectrum_to_chamber, ChamberSpectrum};

/// Dense real skew-symmetric matrix. Skew-symmetry is exact: `m[i][j] == -m[j][i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix {
    m: DMatrix<f64>,
}

impl SkewMatrix {
    /// Rejects anything that is not exactly skew-symmetric.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(OrbitError::InvalidInput(format!(
                "matrix is {}x{}, not square",
                m.nrows(),
                m.ncols()
            )));
        }
        let n = m.nrows();
        for i in 0..n {
            for j in i..n {
                if m[(i, j)] != -m[(j, i)] || !m[(i, j)].is_finite() {
                    return Err(OrbitError::InvalidInput(format!(
                        "entries ({}, {}) and ({}, {}) are not negatives of each other",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(Self { m })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(OrbitError::InvalidInput("rows have inconsistent lengths".into()));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// `(m - mᵀ) / 2`; the result is exactly skew.
    pub fn skew_part(m: &DMatrix<f64>) -> Self {
        let n = m.nrows();
        let mut out = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = (m[(i, j)] - m[(j, i)]) / 2.0;
                out[(i, j)] = v;
                out[(j, i)] = -v;
            }
        }
        Self { m: out }
    }

    pub fn zeros(size: usize) -> Self {
        Self {
            m: DMatrix::zeros(size, size),
        }
    }

    pub fn size(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.size())
            .map(|i| self.m.row(i).iter().copied().collect())
            .collect()
    }

    /// `q · self · qᵀ`
    pub fn conjugate(&self, q: &DMatrix<f64>) -> Self {
        Self::skew_part(&(q * &self.m * q.transpose()))
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.m.iter().map(|x| x * x).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().fold(0.0, |a, x| a.max(x.abs()))
    }

    /// `[[self, y], [-yᵀ, 0]]`
    pub fn bordered(&self, y: &[f64]) -> Result<Self> {
        let n = self.size();
        if y.len() != n {
            return Err(OrbitError::InvalidInput(format!(
                "border has length {}, expected {n}",
                y.len()
            )));
        }
        let mut m = DMatrix::zeros(n + 1, n + 1);
        m.view_mut((0, 0), (n, n)).copy_from(&self.m);
        for (i, v) in y.iter().enumerate() {
            m[(i, n)] = *v;
            m[(n, i)] = -*v;
        }
        Ok(Self { m })
    }
}

/// Block-diagonal `diag(L(v_1), ..., L(v_k))`, padded with zero rows/columns up to `size`.
pub fn embed_values(values: &[f64], size: usize) -> SkewMatrix {
    assert!(2 * values.len() <= size, "too many blocks for size {size}");
    let mut m = DMatrix::zeros(size, size);
    for (j, a) in values.iter().enumerate() {
        m[(2 * j, 2 * j + 1)] = -a;
        m[(2 * j + 1, 2 * j)] = *a;
    }
    SkewMatrix { m }
}

/// The torus-dual matrix of `λ`: `diag(L(λ_1), ..., L(λ_n))`, plus a zero row and
/// column for `B`.
pub fn embed_lambda<T: Scalar>(lambda: &WeylPoint<T>) -> SkewMatrix {
    let values: Vec<f64> = lambda.coords().iter().map(Scalar::to_f64).collect();
    embed_values(&values, lambda.group().matrix_size())
}

/// Top-left `k × k` block, written `Φ^k(M)`.
pub fn principal_submatrix(m: &SkewMatrix, k: usize) -> Result<SkewMatrix> {
    if k == 0 || k > m.size() {
        return Err(OrbitError::InvalidInput(format!(
            "submatrix size {k} out of range 1..={}",
            m.size()
        )));
    }
    Ok(SkewMatrix {
        m: m.m.view((0, 0), (k, k)).into_owned(),
    })
}

/// On-disk matrix format: `{"size": m, "rows": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub size: usize,
    pub rows: Vec<Vec<f64>>,
}

impl From<&SkewMatrix> for MatrixJson {
    fn from(m: &SkewMatrix) -> Self {
        Self {
            size: m.size(),
            rows: m.rows(),
        }
    }
}

impl TryFrom<MatrixJson> for SkewMatrix {
    type Error = OrbitError;

    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.rows.len() != j.size {
            return Err(OrbitError::InvalidInput(format!(
                "size is {} but {} rows were given",
                j.size,
                j.rows.len()
            )));
        }
        SkewMatrix::from_rows(&j.rows)
    }
}

impl Serialize for SkewMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkewMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        SkewMatrix::try_from(j).map_err(serde::de::Error::custom)
    }
}
