use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::{embed_values, SkewMatrix};
use crate::error::{OrbitError, Result};

const CLUSTER_TOL: f64 = 1e-8;
const ZERO_TOL: f64 = 1e-9;
const POSTCHECK_TOL: f64 = 1e-9;

/// A special-orthogonal `Q` with `Qᵀ A Q = embed(values)`, where `values` is the
/// chamber spectrum of `A`. In the notation `B A B⁻¹ ∈ t*_+` this is `B = Qᵀ`.
///
/// `Q` is unique only up to the maximal torus; any representative is returned.
/// Columns come in pairs `(u, A u / a)` with `u` a unit eigenvector of `-A²`
/// for `a²`; zero directions are completed from the kernel and the orientation
/// is fixed last.
pub fn canonical_frame(a: &SkewMatrix, values: &[f64]) -> Result<DMatrix<f64>> {
    let n = a.size();
    let target = embed_values(values, n);
    if *a == target {
        return Ok(DMatrix::identity(n, n));
    }
    let am = a.matrix();
    let scale = values.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    let s = am.transpose() * am;
    let eig = SymmetricEigen::new(s);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let cluster = CLUSTER_TOL * (1.0 + scale * scale);
    let zero = ZERO_TOL * (1.0 + scale);

    let mut cols: Vec<DVector<f64>> = Vec::with_capacity(n);
    let mut kernel_needed = false;
    for (j, val) in values.iter().enumerate() {
        let mag = val.abs();
        if mag <= zero {
            kernel_needed = true;
            break;
        }
        let target_eig = mag * mag;
        let mut best: Option<DVector<f64>> = None;
        let mut best_norm = 0.0;
        for (pos, &i) in order.iter().enumerate() {
            let near = (eig.eigenvalues[i] - target_eig).abs() <= cluster;
            if !(near || pos == 2 * j || pos == 2 * j + 1) {
                continue;
            }
            let v = orthogonalize(eig.eigenvectors.column(i).into_owned(), &cols);
            let nv = v.norm();
            if nv > best_norm {
                best_norm = nv;
                best = Some(v);
            }
        }
        let u = match best {
            Some(u) if best_norm > 1e-6 => u / best_norm,
            _ => {
                return Err(OrbitError::Numeric {
                    message: format!("no eigenvector left for block {}", j + 1),
                    residual: best_norm,
                })
            }
        };
        let w = orthogonalize(am * &u / mag, &cols);
        let w = orthogonalize(w.clone(), std::slice::from_ref(&u));
        let wn = w.norm();
        cols.push(u);
        cols.push(w / wn);
    }
    let kernel_cols = n - cols.len();
    if kernel_cols > 0 {
        kernel_needed = true;
        // Smallest eigenvalues first, then the standard basis as a fallback.
        let candidates = order
            .iter()
            .rev()
            .map(|&i| eig.eigenvectors.column(i).into_owned())
            .chain((0..n).map(|i| DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 })));
        for c in candidates {
            if cols.len() == n {
                break;
            }
            let v = orthogonalize(c, &cols);
            let nv = v.norm();
            if nv > 0.5 {
                cols.push(v / nv);
            }
        }
    }
    let mut q = DMatrix::from_columns(&cols);

    // Orientation: a negative last value (even size) means the second column of
    // the last pair is reversed; the total determinant must then be +1.
    let k = values.len();
    let mut det_sign = q.determinant().signum();
    if n.is_multiple_of(2) && k > 0 && values[k - 1] < -zero {
        let c = 2 * k - 1;
        q.column_mut(c).neg_mut();
        det_sign = -det_sign;
    }
    if det_sign < 0.0 {
        if kernel_needed {
            q.column_mut(n - 1).neg_mut();
        } else {
            return Err(OrbitError::Numeric {
                message: "frame orientation disagrees with the Pfaffian sign".into(),
                residual: 1.0,
            });
        }
    }

    let check = q.transpose() * am * &q - target.matrix();
    let residual = check.amax();
    if residual > POSTCHECK_TOL * (1.0 + scale) {
        return Err(OrbitError::Numeric {
            message: "diagonalizing frame does not reproduce the chamber form".into(),
            residual,
        });
    }
    Ok(q)
}

fn orthogonalize(mut v: DVector<f64>, basis: &[DVector<f64>]) -> DVector<f64> {
    // Two passes of modified Gram-Schmidt.
    for _ in 0..2 {
        for b in basis {
            let d = b.dot(&v);
            v -= b * d;
        }
    }
    v
}
