use nalgebra::{DMatrix, DVector};

use super::SkewMatrix;
use crate::error::{OrbitError, Result};

/// Sizes up to this use the exact first-row expansion.
const EXPANSION_MAX: usize = 8;

/// Pfaffian of an even-size skew matrix, `Pf(M)² = det(M)`.
pub fn pfaffian(m: &SkewMatrix) -> Result<f64> {
    if m.size() % 2 == 1 {
        return Err(OrbitError::InvalidInput(format!(
            "Pfaffian of odd size {} is undefined",
            m.size()
        )));
    }
    if m.size() <= EXPANSION_MAX {
        Ok(pfaffian_expansion(m))
    } else {
        Ok(pfaffian_householder(m))
    }
}

/// Recursive expansion along the first row:
/// `Pf(A) = Σ_{j>1} (-1)^j a_{1j} Pf(A without rows/cols 1, j)` (one-based).
pub fn pfaffian_expansion(m: &SkewMatrix) -> f64 {
    let idx: Vec<usize> = (0..m.size()).collect();
    expand(m.matrix(), &idx)
}

fn expand(a: &DMatrix<f64>, idx: &[usize]) -> f64 {
    match idx.len() {
        0 => 1.0,
        2 => a[(idx[0], idx[1])],
        n if n % 2 == 1 => 0.0,
        _ => {
            let first = idx[0];
            let mut total = 0.0;
            for p in 1..idx.len() {
                let entry = a[(first, idx[p])];
                if entry == 0.0 {
                    continue;
                }
                let rest: Vec<usize> = idx[1..]
                    .iter()
                    .enumerate()
                    .filter(|(q, _)| q + 1 != p)
                    .map(|(_, v)| *v)
                    .collect();
                // one-based column index p+1, sign (-1)^{p+1}
                let sign = if p % 2 == 1 { 1.0 } else { -1.0 };
                total += sign * entry * expand(a, &rest);
            }
            total
        }
    }
}

/// Householder skew-tridiagonalization. Each nontrivial reflection `H` has
/// `det H = -1` and `Pf(H A Hᵀ) = det(H) Pf(A)`; the tridiagonal Pfaffian is the
/// product of the `(2i, 2i+1)` entries.
pub fn pfaffian_householder(m: &SkewMatrix) -> f64 {
    let n = m.size();
    if n % 2 == 1 {
        return 0.0;
    }
    let mut a = m.matrix().clone();
    let mut sign = 1.0;
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let x: DVector<f64> = a.view((k + 1, k), (len, 1)).column(0).into_owned();
        let tail_norm: f64 = x.rows(1, len - 1).norm();
        if tail_norm == 0.0 {
            continue;
        }
        let alpha = -x[0].signum() * x.norm();
        let mut v = x.clone();
        v[0] -= alpha;
        let vnorm = v.norm();
        if vnorm == 0.0 {
            continue;
        }
        v /= vnorm;
        let mut h = DMatrix::<f64>::identity(n, n);
        let block = DMatrix::<f64>::identity(len, len) - 2.0 * &v * v.transpose();
        h.view_mut((k + 1, k + 1), (len, len)).copy_from(&block);
        a = &h * &a * &h;
        sign = -sign;
    }
    let mut pf = sign;
    for i in (0..n).step_by(2) {
        pf *= a[(i, i + 1)];
    }
    pf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit_matrix::embed_values;

    #[test]
    fn small_blocks() {
        assert_eq!(pfaffian(&embed_values(&[3.0], 2)).unwrap(), -3.0);
        assert_eq!(pfaffian(&embed_values(&[3.0, 1.0], 4)).unwrap(), 3.0);
        assert!(pfaffian(&embed_values(&[3.0], 3)).is_err());
        assert_eq!(pfaffian(&SkewMatrix::zeros(0)).unwrap(), 1.0);
    }

    #[test]
    fn block_product_rule_both_routes() {
        let vals = [5.0, -2.0, 0.5, 3.0, 1.5];
        let m = embed_values(&vals, 10);
        let want: f64 = vals.iter().map(|a| -a).product();
        assert!((pfaffian_expansion(&m) - want).abs() < 1e-12);
        assert!((pfaffian_householder(&m) - want).abs() < 1e-10);
    }

    #[test]
    fn four_by_four_formula() {
        // Pf = a12 a34 - a13 a24 + a14 a23
        let rows = vec![
            vec![0.0, 1.0, 2.0, 3.0],
            vec![-1.0, 0.0, 4.0, 5.0],
            vec![-2.0, -4.0, 0.0, 6.0],
            vec![-3.0, -5.0, -6.0, 0.0],
        ];
        let m = SkewMatrix::from_rows(&rows).unwrap();
        let want = 1.0 * 6.0 - 2.0 * 5.0 + 3.0 * 4.0;
        assert_eq!(pfaffian_expansion(&m), want);
        assert!((pfaffian_householder(&m) - want).abs() < 1e-12);
    }
}
