use nalgebra::DMatrix;

use super::SkewMatrix;

/// Monic characteristic polynomial `det(tI - M)`, highest degree first:
/// `[1, c_1, ..., c_m]` stands for `t^m + c_1 t^{m-1} + ... + c_m`.
///
/// Reduces to upper Hessenberg form by orthogonal similarity and then runs the
/// three-term Hessenberg determinant recurrence, which is stable where
/// Faddeev-LeVerrier is not.
pub fn char_poly(m: &SkewMatrix) -> Vec<f64> {
    char_poly_dense(m.matrix())
}

pub(crate) fn char_poly_dense(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    if n == 0 {
        return vec![1.0];
    }
    let h = a.clone().hessenberg().h();
    // polys[i] holds det(tI - H[..i, ..i]) in ascending powers.
    let mut polys: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1.0]);
    for i in 1..=n {
        let hii = h[(i - 1, i - 1)];
        let prev = &polys[i - 1];
        let mut p = vec![0.0; i + 1];
        for (d, c) in prev.iter().enumerate() {
            p[d + 1] += c;
            p[d] -= hii * c;
        }
        let mut sub = 1.0;
        for m in 1..i {
            // Product of subdiagonal entries h_{j,j-1} for j = i-m+1 ..= i (one-based).
            sub *= h[(i - m, i - m - 1)];
            let coeff = h[(i - m - 1, i - 1)] * sub;
            if coeff == 0.0 {
                continue;
            }
            for (d, c) in polys[i - m - 1].iter().enumerate() {
                p[d] -= coeff * c;
            }
        }
        polys.push(p);
    }
    let mut out = polys.pop().unwrap();
    out.reverse();
    out
}

/// `t^{m-2k} · Π (t² + a_j²)` for a chamber spectrum `a` of a size-`m` matrix.
pub fn chamber_char_poly(values: &[f64], size: usize) -> Vec<f64> {
    // Ascending powers.
    let mut p = vec![1.0];
    for a in values {
        let mut q = vec![0.0; p.len() + 2];
        for (d, c) in p.iter().enumerate() {
            q[d] += c * a * a;
            q[d + 2] += c;
        }
        p = q;
    }
    let shift = size - 2 * values.len();
    let mut full = vec![0.0; shift];
    full.extend(p);
    full.reverse();
    full
}

/// Homogeneity-aware relative distance between two monic polynomials of equal degree.
///
/// With `s = max_i |q_i|^{1/i}` (the spectral scale of `q`), returns
/// `max_i |p_i - q_i| / s^i`. Scaling a matrix by `c` scales `c_i` by `c^i`, so the
/// measure does not depend on the magnitude of the spectrum.
pub fn charpoly_residual(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len(), "polynomials of different degree");
    let scale = q
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.abs().powf(1.0 / i as f64))
        .fold(0.0f64, f64::max);
    let scale = if scale > 0.0 { scale } else { 1.0 };
    p.iter()
        .zip(q)
        .enumerate()
        .map(|(i, (a, b))| (a - b).abs() / scale.powi(i as i32))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit_matrix::embed_values;

    #[test]
    fn block_diagonal_b2() {
        let m = embed_values(&[6.0, 1.0], 5);
        let p = char_poly(&m);
        let want = [1.0, 0.0, 37.0, 0.0, 36.0, 0.0];
        for (a, b) in p.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{p:?}");
        }
        assert_eq!(chamber_char_poly(&[6.0, 1.0], 5), want.to_vec());
    }

    #[test]
    fn two_by_two() {
        let p = char_poly(&embed_values(&[3.0], 2));
        assert!((p[0] - 1.0).abs() < 1e-15 && p[1].abs() < 1e-15 && (p[2] - 9.0).abs() < 1e-12);
    }

    #[test]
    fn general_matrix_against_trace_and_det() {
        let a = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 0.5, -1.0, 3.0, 2.0, 4.0, 0.0, 1.0]);
        let p = char_poly_dense(&a);
        assert!((p[1] + a.trace()).abs() < 1e-12);
        assert!((p[3] + a.determinant()).abs() < 1e-10);
    }

    #[test]
    fn residual_is_scale_free() {
        let q = chamber_char_poly(&[6.0, 1.0], 5);
        let q10 = chamber_char_poly(&[60.0, 10.0], 5);
        let mut p = q.clone();
        p[2] += 1e-6 * 36.0;
        let mut p10 = q10.clone();
        p10[2] += 1e-6 * 3600.0;
        let r = charpoly_residual(&p, &q);
        let r10 = charpoly_residual(&p10, &q10);
        assert!((r - r10).abs() < 1e-15 * r.max(1.0));
        assert_eq!(charpoly_residual(&q, &q), 0.0);
    }
}
