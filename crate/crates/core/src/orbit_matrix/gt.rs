use std::collections::BTreeMap;

use nalgebra::DMatrix;

use super::{canonical_frame, principal_submatrix, spectrum_to_chamber, SkewMatrix};
use crate::error::{OrbitError, Result};
use crate::gt_pattern::GtPattern;
use crate::root_system::GroupSpec;

/// Relative gap below which a level spectrum counts as degenerate for the torus action.
const INTERIOR_TOL: f64 = 1e-9;

/// `Λ(M)`: level `k` of the pattern is `s_k(Φ^k(M))` for `2 ≤ k < size`, the top row
/// is `s(M)`.
pub fn gt_map(m: &SkewMatrix, group: GroupSpec) -> Result<GtPattern<f64>> {
    if m.size() != group.matrix_size() {
        return Err(OrbitError::InvalidInput(format!(
            "matrix of size {} does not belong to {group} (size {})",
            m.size(),
            group.matrix_size()
        )));
    }
    let mut rows = BTreeMap::new();
    for k in group.pattern_levels() {
        let s = spectrum_to_chamber(&principal_submatrix(m, k)?)?;
        rows.insert(k, s.values);
    }
    let top = spectrum_to_chamber(m)?;
    GtPattern::new(group, top.values, rows)
}

/// `diag(R(θ_1), ..., R(θ_j))` padded with the identity to `size`, where
/// `R(θ) = [[cos θ, -sin θ], [sin θ, cos θ]]`. Angles are in radians; a full
/// turn of the circle `ℝ/ℤ` is `2π`.
pub fn torus_element(angles: &[f64], size: usize) -> DMatrix<f64> {
    assert!(2 * angles.len() <= size, "too many angles for size {size}");
    let mut t = DMatrix::identity(size, size);
    for (j, th) in angles.iter().enumerate() {
        let (s, c) = th.sin_cos();
        t[(2 * j, 2 * j)] = c;
        t[(2 * j, 2 * j + 1)] = -s;
        t[(2 * j + 1, 2 * j)] = s;
        t[(2 * j + 1, 2 * j + 1)] = c;
    }
    t
}

/// The GT torus action of level `k`: conjugation of `M` by `B⁻¹ t B` acting on the
/// first `k` coordinates, where `B Φ^k(M) B⁻¹` is in chamber form.
///
/// All-zero angles return `M` unchanged without any computation.
pub fn gt_torus_act(m: &SkewMatrix, group: GroupSpec, level: usize, angles: &[f64]) -> Result<SkewMatrix> {
    if m.size() != group.matrix_size() {
        return Err(OrbitError::InvalidInput(format!(
            "matrix of size {} does not belong to {group}",
            m.size()
        )));
    }
    if level < 2 || level > m.size() {
        return Err(OrbitError::InvalidInput(format!(
            "level {level} is outside 2..={}",
            m.size()
        )));
    }
    if angles.len() != level / 2 {
        return Err(OrbitError::InvalidInput(format!(
            "level {level} takes {} angles, got {}",
            level / 2,
            angles.len()
        )));
    }
    if angles.iter().all(|a| *a == 0.0) {
        return Ok(m.clone());
    }
    let sub = principal_submatrix(m, level)?;
    let spectrum = spectrum_to_chamber(&sub)?;
    check_interior(level, &spectrum.values)?;
    let q = canonical_frame(&sub, &spectrum.values)?;
    let local = &q * torus_element(angles, level) * q.transpose();
    let mut g = DMatrix::identity(m.size(), m.size());
    g.view_mut((0, 0), (level, level)).copy_from(&local);
    Ok(m.conjugate(&g))
}

/// The level spectrum must lie in the open chamber: distinct magnitudes, and a
/// nonzero last value for odd levels.
fn check_interior(level: usize, values: &[f64]) -> Result<()> {
    let scale = values.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    let tol = INTERIOR_TOL * (1.0 + scale);
    let k = values.len();
    for j in 0..k.saturating_sub(1) {
        let gap = if j + 2 == k && level.is_multiple_of(2) {
            values[j] - values[j + 1].abs()
        } else {
            values[j] - values[j + 1]
        };
        if gap <= tol {
            return Err(OrbitError::Boundary {
                level,
                message: format!("values {} and {} coincide", j + 1, j + 2),
            });
        }
    }
    if level % 2 == 1 && k > 0 && values[k - 1].abs() <= tol {
        return Err(OrbitError::Boundary {
            level,
            message: format!("value {k} vanishes"),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt_pattern::pattern_of_lambda;
    use crate::orbit_matrix::{embed_lambda, embed_values};
    use crate::root_system::WeylPoint;

    #[test]
    fn gt_of_canonical_form_is_the_vertex() {
        let lam = WeylPoint::new(GroupSpec::b(2), vec![6.0, 1.0]).unwrap();
        let p = gt_map(&embed_lambda(&lam), lam.group()).unwrap();
        assert!(p.max_abs_diff(&pattern_of_lambda(&lam)).unwrap() < 1e-12);
        let b1 = WeylPoint::new(GroupSpec::b(1), vec![2.0]).unwrap();
        let p = gt_map(&embed_lambda(&b1), b1.group()).unwrap();
        assert_eq!(p.coordinates(), vec![2.0]);
        assert!(gt_map(&embed_values(&[1.0], 4), GroupSpec::b(2)).is_err());
    }

    #[test]
    fn torus_action_fixes_the_vertex() {
        let lam = WeylPoint::new(GroupSpec::b(2), vec![6.0, 1.0]).unwrap();
        let m = embed_lambda(&lam);
        let out = gt_torus_act(&m, lam.group(), 4, &[0.3, -1.2]).unwrap();
        assert!((out.matrix() - m.matrix()).amax() < 1e-10);
        assert_eq!(gt_torus_act(&m, lam.group(), 3, &[0.0]).unwrap(), m);
        assert!(gt_torus_act(&m, lam.group(), 3, &[0.0, 1.0]).is_err());
    }

    #[test]
    fn boundary_levels_are_rejected() {
        let m = embed_values(&[2.0, 2.0], 5);
        assert!(matches!(
            gt_torus_act(&m, GroupSpec::b(2), 4, &[0.5, 0.5]),
            Err(OrbitError::Boundary { level: 4, .. })
        ));
    }
}
