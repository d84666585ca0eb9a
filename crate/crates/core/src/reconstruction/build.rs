use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::Serialize;

use super::extend::{extend_even, extend_odd, InterlacingPair};
use crate::error::{OrbitError, Result};
use crate::gt_pattern::{validate_pattern, GtPattern};
use crate::json::serialize_num;
use crate::orbit_matrix::{
    canonical_frame, chamber_char_poly, char_poly, charpoly_residual, SkewMatrix,
};
use crate::root_system::WeylPoint;

/// Largest per-level char-poly residual accepted before the build is abandoned.
pub const BUILD_TOLERANCE: f64 = 1e-7;

/// Circle angles (radians) for the border created at each level, keyed by level.
/// Level `m` has `⌊(m-1)/2⌋` circles.
pub type Gauges = BTreeMap<usize, Vec<f64>>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaugeEntry {
    pub level: usize,
    pub angles: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionReport {
    pub pattern: GtPattern<f64>,
    pub matrix: SkewMatrix,
    #[serde(serialize_with = "serialize_num")]
    pub charpoly_residual: f64,
    pub per_level_residuals: Vec<f64>,
    pub gauges: Vec<GaugeEntry>,
}

/// An orbit point with GT pattern `p`; see [`reconstruct`].
pub fn build_orbit_point(lambda: &WeylPoint, p: &GtPattern, gauges: Option<&Gauges>) -> Result<SkewMatrix> {
    reconstruct(lambda, p, gauges, 0.0).map(|r| r.matrix)
}

/// Builds `M` level by level. With `M_{m-1} = Q C Qᵀ` (`C` the chamber form of
/// level `m-1`), a border `Y` for `C` with spectrum `x^{(m)}` is solved in the
/// canonical frame and carried back as `Z = Q Y`, giving
/// `M_m = [[M_{m-1}, Z], [-Zᵀ, 0]]`. Odd levels use the Cauchy weights, even
/// levels the arrow solve with the Pfaffian sign fix.
///
/// `tol` is the slack used when validating the pattern first. Gauges are applied
/// to each new border, innermost level first.
pub fn reconstruct(
    lambda: &WeylPoint,
    p: &GtPattern,
    gauges: Option<&Gauges>,
    tol: f64,
) -> Result<ReconstructionReport> {
    let group = lambda.group();
    if p.group() != group || p.lambda() != lambda.coords() {
        return Err(OrbitError::InvalidInput(
            "pattern top row does not match λ".into(),
        ));
    }
    let violations = validate_pattern(p, &tol)?;
    if let Some(v) = violations.first() {
        return Err(OrbitError::InvalidInput(format!(
            "pattern is not in the GT polytope: {v}"
        )));
    }
    if let Some(g) = gauges {
        for (level, angles) in g {
            if *level < 2 || *level > group.matrix_size() || angles.len() != (level - 1) / 2 {
                return Err(OrbitError::InvalidInput(format!(
                    "level {level} takes {} gauge angles",
                    level.saturating_sub(1) / 2
                )));
            }
        }
    }

    let top = group.matrix_size();
    let mut m = SkewMatrix::zeros(1);
    let mut q = DMatrix::<f64>::identity(1, 1);
    let mut inner: Vec<f64> = Vec::new();
    let mut per_level = Vec::with_capacity(top - 1);
    for level in 2..=top {
        let outer = p.row(level).expect("shape checked").to_vec();
        let angles = gauges.and_then(|g| g.get(&level)).map(Vec::as_slice);
        let (pair, border) = if level % 2 == 0 {
            let pair = InterlacingPair::even(inner.clone(), outer.clone())?;
            let b = extend_even(&pair, angles)?;
            (pair, b)
        } else {
            let pair = InterlacingPair::odd(inner.clone(), outer.clone())?;
            let b = extend_odd(&pair, angles)?;
            (pair, b)
        };
        let y = nalgebra::DVector::from_column_slice(&border.y);
        let z = &q * &y;
        m = m.bordered(z.as_slice())?;

        let residual = charpoly_residual(&char_poly(&m), &chamber_char_poly(&outer, level));
        per_level.push(residual);
        if residual > BUILD_TOLERANCE || !residual.is_finite() {
            return Err(OrbitError::Reconstruction { per_level });
        }
        if level < top {
            let local = border.assemble(&pair)?;
            let f = canonical_frame(&local, &outer)?;
            let mut g = DMatrix::<f64>::identity(level, level);
            g.view_mut((0, 0), (level - 1, level - 1)).copy_from(&q);
            q = g * f;
        }
        inner = outer;
    }
    debug_assert_eq!(m.size(), top);

    let gauges = gauges
        .map(|g| {
            g.iter()
                .map(|(level, angles)| GaugeEntry {
                    level: *level,
                    angles: angles.clone(),
                })
                .collect()
        })
        .unwrap_or_default();
    Ok(ReconstructionReport {
        pattern: p.clone(),
        matrix: m,
        charpoly_residual: *per_level.last().unwrap_or(&0.0),
        per_level_residuals: per_level,
        gauges,
    })
}
