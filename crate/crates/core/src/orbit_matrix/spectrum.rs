use serde::Serialize;

use super::{pfaffian, SkewMatrix};
use crate::error::{OrbitError, Result};

/// Relative slack for matching the two copies of each `a_j`.
const PAIRING_TOL: f64 = 1e-8;

/// Chamber representative of a skew matrix: `a_1 ≥ ... ≥ a_k`, with only `a_k`
/// allowed to be negative and only when the size is even.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChamberSpectrum {
    pub size: usize,
    pub values: Vec<f64>,
}

impl ChamberSpectrum {
    pub fn is_even(&self) -> bool {
        self.size.is_multiple_of(2)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }
}

/// `s_k`: the unique chamber point in the conjugation orbit of `M`.
///
/// The magnitudes are the singular values of `M`, which are the square roots of
/// the eigenvalues of the symmetric matrix `-M² = MᵀM`; every magnitude appears
/// twice (plus one zero for odd size). For even size the sign of the last value
/// is taken from the Pfaffian, `Pf(M) = Π (-a_j)`.
pub fn spectrum_to_chamber(m: &SkewMatrix) -> Result<ChamberSpectrum> {
    let size = m.size();
    let k = size / 2;
    if k == 0 {
        return Ok(ChamberSpectrum {
            size,
            values: Vec::new(),
        });
    }
    let svd = m.matrix().clone().svd(false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    let tol = PAIRING_TOL * (1.0 + s[0]);
    let mut worst: f64 = 0.0;
    let mut values = Vec::with_capacity(k);
    for j in 0..k {
        let (hi, lo) = (s[2 * j], s[2 * j + 1]);
        worst = worst.max(hi - lo);
        values.push(0.5 * (hi + lo));
    }
    if size % 2 == 1 {
        worst = worst.max(s[size - 1]);
    }
    if worst > tol {
        return Err(OrbitError::Numeric {
            message: "singular values do not come in equal pairs".into(),
            residual: worst,
        });
    }
    if size.is_multiple_of(2) {
        let pf = pfaffian(m)?;
        // Π (-a_j) must carry the sign of Pf(M).
        let parity = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        if parity * pf < 0.0 {
            values[k - 1] = -values[k - 1];
        }
    }
    Ok(ChamberSpectrum { size, values })
}
