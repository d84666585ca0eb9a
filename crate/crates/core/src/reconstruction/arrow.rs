use serde::Serialize;

use super::cauchy::{eliminate_matches, weakly_geq};
use crate::error::{OrbitError, Result};
use crate::scalar::Scalar;

/// Data of a Hermitian arrow matrix `[[diag(ν), x], [x*, x_tip]]` with prescribed
/// eigenvalues `μ`. Only the moduli `|x_i|` are determined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArrowSolution<T = f64> {
    /// `|x_i|²`
    pub norms: Vec<T>,
    pub tip: T,
}

/// Solves for the arrow data given `μ_1 ≥ ν_1 ≥ μ_2 ≥ ... ≥ ν_p ≥ μ_{p+1}`:
/// `|x_i|² = -Π_l (ν_i - μ_l) / Π_{l≠i} (ν_i - ν_l)` and `x_tip = Σμ - Σν`.
/// A `ν_i` equal to some `μ_l` forces `x_i = 0` and both drop out.
pub fn arrow_matrix_solve<T: Scalar>(nu: &[T], mu: &[T]) -> Result<ArrowSolution<T>> {
    arrow_matrix_solve_tol(nu, mu, &T::equality_tol())
}

pub fn arrow_matrix_solve_tol<T: Scalar>(nu: &[T], mu: &[T], tol: &T) -> Result<ArrowSolution<T>> {
    let p = nu.len();
    if mu.len() != p + 1 {
        return Err(OrbitError::InvalidInput(format!(
            "{} diagonal values need {} eigenvalues, got {}",
            p,
            p + 1,
            mu.len()
        )));
    }
    for i in 0..p {
        if !weakly_geq(&mu[i], &nu[i], tol) || !weakly_geq(&nu[i], &mu[i + 1], tol) {
            return Err(OrbitError::NoSolution(format!(
                "eigenvalues do not interlace the diagonal at position {}",
                i + 1
            )));
        }
    }
    let (vars, targets) = eliminate_matches(nu, mu, tol);
    let mut norms = vec![T::zero(); p];
    for &i in &vars {
        let v = &nu[i];
        let mut num = T::one();
        for &l in &targets {
            num = num * (v.clone() - mu[l].clone());
        }
        let mut den = T::one();
        for &l in vars.iter().filter(|&&l| l != i) {
            den = den * (v.clone() - nu[l].clone());
        }
        if den.is_zero() {
            return Err(OrbitError::Degenerate(format!(
                "repeated diagonal value at position {} without a matching eigenvalue",
                i + 1
            )));
        }
        norms[i] = -(num / den);
    }
    let tip = mu.iter().cloned().fold(T::zero(), |a, b| a + b)
        - nu.iter().cloned().fold(T::zero(), |a, b| a + b);
    Ok(ArrowSolution { norms, tip })
}
