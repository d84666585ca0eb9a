use serde::Serialize;

use super::arrow::arrow_matrix_solve;
use super::cauchy::{solve_cauchy_weights, weakly_geq};
use crate::error::{OrbitError, Result};
use crate::orbit_matrix::{chamber_char_poly, char_poly, charpoly_residual, embed_values, pfaffian, SkewMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    /// `k` inner values `a`, `k` outer values `b`: size `2k` to `2k+1`.
    OddExtension,
    /// `k-1` inner values `b`, `k` outer values `a`: size `2k-1` to `2k`.
    EvenExtension,
}

/// Spectra of two consecutive levels: `inner` is the chamber spectrum of the
/// smaller matrix, `outer` the one its bordered extension must have.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterlacingPair {
    pub outer: Vec<f64>,
    pub inner: Vec<f64>,
    pub parity: Parity,
}

impl InterlacingPair {
    /// `b_1 ≥ a_1 ≥ b_2 ≥ ... ≥ b_k ≥ |a_k|`
    pub fn odd(inner: Vec<f64>, outer: Vec<f64>) -> Result<Self> {
        if inner.is_empty() || inner.len() != outer.len() {
            return Err(OrbitError::InvalidInput(format!(
                "odd extension needs k inner and k outer values, got {} and {}",
                inner.len(),
                outer.len()
            )));
        }
        Ok(Self {
            outer,
            inner,
            parity: Parity::OddExtension,
        })
    }

    /// `a_1 ≥ b_1 ≥ a_2 ≥ ... ≥ b_{k-1} ≥ |a_k|`
    pub fn even(inner: Vec<f64>, outer: Vec<f64>) -> Result<Self> {
        if outer.is_empty() || inner.len() + 1 != outer.len() {
            return Err(OrbitError::InvalidInput(format!(
                "even extension needs k-1 inner and k outer values, got {} and {}",
                inner.len(),
                outer.len()
            )));
        }
        Ok(Self {
            outer,
            inner,
            parity: Parity::EvenExtension,
        })
    }

    pub fn inner_size(&self) -> usize {
        match self.parity {
            Parity::OddExtension => 2 * self.inner.len(),
            Parity::EvenExtension => 2 * self.inner.len() + 1,
        }
    }

    /// The interlacing chain with its last link against an absolute value.
    pub fn check(&self, tol: f64) -> Result<()> {
        let (first, second) = (&self.outer, &self.inner);
        let mut chain = Vec::with_capacity(first.len() + second.len());
        for i in 0..first.len() {
            chain.push(first[i]);
            if i < second.len() {
                chain.push(second[i]);
            }
        }
        let last = chain.len() - 1;
        chain[last] = chain[last].abs();
        for (i, w) in chain.windows(2).enumerate() {
            if !weakly_geq(&w[0], &w[1], &tol) {
                return Err(OrbitError::NoSolution(format!(
                    "values do not interlace at link {}: {} < {}",
                    i + 1,
                    w[0],
                    w[1]
                )));
            }
        }
        Ok(())
    }
}

/// A bordering vector `Y` and its circle decomposition. Only the norms
/// `w_l = y_{2l-1}² + y_{2l}²` (and, for even extensions, the last entry) are
/// determined; the angle on each circle is a free gauge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BorderSolution {
    pub y: Vec<f64>,
    pub circle_norms: Vec<f64>,
    /// The determined entry `y_{2k-1}` of an even extension.
    pub last: Option<f64>,
}

impl BorderSolution {
    /// `[[embed(inner), Y], [-Yᵀ, 0]]`
    pub fn assemble(&self, pair: &InterlacingPair) -> Result<SkewMatrix> {
        embed_values(&pair.inner, pair.inner_size()).bordered(&self.y)
    }

    /// Relative char-poly distance of the assembled matrix from the target spectrum.
    pub fn residual(&self, pair: &InterlacingPair) -> Result<f64> {
        let a = self.assemble(pair)?;
        Ok(charpoly_residual(
            &char_poly(&a),
            &chamber_char_poly(&pair.outer, a.size()),
        ))
    }
}

fn circle_point(norm: f64, angle: f64) -> (f64, f64) {
    let r = norm.max(0.0).sqrt();
    if angle == 0.0 {
        (r, 0.0)
    } else {
        let (s, c) = angle.sin_cos();
        (r * c, r * s)
    }
}

fn gauge_at(gauges: Option<&[f64]>, l: usize, circles: usize) -> Result<f64> {
    match gauges {
        None => Ok(0.0),
        Some(g) if g.len() == circles => Ok(g[l]),
        Some(g) => Err(OrbitError::InvalidInput(format!(
            "{} gauge angles given for {} circles",
            g.len(),
            circles
        ))),
    }
}

/// Circle weights of an odd extension in any scalar type: the Cauchy solve on
/// the squared spectra.
pub fn extend_odd_weights<T: Scalar>(inner: &[T], outer: &[T]) -> Result<Vec<T>> {
    let sq = |v: &[T]| v.iter().map(|x| x.clone() * x.clone()).collect::<Vec<T>>();
    solve_cauchy_weights(&sq(inner), &sq(outer))
}

/// Border for `diag(L(a_1), ..., L(a_k))` so that the `(2k+1)`-matrix has spectrum
/// `(b_1, ..., b_k)`. Default gauge puts each circle on its first coordinate.
pub fn extend_odd(pair: &InterlacingPair, gauges: Option<&[f64]>) -> Result<BorderSolution> {
    if pair.parity != Parity::OddExtension {
        return Err(OrbitError::InvalidInput("expected an odd extension".into()));
    }
    pair.check(f64::equality_tol())?;
    let w = extend_odd_weights(&pair.inner, &pair.outer)?;
    let mut y = Vec::with_capacity(2 * w.len());
    for (l, wl) in w.iter().enumerate() {
        let (c, s) = circle_point(*wl, gauge_at(gauges, l, w.len())?);
        y.push(c);
        y.push(s);
    }
    Ok(BorderSolution {
        y,
        circle_norms: w,
        last: None,
    })
}

/// Border for `diag(L(b_1), ..., L(b_{k-1}), 0)` so that the `2k`-matrix is
/// special-orthogonally conjugate to `diag(L(a_1), ..., L(a_k))`.
///
/// Norms come from the arrow solve on the doubled spectra
/// `ν = (b, 0, -b)` and `μ = (a_1, ..., |a_k|, -|a_k|, ..., -a_1)`; a real `Y` puts
/// half of each block's norm on `b_j` and half on `-b_j`. Of `Y` and `-Y` only one
/// has `Pf = Π(-a_j)`; the other lies in the reflected orbit.
pub fn extend_even(pair: &InterlacingPair, gauges: Option<&[f64]>) -> Result<BorderSolution> {
    if pair.parity != Parity::EvenExtension {
        return Err(OrbitError::InvalidInput("expected an even extension".into()));
    }
    pair.check(f64::equality_tol())?;
    let b = &pair.inner;
    let a = &pair.outer;
    let k = a.len();

    let mut nu: Vec<f64> = b.clone();
    nu.push(0.0);
    nu.extend(b.iter().rev().map(|v| -v));
    let mut mu: Vec<f64> = a.clone();
    mu[k - 1] = a[k - 1].abs();
    mu.extend(mu.clone().iter().rev().map(|v| -v));
    let arrow = arrow_matrix_solve(&nu, &mu)?;

    // b_j sits at position j-1 of ν, -b_j at 2k-1-j, the zero at k-1.
    let circles: Vec<f64> = (1..k)
        .map(|j| arrow.norms[j - 1] + arrow.norms[2 * k - 1 - j])
        .collect();
    let mut y = Vec::with_capacity(2 * k - 1);
    for (l, wl) in circles.iter().enumerate() {
        let (c, s) = circle_point(*wl, gauge_at(gauges, l, k - 1)?);
        y.push(c);
        y.push(s);
    }
    y.push(arrow.norms[k - 1].max(0.0).sqrt());

    let mut sol = BorderSolution {
        y,
        circle_norms: circles,
        last: None,
    };
    let scale = a.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    let target: f64 = a.iter().map(|v| -v).product();
    if a[k - 1].abs() > f64::equality_tol() * scale {
        let pf = pfaffian(&sol.assemble(pair)?)?;
        if pf.abs() < 1e-12 * scale.powi(k as i32) {
            return Err(OrbitError::Numeric {
                message: "Pfaffian too small to fix the sign of the border".into(),
                residual: pf.abs(),
            });
        }
        if (pf < 0.0) != (target < 0.0) {
            sol.y.iter_mut().for_each(|v| *v = -*v);
        }
    }
    sol.last = sol.y.last().copied();
    Ok(sol)
}
