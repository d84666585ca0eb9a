//! Gromov-width lower bounds.
//!
//! For a regular `λ` the bound is the smallest lattice length of an edge of the
//! GT polytope at `Λ(λ)`, which coincides with the smallest coroot pairing; both
//! are computed and compared on every call. For a single repeated block the edges
//! are read off at the vertex `Λ(η)` instead.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{OrbitError, Result};
use crate::gt_pattern::{enumerate_edges_at_lambda, pattern_of_lambda, EdgeDescriptor, GtPattern};
use crate::json::Num;
use crate::orbit_matrix::{embed_values, gt_map, SkewMatrix};
use crate::root_system::{
    chamber_classify, min_coroot_pairing, ChamberClass, Coroot, Family, GroupSpec, Root, WeylPoint,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundMode {
    #[serde(rename = "regular")]
    Regular,
    #[serde(rename = "nonregular_B")]
    NonregularB,
    #[serde(rename = "nonregular_D")]
    NonregularD,
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMode::Regular => "regular",
            BoundMode::NonregularB => "nonregular_B",
            BoundMode::NonregularD => "nonregular_D",
        })
    }
}

#[derive(Debug, Clone)]
pub struct BoundReport<T = f64> {
    pub lambda: WeylPoint<T>,
    pub bound: T,
    /// A coroot attaining the bound; `None` when only the `2|λ_n|` term does.
    pub witness_coroot: Option<Coroot>,
    /// The shortest edge at `Λ(λ)` (regular mode only).
    pub witness_edge: Option<EdgeDescriptor<T>>,
    pub mode: BoundMode,
    pub center_vertex: GtPattern<f64>,
    /// Lattice lengths of the edges at `Λ(η)` (non-regular modes only).
    pub eta_edge_lengths: Vec<T>,
}

impl<T: Scalar> BoundReport<T> {
    pub fn group(&self) -> GroupSpec {
        self.lambda.group()
    }

    /// Capacity of the embedded ball, equal to the bound.
    pub fn capacity(&self) -> &T {
        &self.bound
    }

    /// Real dimension of the orbit: `2N` for `N` GT coordinates, minus `l(l-1)`
    /// for a repeated block of length `l`.
    pub fn ball_dimension(&self) -> usize {
        let full = 2 * self.group().gt_dimension();
        match chamber_classify(&self.lambda) {
            ChamberClass::NonregularSingleBlock { l, .. } => full - l * (l - 1),
            _ => full,
        }
    }

    /// JSON with the fields `family`, `rank`, `lambda`, `bound`, `witness_coroot`,
    /// `witness_edge` and `mode`, plus the vertex and capacity data. Exact
    /// scalars also appear as strings in `*_exact` fields.
    pub fn to_json(&self) -> Value {
        let exact = T::equality_tol().is_zero();
        let lam: Vec<f64> = self.lambda.coords().iter().map(Scalar::to_f64).collect();
        let mut out = json!({
            "family": self.group().family(),
            "rank": self.group().rank(),
            "lambda": lam.iter().copied().map(Num).collect::<Vec<_>>(),
            "bound": Num(self.bound.to_f64()),
            "witness_coroot": self.witness_coroot.map(|c| c.to_string()),
            "witness_edge": self.witness_edge.as_ref().map(EdgeDescriptor::to_json),
            "mode": self.mode,
            "capacity": Num(self.capacity().to_f64()),
            "ball_dimension": self.ball_dimension(),
            "center_vertex": self.center_vertex,
        });
        if self.witness_coroot.is_none() {
            out["witness_term"] = json!("2|l_n|");
        }
        if !self.eta_edge_lengths.is_empty() {
            out["eta_edge_lengths"] =
                json!(self.eta_edge_lengths.iter().map(|v| Num(v.to_f64())).collect::<Vec<_>>());
        }
        if exact {
            out["bound_exact"] = json!(self.bound.to_string());
            out["lambda_exact"] = json!(self.lambda.coords().iter().map(|v| v.to_string()).collect::<Vec<_>>());
            if let Some(e) = &self.witness_edge {
                out["witness_edge"]["lattice_length_exact"] = json!(e.lattice_length.to_string());
            }
        }
        out
    }
}

fn describe<T: Scalar>(lambda: &WeylPoint<T>) -> String {
    let parts: Vec<String> = lambda.coords().iter().map(|v| v.to_string()).collect();
    format!("({}) for {}", parts.join(", "), lambda.group())
}

/// The regular bound: the minimum edge lattice length at `Λ(λ)`, cross-checked
/// against the minimum coroot pairing.
pub fn gromov_width_lower_bound<T: Scalar>(lambda: &WeylPoint<T>) -> Result<BoundReport<T>> {
    match chamber_classify(lambda) {
        ChamberClass::Regular => {}
        ChamberClass::NonregularSingleBlock { .. } => {
            return Err(OrbitError::NonRegular(describe(lambda)));
        }
        ChamberClass::OutsideScope => {
            return Err(OrbitError::Chamber(describe(lambda)));
        }
    }
    let edges = enumerate_edges_at_lambda(lambda)?;
    let mut shortest = &edges[0];
    for e in &edges[1..] {
        if e.lattice_length < shortest.lattice_length {
            shortest = e;
        }
    }
    let (coroot, value) = min_coroot_pairing(lambda.group(), lambda, false)?;
    if value != shortest.lattice_length {
        return Err(OrbitError::Numeric {
            message: format!(
                "edge minimum {} ({}) differs from coroot minimum {} ({})",
                shortest.lattice_length,
                shortest.label(),
                value,
                coroot
            ),
            residual: (value - shortest.lattice_length.clone()).abs().to_f64(),
        });
    }
    Ok(BoundReport {
        lambda: lambda.clone(),
        bound: value,
        witness_coroot: Some(coroot),
        witness_edge: Some(shortest.clone()),
        mode: BoundMode::Regular,
        center_vertex: pattern_of_lambda(lambda).to_f64(),
        eta_edge_lengths: Vec::new(),
    })
}

/// The values of `η`: the distinct entries of `λ` in order, then `l - 1` more
/// copies of the repeated value.
pub fn eta_values<T: Scalar>(lambda: &WeylPoint<T>) -> Vec<T> {
    let x = lambda.coords();
    match chamber_classify(lambda) {
        ChamberClass::NonregularSingleBlock { s, l } => {
            let mut v: Vec<T> = x[..s].to_vec();
            v.extend_from_slice(&x[s + l - 1..]);
            v.extend(std::iter::repeat_n(x[s - 1].clone(), l - 1));
            v
        }
        _ => x.to_vec(),
    }
}

/// `Λ(η)` read off combinatorially: level `m` holds the first `⌊m/2⌋` values of
/// `η` ordered by magnitude, with the sign of their product on the last entry
/// when `m` is even.
pub fn eta_pattern<T: Scalar>(lambda: &WeylPoint<T>) -> Result<GtPattern<T>> {
    let group = lambda.group();
    let eta = eta_values(lambda);
    let mut rows = std::collections::BTreeMap::new();
    for m in group.pattern_levels().chain(std::iter::once(group.matrix_size())) {
        let k = m / 2;
        let mut row: Vec<T> = eta[..k].iter().map(|v| v.abs()).collect();
        row.sort_by(|a, b| b.partial_cmp(a).expect("comparable values"));
        if m % 2 == 0 && k > 0 && eta[..k].iter().filter(|v| **v < T::zero()).count() % 2 == 1 {
            row[k - 1] = -row[k - 1].clone();
        }
        rows.insert(m, row);
    }
    let top = rows.remove(&group.matrix_size()).expect("top row present");
    GtPattern::new(group, top, rows)
}

/// The matrix `η` and its GT pattern `Λ(η)`, a vertex of the polytope. For a
/// regular `λ` this is `embed(λ)` and `Λ(λ)`.
pub fn eta_vertex(lambda: &WeylPoint) -> Result<(SkewMatrix, GtPattern)> {
    let group = lambda.group();
    let eta = embed_values(&eta_values(lambda), group.matrix_size());
    let pattern = gt_map(&eta, group)?;
    let expected = eta_pattern(lambda)?;
    let scale = lambda.coords().iter().fold(1.0f64, |s, v| s.max(v.abs()));
    let diff = pattern.max_abs_diff(&expected).unwrap_or(f64::INFINITY);
    if diff > 1e-9 * scale {
        return Err(OrbitError::Numeric {
            message: "GT pattern of η differs from its combinatorial form".into(),
            residual: diff,
        });
    }
    Ok((eta, pattern))
}

/// Lattice lengths of the edges at `Λ(η)`: the gaps between consecutive distinct
/// values of `λ` (the last against `|λ_n|` for `D`) and `2λ_j` for every `j`
/// (`2|λ_n|` for `D`).
pub fn eta_edge_lengths<T: Scalar>(lambda: &WeylPoint<T>) -> Vec<T> {
    let x = lambda.coords();
    let n = x.len();
    let d = lambda.group().family() == Family::D;
    let mut out = Vec::new();
    for j in 0..n.saturating_sub(1) {
        let next = if d && j + 2 == n { x[j + 1].abs() } else { x[j + 1].clone() };
        let gap = x[j].clone() - next;
        if !gap.is_zero() {
            out.push(gap);
        }
    }
    for (j, v) in x.iter().enumerate() {
        let v = if d && j + 1 == n { v.abs() } else { v.clone() };
        out.push(T::two() * v);
    }
    out
}

/// The bound for a single repeated block: `min` over strictly positive coroot
/// pairings for `B`, and `min{2|λ_n|, that minimum}` for `D`. A vanishing
/// `2|λ_n|` is not an edge length and is left out.
pub fn nonregular_bound<T: Scalar>(lambda: &WeylPoint<T>) -> Result<BoundReport<T>> {
    let group = lambda.group();
    match chamber_classify(lambda) {
        ChamberClass::NonregularSingleBlock { .. } => {}
        ChamberClass::Regular => {
            return Err(OrbitError::Unsupported(format!(
                "{} is regular; use the regular bound",
                describe(lambda)
            )));
        }
        ChamberClass::OutsideScope => {
            return Err(OrbitError::Unsupported(format!(
                "{} has more than one repeated block or leaves the chamber",
                describe(lambda)
            )));
        }
    }
    let (coroot, positive_min) = min_coroot_pairing(group, lambda, true)?;
    let (bound, witness, mode) = match group.family() {
        Family::B => (positive_min, Some(coroot), BoundMode::NonregularB),
        Family::D => {
            let last = T::two() * lambda.coords()[group.rank() - 1].abs();
            if last > T::zero() && last < positive_min {
                (last, None, BoundMode::NonregularD)
            } else {
                (positive_min, Some(coroot), BoundMode::NonregularD)
            }
        }
    };
    let lengths: Vec<T> = eta_edge_lengths(lambda)
        .into_iter()
        .filter(|v| *v > T::zero())
        .collect();
    let edge_min = lengths.iter().cloned().reduce(T::min_of);
    if edge_min.as_ref() != Some(&bound) {
        return Err(OrbitError::Numeric {
            message: format!("η-edge minimum differs from the coroot formula {bound}"),
            residual: edge_min.map_or(f64::INFINITY, |m| (m - bound.clone()).abs().to_f64()),
        });
    }
    Ok(BoundReport {
        lambda: lambda.clone(),
        bound,
        witness_coroot: witness,
        witness_edge: None,
        mode,
        center_vertex: eta_pattern(lambda)?.to_f64(),
        eta_edge_lengths: lengths,
    })
}

/// Dispatches on the chamber class.
pub fn bound<T: Scalar>(lambda: &WeylPoint<T>) -> Result<BoundReport<T>> {
    match chamber_classify(lambda) {
        ChamberClass::Regular => gromov_width_lower_bound(lambda),
        ChamberClass::NonregularSingleBlock { .. } => nonregular_bound(lambda),
        ChamberClass::OutsideScope => Err(OrbitError::Chamber(describe(lambda))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    StandardWeaker,
    NoIntersection,
}

/// Where the edge `p + tα` of the standard torus picture meets the reflected edge
/// from `σ_β(p)`, compared with the coroot pairing `⟨β^∨, p⟩`.
#[derive(Debug, Clone)]
pub struct CenteredComparison<T = f64> {
    pub p: WeylPoint<T>,
    pub alpha: Root,
    pub beta: Root,
    /// `|⟨β, p⟩ / ⟨β, α⟩|`; absent when the edges do not meet.
    pub t_cut: Option<T>,
    /// `|2⟨β, p⟩ / ⟨β, β⟩|`
    pub coroot_bound: T,
    pub conclusion: Conclusion,
}

impl<T: Scalar> CenteredComparison<T> {
    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "family": self.p.group().family(),
            "rank": self.p.group().rank(),
            "p": self.p.coords().iter().map(|v| Num(v.to_f64())).collect::<Vec<_>>(),
            "alpha": self.alpha.to_string(),
            "beta": self.beta.to_string(),
            "t_cut": self.t_cut.as_ref().map(|t| Num(t.to_f64())),
            "coroot_bound": Num(self.coroot_bound.to_f64()),
            "conclusion": self.conclusion,
        });
        if T::equality_tol().is_zero() {
            out["t_cut_exact"] = json!(self.t_cut.as_ref().map(|t| t.to_string()));
            out["coroot_bound_exact"] = json!(self.coroot_bound.to_string());
        }
        out
    }
}

/// Requires `‖α‖ > ‖β‖` and a regular `p`.
pub fn standard_torus_comparison<T: Scalar>(
    p: &WeylPoint<T>,
    alpha: &Root,
    beta: &Root,
) -> Result<CenteredComparison<T>> {
    let group = p.group();
    for (name, r) in [("alpha", alpha), ("beta", beta)] {
        if !r.is_root_of(group) {
            return Err(OrbitError::InvalidInput(format!("{name} = {r} is not a root of {group}")));
        }
    }
    match chamber_classify(p) {
        ChamberClass::Regular => {}
        _ => return Err(OrbitError::Chamber(format!("p = {} must be regular", describe(p)))),
    }
    if alpha.norm_sq() <= beta.norm_sq() {
        return Err(OrbitError::Unsupported(format!(
            "needs |alpha| > |beta|, got |{alpha}|² = {} and |{beta}|² = {}",
            alpha.norm_sq(),
            beta.norm_sq()
        )));
    }
    let bp = beta.dot_point(p.coords());
    let bb = T::from_i64(beta.norm_sq());
    let coroot_bound = (T::two() * bp.clone() / bb).abs();
    let ba = beta.dot(alpha);
    if ba == 0 {
        return Ok(CenteredComparison {
            p: p.clone(),
            alpha: alpha.clone(),
            beta: beta.clone(),
            t_cut: None,
            coroot_bound,
            conclusion: Conclusion::NoIntersection,
        });
    }
    let t_cut = (bp / T::from_i64(ba)).abs();
    if t_cut >= coroot_bound {
        return Err(OrbitError::Numeric {
            message: format!("cut length {t_cut} is not below the coroot bound {coroot_bound}"),
            residual: (t_cut - coroot_bound).to_f64(),
        });
    }
    Ok(CenteredComparison {
        p: p.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        t_cut: Some(t_cut),
        coroot_bound,
        conclusion: Conclusion::StandardWeaker,
    })
}
