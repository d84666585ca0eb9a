//! Brute-force checks of the constructive machinery on random orbit points.
//!
//! Trial `i` of a run with seed `s` uses seed `s + i`, so a report depends only on
//! `(λ, trials, seed)` and never on how trials are scheduled.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{OrbitError, Result};
use crate::exec::{map_trials, Execution};
use crate::gt_pattern::{validate_pattern, GtPattern};
use crate::json::serialize_num;
use crate::orbit_matrix::{char_poly, charpoly_residual, embed_lambda, gt_map, SkewMatrix};
use crate::reconstruction::build_orbit_point;
use crate::root_system::{is_regular, WeylPoint};

/// Default charpoly tolerance for round trips (relative, see [`charpoly_residual`]).
pub const CHARPOLY_TOLERANCE: f64 = 1e-9;

/// Default coordinatewise tolerance for round trips.
pub const ROUNDTRIP_TOLERANCE: f64 = 1e-7;

/// `1e-8 · (1 + max|λ|)`
pub fn interlacing_tolerance(lambda: &WeylPoint) -> f64 {
    1e-8 * (1.0 + lambda.coords().iter().fold(0.0f64, |a, x| a.max(x.abs())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    Interlacing,
    Roundtrip,
    Charpoly,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub kind: FailureKind,
    /// Infinite when the trial raised an error.
    #[serde(serialize_with = "serialize_num")]
    pub residual: f64,
    pub payload: Value,
}

/// Outcome of a verification run. `failures` is empty exactly when
/// `max_residual ≤ tolerance_used` and `max_charpoly_residual ≤ charpoly_tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub trials: usize,
    pub failures: Vec<Failure>,
    #[serde(serialize_with = "serialize_num")]
    pub max_residual: f64,
    #[serde(serialize_with = "serialize_num")]
    pub tolerance_used: f64,
    #[serde(serialize_with = "serialize_num")]
    pub max_charpoly_residual: f64,
    #[serde(serialize_with = "serialize_num")]
    pub charpoly_tolerance: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Haar-distributed element of `SO(m)`: QR of a seeded Gaussian matrix, columns
/// signed by `diag(R)`, last column flipped when the determinant is `-1`.
pub fn random_special_orthogonal(m: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::<f64>::from_fn(m, m, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..m {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if m > 0 && q.determinant() < 0.0 {
        q.column_mut(m - 1).neg_mut();
    }
    q
}

/// `Q · embed(λ) · Qᵀ` with `Q = random_special_orthogonal(size, seed)`.
pub fn random_orbit_point(lambda: &WeylPoint, seed: u64) -> SkewMatrix {
    let m = embed_lambda(lambda);
    m.conjugate(&random_special_orthogonal(m.size(), seed))
}

/// A valid pattern under `λ`, each coordinate uniform in its interval given the
/// level above (top-down). Not uniform over the polytope.
pub fn sample_valid_pattern<R: Rng + ?Sized>(lambda: &WeylPoint, rng: &mut R) -> GtPattern {
    let group = lambda.group();
    let mut rows = BTreeMap::new();
    let mut upper = lambda.coords().to_vec();
    for level in (2..group.matrix_size()).rev() {
        let len = level / 2;
        let k = upper.len();
        let mut row = Vec::with_capacity(len);
        for j in 0..len {
            let (lo, hi) = if j + 1 < len {
                (upper[j + 1], upper[j])
            } else if level % 2 == 0 {
                // Odd level above: last value sits in [-u_k, u_k].
                (-upper[k - 1], upper[k - 1])
            } else {
                // Even level above: last value sits in [|u_k|, u_{k-1}].
                (upper[k - 1].abs(), upper[k - 2])
            };
            let hi = hi.max(lo);
            row.push(lo + (hi - lo) * rng.random::<f64>());
        }
        rows.insert(level, row.clone());
        upper = row;
    }
    GtPattern::new(group, lambda.coords().to_vec(), rows).expect("sampled shape")
}

fn max_violation(p: &GtPattern) -> Result<f64> {
    Ok(validate_pattern(p, &0.0)?
        .iter()
        .map(|v| v.amount)
        .fold(0.0, f64::max))
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(OrbitError::InvalidInput("trials must be at least 1".into()));
    }
    Ok(())
}

fn error_failure(seed: u64, e: &OrbitError) -> Failure {
    Failure {
        seed,
        kind: FailureKind::Error,
        residual: f64::INFINITY,
        payload: json!({ "error": e.to_string() }),
    }
}

struct Trial {
    residual: f64,
    charpoly: f64,
    failures: Vec<Failure>,
}

fn aggregate(trials: Vec<Trial>, tol: f64, charpoly_tol: f64) -> VerifyReport {
    let mut report = VerifyReport {
        trials: trials.len(),
        failures: Vec::new(),
        max_residual: 0.0,
        tolerance_used: tol,
        max_charpoly_residual: 0.0,
        charpoly_tolerance: charpoly_tol,
    };
    for t in trials {
        report.max_residual = report.max_residual.max(t.residual);
        report.max_charpoly_residual = report.max_charpoly_residual.max(t.charpoly);
        report.failures.extend(t.failures);
    }
    report
}

pub fn verify_interlacing(lambda: &WeylPoint, trials: usize, seed: u64) -> Result<VerifyReport> {
    verify_interlacing_with(lambda, trials, seed, Execution::default(), None)
}

/// GT values of random orbit points checked against the interlacing
/// inequalities. Weak inequalities, so boundary `λ` are allowed.
pub fn verify_interlacing_with(
    lambda: &WeylPoint,
    trials: usize,
    seed: u64,
    exec: Execution,
    tol: Option<f64>,
) -> Result<VerifyReport> {
    check_trials(trials)?;
    let tol = tol.unwrap_or_else(|| interlacing_tolerance(lambda));
    let group = lambda.group();
    let target = char_poly(&embed_lambda(lambda));
    let results = map_trials(trials, exec, |i| {
        let s = seed.wrapping_add(i as u64);
        let m = random_orbit_point(lambda, s);
        let charpoly = charpoly_residual(&char_poly(&m), &target);
        let residual = gt_map(&m, group).and_then(|p| Ok((max_violation(&p)?, p)));
        match residual {
            Ok((r, p)) => {
                let failures = if r > tol {
                    vec![Failure {
                        seed: s,
                        kind: FailureKind::Interlacing,
                        residual: r,
                        payload: json!({ "pattern": p }),
                    }]
                } else {
                    Vec::new()
                };
                Trial { residual: r, charpoly, failures }
            }
            Err(e) => Trial {
                residual: f64::INFINITY,
                charpoly,
                failures: vec![error_failure(s, &e)],
            },
        }
    });
    let mut report = aggregate(results, tol, CHARPOLY_TOLERANCE);
    if report.max_charpoly_residual > CHARPOLY_TOLERANCE {
        report.failures.push(Failure {
            seed,
            kind: FailureKind::Charpoly,
            residual: report.max_charpoly_residual,
            payload: json!({ "message": "sampled point left the orbit" }),
        });
    }
    Ok(report)
}

pub fn verify_roundtrip(lambda: &WeylPoint, trials: usize, seed: u64) -> Result<VerifyReport> {
    verify_roundtrip_with(lambda, trials, seed, Execution::default(), None)
}

/// Random valid pattern → `build_orbit_point` → `gt_map`, compared coordinatewise,
/// plus the characteristic polynomial of the result against `embed(λ)`.
pub fn verify_roundtrip_with(
    lambda: &WeylPoint,
    trials: usize,
    seed: u64,
    exec: Execution,
    tol: Option<f64>,
) -> Result<VerifyReport> {
    check_trials(trials)?;
    if !is_regular(lambda) {
        return Err(OrbitError::NonRegular(format!("{:?}", lambda.coords())));
    }
    let tol = tol.unwrap_or(ROUNDTRIP_TOLERANCE);
    let group = lambda.group();
    let target = char_poly(&embed_lambda(lambda));
    let results = map_trials(trials, exec, |i| {
        let s = seed.wrapping_add(i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let p = sample_valid_pattern(lambda, &mut rng);
        let built = build_orbit_point(lambda, &p, None).and_then(|m| {
            let back = gt_map(&m, group)?;
            Ok((m, back))
        });
        let (m, back) = match built {
            Ok(v) => v,
            Err(e) => {
                let mut f = error_failure(s, &e);
                f.payload["pattern"] = json!(p);
                return Trial {
                    residual: f64::INFINITY,
                    charpoly: f64::INFINITY,
                    failures: vec![f],
                };
            }
        };
        let residual = back.max_abs_diff(&p).unwrap_or(f64::INFINITY);
        let charpoly = charpoly_residual(&char_poly(&m), &target);
        let mut failures = Vec::new();
        if residual.is_nan() || residual > tol {
            failures.push(Failure {
                seed: s,
                kind: FailureKind::Roundtrip,
                residual,
                payload: json!({ "pattern": p, "recovered": back }),
            });
        }
        if charpoly.is_nan() || charpoly > CHARPOLY_TOLERANCE {
            failures.push(Failure {
                seed: s,
                kind: FailureKind::Charpoly,
                residual: charpoly,
                payload: json!({ "pattern": p }),
            });
        }
        Trial { residual, charpoly, failures }
    });
    Ok(aggregate(results, tol, CHARPOLY_TOLERANCE))
}
