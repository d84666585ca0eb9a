//! Independent oracles and random generators shared by the integration tests.
//! Nothing here calls into the crate's own solvers.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use orbitwidth::{Family, GroupSpec, Rational, WeylPoint};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `count` distinct integers from `lo..=hi`, descending.
pub fn distinct_desc<R: Rng>(rng: &mut R, count: usize, lo: i64, hi: i64) -> Vec<i64> {
    let span = (hi - lo + 1) as usize;
    let mut v: Vec<i64> = sample(rng, span, count).into_iter().map(|i| lo + i as i64).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Regular chamber point with rational coordinates.
pub fn random_regular_rational<R: Rng>(group: GroupSpec, rng: &mut R) -> WeylPoint<Rational> {
    let n = group.rank();
    let den = rng.random_range(1..=9);
    let coords = match group.family() {
        Family::B => distinct_desc(rng, n, 1, 80).into_iter().map(|v| q(v, den)).collect(),
        Family::D => {
            let mut v: Vec<Rational> = distinct_desc(rng, n, 0, 80).into_iter().map(|v| q(v, den)).collect();
            if rng.random_bool(0.5) {
                v[n - 1] = -v[n - 1].clone();
            }
            v
        }
    };
    WeylPoint::new(group, coords).unwrap()
}

/// Regular chamber point with consecutive gaps of at least `0.25`.
pub fn random_regular_f64<R: Rng>(group: GroupSpec, rng: &mut R) -> WeylPoint {
    let n = group.rank();
    let mut v: Vec<f64> = distinct_desc(rng, n, 1, 40).into_iter().map(|x| x as f64 * 0.25).collect();
    if group.family() == Family::D {
        v[n - 1] -= 0.25;
        if rng.random_bool(0.5) {
            v[n - 1] = -v[n - 1];
        }
    }
    let jitter = rng.random_range(0.0..0.05);
    let v = v.iter().map(|x| if *x == 0.0 { 0.0 } else { x + jitter }).collect();
    WeylPoint::new(group, v).unwrap()
}

/// Exactly one run of at least two equal values, everything else strictly
/// decreasing, with `λ_n > 0` for `B` and `λ_{n-1} > |λ_n|` for `D`.
pub fn random_single_block_rational<R: Rng>(group: GroupSpec, rng: &mut R) -> WeylPoint<Rational> {
    let n = group.rank();
    // D runs stay inside positions 1..n-1.
    let span = match group.family() {
        Family::B => n,
        Family::D => n - 1,
    };
    assert!(span >= 2, "no single-block points for {group:?}");
    let l = rng.random_range(2..=span);
    let s = rng.random_range(0..=span - l);
    let distinct = n - l + 1;
    let den = rng.random_range(1..=9);
    let lo = match group.family() {
        Family::B => 1,
        Family::D => 0,
    };
    let values = distinct_desc(rng, distinct, lo, 80);
    let mut coords = Vec::with_capacity(n);
    for (i, v) in values.iter().enumerate() {
        let reps = if i == s { l } else { 1 };
        for _ in 0..reps {
            coords.push(q(*v, den));
        }
    }
    if group.family() == Family::D && rng.random_bool(0.5) {
        coords[n - 1] = -coords[n - 1].clone();
    }
    WeylPoint::new(group, coords).unwrap()
}

/// `⟨α^∨, λ⟩` for every positive coroot, enumerated from the root data directly:
/// `λ_i ± λ_j` for both families and `2λ_i` (coroot of the short root `e_i`) for `B`.
pub fn all_coroot_values(family: Family, lambda: &[Rational]) -> Vec<Rational> {
    let n = lambda.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(&lambda[i] - &lambda[j]);
            out.push(&lambda[i] + &lambda[j]);
        }
        if family == Family::B {
            out.push(&lambda[i] * q(2, 1));
        }
    }
    out
}

pub fn min_positive(values: impl IntoIterator<Item = Rational>) -> Option<Rational> {
    values.into_iter().filter(|v| v.is_positive()).min()
}

/// Bound predicted by the non-regular formula, evaluated from scratch.
pub fn nonregular_formula(family: Family, lambda: &[Rational]) -> Rational {
    let pos = min_positive(all_coroot_values(family, lambda)).unwrap();
    match family {
        Family::B => pos,
        Family::D => {
            let last = lambda[lambda.len() - 1].abs() * q(2, 1);
            if !last.is_zero() && last < pos {
                last
            } else {
                pos
            }
        }
    }
}

/// Weights `w` with `Σ_l w_l / (A_l - B_i) = -1` for every `i`, by dense LU. This
/// is the polynomial identity `Π(s+A) + Σ w_l Π_{j≠l}(s+A_j) = Π(s+B)` evaluated
/// at `s = -B_i` and divided by `Π_j (A_j - B_i)`.
pub fn dense_cauchy_solve(a_sq: &[f64], b_sq: &[f64]) -> Vec<f64> {
    let k = a_sq.len();
    let c = DMatrix::from_fn(k, k, |i, l| 1.0 / (a_sq[l] - b_sq[i]));
    let rhs = DVector::from_element(k, -1.0);
    c.lu().solve(&rhs).expect("Cauchy matrix is invertible").iter().copied().collect()
}

/// Real symmetric arrow matrix `[[diag(ν), x], [xᵀ, tip]]`.
pub fn arrow_matrix(nu: &[f64], x: &[f64], tip: f64) -> DMatrix<f64> {
    let p = nu.len();
    let mut m = DMatrix::zeros(p + 1, p + 1);
    for i in 0..p {
        m[(i, i)] = nu[i];
        m[(i, p)] = x[i];
        m[(p, i)] = x[i];
    }
    m[(p, p)] = tip;
    m
}

pub fn sym_eigenvalues_desc(m: DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ev
}

/// Random skew matrix with standard normal entries.
pub fn random_skew<R: Rng>(rng: &mut R, size: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(size, size);
    for i in 0..size {
        for j in i + 1..size {
            let v: f64 = rng.sample(rand_distr::StandardNormal);
            m[(i, j)] = v;
            m[(j, i)] = -v;
        }
    }
    m
}
