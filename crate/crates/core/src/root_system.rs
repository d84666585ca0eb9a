//! Root and coroot combinatorics for types `B_n` (`SO(2n+1)`) and `D_n` (`SO(2n)`).
//!
//! The torus dual is identified with `R^n` so that the block-diagonal matrix
//! `diag(L(a_1), ..., L(a_n) [, 0])` is the vector `(a_1, ..., a_n)`. With that
//! identification the pairing of `λ` with a coroot is a fixed integer linear form:
//! `2λ_j` for the short root `e_j` and `λ_j ± λ_k` for the long roots `e_j ± e_k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{OrbitError, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `SO(2n+1)`
    B,
    /// `SO(2n)`
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::B => f.write_str("B"),
            Family::D => f.write_str("D"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = OrbitError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(Family::B),
            "D" | "d" => Ok(Family::D),
            other => Err(OrbitError::InvalidInput(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    family: Family,
    rank: usize,
}

impl GroupSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::B => 1,
            Family::D => 2,
        };
        if rank < min {
            return Err(OrbitError::InvalidInput(format!(
                "rank {rank} is below the minimum {min} for family {family}"
            )));
        }
        Ok(Self { family, rank })
    }

    pub fn b(rank: usize) -> Self {
        Self::new(Family::B, rank).expect("B rank must be >= 1")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("D rank must be >= 2")
    }

    /// Group for a square matrix of the given size: odd sizes are `B`, even sizes `D`.
    pub fn from_matrix_size(size: usize) -> Result<Self> {
        if size % 2 == 1 {
            Self::new(Family::B, size / 2)
        } else {
            Self::new(Family::D, size / 2)
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix_size(&self) -> usize {
        match self.family {
            Family::B => 2 * self.rank + 1,
            Family::D => 2 * self.rank,
        }
    }

    /// Number of GT functions, i.e. half the dimension of a regular orbit.
    pub fn gt_dimension(&self) -> usize {
        match self.family {
            Family::B => self.rank * self.rank,
            Family::D => self.rank * (self.rank - 1),
        }
    }

    /// Pattern levels strictly below the top row, in ascending order.
    pub fn pattern_levels(&self) -> std::ops::RangeInclusive<usize> {
        2..=self.matrix_size() - 1
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A chamber representative `λ`, stored as plain values with no normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylPoint<T = f64> {
    group: GroupSpec,
    coords: Vec<T>,
}

impl<T: Scalar> WeylPoint<T> {
    /// Only checks the length; chamber membership is a separate question
    /// answered by [`chamber_classify`].
    pub fn new(group: GroupSpec, coords: Vec<T>) -> Result<Self> {
        if coords.len() != group.rank() {
            return Err(OrbitError::RankMismatch {
                expected: group.rank(),
                got: coords.len(),
            });
        }
        Ok(Self { group, coords })
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn to_f64(&self) -> WeylPoint<f64> {
        WeylPoint {
            group: self.group,
            coords: self.coords.iter().map(Scalar::to_f64).collect(),
        }
    }

    /// `c · λ`
    pub fn scaled(&self, c: &T) -> Self {
        Self {
            group: self.group,
            coords: self.coords.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorootKind {
    /// `e_i`, type `B` only.
    ShortE,
    /// `e_i - e_j`
    LongDiff,
    /// `e_i + e_j`
    LongSum,
}

/// A positive coroot. Indices are zero-based; `Display` prints them one-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coroot {
    pub kind: CorootKind,
    pub i: usize,
    pub j: Option<usize>,
}

impl Coroot {
    pub fn pairing_coeffs(&self, rank: usize) -> Vec<i64> {
        let mut c = vec![0; rank];
        match (self.kind, self.j) {
            (CorootKind::ShortE, _) => c[self.i] = 2,
            (CorootKind::LongDiff, Some(j)) => {
                c[self.i] = 1;
                c[j] = -1;
            }
            (CorootKind::LongSum, Some(j)) => {
                c[self.i] = 1;
                c[j] = 1;
            }
            _ => unreachable!("long coroot without second index"),
        }
        c
    }

    pub fn pair<T: Scalar>(&self, lambda: &[T]) -> T {
        let li = lambda[self.i].clone();
        match (self.kind, self.j) {
            (CorootKind::ShortE, _) => T::two() * li,
            (CorootKind::LongDiff, Some(j)) => li - lambda[j].clone(),
            (CorootKind::LongSum, Some(j)) => li + lambda[j].clone(),
            _ => unreachable!("long coroot without second index"),
        }
    }
}

impl fmt::Display for Coroot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.j) {
            (CorootKind::ShortE, _) => write!(f, "e{}", self.i + 1),
            (CorootKind::LongDiff, Some(j)) => write!(f, "e{}-e{}", self.i + 1, j + 1),
            (CorootKind::LongSum, Some(j)) => write!(f, "e{}+e{}", self.i + 1, j + 1),
            _ => f.write_str("?"),
        }
    }
}

/// All positive coroots: the short ones first (type `B`), then for every pair
/// `i < j` the sum followed by the difference.
pub fn positive_coroots(group: GroupSpec) -> Vec<Coroot> {
    let n = group.rank();
    let mut out = Vec::with_capacity(n * n);
    if group.family() == Family::B {
        out.extend((0..n).map(|i| Coroot {
            kind: CorootKind::ShortE,
            i,
            j: None,
        }));
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(Coroot {
                kind: CorootKind::LongSum,
                i,
                j: Some(j),
            });
            out.push(Coroot {
                kind: CorootKind::LongDiff,
                i,
                j: Some(j),
            });
        }
    }
    out
}

fn check_group<T: Scalar>(group: GroupSpec, lambda: &WeylPoint<T>) -> Result<()> {
    if lambda.group() != group {
        return Err(OrbitError::InvalidInput(format!(
            "point belongs to {} but {} was requested",
            lambda.group(),
            group
        )));
    }
    Ok(())
}

pub fn coroot_pairings<T: Scalar>(group: GroupSpec, lambda: &WeylPoint<T>) -> Result<Vec<(Coroot, T)>> {
    check_group(group, lambda)?;
    Ok(positive_coroots(group)
        .into_iter()
        .map(|c| {
            let v = c.pair(lambda.coords());
            (c, v)
        })
        .collect())
}

/// Minimum of `|⟨α^∨, λ⟩|` over all coroots, or, with `positive_only`, the minimum
/// over the strictly positive pairings. The first minimizer in coroot order wins.
pub fn min_coroot_pairing<T: Scalar>(
    group: GroupSpec,
    lambda: &WeylPoint<T>,
    positive_only: bool,
) -> Result<(Coroot, T)> {
    let pairings = coroot_pairings(group, lambda)?;
    if pairings.iter().all(|(_, v)| v.is_zero()) {
        return Err(OrbitError::Degenerate("every coroot pairing vanishes".into()));
    }
    let mut best: Option<(Coroot, T)> = None;
    for (c, v) in pairings {
        let v = if positive_only {
            if v <= T::zero() {
                continue;
            }
            v
        } else {
            v.abs()
        };
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((c, v));
        }
    }
    best.ok_or_else(|| OrbitError::Degenerate("no strictly positive coroot pairing".into()))
}

/// Closed form of the regular minimum: `min{λ_i - λ_{i+1}, 2λ_n}` for `B`,
/// `min{λ_i - λ_{i+1}, λ_{n-1} + λ_n}` for `D`.
pub fn simple_root_minimum<T: Scalar>(lambda: &WeylPoint<T>) -> T {
    let x = lambda.coords();
    let n = x.len();
    let mut m = match lambda.group().family() {
        Family::B => T::two() * x[n - 1].clone(),
        Family::D => x[n - 2].clone() + x[n - 1].clone(),
    };
    for w in x.windows(2) {
        m = T::min_of(m, w[0].clone() - w[1].clone());
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "class")]
pub enum ChamberClass {
    Regular,
    /// One run `λ_s = ... = λ_{s+l-1}` of equal values, `s` one-based, `l >= 2`.
    NonregularSingleBlock { s: usize, l: usize },
    OutsideScope,
}

/// Classifies with exact comparisons.
pub fn chamber_classify<T: Scalar>(lambda: &WeylPoint<T>) -> ChamberClass {
    chamber_classify_eps(lambda, &T::zero())
}

/// Values within `eps` of each other count as equal; strict inequalities need a gap above `eps`.
pub fn chamber_classify_eps<T: Scalar>(lambda: &WeylPoint<T>, eps: &T) -> ChamberClass {
    let x = lambda.coords();
    let n = x.len();
    let gt = |a: &T, b: &T| a.clone() - b.clone() > *eps;
    let eq = |a: &T, b: &T| (a.clone() - b.clone()).abs() <= *eps;

    // The part of λ that must be a strictly decreasing chain apart from one run.
    let (chain, tail_ok) = match lambda.group().family() {
        Family::B => (n, gt(&x[n - 1], &T::zero())),
        Family::D => (n - 1, gt(&x[n - 2], &x[n - 1].abs())),
    };
    if !tail_ok {
        return ChamberClass::OutsideScope;
    }
    let mut runs = Vec::new();
    let mut i = 0;
    while i + 1 < chain {
        if gt(&x[i], &x[i + 1]) {
            i += 1;
            continue;
        }
        if !eq(&x[i], &x[i + 1]) {
            return ChamberClass::OutsideScope;
        }
        let start = i;
        while i + 1 < chain && eq(&x[start], &x[i + 1]) {
            i += 1;
        }
        runs.push((start + 1, i - start + 1));
    }
    match runs.as_slice() {
        [] => ChamberClass::Regular,
        [(s, l)] => ChamberClass::NonregularSingleBlock { s: *s, l: *l },
        _ => ChamberClass::OutsideScope,
    }
}

pub fn is_regular<T: Scalar>(lambda: &WeylPoint<T>) -> bool {
    chamber_classify(lambda) == ChamberClass::Regular
}

/// A root written as an integer combination of the `e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub coeffs: Vec<i64>,
}

impl Root {
    /// Parses `e1+e2`, `e1-e2`, `-e3`, `e2`. Indices are one-based.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let bad = |why: &str| OrbitError::InvalidInput(format!("cannot parse root {text:?}: {why}"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let mut coeffs = vec![0i64; rank];
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'+' => {
                    rest = &rest[1..];
                    1
                }
                b'-' => {
                    rest = &rest[1..];
                    -1
                }
                _ if first => 1,
                _ => return Err(bad("expected + or -")),
            };
            first = false;
            rest = rest.strip_prefix('e').ok_or_else(|| bad("expected e<index>"))?;
            let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let idx: usize = rest[..end].parse().map_err(|_| bad("missing index"))?;
            if idx == 0 || idx > rank {
                return Err(bad("index out of range"));
            }
            coeffs[idx - 1] += sign;
            rest = &rest[end..];
        }
        Ok(Self { coeffs })
    }

    pub fn norm_sq(&self) -> i64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn dot(&self, other: &Root) -> i64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn dot_point<T: Scalar>(&self, p: &[T]) -> T {
        self.coeffs
            .iter()
            .zip(p)
            .fold(T::zero(), |acc, (c, x)| acc + T::from_i64(*c) * x.clone())
    }

    pub fn is_root_of(&self, group: GroupSpec) -> bool {
        let nz: Vec<i64> = self.coeffs.iter().copied().filter(|c| *c != 0).collect();
        match nz.as_slice() {
            [a] => group.family() == Family::B && a.abs() == 1,
            [a, b] => a.abs() == 1 && b.abs() == 1,
            _ => false,
        }
    }

    /// Every root (positive and negative) of the group.
    pub fn all(group: GroupSpec) -> Vec<Root> {
        let n = group.rank();
        let mut out = Vec::new();
        let unit = |i: usize, s: i64| {
            let mut c = vec![0; n];
            c[i] = s;
            c
        };
        if group.family() == Family::B {
            for i in 0..n {
                for s in [1, -1] {
                    out.push(Root { coeffs: unit(i, s) });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let mut c = vec![0; n];
                    c[i] = si;
                    c[j] = sj;
                    out.push(Root { coeffs: c });
                }
            }
        }
        out
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 { "-" } else if first { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            write!(f, "{sign}{mag}e{}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
