//! Gelfand-Tsetlin patterns, the interlacing inequalities that cut out the GT
//! polytope, the vertex `Λ(λ)` and the edges leaving it.
//!
//! Level `m` of a pattern holds `⌊m/2⌋` values `x^{(m)}_1, ..., x^{(m)}_{⌊m/2⌋}`.
//! Levels run from 2 to `top - 1`; the top level (`2n+1` for `B`, `2n` for `D`)
//! is `λ` itself. Consecutive levels interlace:
//!
//! * odd upper level `2k+1`: `x^{(2k+1)}_1 ≥ x^{(2k)}_1 ≥ ... ≥ x^{(2k+1)}_k ≥ |x^{(2k)}_k|`
//! * even upper level `2k`: `x^{(2k)}_1 ≥ x^{(2k-1)}_1 ≥ ... ≥ x^{(2k-1)}_{k-1} ≥ |x^{(2k)}_k|`

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{OrbitError, Result};
use crate::json::Num;
use crate::root_system::{is_regular, Family, GroupSpec, WeylPoint};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct GtPattern<T = f64> {
    group: GroupSpec,
    lambda: Vec<T>,
    rows: BTreeMap<usize, Vec<T>>,
}

impl<T: Scalar> GtPattern<T> {
    /// Checks the shape only: the level set, the row lengths and the length of `λ`.
    pub fn new(group: GroupSpec, lambda: Vec<T>, rows: BTreeMap<usize, Vec<T>>) -> Result<Self> {
        let p = Self { group, lambda, rows };
        p.check_shape()?;
        Ok(p)
    }

    fn check_shape(&self) -> Result<()> {
        if self.lambda.len() != self.group.rank() {
            return Err(OrbitError::Structural(format!(
                "top row has {} values, rank is {}",
                self.lambda.len(),
                self.group.rank()
            )));
        }
        let levels = self.group.pattern_levels();
        for level in self.rows.keys() {
            if !levels.contains(level) {
                return Err(OrbitError::Structural(format!(
                    "level {level} is outside {}..={}",
                    levels.start(),
                    levels.end()
                )));
            }
        }
        for level in levels {
            match self.rows.get(&level) {
                None => {
                    return Err(OrbitError::Structural(format!("level {level} is missing")));
                }
                Some(r) if r.len() != level / 2 => {
                    return Err(OrbitError::Structural(format!(
                        "level {level} has {} values, expected {}",
                        r.len(),
                        level / 2
                    )));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn lambda(&self) -> &[T] {
        &self.lambda
    }

    pub fn top_level(&self) -> usize {
        self.group.matrix_size()
    }

    pub fn rows(&self) -> &BTreeMap<usize, Vec<T>> {
        &self.rows
    }

    /// Row at `level`, including the top row `λ`.
    pub fn row(&self, level: usize) -> Option<&[T]> {
        if level == self.top_level() {
            Some(&self.lambda)
        } else {
            self.rows.get(&level).map(Vec::as_slice)
        }
    }

    /// `x^{(level)}_j`, `j` one-based.
    pub fn get(&self, level: usize, j: usize) -> Option<&T> {
        self.row(level).and_then(|r| r.get(j.checked_sub(1)?))
    }

    /// Sets `x^{(level)}_j` below the top row.
    pub fn set(&mut self, level: usize, j: usize, value: T) -> Result<()> {
        let slot = self
            .rows
            .get_mut(&level)
            .and_then(|r| r.get_mut(j.wrapping_sub(1)))
            .ok_or_else(|| OrbitError::Structural(format!("no coordinate x({level},{j})")))?;
        *slot = value;
        Ok(())
    }

    /// All coordinates below the top row, level by level, in the order of
    /// [`coordinate_index`].
    pub fn coordinates(&self) -> Vec<T> {
        self.rows.values().flatten().cloned().collect()
    }

    pub fn to_f64(&self) -> GtPattern<f64> {
        GtPattern {
            group: self.group,
            lambda: self.lambda.iter().map(Scalar::to_f64).collect(),
            rows: self
                .rows
                .iter()
                .map(|(k, r)| (*k, r.iter().map(Scalar::to_f64).collect()))
                .collect(),
        }
    }

    /// Largest coordinatewise difference, top row included.
    pub fn max_abs_diff(&self, other: &GtPattern<T>) -> Option<f64> {
        if self.group != other.group {
            return None;
        }
        let mut worst: f64 = 0.0;
        for level in 2..=self.top_level() {
            let (a, b) = (self.row(level)?, other.row(level)?);
            for (x, y) in a.iter().zip(b) {
                worst = worst.max((x.clone() - y.clone()).abs().to_f64());
            }
        }
        Some(worst)
    }
}

/// Position of `x^{(level)}_j` in the flat coordinate vector (levels ascending,
/// `j` ascending within a level).
pub fn coordinate_index(group: GroupSpec, level: usize, j: usize) -> Result<usize> {
    let levels = group.pattern_levels();
    if !levels.contains(&level) || j == 0 || j > level / 2 {
        return Err(OrbitError::InvalidInput(format!(
            "x({level},{j}) is not a coordinate of a {group} pattern"
        )));
    }
    let before: usize = (2..level).map(|m| m / 2).sum();
    Ok(before + j - 1)
}

/// The vertex `Λ(λ)`: every coordinate at its upper bound, `x^{(m)}_l = λ_l`.
pub fn pattern_of_lambda<T: Scalar>(lambda: &WeylPoint<T>) -> GtPattern<T> {
    let group = lambda.group();
    let x = lambda.coords();
    let rows = group
        .pattern_levels()
        .map(|m| (m, x[..m / 2].to_vec()))
        .collect();
    GtPattern {
        group,
        lambda: x.to_vec(),
        rows,
    }
}

/// One failed interlacing inequality `upper ≥ lower`, where `lower` may be an
/// absolute value. `level`/`position` name the smaller side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub level: usize,
    pub position: usize,
    pub bound_level: usize,
    pub bound_position: usize,
    pub absolute: bool,
    #[serde(serialize_with = "crate::json::serialize_num")]
    pub amount: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lower = format!("x({},{})", self.level, self.position);
        let lower = if self.absolute {
            format!("|{lower}|")
        } else {
            lower
        };
        write!(
            f,
            "x({},{}) >= {} fails by {}",
            self.bound_level, self.bound_position, lower, self.amount
        )
    }
}

/// Every interlacing inequality between consecutive levels, as
/// `((upper level, upper pos), (lower level, lower pos), absolute)`.
type Link = ((usize, usize), (usize, usize), bool);

fn inequalities(group: GroupSpec) -> Vec<Link> {
    let mut out = Vec::new();
    for m in 3..=group.matrix_size() {
        let k = m / 2;
        // Interleave the chain u_1 ≥ v_1 ≥ u_2 ≥ v_2 ≥ ...
        let mut chain: Vec<(usize, usize)> = Vec::new();
        let lower_len = (m - 1) / 2;
        for i in 1..=k {
            chain.push((m, i));
            if i <= lower_len {
                chain.push((m - 1, i));
            }
        }
        // For odd m the chain ends ... u_k ≥ v_k; for even m ... v_{k-1} ≥ u_k.
        // Either way the last link compares against an absolute value.
        for w in chain.windows(2) {
            out.push((w[0], w[1], false));
        }
        if let Some(last) = out.last_mut() {
            last.2 = true;
        }
    }
    out
}

/// Checks every interlacing inequality with slack `tol`. Shape problems are a
/// [`OrbitError::Structural`] error, never a violation.
pub fn validate_pattern<T: Scalar>(p: &GtPattern<T>, tol: &T) -> Result<Vec<Violation>> {
    p.check_shape()?;
    let mut out = Vec::new();
    for ((ul, up), (ll, lp), absolute) in inequalities(p.group) {
        let upper = p.get(ul, up).expect("shape checked").clone();
        let lower = p.get(ll, lp).expect("shape checked").clone();
        let lower = if absolute { lower.abs() } else { lower };
        let gap = lower - upper;
        if gap > *tol {
            out.push(Violation {
                level: ll,
                position: lp,
                bound_level: ul,
                bound_position: up,
                absolute,
                amount: gap.to_f64(),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    E,
    F,
}

/// An edge of the GT polytope leaving `Λ(λ)`. Along the edge the coordinates in
/// `coords` move together through `[endpoint_low, endpoint_high]` and all other
/// coordinates stay at `Λ(λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeDescriptor<T = f64> {
    pub kind: EdgeKind,
    pub level: usize,
    pub j: usize,
    /// Indicator vector over the flat coordinates; entries are 0 or 1.
    pub weight: Vec<i64>,
    /// `(level, j)` of every coordinate with weight 1.
    pub coords: Vec<(usize, usize)>,
    pub lattice_length: T,
    pub endpoint_low: T,
    pub endpoint_high: T,
    /// Set when the segment is only known to lie inside an edge.
    pub partial: bool,
}

impl<T: Scalar> EdgeDescriptor<T> {
    pub fn label(&self) -> String {
        format!("{:?}({},{})", self.kind, self.level, self.j)
    }

    pub fn to_f64(&self) -> EdgeDescriptor<f64> {
        EdgeDescriptor {
            kind: self.kind,
            level: self.level,
            j: self.j,
            weight: self.weight.clone(),
            coords: self.coords.clone(),
            lattice_length: self.lattice_length.to_f64(),
            endpoint_low: self.endpoint_low.to_f64(),
            endpoint_high: self.endpoint_high.to_f64(),
            partial: self.partial,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label(),
            "kind": self.kind,
            "level": self.level,
            "j": self.j,
            "coords": self.coords.iter().map(|(l, j)| [l, j]).collect::<Vec<_>>(),
            "weight": self.weight,
            "lattice_length": Num(self.lattice_length.to_f64()),
            "endpoint_low": Num(self.endpoint_low.to_f64()),
            "endpoint_high": Num(self.endpoint_high.to_f64()),
            "partial": self.partial,
        })
    }
}

impl<T: Scalar> fmt::Display for EdgeDescriptor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn edge<T: Scalar>(
    group: GroupSpec,
    kind: EdgeKind,
    level: usize,
    j: usize,
    low: T,
    high: T,
    partial: bool,
) -> EdgeDescriptor<T> {
    let mut weight = vec![0; group.gt_dimension()];
    let coords: Vec<(usize, usize)> = (2 * j..=level).map(|l| (l, j)).collect();
    for &(l, jj) in &coords {
        weight[coordinate_index(group, l, jj).expect("edge coordinate in range")] = 1;
    }
    EdgeDescriptor {
        kind,
        level,
        j,
        weight,
        coords,
        lattice_length: high.clone() - low.clone(),
        endpoint_low: low,
        endpoint_high: high,
        partial,
    }
}

/// The `n²` (type `B`) or `n(n-1)` (type `D`) edges at `Λ(λ)`, `E` edges first,
/// each kind ordered by level and then by `j`.
///
/// * `E^{(2k)}_j` moves `x^{(l)}_j`, `2j ≤ l ≤ 2k`, through `[λ_{j+1}, λ_j]`
///   (`[-λ_k, λ_k]` when `j = k`).
/// * `F^{(2k+1)}_j` moves `x^{(l)}_j`, `2j ≤ l ≤ 2k+1`, through `[λ_{j+1}, λ_j]`;
///   for `D` and `j = k = n-1` the range is `[|λ_n|, λ_{n-1}]`, reported as partial.
pub fn enumerate_edges_at_lambda<T: Scalar>(lambda: &WeylPoint<T>) -> Result<Vec<EdgeDescriptor<T>>> {
    let group = lambda.group();
    if !is_regular(lambda) {
        return Err(OrbitError::Unsupported(
            "edges at Λ(λ) are enumerated for regular λ only; use the η-vertex for boundary points"
                .into(),
        ));
    }
    let x = lambda.coords();
    let n = group.rank();
    let max_e = match group.family() {
        Family::B => n,
        Family::D => n - 1,
    };
    let mut out = Vec::with_capacity(group.gt_dimension());
    for k in 1..=max_e {
        for j in 1..=k {
            let (low, high) = if j < k {
                (x[j].clone(), x[j - 1].clone())
            } else {
                (-x[k - 1].clone(), x[k - 1].clone())
            };
            out.push(edge(group, EdgeKind::E, 2 * k, j, low, high, false));
        }
    }
    for k in 1..n {
        for j in 1..=k {
            let tied_to_last = group.family() == Family::D && j == n - 1;
            let low = if tied_to_last { x[j].abs() } else { x[j].clone() };
            out.push(edge(group, EdgeKind::F, 2 * k + 1, j, low, x[j - 1].clone(), tied_to_last));
        }
    }
    debug_assert_eq!(out.len(), group.gt_dimension());
    Ok(out)
}

/// The point of `e` at parameter `t ∈ [0, 1]`: `Λ(λ)` with the moving coordinates
/// set to `endpoint_high - t · lattice_length`.
pub fn edge_point<T: Scalar>(e: &EdgeDescriptor<T>, lambda: &WeylPoint<T>, t: &T) -> Result<GtPattern<T>> {
    if *t < T::zero() || *t > T::one() {
        return Err(OrbitError::InvalidInput(format!("edge parameter {t} is outside [0, 1]")));
    }
    let mut p = pattern_of_lambda(lambda);
    let value = e.endpoint_high.clone() - t.clone() * e.lattice_length.clone();
    for &(l, j) in &e.coords {
        p.set(l, j, value.clone())?;
    }
    Ok(p)
}

/// `gcd` of the entries is 1.
pub fn is_primitive(weight: &[i64]) -> bool {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    weight.iter().fold(0, |g, w| gcd(g, *w)) == 1
}

/// On-disk pattern format: `{"family": "B", "lambda": [...], "rows": {"2": [...], ...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct PatternJson {
    family: Family,
    lambda: Vec<f64>,
    rows: BTreeMap<usize, Vec<f64>>,
}

impl Serialize for GtPattern<f64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            family: Family,
            lambda: Vec<Num>,
            rows: BTreeMap<&'a usize, Vec<Num>>,
        }
        let nums = |v: &[f64]| v.iter().copied().map(Num).collect::<Vec<_>>();
        Out {
            family: self.group.family(),
            lambda: nums(&self.lambda),
            rows: self.rows.iter().map(|(k, r)| (k, nums(r))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GtPattern<f64> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PatternJson::deserialize(d)?;
        let group = GroupSpec::new(j.family, j.lambda.len()).map_err(serde::de::Error::custom)?;
        GtPattern::new(group, j.lambda, j.rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn b2() -> WeylPoint {
        WeylPoint::new(GroupSpec::b(2), vec![6.0, 1.0]).unwrap()
    }

    fn b2_pattern(level2: f64) -> GtPattern {
        let rows = BTreeMap::from([(4, vec![5.0, 0.5]), (3, vec![4.0]), (2, vec![level2])]);
        GtPattern::new(GroupSpec::b(2), vec![6.0, 1.0], rows).unwrap()
    }

    #[test]
    fn vertex_rows() {
        let p = pattern_of_lambda(&b2());
        assert_eq!(p.row(4).unwrap(), &[6.0, 1.0]);
        assert_eq!(p.row(3).unwrap(), &[6.0]);
        assert_eq!(p.row(2).unwrap(), &[6.0]);
        let d = pattern_of_lambda(&WeylPoint::new(GroupSpec::d(2), vec![4.0, 1.0]).unwrap());
        assert_eq!(d.rows().len(), 2);
        assert_eq!(d.row(3).unwrap(), &[4.0]);
        let b1 = pattern_of_lambda(&WeylPoint::new(GroupSpec::b(1), vec![2.5]).unwrap());
        assert_eq!(b1.coordinates(), vec![2.5]);
    }

    #[test]
    fn hand_checked_patterns() {
        assert!(validate_pattern(&b2_pattern(3.0), &0.0).unwrap().is_empty());
        let v = validate_pattern(&b2_pattern(-5.0), &0.0).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].level, v[0].position), (2, 1));
        assert_eq!((v[0].bound_level, v[0].bound_position), (3, 1));
        assert!(v[0].absolute);
        assert_eq!(v[0].amount, 1.0);
    }

    #[test]
    fn shape_errors_are_structural() {
        let rows = BTreeMap::from([(4, vec![5.0]), (3, vec![4.0]), (2, vec![3.0])]);
        assert!(matches!(
            GtPattern::new(GroupSpec::b(2), vec![6.0, 1.0], rows),
            Err(OrbitError::Structural(_))
        ));
        let rows = BTreeMap::from([(3, vec![4.0]), (2, vec![3.0])]);
        assert!(GtPattern::new(GroupSpec::b(2), vec![6.0, 1.0], rows).is_err());
    }

    #[test]
    fn coordinate_counts_and_indices() {
        for n in 1..=6 {
            let g = GroupSpec::b(n);
            let total: usize = g.pattern_levels().map(|m| m / 2).sum();
            assert_eq!(total, n * n);
        }
        for n in 2..=6 {
            let g = GroupSpec::d(n);
            let total: usize = g.pattern_levels().map(|m| m / 2).sum();
            assert_eq!(total, n * (n - 1));
        }
        let g = GroupSpec::b(2);
        assert_eq!(coordinate_index(g, 2, 1).unwrap(), 0);
        assert_eq!(coordinate_index(g, 3, 1).unwrap(), 1);
        assert_eq!(coordinate_index(g, 4, 2).unwrap(), 3);
        assert!(coordinate_index(g, 5, 1).is_err());
    }

    #[test]
    fn b2_edges() {
        let edges = enumerate_edges_at_lambda(&b2()).unwrap();
        let summary: Vec<(String, f64)> = edges.iter().map(|e| (e.label(), e.lattice_length)).collect();
        assert_eq!(
            summary,
            vec![
                ("E(2,1)".to_string(), 12.0),
                ("E(4,1)".to_string(), 5.0),
                ("E(4,2)".to_string(), 2.0),
                ("F(3,1)".to_string(), 5.0)
            ]
        );
        assert_eq!(edges[3].coords, vec![(2, 1), (3, 1)]);
        assert_eq!(edges[3].weight, vec![1, 1, 0, 0]);
        assert!(edges.iter().all(|e| is_primitive(&e.weight) && !e.partial));
    }

    #[test]
    fn d2_and_b1_edges() {
        let d2 = WeylPoint::new(GroupSpec::d(2), vec![4.0, 1.0]).unwrap();
        let edges = enumerate_edges_at_lambda(&d2).unwrap();
        assert_eq!(edges.len(), 2);
        assert_eq!((edges[0].label(), edges[0].lattice_length), ("E(2,1)".into(), 8.0));
        assert_eq!((edges[1].label(), edges[1].lattice_length), ("F(3,1)".into(), 3.0));
        assert!(edges[1].partial);
        let b1 = WeylPoint::new(GroupSpec::b(1), vec![1.5]).unwrap();
        let edges = enumerate_edges_at_lambda(&b1).unwrap();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].lattice_length, 3.0);
        assert_eq!(edges[0].weight, vec![1]);
    }

    #[test]
    fn non_regular_is_unsupported() {
        let p = WeylPoint::new(GroupSpec::b(3), vec![4.0, 4.0, 1.0]).unwrap();
        assert!(matches!(enumerate_edges_at_lambda(&p), Err(OrbitError::Unsupported(_))));
    }

    #[test]
    fn edge_points() {
        let lam = b2();
        let edges = enumerate_edges_at_lambda(&lam).unwrap();
        assert_eq!(edge_point(&edges[0], &lam, &0.0).unwrap(), pattern_of_lambda(&lam));
        let p = edge_point(&edges[2], &lam, &1.0).unwrap();
        assert_eq!(p.get(4, 2), Some(&-1.0));
        assert_eq!(p.get(4, 1), Some(&6.0));
        let p = edge_point(&edges[3], &lam, &0.2).unwrap();
        assert_eq!((p.get(3, 1), p.get(2, 1)), (Some(&5.0), Some(&5.0)));
        assert!(edge_point(&edges[3], &lam, &1.5).is_err());
        for e in &edges {
            for t in [0.0, 0.3, 1.0] {
                assert!(validate_pattern(&edge_point(e, &lam, &t).unwrap(), &0.0).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn exact_lengths() {
        let r = |a: i64, b: i64| Rational::new(a.into(), b.into());
        let lam = WeylPoint::new(GroupSpec::d(3), vec![r(7, 2), r(1, 3), r(-1, 4)]).unwrap();
        let edges = enumerate_edges_at_lambda(&lam).unwrap();
        let partial: Vec<_> = edges.iter().filter(|e| e.partial).collect();
        assert_eq!(partial.len(), 1);
        assert_eq!(partial[0].lattice_length, r(1, 12));
    }

    #[test]
    fn json_round_trip() {
        let p = b2_pattern(3.0);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(
            text,
            r#"{"family":"B","lambda":[6,1],"rows":{"2":[3],"3":[4],"4":[5,0.5]}}"#
        );
        let back: GtPattern = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"family":"B","lambda":[6,1],"rows":{"2":[3],"3":[4]}}"#;
        assert!(serde_json::from_str::<GtPattern>(bad).is_err());
    }
}
