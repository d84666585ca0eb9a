use std::fs;

use orbitwidth::scalar::parse_rational;
use orbitwidth::{Family, GroupSpec, Rational, WeylPoint};
use serde::de::DeserializeOwned;

use crate::Failure;

pub fn group(family: Family, rank: usize) -> Result<GroupSpec, Failure> {
    GroupSpec::new(family, rank).map_err(|e| Failure::Usage(e.to_string()))
}

fn split(list: &str, flag: &str, rank: usize) -> Result<Vec<String>, Failure> {
    let parts: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
    if parts.len() != rank {
        return Err(Failure::Usage(format!(
            "--{flag} has {} values but --rank is {rank}",
            parts.len()
        )));
    }
    Ok(parts)
}

pub fn exact_point(g: GroupSpec, list: &str, flag: &str) -> Result<WeylPoint<Rational>, Failure> {
    let coords = split(list, flag, g.rank())?
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| Failure::Usage(format!("--{flag}: cannot read {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    WeylPoint::new(g, coords).map_err(Failure::Domain)
}

pub fn float_point(g: GroupSpec, list: &str, flag: &str) -> Result<WeylPoint, Failure> {
    let coords = split(list, flag, g.rank())?
        .iter()
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .or_else(|| parse_rational(s).map(|r| orbitwidth::Scalar::to_f64(&r)))
                .ok_or_else(|| Failure::Usage(format!("--{flag}: cannot read {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    WeylPoint::new(g, coords).map_err(Failure::Domain)
}

/// Inline JSON when the argument starts with `{` or `[`, otherwise a file path.
pub fn json_source<T: DeserializeOwned>(arg: &str, flag: &str) -> Result<T, Failure> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Usage(format!("--{flag}: {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}
