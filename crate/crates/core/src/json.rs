//! JSON number formatting shared by the reports.
//!
//! Integral values are written as integers, not `2.0`, so worked
//! examples print as `2`; non-finite values become `null`.

use serde::{Serialize, Serializer};

const EXACT_INT_LIMIT: f64 = 9_007_199_254_740_992.0;

/// An `f64` that serializes as an integer when it is one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let x = self.0;
        if x.is_finite() && x.fract() == 0.0 && x.abs() < EXACT_INT_LIMIT {
            if x == 0.0 {
                return s.serialize_i64(0);
            }
            s.serialize_i64(x as i64)
        } else {
            s.serialize_f64(x)
        }
    }
}

pub fn num(x: f64) -> serde_json::Value {
    serde_json::to_value(Num(x)).unwrap_or(serde_json::Value::Null)
}

pub fn nums(xs: &[f64]) -> serde_json::Value {
    serde_json::Value::Array(xs.iter().map(|x| num(*x)).collect())
}

pub fn serialize_nums<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<Num> = xs.iter().copied().map(Num).collect();
    v.serialize(s)
}

pub fn serialize_num<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    Num(*x).serialize(s)
}
