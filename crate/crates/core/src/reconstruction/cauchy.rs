use crate::error::{OrbitError, Result};
use crate::scalar::Scalar;

/// Pairs off near-equal `(var, target)` values, scanning the targets from the
/// largest down and matching each against the first unmatched variable. Returns
/// the indices of the unmatched variables and targets.
pub(crate) fn eliminate_matches<T: Scalar>(vars: &[T], targets: &[T], tol: &T) -> (Vec<usize>, Vec<usize>) {
    let mut live_vars: Vec<usize> = (0..vars.len()).collect();
    let mut live_targets = Vec::with_capacity(targets.len());
    for (m, t) in targets.iter().enumerate() {
        match live_vars.iter().position(|&l| vars[l].near(t, tol)) {
            Some(pos) => {
                live_vars.remove(pos);
            }
            None => live_targets.push(m),
        }
    }
    (live_vars, live_targets)
}

/// `lhs ≥ rhs` up to the relative slack `tol`.
pub(crate) fn weakly_geq<T: Scalar>(lhs: &T, rhs: &T, tol: &T) -> bool {
    lhs.clone() - rhs.clone() >= -(tol.clone() * (T::one() + rhs.abs()))
}

/// Circle weights `w` with
/// `Π_j (s + A_j) + Σ_l w_l Π_{j≠l} (s + A_j) = Π_j (s + B_j)`,
/// i.e. `w_l = -Π_j (A_l - B_j) / Π_{j≠l} (A_l - A_j)`, for squared values
/// interlacing as `B_1 ≥ A_1 ≥ B_2 ≥ ... ≥ B_k ≥ A_k ≥ 0`.
///
/// Equal pairs `A_l = B_m` force `w_l = 0` and drop out of the system before the
/// closed form is applied to what is left.
pub fn solve_cauchy_weights<T: Scalar>(a_sq: &[T], b_sq: &[T]) -> Result<Vec<T>> {
    solve_cauchy_weights_tol(a_sq, b_sq, &T::equality_tol())
}

pub fn solve_cauchy_weights_tol<T: Scalar>(a_sq: &[T], b_sq: &[T], tol: &T) -> Result<Vec<T>> {
    let k = a_sq.len();
    if b_sq.len() != k {
        return Err(OrbitError::InvalidInput(format!(
            "{} inner and {} outer values; the system needs equally many",
            k,
            b_sq.len()
        )));
    }
    for l in 0..k {
        let ok = weakly_geq(&b_sq[l], &a_sq[l], tol)
            && (l + 1 == k || weakly_geq(&a_sq[l], &b_sq[l + 1], tol))
            && weakly_geq(&a_sq[l], &T::zero(), tol);
        if !ok {
            return Err(OrbitError::NoSolution(format!(
                "squared values do not interlace at position {}",
                l + 1
            )));
        }
    }
    let (vars, targets) = eliminate_matches(a_sq, b_sq, tol);
    let mut w = vec![T::zero(); k];
    for &l in &vars {
        let al = &a_sq[l];
        let mut num = T::one();
        for &j in &targets {
            num = num * (al.clone() - b_sq[j].clone());
        }
        let mut den = T::one();
        for &j in vars.iter().filter(|&&j| j != l) {
            den = den * (al.clone() - a_sq[j].clone());
        }
        if den.is_zero() {
            return Err(OrbitError::Degenerate(format!(
                "repeated inner value at position {} without a matching outer value",
                l + 1
            )));
        }
        w[l] = -(num / den);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(v: i64) -> Rational {
        <Rational as Scalar>::from_i64(v)
    }

    #[test]
    fn worked_values() {
        assert_eq!(solve_cauchy_weights(&[9.0], &[25.0]).unwrap(), vec![16.0]);
        let w = solve_cauchy_weights(&[r(9), r(1)], &[r(25), r(4)]).unwrap();
        assert_eq!(w, vec![r(10), r(9)]);
        let w = solve_cauchy_weights(&[r(25), r(1)], &[r(25), r(4)]).unwrap();
        assert_eq!(w, vec![r(0), r(3)]);
    }

    #[test]
    fn double_match_keeps_total() {
        // A_1 = A_2 = B_2: the first copy is eliminated, the second carries the weight.
        let w = solve_cauchy_weights(&[r(4), r(4)], &[r(9), r(4)]).unwrap();
        assert_eq!(w, vec![r(0), r(5)]);
    }

    #[test]
    fn rejects_broken_interlacing() {
        assert!(matches!(
            solve_cauchy_weights(&[30.0], &[25.0]),
            Err(OrbitError::NoSolution(_))
        ));
        assert!(solve_cauchy_weights(&[9.0, 5.0], &[25.0, 4.0]).is_err());
        assert!(solve_cauchy_weights(&[9.0], &[25.0, 4.0]).is_err());
    }
}
