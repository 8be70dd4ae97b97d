//! Positive grading functionals via exact Fourier–Motzkin elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `coeffs · w >= rhs`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Constraint {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
}

impl Constraint {
    /// Scales so that the first nonzero coefficient has absolute value one,
    /// which makes duplicate detection meaningful.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in self.coeffs.iter_mut() {
                *c /= &lead;
            }
            self.rhs /= &lead;
        }
        self
    }
}

fn eliminate(system: &[Constraint], var: usize) -> Vec<Constraint> {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    let mut out = Vec::new();
    for c in system {
        let a = &c.coeffs[var];
        if a.is_positive() {
            lower.push(c);
        } else if a.is_negative() {
            upper.push(c);
        } else {
            out.push(c.clone());
        }
    }
    for lo in &lower {
        for up in &upper {
            // lo: a w_var + ... >= b (a > 0), up: -c w_var + ... >= e (c > 0)
            let a = &lo.coeffs[var];
            let c = -&up.coeffs[var];
            let coeffs = lo.coeffs.iter().zip(&up.coeffs).map(|(x, y)| x * &c + y * a).collect();
            let rhs = &lo.rhs * &c + &up.rhs * a;
            out.push(Constraint { coeffs, rhs }.normalized());
        }
    }
    out.sort();
    out.dedup();
    out
}

fn ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

fn floor(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

/// Picks the admissible value of smallest magnitude, preferring integers.
fn choose(lo: Option<BigRational>, hi: Option<BigRational>) -> Option<BigRational> {
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return None;
        }
    }
    let zero = BigRational::zero();
    let admits = |x: &BigRational| lo.as_ref().is_none_or(|l| x >= l) && hi.as_ref().is_none_or(|h| x <= h);
    if admits(&zero) {
        return Some(zero);
    }
    let candidate = match (&lo, &hi) {
        (Some(l), _) if l.is_positive() => BigRational::from_integer(ceil(l)),
        (_, Some(h)) => BigRational::from_integer(floor(h)),
        (Some(l), None) => BigRational::from_integer(ceil(l)),
        (None, None) => unreachable!("unbounded interval admits zero"),
    };
    if admits(&candidate) {
        Some(candidate)
    } else {
        // no integer in a bounded interval: take the endpoint nearest zero
        match (lo, hi) {
            (Some(l), _) if l.is_positive() => Some(l),
            (_, Some(h)) => Some(h),
            (Some(l), None) => Some(l),
            (None, None) => None,
        }
    }
}

/// Finds an integer vector `w` with `w · v >= 1` for every row `v`, or
/// `None` when the system is infeasible.
pub fn positive_functional(rows: &[Vec<BigInt>], dim: usize) -> Option<Vec<BigInt>> {
    let one = BigRational::one();
    let original: Vec<Constraint> = rows
        .iter()
        .map(|r| Constraint {
            coeffs: r.iter().cloned().map(BigRational::from_integer).collect(),
            rhs: one.clone(),
        })
        .collect();
    // systems[j] only involves variables 0..j
    let mut systems = vec![Vec::new(); dim + 1];
    systems[dim] = original;
    for var in (0..dim).rev() {
        systems[var] = eliminate(&systems[var + 1], var);
    }
    if systems[0].iter().any(|c| c.rhs.is_positive()) {
        return None;
    }
    let mut values: Vec<BigRational> = Vec::with_capacity(dim);
    for var in 0..dim {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for c in &systems[var + 1] {
            let a = &c.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let known: BigRational = values.iter().zip(&c.coeffs).map(|(v, k)| v * k).sum();
            let bound = (&c.rhs - known) / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|l| &bound > l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        }
        values.push(choose(lo, hi)?);
    }
    let denom = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    Some(
        values
            .iter()
            .map(|v| (v * BigRational::from_integer(denom.clone())).to_integer())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::to_bigints;

    fn check(rows: &[&[i64]]) -> Option<Vec<BigInt>> {
        let dim = rows[0].len();
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| to_bigints(r)).collect();
        let w = positive_functional(&rows, dim)?;
        for r in &rows {
            let dot: BigInt = r.iter().zip(&w).map(|(a, b)| a * b).sum();
            assert!(dot >= BigInt::one(), "w = {w:?} fails on {r:?}");
        }
        Some(w)
    }

    #[test]
    fn numerical_semigroup_gets_identity() {
        assert_eq!(check(&[&[3], &[5], &[7]]), Some(to_bigints(&[1])));
    }

    #[test]
    fn first_quadrant() {
        let rows: &[&[i64]] = &[&[13, 0], &[5, 8], &[2, 11], &[0, 13], &[4, 4], &[9, 9]];
        assert_eq!(check(rows), Some(to_bigints(&[1, 1])));
    }

    #[test]
    fn skewed_cone() {
        assert!(check(&[&[-7, 2], &[11, 1], &[5, 0], &[0, 1]]).is_some());
    }

    #[test]
    fn opposite_vectors_are_infeasible() {
        assert_eq!(check(&[&[1, 0], &[-1, 0]]), None);
        assert_eq!(check(&[&[1, 1], &[-2, -2], &[0, 1]]), None);
    }

    #[test]
    fn fractional_bounds_are_scaled() {
        // 2a - 3b >= 1, -a + 2b >= 1 forces a >= 5, b >= 3 on the integer grid
        let w = check(&[&[2, -3], &[-1, 2]]).unwrap();
        assert_eq!(w.len(), 2);
    }
}
