//! Binomial Buchberger completion on lattice vectors.
//!
//! A binomial `x^u - x^v` with disjoint supports is stored as the vector
//! `u - v`, oriented so that its positive part is the leading term. Common
//! monomial factors never appear: subtracting two vectors cancels them.
//! Running one completion per variable, each under a graded order that makes
//! that variable cheapest, turns a lattice basis into a generating set of the
//! lattice ideal.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::semigroup::SemigroupError;

pub(crate) type Move = Vec<i64>;

/// Graded order with variable weights, then the `cheap` variable (smaller
/// exponent is larger), then lexicographic.
struct TermOrder<'a> {
    weights: &'a [i64],
    cheap: usize,
}

impl TermOrder<'_> {
    /// Compares the positive and negative parts of `v`; both have the same
    /// weighted degree because `v` is a kernel vector.
    fn positive_leads(&self, v: &[i64]) -> bool {
        let c = v[self.cheap];
        if c != 0 {
            return c < 0;
        }
        v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }

    fn orient(&self, v: &mut Move) {
        if !self.positive_leads(v) {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }

    fn lcm_degree(&self, a: &[i64], b: &[i64]) -> i128 {
        a.iter()
            .zip(b)
            .zip(self.weights)
            .map(|((&x, &y), &w)| x.max(y).max(0) as i128 * w as i128)
            .sum()
    }
}

fn lead_divides(g: &[i64], h_lead_of: &[i64]) -> bool {
    g.iter().zip(h_lead_of).all(|(&a, &b)| a <= 0 || a <= b)
}

fn coprime_leads(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x <= 0 || y <= 0)
}

fn lcm_divisible_by(g: &[i64], a: &[i64], b: &[i64]) -> bool {
    g.iter()
        .zip(a.iter().zip(b))
        .all(|(&x, (&p, &q))| x <= 0 || x <= p.max(q))
}

fn checked_sub(a: &[i64], b: &[i64]) -> Result<Move, SemigroupError> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x.checked_sub(y).ok_or(SemigroupError::Overflow))
        .collect()
}

/// Reduces the leading term of `h` until no leading term of `basis`
/// divides it.
fn reduce_lead(order: &TermOrder, basis: &[Move], mut h: Move) -> Result<Move, SemigroupError> {
    loop {
        if h.iter().all(|&x| x == 0) {
            return Ok(h);
        }
        match basis.iter().find(|g| lead_divides(g, &h)) {
            Some(g) => {
                h = checked_sub(&h, g)?;
                order.orient(&mut h);
            }
            None => return Ok(h),
        }
    }
}

/// Pairs keyed by the degree of their lcm, smallest first.
type PairQueue = BinaryHeap<(Reverse<i128>, Reverse<(usize, usize)>)>;

fn complete(order: &TermOrder, input: Vec<Move>) -> Result<Vec<Move>, SemigroupError> {
    let mut basis: Vec<Move> = Vec::new();
    let mut heap: PairQueue = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let push = |basis: &mut Vec<Move>, heap: &mut PairQueue, pending: &mut HashSet<(usize, usize)>, h: Move| {
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            heap.push((Reverse(order.lcm_degree(g, &h)), Reverse((i, j))));
            pending.insert((i, j));
        }
        basis.push(h);
    };

    for mut v in input {
        order.orient(&mut v);
        let h = reduce_lead(order, &basis, v)?;
        if h.iter().any(|&x| x != 0) {
            push(&mut basis, &mut heap, &mut pending, h);
        }
    }

    while let Some((_, Reverse((i, j)))) = heap.pop() {
        pending.remove(&(i, j));
        let (gi, gj) = (&basis[i], &basis[j]);
        if coprime_leads(gi, gj) {
            continue;
        }
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lcm_divisible_by(&basis[k], gi, gj)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let mut s = checked_sub(gi, gj)?;
        order.orient(&mut s);
        let h = reduce_lead(order, &basis, s)?;
        if h.iter().any(|&x| x != 0) {
            push(&mut basis, &mut heap, &mut pending, h);
        }
    }

    // minimal basis: drop elements whose lead is divisible by another lead
    let mut keep: Vec<Move> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(k, other)| k != i && lead_divides(other, g) && (!lead_divides(g, other) || k < i));
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort();
    keep.dedup();
    Ok(keep)
}

/// Generating set of the lattice ideal of the lattice spanned by `basis`,
/// homogeneous for the positive variable weights.
pub(crate) fn lattice_ideal_generators(basis: Vec<Move>, weights: &[i64]) -> Result<Vec<Move>, SemigroupError> {
    let n = weights.len();
    let mut current = basis;
    for cheap in 0..n {
        if current.is_empty() {
            break;
        }
        let order = TermOrder { weights, cheap };
        current = complete(&order, current)?;
    }
    Ok(current)
}
