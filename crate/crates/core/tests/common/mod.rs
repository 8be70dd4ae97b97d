//! Brute-force oracles shared by the integration tests, and the checks that
//! hold the library against them. The oracles never call the fiber
//! enumerator, the completion or the lattice code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use semiglue::fibers::enumerate_fiber;
use semiglue::gluing::{all_splits, check_gluing_with, group_oracle, verify_certificate};
use semiglue::{AbelianGroup, BettiAnalysis, GroupElement, Presentation, Semigroup};

/// Minimally generated numerical semigroups, glued and not.
pub const CORPUS: &[&[i64]] = &[
    &[4, 6, 9],
    &[3, 5, 7],
    &[2, 3],
    &[5, 7],
    &[3, 4, 5],
    &[6, 10, 15],
    &[4, 5, 6],
    &[6, 9, 10],
    &[8, 10, 12, 13],
    &[10, 14, 15, 21],
    &[6, 10, 14, 15],
    &[4, 6, 7],
    &[5, 6, 7, 8],
    &[7, 8, 9, 10],
    &[9, 12, 14],
    &[12, 18, 20, 45],
    &[8, 12, 18, 27],
    &[3, 7, 11],
    &[5, 8, 11, 14],
    &[11, 13, 14, 15],
    &[6, 7, 8, 9, 10],
    &[20, 24, 25, 30],
    &[15, 21, 35],
    &[9, 10, 12],
    &[4, 9, 14],
    &[7, 11, 12, 13],
];

/// `(torsion, free)` coordinates with torsion reduced.
pub type Key = (Vec<i64>, Vec<i64>);

fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small coordinates")).collect()
}

pub fn key_of(m: &GroupElement) -> Key {
    (small(m.torsion()), small(m.free()))
}

/// A semigroup whose free coordinates are all non-negative, so the sum of
/// the free coordinates is a positive weight on generators.
pub struct Plain {
    pub orders: Vec<i64>,
    pub torsion: Vec<Vec<i64>>,
    pub free: Vec<Vec<i64>>,
}

impl Plain {
    pub fn of(s: &Semigroup) -> Self {
        let plain = Plain {
            orders: small(s.group().torsion_orders()),
            torsion: s.generators().iter().map(|g| small(g.torsion())).collect(),
            free: s.generators().iter().map(|g| small(g.free())).collect(),
        };
        assert!(
            plain.weights().iter().all(|&w| w > 0),
            "oracle needs non-negative free parts"
        );
        plain
    }

    pub fn len(&self) -> usize {
        self.free.len()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.free.iter().map(|g| g.iter().sum()).collect()
    }

    pub fn degree(&self, alpha: &[u64]) -> Key {
        let mut t = vec![0i64; self.orders.len()];
        let mut f = vec![0i64; self.free.first().map_or(0, Vec::len)];
        for (i, &a) in alpha.iter().enumerate() {
            let a = a as i64;
            for (k, x) in self.torsion[i].iter().enumerate() {
                t[k] += a * x;
            }
            for (k, x) in self.free[i].iter().enumerate() {
                f[k] += a * x;
            }
        }
        for (x, n) in t.iter_mut().zip(&self.orders) {
            *x = x.mod_floor(n);
        }
        (t, f)
    }

    /// Every exponent vector of weight at most `bound`, grouped by degree.
    pub fn fibers_up_to(&self, bound: i64) -> BTreeMap<Key, Vec<Vec<u64>>> {
        let w = self.weights();
        let mut out: BTreeMap<Key, Vec<Vec<u64>>> = BTreeMap::new();
        let mut alpha = vec![0u64; self.len()];
        fn walk(i: usize, left: i64, w: &[i64], alpha: &mut Vec<u64>, emit: &mut dyn FnMut(&[u64])) {
            if i == w.len() {
                emit(alpha);
                return;
            }
            let mut k = 0;
            while k * w[i] <= left {
                alpha[i] = k as u64;
                walk(i + 1, left - k * w[i], w, alpha, emit);
                k += 1;
            }
            alpha[i] = 0;
        }
        walk(0, bound, &w, &mut alpha, &mut |a| {
            out.entry(self.degree(a)).or_default().push(a.to_vec());
        });
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    /// Betti degrees of weight at most `bound`, with component counts.
    pub fn betti_up_to(&self, bound: i64) -> BTreeMap<Key, usize> {
        self.fibers_up_to(bound)
            .into_iter()
            .filter(|(k, _)| k.1.iter().any(|&x| x != 0) || k.0.iter().any(|&x| x != 0))
            .map(|(k, members)| (k, support_components(&members)))
            .filter(|&(_, c)| c > 1)
            .collect()
    }
}

/// Connected components of the graph joining monomials that share a variable.
pub fn support_components(members: &[Vec<u64>]) -> usize {
    let n = members.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if members[i].iter().zip(&members[j]).any(|(&a, &b)| a > 0 && b > 0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Membership table of a numerical semigroup up to `limit`.
pub fn members_up_to(gens: &[i64], limit: i64) -> Vec<bool> {
    let mut table = vec![false; limit as usize + 1];
    table[0] = true;
    for n in 1..=limit as usize {
        table[n] = gens.iter().any(|&g| g as usize <= n && table[n - g as usize]);
    }
    table
}

pub fn gcd_all(gens: &[i64]) -> i64 {
    gens.iter().fold(0, |g, &x| g.gcd(&x))
}

/// Whether no generator is a sum of the others.
pub fn numerical_minimal(gens: &[i64]) -> bool {
    (0..gens.len()).all(|i| {
        let others: Vec<i64> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &g)| g)
            .collect();
        !members_up_to(&others, gens[i])[gens[i] as usize]
    })
}

/// Frobenius number of a numerical semigroup with coprime generators.
pub fn frobenius(gens: &[i64]) -> i64 {
    assert_eq!(gcd_all(gens), 1);
    let min = *gens.iter().min().unwrap();
    let limit = 2 * gens.iter().max().unwrap() * min + min;
    let table = members_up_to(gens, limit);
    (0..=limit).rev().find(|&n| !table[n as usize]).unwrap_or(-1)
}

/// Every Betti element of `⟨gens⟩` (coprime generators) is an Apéry element
/// plus a generator, hence at most this bound.
pub fn numerical_betti_bound(gens: &[i64]) -> i64 {
    frobenius(gens) + gens.iter().min().unwrap() + gens.iter().max().unwrap()
}

/// Group-level gluing test for numerical semigroups: the subgroups are
/// `g₁ℤ` and `g₂ℤ`, which meet in `lcm(g₁,g₂)ℤ`; the split glues iff that
/// generator lies in both sides.
pub fn numerical_glued_degree(gens: &[i64], left: &[usize], right: &[usize]) -> Option<i64> {
    let a: Vec<i64> = left.iter().map(|&i| gens[i]).collect();
    let b: Vec<i64> = right.iter().map(|&i| gens[i]).collect();
    let d = gcd_all(&a).lcm(&gcd_all(&b));
    (members_up_to(&a, d)[d as usize] && members_up_to(&b, d)[d as usize]).then_some(d)
}

pub fn torsion_group(free_rank: usize, orders: &[i64]) -> AbelianGroup {
    AbelianGroup::new(free_rank, orders.iter().map(|&n| BigInt::from(n)).collect()).unwrap()
}

fn element(s: &Semigroup, key: &Key) -> GroupElement {
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect();
    s.group().element(big(&key.1), big(&key.0)).unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

/// Runs the combinatorial detector and the group-level criterion on every
/// split, plus the lcm test when the generators are given as numbers.
/// Returns the number of glued splits.
pub fn gluing_agreement(s: &Semigroup, numbers: Option<&[i64]>) -> Result<usize, String> {
    let analysis = BettiAnalysis::new(s).map_err(|e| e.to_string())?;
    let mut glued = 0;
    for split in all_splits(s.len()) {
        let detector = check_gluing_with(s, &analysis, &split);
        let criterion = group_oracle(s, &split);
        ensure!(
            detector.is_ok() == criterion.is_ok(),
            "split {split}: detector {detector:?}, group criterion {criterion:?}"
        );
        if let Some(gens) = numbers {
            let d = numerical_glued_degree(gens, split.left(), split.right());
            ensure!(
                detector.is_ok() == d.is_some(),
                "{gens:?} split {split}: lcm oracle says {d:?}"
            );
            if let (Ok(cert), Some(d)) = (&detector, d) {
                ensure!(
                    key_of(&cert.glued_degree) == (vec![], vec![d]),
                    "{gens:?} split {split}: degree"
                );
            }
        }
        if let (Ok(cert), Ok(d)) = (detector, criterion) {
            ensure!(cert.glued_degree == d, "split {split}: {} vs {}", cert.glued_degree, d);
            verify_certificate(s, &cert).map_err(|e| format!("split {split}: certificate {e:?}"))?;
            glued += 1;
        }
    }
    Ok(glued)
}

fn degree_multiset(p: &Presentation) -> Vec<Key> {
    let mut d: Vec<Key> = p.binomials.iter().map(|b| key_of(&b.degree)).collect();
    d.sort();
    d
}

/// Compares Betti degrees and component counts with `brute`, then checks
/// presentation size, seed invariance of the degree multiset and the
/// lattice spanned.
pub fn presentation_agreement(s: &Semigroup, brute: &BTreeMap<Key, usize>) -> Result<(), String> {
    let analysis = BettiAnalysis::new(s).map_err(|e| e.to_string())?;
    let found: BTreeMap<Key, usize> = analysis
        .complexes
        .iter()
        .map(|c| (key_of(&c.fiber.degree), c.component_count()))
        .collect();
    ensure!(&found == brute, "Betti degrees {found:?}, brute force {brute:?}");
    let expected: usize = brute.values().map(|c| c - 1).sum();
    let baseline = analysis.minimal_presentation(s, None).map_err(|e| e.to_string())?;
    let plain = Plain::of(s);
    for seed in [None, Some(1), Some(7), Some(12_345)] {
        let p = analysis.minimal_presentation(s, seed).map_err(|e| e.to_string())?;
        ensure!(
            p.len() == expected,
            "seed {seed:?}: {} binomials, expected {expected}",
            p.len()
        );
        ensure!(
            degree_multiset(&p) == degree_multiset(&baseline),
            "seed {seed:?}: degrees differ"
        );
        ensure!(
            &p.lattice(s.len()) == s.kernel(),
            "seed {seed:?}: lattice differs from the kernel"
        );
        for b in &p.binomials {
            let (plus, minus) = (plain.degree(&b.plus.0), plain.degree(&b.minus.0));
            ensure!(
                key_of(&b.degree) == plus && plus == minus,
                "binomial of degree {} is inhomogeneous",
                b.degree
            );
        }
    }
    Ok(())
}

/// Compares the fiber enumerator with naive enumeration on every degree of
/// weight at most `bound`; returns the number of degrees compared.
pub fn fiber_agreement(s: &Semigroup, bound: i64) -> Result<usize, String> {
    let fibers = Plain::of(s).fibers_up_to(bound);
    for (key, members) in &fibers {
        let fiber = enumerate_fiber(s, &element(s, key));
        let mut found: Vec<Vec<u64>> = fiber.members.iter().map(|f| f.0.clone()).collect();
        found.sort();
        ensure!(&found == members, "degree {key:?}: {found:?} vs {members:?}");
    }
    Ok(fibers.len())
}

pub fn ci_by_brute_force(gens: &[i64]) -> bool {
    let s = Semigroup::numerical(gens).unwrap();
    let brute = Plain::of(&s).betti_up_to(numerical_betti_bound(gens));
    brute.values().map(|c| c - 1).sum::<usize>() == gens.len() - 1
}
