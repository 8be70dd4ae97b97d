//! Generating sets of the semigroup ideal, Betti elements, minimal
//! presentations and indispensable binomials.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::completion;
use crate::exactlin::Lattice;
use crate::fibers::{build_nabla, enumerate_fiber, Factorization, NablaComplex};
use crate::semigroup::{GroupElement, Semigroup, SemigroupError};

/// `X^plus − X^minus` with disjoint supports and `plus > minus`
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binomial {
    pub plus: Factorization,
    pub minus: Factorization,
    pub degree: GroupElement,
}

impl Binomial {
    /// Builds the binomial of two factorizations of the same degree,
    /// dividing out their gcd and fixing the sign.
    pub fn new(s: &Semigroup, a: &Factorization, b: &Factorization) -> Result<Self, SemigroupError> {
        let (mut p, mut q) = (a.0.clone(), b.0.clone());
        for (x, y) in p.iter_mut().zip(q.iter_mut()) {
            let g = (*x).min(*y);
            *x -= g;
            *y -= g;
        }
        let (plus, minus) = if p >= q { (p, q) } else { (q, p) };
        let plus = Factorization(plus);
        let minus = Factorization(minus);
        let degree = s.degree(&plus.0)?;
        Ok(Binomial { plus, minus, degree })
    }

    /// The binomial of a kernel vector `v = plus − minus`.
    pub fn from_vector(s: &Semigroup, v: &[i64]) -> Result<Self, SemigroupError> {
        let plus: Vec<u64> = v.iter().map(|&x| x.max(0) as u64).collect();
        let minus: Vec<u64> = v.iter().map(|&x| (-x).max(0) as u64).collect();
        Binomial::new(s, &Factorization(plus), &Factorization(minus))
    }

    pub fn vector(&self) -> Vec<BigInt> {
        self.plus
            .0
            .iter()
            .zip(&self.minus.0)
            .map(|(&a, &b)| BigInt::from(a) - BigInt::from(b))
            .collect()
    }

    /// Same binomial up to sign.
    pub fn same_up_to_sign(&self, other: &Binomial) -> bool {
        (self.plus == other.plus && self.minus == other.minus) || (self.plus == other.minus && self.minus == other.plus)
    }

    /// Re-indexes a binomial of a restriction `⟨nᵢ : i ∈ indices⟩` into
    /// the ambient generator list of length `len`.
    pub fn embed(&self, indices: &[usize], len: usize) -> Binomial {
        let lift = |f: &Factorization| {
            let mut out = vec![0; len];
            for (k, &i) in indices.iter().enumerate() {
                out[i] = f.0[k];
            }
            Factorization(out)
        };
        let (plus, minus) = (lift(&self.plus), lift(&self.minus));
        let (plus, minus) = if plus >= minus { (plus, minus) } else { (minus, plus) };
        Binomial {
            plus,
            minus,
            degree: self.degree.clone(),
        }
    }
}

/// A binomial generating set of `I_S`, grouped by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub binomials: Vec<Binomial>,
    /// Degrees in canonical order with the indices of their binomials.
    pub by_degree: Vec<(GroupElement, Vec<usize>)>,
    /// The Betti degrees when `minimal`, otherwise the degree set.
    pub betti: Vec<GroupElement>,
    pub minimal: bool,
}

impl Presentation {
    /// Sorts canonically (grading value, degree, then monomials) and groups
    /// by degree.
    pub fn from_binomials(s: &Semigroup, mut binomials: Vec<Binomial>, minimal: bool) -> Self {
        binomials.sort_by(|a, b| {
            s.degree_key(&a.degree)
                .cmp(&s.degree_key(&b.degree))
                .then_with(|| (&a.plus, &a.minus).cmp(&(&b.plus, &b.minus)))
        });
        binomials.dedup();
        let mut by_degree: Vec<(GroupElement, Vec<usize>)> = Vec::new();
        for (i, b) in binomials.iter().enumerate() {
            match by_degree.last_mut() {
                Some((d, idx)) if *d == b.degree => idx.push(i),
                _ => by_degree.push((b.degree.clone(), vec![i])),
            }
        }
        let betti = by_degree.iter().map(|(d, _)| d.clone()).collect();
        Presentation {
            binomials,
            by_degree,
            betti,
            minimal,
        }
    }

    pub fn len(&self) -> usize {
        self.binomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.binomials.is_empty()
    }

    pub fn of_degree(&self, m: &GroupElement) -> Vec<&Binomial> {
        self.by_degree
            .iter()
            .find(|(d, _)| d == m)
            .map(|(_, idx)| idx.iter().map(|&i| &self.binomials[i]).collect())
            .unwrap_or_default()
    }

    /// The lattice spanned by the exponent differences.
    pub fn lattice(&self, len: usize) -> Lattice {
        Lattice::from_vectors(len, self.binomials.iter().map(Binomial::vector))
            .expect("binomials have one exponent per generator")
    }
}

/// Whether the binomials, read as edges between the components holding
/// their two monomials, connect every component of `nabla`.
pub fn connects_components(nabla: &NablaComplex, binomials: &[&Binomial]) -> bool {
    let n = nabla.component_count();
    if n <= 1 {
        return true;
    }
    let locate = |f: &Factorization| nabla.fiber.members.binary_search(f).ok().map(|i| nabla.component_of(i));
    let mut uf = UnionFind::<usize>::new(n);
    let mut joined = 0;
    for b in binomials {
        // a binomial of this degree is stored with its gcd divided out, so
        // its monomials lie in the fiber exactly when the gcd was trivial
        if let (Some(a), Some(c)) = (locate(&b.plus), locate(&b.minus)) {
            if uf.union(a, c) {
                joined += 1;
            }
        }
    }
    joined == n - 1
}

fn to_i64(x: &BigInt) -> Result<i64, SemigroupError> {
    x.to_i64().ok_or(SemigroupError::Overflow)
}

/// A finite binomial generating set of `I_S`, by saturating the lattice
/// basis ideal of `ker S` one variable at a time.
pub fn ideal_generators(s: &Semigroup) -> Result<Presentation, SemigroupError> {
    let weights = s.weights().iter().map(to_i64).collect::<Result<Vec<_>, _>>()?;
    let basis = s
        .kernel()
        .basis()
        .row_iter()
        .map(|r| r.iter().map(to_i64).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let moves = completion::lattice_ideal_generators(basis, &weights)?;
    let binomials = moves
        .iter()
        .map(|v| Binomial::from_vector(s, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Presentation::from_binomials(s, binomials, false))
}

/// The disconnected complexes `∇_m`, one per Betti degree, in canonical
/// degree order.
#[derive(Clone, Debug)]
pub struct BettiAnalysis {
    pub complexes: Vec<NablaComplex>,
    kernel_rank: usize,
}

impl BettiAnalysis {
    pub fn new(s: &Semigroup) -> Result<Self, SemigroupError> {
        let generating = ideal_generators(s)?;
        let complexes: Vec<NablaComplex> = generating
            .by_degree
            .par_iter()
            .map(|(m, _)| build_nabla(enumerate_fiber(s, m)))
            .filter(|nabla| !nabla.is_connected())
            .collect();
        Ok(BettiAnalysis {
            complexes,
            kernel_rank: s.kernel().rank(),
        })
    }

    pub fn degrees(&self) -> Vec<GroupElement> {
        self.complexes.iter().map(|c| c.fiber.degree.clone()).collect()
    }

    pub fn complex(&self, m: &GroupElement) -> Option<&NablaComplex> {
        self.complexes.iter().find(|c| &c.fiber.degree == m)
    }

    /// Star pattern per Betti degree: the hub component is the one holding
    /// the smallest member, and every other component is joined to it.
    /// Representatives are each component's smallest member unless a seed
    /// asks for a random choice.
    pub fn minimal_presentation(&self, s: &Semigroup, seed: Option<u64>) -> Result<Presentation, SemigroupError> {
        let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
        let mut binomials = Vec::new();
        for nabla in &self.complexes {
            let members = &nabla.fiber.members;
            let mut order: Vec<usize> = (0..nabla.component_count()).collect();
            let mut reps: Vec<usize> = nabla.components.iter().map(|c| c[0]).collect();
            if let Some(rng) = rng.as_mut() {
                order.shuffle(rng);
                for (rep, comp) in reps.iter_mut().zip(&nabla.components) {
                    *rep = comp[rng.gen_range(0..comp.len())];
                }
            }
            let hub = &members[reps[order[0]]];
            for &c in &order[1..] {
                binomials.push(Binomial::new(s, hub, &members[reps[c]])?);
            }
        }
        let mut p = Presentation::from_binomials(s, binomials, true);
        p.betti = self.degrees();
        Ok(p)
    }

    pub fn presentation_size(&self) -> usize {
        self.complexes.iter().map(|c| c.component_count() - 1).sum()
    }

    /// The binomials of two-member Betti fibers.
    pub fn indispensable_binomials(&self, s: &Semigroup) -> Result<Vec<Binomial>, SemigroupError> {
        self.complexes
            .iter()
            .filter(|c| c.fiber.len() == 2)
            .map(|c| Binomial::new(s, &c.fiber.members[0], &c.fiber.members[1]))
            .collect()
    }

    pub fn is_uniquely_generated(&self) -> bool {
        self.complexes.iter().all(|c| c.fiber.len() == 2)
    }

    pub fn is_complete_intersection(&self) -> bool {
        self.presentation_size() == self.kernel_rank
    }
}

pub fn betti_elements(s: &Semigroup) -> Result<Vec<GroupElement>, SemigroupError> {
    Ok(BettiAnalysis::new(s)?.degrees())
}

pub fn minimal_presentation(s: &Semigroup, seed: Option<u64>) -> Result<Presentation, SemigroupError> {
    BettiAnalysis::new(s)?.minimal_presentation(s, seed)
}

pub fn indispensable_binomials(s: &Semigroup) -> Result<Vec<Binomial>, SemigroupError> {
    BettiAnalysis::new(s)?.indispensable_binomials(s)
}

pub fn is_uniquely_generated(s: &Semigroup) -> Result<bool, SemigroupError> {
    Ok(BettiAnalysis::new(s)?.is_uniquely_generated())
}

pub fn is_complete_intersection(s: &Semigroup) -> Result<bool, SemigroupError> {
    Ok(BettiAnalysis::new(s)?.is_complete_intersection())
}
