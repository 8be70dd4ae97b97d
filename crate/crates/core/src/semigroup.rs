//! Finitely generated reduced semigroups inside `Z^k × Z/d₁ × … × Z/d_s`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactlin::{kernel_basis, IntMatrix, Lattice, LinError};
use crate::fibers;
use crate::grading::positive_functional;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("a semigroup needs at least one generator")]
    NoGenerators,
    #[error("generator {0} is the zero element")]
    ZeroGenerator(usize),
    #[error("semigroup is not reduced")]
    NotReduced,
    #[error("torsion order {0} is not positive")]
    InvalidTorsionOrder(BigInt),
    #[error("element has {found} {what} coordinates, expected {expected}")]
    Coordinates {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("exponent arithmetic overflowed 64 bits")]
    Overflow,
    #[error(transparent)]
    Lin(#[from] LinError),
}

/// `Z^free_rank × Z/d₁ × … × Z/d_s`, with every `dᵢ >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion_orders: Vec<BigInt>,
}

/// Canonical element: torsion residues in `[0, dᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl GroupElement {
    pub fn free(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }

    /// Free coordinates followed by torsion representatives.
    pub fn lift(&self) -> Vec<BigInt> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.torsion.is_empty() {
            if self.free.len() == 1 {
                write!(f, "{}", self.free[0])
            } else {
                write!(f, "({})", join(&self.free))
            }
        } else {
            write!(f, "({};{})", join(&self.torsion), join(&self.free))
        }
    }
}

impl AbelianGroup {
    /// Order-one factors are dropped.
    pub fn new(free_rank: usize, torsion_orders: Vec<BigInt>) -> Result<Self, SemigroupError> {
        if let Some(bad) = torsion_orders.iter().find(|d| !d.is_positive()) {
            return Err(SemigroupError::InvalidTorsionOrder(bad.clone()));
        }
        Ok(AbelianGroup {
            free_rank,
            torsion_orders: torsion_orders.into_iter().filter(|d| !d.is_one()).collect(),
        })
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion_orders: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[BigInt] {
        &self.torsion_orders
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_orders.is_empty()
    }

    /// Dimension of the lifted coordinate space `Z^{k+s}`.
    pub fn lifted_dim(&self) -> usize {
        self.free_rank + self.torsion_orders.len()
    }

    pub fn element(&self, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<GroupElement, SemigroupError> {
        if free.len() != self.free_rank {
            return Err(SemigroupError::Coordinates {
                what: "free",
                expected: self.free_rank,
                found: free.len(),
            });
        }
        if torsion.len() != self.torsion_orders.len() {
            return Err(SemigroupError::Coordinates {
                what: "torsion",
                expected: self.torsion_orders.len(),
                found: torsion.len(),
            });
        }
        let torsion = torsion
            .into_iter()
            .zip(&self.torsion_orders)
            .map(|(t, d)| t.mod_floor(d))
            .collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn free_element(&self, free: &[i64]) -> Result<GroupElement, SemigroupError> {
        self.element(
            free.iter().map(|&x| x.into()).collect(),
            vec![BigInt::zero(); self.torsion_orders.len()],
        )
    }

    /// Inverse of [`GroupElement::lift`].
    pub fn from_lifted(&self, v: &[BigInt]) -> Result<GroupElement, SemigroupError> {
        if v.len() != self.lifted_dim() {
            return Err(SemigroupError::Coordinates {
                what: "lifted",
                expected: self.lifted_dim(),
                found: v.len(),
            });
        }
        self.element(v[..self.free_rank].to_vec(), v[self.free_rank..].to_vec())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.free_rank],
            torsion: vec![BigInt::zero(); self.torsion_orders.len()],
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion_orders)
                .map(|((x, y), d)| (x + y).mod_floor(d))
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.scale(a, &BigInt::from(-1))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &GroupElement, k: &BigInt) -> GroupElement {
        GroupElement {
            free: a.free.iter().map(|x| x * k).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.torsion_orders)
                .map(|(x, d)| (x * k).mod_floor(d))
                .collect(),
        }
    }

    /// Rows `dᵢ·e_{k+i}` of the lifted space; every subgroup lattice
    /// contains them.
    pub fn relation_rows(&self) -> Vec<Vec<BigInt>> {
        let n = self.lifted_dim();
        self.torsion_orders
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut row = vec![BigInt::zero(); n];
                row[self.free_rank + i] = d.clone();
                row
            })
            .collect()
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::from_vectors(self.lifted_dim(), self.relation_rows()).expect("relation rows have lifted width")
    }
}

/// Exponent vectors handed to [`Semigroup::degree`].
pub type Exponents = [u64];

/// A reduced semigroup with an ordered generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    group: AbelianGroup,
    generators: Vec<GroupElement>,
    kernel: Lattice,
    grading: Vec<BigInt>,
    weights: Vec<BigInt>,
}

impl Semigroup {
    /// Validates the generators, checks reducedness and caches the kernel
    /// lattice and a positive grading.
    pub fn new(group: AbelianGroup, generators: Vec<GroupElement>) -> Result<Self, SemigroupError> {
        if generators.is_empty() {
            return Err(SemigroupError::NoGenerators);
        }
        for (i, g) in generators.iter().enumerate() {
            let g2 = group.element(g.free.clone(), g.torsion.clone())?;
            if &g2 != g {
                return Err(SemigroupError::Coordinates {
                    what: "canonical torsion",
                    expected: group.torsion_orders.len(),
                    found: g.torsion.len(),
                });
            }
            if g.is_zero() {
                return Err(SemigroupError::ZeroGenerator(i));
            }
        }
        let grading = positive_grading_of(&group, &generators)?;
        let weights = generators.iter().map(|g| dot(&grading, &g.free)).collect();
        let kernel = kernel_of(&group, &generators);
        Ok(Semigroup {
            group,
            generators,
            kernel,
            grading,
            weights,
        })
    }

    /// Convenience constructor for subsemigroups of `Z^k`.
    pub fn affine(generators: &[Vec<i64>]) -> Result<Self, SemigroupError> {
        let k = generators.first().map_or(0, |g| g.len());
        let group = AbelianGroup::free(k);
        let gens = generators
            .iter()
            .map(|g| group.free_element(g))
            .collect::<Result<Vec<_>, _>>()?;
        Semigroup::new(group, gens)
    }

    pub fn numerical(generators: &[i64]) -> Result<Self, SemigroupError> {
        let gens: Vec<Vec<i64>> = generators.iter().map(|&g| vec![g]).collect();
        Semigroup::affine(&gens)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn kernel(&self) -> &Lattice {
        &self.kernel
    }

    /// The cached grading functional on the free coordinates.
    pub fn grading(&self) -> &[BigInt] {
        &self.grading
    }

    /// `w(nᵢ)` for every generator, all at least one.
    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn weight_of(&self, m: &GroupElement) -> BigInt {
        dot(&self.grading, &m.free)
    }

    pub fn exponent_weight(&self, alpha: &Exponents) -> BigInt {
        alpha.iter().zip(&self.weights).map(|(&a, w)| BigInt::from(a) * w).sum()
    }

    /// Canonical sort key for degrees: grading value, then coordinates.
    pub fn degree_key(&self, m: &GroupElement) -> (BigInt, GroupElement) {
        (self.weight_of(m), m.clone())
    }

    pub fn degree(&self, alpha: &Exponents) -> Result<GroupElement, SemigroupError> {
        self.check_len(alpha.len())?;
        let mut acc = self.group.zero();
        for (&a, g) in alpha.iter().zip(&self.generators) {
            if a != 0 {
                acc = self.group.add(&acc, &self.group.scale(g, &BigInt::from(a)));
            }
        }
        Ok(acc)
    }

    /// Degree of an arbitrary integer vector (kernel vectors map to zero).
    pub fn degree_of_vector(&self, v: &[BigInt]) -> Result<GroupElement, SemigroupError> {
        self.check_len(v.len())?;
        let mut acc = self.group.zero();
        for (a, g) in v.iter().zip(&self.generators) {
            if !a.is_zero() {
                acc = self.group.add(&acc, &self.group.scale(g, a));
            }
        }
        Ok(acc)
    }

    fn check_len(&self, found: usize) -> Result<(), SemigroupError> {
        if found != self.len() {
            return Err(SemigroupError::Coordinates {
                what: "exponent",
                expected: self.len(),
                found,
            });
        }
        Ok(())
    }

    pub fn is_member(&self, m: &GroupElement) -> bool {
        fibers::find_factorization(self, &self.all_indices(), m).is_some()
    }

    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    /// Indices `i` with `nᵢ` in the semigroup generated by the others.
    pub fn redundant_generators(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                let others: Vec<usize> = (0..self.len()).filter(|&j| j != i).collect();
                !others.is_empty() && fibers::find_factorization(self, &others, &self.generators[i]).is_some()
            })
            .collect()
    }

    pub fn is_minimally_generated(&self) -> bool {
        self.redundant_generators().is_empty()
    }

    /// The semigroup generated by the listed generators, in the same group.
    pub fn restrict(&self, indices: &[usize]) -> Result<Semigroup, SemigroupError> {
        let gens = indices
            .iter()
            .map(|&i| {
                self.generators
                    .get(i)
                    .cloned()
                    .ok_or_else(|| SemigroupError::InvalidSplit(format!("generator index {} out of range", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Semigroup::new(self.group.clone(), gens)
    }

    /// `G(⟨nᵢ : i ∈ indices⟩)` in lifted coordinates, torsion relations
    /// adjoined.
    pub fn subgroup_of(&self, indices: &[usize]) -> Lattice {
        let n = self.group.lifted_dim();
        let rows = indices
            .iter()
            .map(|&i| self.generators[i].lift())
            .chain(self.group.relation_rows());
        Lattice::from_vectors(n, rows).expect("lifted rows have lifted width")
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn positive_grading_of(group: &AbelianGroup, generators: &[GroupElement]) -> Result<Vec<BigInt>, SemigroupError> {
    if generators.iter().any(|g| g.free.iter().all(Zero::is_zero)) {
        return Err(SemigroupError::NotReduced);
    }
    let rows: Vec<Vec<BigInt>> = generators.iter().map(|g| g.free.clone()).collect();
    positive_functional(&rows, group.free_rank).ok_or(SemigroupError::NotReduced)
}

/// Positive grading of the semigroup generated by `generators`, or
/// `NotReduced`.
pub fn positive_grading(group: &AbelianGroup, generators: &[GroupElement]) -> Result<Vec<BigInt>, SemigroupError> {
    positive_grading_of(group, generators)
}

pub fn is_reduced(group: &AbelianGroup, generators: &[GroupElement]) -> bool {
    positive_grading_of(group, generators).is_ok()
}

/// `{α ∈ Z^l : Σ αᵢ nᵢ == 0}`, computed over the lifted space with the
/// torsion relations as extra columns.
fn kernel_of(group: &AbelianGroup, generators: &[GroupElement]) -> Lattice {
    let l = generators.len();
    let n = group.lifted_dim();
    let relations = group.relation_rows();
    let mut m = IntMatrix::zeros(n, l + relations.len());
    for (j, g) in generators.iter().enumerate() {
        for (i, x) in g.lift().into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    for (j, r) in relations.into_iter().enumerate() {
        for (i, x) in r.into_iter().enumerate() {
            m.set(i, l + j, x);
        }
    }
    let full = kernel_basis(&m);
    full.project(&(0..l).collect::<Vec<_>>())
}

/// A bipartition of the generator indices (0-based, sorted).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitSpec {
    left: Vec<usize>,
    right: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl SplitSpec {
    pub fn new(len: usize, mut left: Vec<usize>, mut right: Vec<usize>) -> Result<Self, SemigroupError> {
        left.sort_unstable();
        right.sort_unstable();
        if left.is_empty() || right.is_empty() {
            return Err(SemigroupError::InvalidSplit("both sides must be nonempty".into()));
        }
        let mut all: Vec<usize> = left.iter().chain(&right).copied().collect();
        all.sort_unstable();
        if all != (0..len).collect::<Vec<_>>() {
            return Err(SemigroupError::InvalidSplit(format!(
                "sides must partition generators 1..{len}"
            )));
        }
        Ok(SplitSpec { left, right })
    }

    /// The first `r` generators against the rest.
    pub fn prefix(len: usize, r: usize) -> Result<Self, SemigroupError> {
        SplitSpec::new(len, (0..r).collect(), (r..len).collect())
    }

    /// Parses `1-4|5-8` or `1,3|2,4-6` (1-based).
    pub fn parse(text: &str, len: usize) -> Result<Self, SemigroupError> {
        let (l, r) = text
            .split_once('|')
            .ok_or_else(|| SemigroupError::InvalidSplit(format!("missing '|' in {text:?}")))?;
        SplitSpec::new(len, parse_index_set(l, len)?, parse_index_set(r, len)?)
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn side(&self, side: Side) -> &[usize] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn side_of(&self, index: usize) -> Side {
        if self.left.binary_search(&index).is_ok() {
            Side::Left
        } else {
            Side::Right
        }
    }
}

fn format_index_set(indices: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < indices.len() {
        let start = indices[i];
        let mut end = start;
        while i + 1 < indices.len() && indices[i + 1] == end + 1 {
            i += 1;
            end += 1;
        }
        if end == start {
            parts.push(format!("{}", start + 1));
        } else {
            parts.push(format!("{}-{}", start + 1, end + 1));
        }
        i += 1;
    }
    parts.join(",")
}

impl fmt::Display for SplitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", format_index_set(&self.left), format_index_set(&self.right))
    }
}

fn parse_index_set(text: &str, len: usize) -> Result<Vec<usize>, SemigroupError> {
    let bad = |msg: String| SemigroupError::InvalidSplit(msg);
    let parse_one = |s: &str| -> Result<usize, SemigroupError> {
        let v: usize = s.trim().parse().map_err(|_| bad(format!("not an index: {s:?}")))?;
        if v == 0 || v > len {
            return Err(bad(format!("index {v} outside 1..{len}")));
        }
        Ok(v - 1)
    };
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (parse_one(a)?, parse_one(b)?);
                if a > b {
                    return Err(bad(format!("empty range {part:?}")));
                }
                out.extend(a..=b);
            }
            None => out.push(parse_one(part)?),
        }
    }
    let before = out.len();
    out.sort_unstable();
    out.dedup();
    if out.len() != before {
        return Err(bad(format!("repeated index in {text:?}")));
    }
    Ok(out)
}
