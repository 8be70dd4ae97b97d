//! Gluing two semigroups along a chosen binomial, and searching for glue
//! vectors that keep the result torsion-free.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactlin::{smith_normal_form, IntMatrix, Lattice};
use crate::gluing::{check_gluing_with, intersection_generator, GluingCertificate, GluingError};
use crate::presentation::BettiAnalysis;
use crate::semigroup::{AbelianGroup, GroupElement, Semigroup, SemigroupError, SplitSpec};

#[derive(Debug, Error)]
pub enum BuilderError {
    #[error("{which} is not minimally generated (redundant generators {redundant:?})")]
    NotMinimal { which: &'static str, redundant: Vec<usize> },
    #[error("{which} has torsion; the affine search needs torsion-free inputs")]
    NotAffine { which: &'static str },
    #[error("{which} must be nonzero")]
    ZeroGamma { which: &'static str },
    #[error("{which} has {found} entries, expected {expected}")]
    GammaLength {
        which: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("no affine glue vector among the first {budget} candidates")]
    Exhausted { budget: u64 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Gluing(#[from] GluingError),
}

/// Two semigroups and the exponents of the binomial that glues them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueRecipe {
    pub t1: Semigroup,
    pub t2: Semigroup,
    pub gamma_x: Vec<u64>,
    pub gamma_y: Vec<u64>,
}

impl GlueRecipe {
    pub fn new(t1: Semigroup, t2: Semigroup, gamma_x: Vec<u64>, gamma_y: Vec<u64>) -> Result<Self, BuilderError> {
        check_gamma("gamma_x", &gamma_x, t1.len())?;
        check_gamma("gamma_y", &gamma_y, t2.len())?;
        Ok(GlueRecipe {
            t1,
            t2,
            gamma_x,
            gamma_y,
        })
    }

    /// `(Σ γ_X)(Σ γ_Y) > 1`.
    pub fn satisfies_glue_condition(&self) -> bool {
        glue_condition(&self.gamma_x, &self.gamma_y)
    }
}

fn check_gamma(which: &'static str, gamma: &[u64], len: usize) -> Result<(), BuilderError> {
    if gamma.len() != len {
        return Err(BuilderError::GammaLength {
            which,
            expected: len,
            found: gamma.len(),
        });
    }
    if gamma.iter().all(|&g| g == 0) {
        return Err(BuilderError::ZeroGamma { which });
    }
    Ok(())
}

pub fn glue_condition(gamma_x: &[u64], gamma_y: &[u64]) -> bool {
    let sx: u128 = gamma_x.iter().map(|&g| g as u128).sum();
    let sy: u128 = gamma_y.iter().map(|&g| g as u128).sum();
    sx.saturating_mul(sy) > 1
}

fn require_minimal(which: &'static str, t: &Semigroup) -> Result<(), BuilderError> {
    let redundant = t.redundant_generators();
    if redundant.is_empty() {
        Ok(())
    } else {
        Err(BuilderError::NotMinimal { which, redundant })
    }
}

/// The glued semigroup with its construction data and flags.
#[derive(Clone, Debug)]
pub struct GlueResult {
    pub semigroup: Semigroup,
    /// Rows `[L₁ 0; 0 L₂; γ_X −γ_Y]`.
    pub matrix: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
    pub split: SplitSpec,
    /// `B₁·γ_X`.
    pub glued_degree: GroupElement,
    pub minimal: bool,
    pub glued: bool,
    pub complete_intersection: bool,
    pub affine: bool,
    pub certificate: Option<GluingCertificate>,
}

impl GlueResult {
    pub fn b1(&self) -> &[GroupElement] {
        &self.semigroup.generators()[..self.split.left().len()]
    }

    pub fn b2(&self) -> &[GroupElement] {
        &self.semigroup.generators()[self.split.left().len()..]
    }

    pub fn ci_flag(&self) -> bool {
        self.complete_intersection
    }
}

/// The block matrix whose rows span the kernel of the glued semigroup.
pub fn glue_matrix(recipe: &GlueRecipe) -> IntMatrix {
    let (r, t) = (recipe.t1.len(), recipe.t2.len());
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for row in recipe.t1.kernel().basis().row_iter() {
        let mut v = row.to_vec();
        v.resize(r + t, BigInt::zero());
        rows.push(v);
    }
    for row in recipe.t2.kernel().basis().row_iter() {
        let mut v = vec![BigInt::zero(); r];
        v.extend(row.iter().cloned());
        rows.push(v);
    }
    rows.push(
        recipe
            .gamma_x
            .iter()
            .map(|&g| BigInt::from(g))
            .chain(recipe.gamma_y.iter().map(|&g| -BigInt::from(g)))
            .collect(),
    );
    IntMatrix::from_rows(r + t, rows).expect("rows have r + t entries")
}

/// The semigroup generated by the images of the unit vectors in
/// `Z^{r+t} / rowspace(A)`, read off the Smith normal form of `A`.
pub fn quotient_semigroup(a: &IntMatrix) -> Result<(Semigroup, Vec<BigInt>), BuilderError> {
    let snf = smith_normal_form(a);
    let n = a.cols();
    let rank = snf.rank();
    let torsion_slots: Vec<(usize, BigInt)> = snf
        .invariant_factors
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_one())
        .map(|(i, f)| (i, f.clone()))
        .collect();
    let group = AbelianGroup::new(n - rank, torsion_slots.iter().map(|(_, f)| f.clone()).collect())?;
    let generators = (0..n)
        .map(|j| {
            let row = snf.q.row(j);
            let free = row[rank..].to_vec();
            let torsion = torsion_slots.iter().map(|(i, _)| row[*i].clone()).collect();
            group.element(free, torsion)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let s = Semigroup::new(group, generators)?;
    if *s.kernel() != Lattice::from_generators(a) {
        return Err(BuilderError::Inconsistent(
            "kernel of the quotient semigroup differs from the row lattice".into(),
        ));
    }
    Ok((s, snf.invariant_factors))
}

/// Builds the glued semigroup and evaluates minimality, gluing, complete
/// intersection and affinity.
pub fn glue(recipe: &GlueRecipe) -> Result<GlueResult, BuilderError> {
    require_minimal("T1", &recipe.t1)?;
    require_minimal("T2", &recipe.t2)?;
    let matrix = glue_matrix(recipe);
    let (semigroup, invariant_factors) = quotient_semigroup(&matrix)?;
    let (r, t) = (recipe.t1.len(), recipe.t2.len());
    let split = SplitSpec::prefix(r + t, r)?;
    let mut gx = recipe.gamma_x.clone();
    gx.resize(r + t, 0);
    let glued_degree = semigroup.degree(&gx)?;
    let analysis = BettiAnalysis::new(&semigroup)?;
    let minimal = semigroup.is_minimally_generated();
    let certificate = if minimal {
        match check_gluing_with(&semigroup, &analysis, &split) {
            Ok(cert) => Some(cert),
            Err(GluingError::NotGlued(_)) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let affine = semigroup.group().is_torsion_free();
    Ok(GlueResult {
        glued: certificate.is_some(),
        complete_intersection: analysis.is_complete_intersection(),
        semigroup,
        matrix,
        invariant_factors,
        split,
        glued_degree,
        minimal,
        affine,
        certificate,
    })
}

/// Recomputes `G(⟨B₁⟩) ∩ G(⟨B₂⟩)` and checks it is generated by
/// `B₁·γ_X = B₂·γ_Y`.
pub fn group_intersection_check(recipe: &GlueRecipe, result: &GlueResult) -> Result<GroupElement, BuilderError> {
    let s = &result.semigroup;
    let (r, t) = (recipe.t1.len(), recipe.t2.len());
    let mut gy = vec![0; r];
    gy.extend(&recipe.gamma_y);
    let from_right = s.degree(&gy)?;
    if from_right != result.glued_degree {
        return Err(BuilderError::Inconsistent(format!(
            "B1·γX = {} but B2·γY = {}",
            result.glued_degree, from_right
        )));
    }
    debug_assert_eq!(s.len(), r + t);
    let d = intersection_generator(s, &result.split)?;
    if d != result.glued_degree {
        return Err(BuilderError::Inconsistent(format!(
            "intersection generated by {d}, expected {}",
            result.glued_degree
        )));
    }
    Ok(d)
}

/// The torsion-freeness test for glue vectors: the gcd of the trailing
/// coordinates of `γ_X·Q₁` and `−γ_Y·Q₂` must be one.
#[derive(Clone, Debug)]
pub struct AffineCriterion {
    /// Trailing columns of `Q₁` and `Q₂`, stored as rows.
    tail_x: Vec<Vec<BigInt>>,
    tail_y: Vec<Vec<BigInt>>,
}

impl AffineCriterion {
    pub fn new(t1: &Semigroup, t2: &Semigroup) -> Result<Self, BuilderError> {
        if !t1.group().is_torsion_free() {
            return Err(BuilderError::NotAffine { which: "T1" });
        }
        if !t2.group().is_torsion_free() {
            return Err(BuilderError::NotAffine { which: "T2" });
        }
        Ok(AffineCriterion {
            tail_x: trailing_columns(t1),
            tail_y: trailing_columns(t2),
        })
    }

    /// `γ'` restricted to the zero columns of `D₁` and `D₂`.
    pub fn trailing_coordinates(&self, gamma_x: &[u64], gamma_y: &[u64]) -> Vec<BigInt> {
        let apply = |cols: &[Vec<BigInt>], g: &[u64], sign: i64| -> Vec<BigInt> {
            cols.iter()
                .map(|c| c.iter().zip(g).map(|(q, &x)| q * BigInt::from(x) * sign).sum())
                .collect()
        };
        let mut out = apply(&self.tail_x, gamma_x, 1);
        out.extend(apply(&self.tail_y, gamma_y, -1));
        out
    }

    pub fn is_affine(&self, gamma_x: &[u64], gamma_y: &[u64]) -> bool {
        self.trailing_coordinates(gamma_x, gamma_y)
            .iter()
            .fold(BigInt::zero(), |g, x| g.gcd(x))
            .is_one()
    }

    /// The glue condition together with the gcd test.
    pub fn accepts(&self, gamma_x: &[u64], gamma_y: &[u64]) -> bool {
        glue_condition(gamma_x, gamma_y) && self.is_affine(gamma_x, gamma_y)
    }
}

fn trailing_columns(t: &Semigroup) -> Vec<Vec<BigInt>> {
    let basis = t.kernel().basis();
    let l = t.len();
    if basis.rows() == 0 {
        return (0..l)
            .map(|j| (0..l).map(|i| BigInt::from((i == j) as i64)).collect())
            .collect();
    }
    let snf = smith_normal_form(basis);
    (snf.rank()..l).map(|j| snf.q.column(j)).collect()
}

/// Compositions of `total` into `parts` nonnegative entries, in ascending
/// lexicographic order.
struct Compositions {
    current: Option<Vec<u64>>,
}

impl Compositions {
    fn new(total: u64, parts: usize) -> Self {
        let mut v = vec![0; parts];
        if let Some(last) = v.last_mut() {
            *last = total;
        }
        Compositions {
            current: (parts > 0).then_some(v),
        }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut rest = 0;
        let mut next = None;
        for i in (0..k.saturating_sub(1)).rev() {
            rest += out[i + 1];
            if rest > 0 {
                let mut v = out.clone();
                v[i] += 1;
                for x in v[i + 1..].iter_mut() {
                    *x = 0;
                }
                v[k - 1] = rest - 1;
                next = Some(v);
                break;
            }
        }
        self.current = next;
        Some(out)
    }
}

/// Outcome of [`affine_gamma_search`].
#[derive(Clone, Debug)]
pub struct AffineSearchHit {
    pub recipe: GlueRecipe,
    pub result: GlueResult,
    /// Candidates enumerated, including the accepted one.
    pub candidates: u64,
    /// Candidates that passed the gcd test but failed post-hoc checks.
    pub rejected: Vec<(Vec<u64>, Vec<u64>)>,
}

/// Enumerates `(γ_X, γ_Y)` by increasing coordinate sum, lexicographically
/// within a sum, and returns the first pair that passes the glue condition
/// and the gcd test and whose glued semigroup is affine, minimally
/// generated and glued. Every enumerated pair counts against `budget`.
pub fn affine_gamma_search(t1: &Semigroup, t2: &Semigroup, budget: u64) -> Result<AffineSearchHit, BuilderError> {
    require_minimal("T1", t1)?;
    require_minimal("T2", t2)?;
    let criterion = AffineCriterion::new(t1, t2)?;
    let (r, t) = (t1.len(), t2.len());
    let mut count = 0u64;
    let mut rejected = Vec::new();
    let mut total = 0u64;
    loop {
        for v in Compositions::new(total, r + t) {
            if count >= budget {
                return Err(BuilderError::Exhausted { budget });
            }
            count += 1;
            let (gx, gy) = v.split_at(r);
            if !criterion.accepts(gx, gy) {
                continue;
            }
            let recipe = GlueRecipe::new(t1.clone(), t2.clone(), gx.to_vec(), gy.to_vec())?;
            let result = glue(&recipe)?;
            if result.affine && result.minimal && result.glued {
                return Ok(AffineSearchHit {
                    recipe,
                    result,
                    candidates: count,
                    rejected,
                });
            }
            rejected.push((gx.to_vec(), gy.to_vec()));
        }
        total += 1;
    }
}
