//! Gluing detection: the combinatorial test on Betti complexes, the
//! group-intersection oracle, certificates and their verification.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactlin::Lattice;
use crate::fibers::{find_factorization, split_fiber, NablaComplex};
use crate::presentation::{connects_components, BettiAnalysis, Binomial, Presentation};
use crate::semigroup::{GroupElement, Semigroup, SemigroupError, SplitSpec};

/// Largest generator count accepted by [`enumerate_gluings`] by default.
pub const DEFAULT_SPLIT_CAP: usize = 16;

/// Why a split is not a gluing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotGlued {
    /// Some component of `∇_{d'}` has only mixed monomials.
    MixedOnlyComponent(GroupElement),
    /// No Betti degree has pure monomials from both sides.
    NoGluedDegree,
    /// The only candidate degrees also carry mixed monomials.
    MixedAtGluedDegree(GroupElement),
    /// More than one Betti degree qualifies as the glued degree.
    MultipleGluedDegrees(Vec<GroupElement>),
    /// A Betti degree with both pure sides is not a multiple of `d`.
    NonMultipleSharedDegree(GroupElement),
    /// `G(S₁) ∩ G(S₂)` is not of rank one.
    IntersectionRank(usize),
    /// `G(S₁) ∩ G(S₂)` has rank one but is not cyclic.
    IntersectionNotCyclic,
    /// The generator of `G(S₁) ∩ G(S₂)` is missing from one side.
    GeneratorNotShared(GroupElement),
}

impl fmt::Display for NotGlued {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotGlued::MixedOnlyComponent(d) => {
                write!(f, "a component of the complex at {d} has only mixed monomials")
            }
            NotGlued::NoGluedDegree => write!(f, "no Betti degree has pure monomials on both sides"),
            NotGlued::MixedAtGluedDegree(d) => {
                write!(f, "the fiber at candidate degree {d} contains mixed monomials")
            }
            NotGlued::MultipleGluedDegrees(ds) => {
                let list: Vec<String> = ds.iter().map(ToString::to_string).collect();
                write!(f, "several candidate glued degrees: {}", list.join(", "))
            }
            NotGlued::NonMultipleSharedDegree(d) => {
                write!(
                    f,
                    "Betti degree {d} has both pure sides but is not a multiple of the glued degree"
                )
            }
            NotGlued::IntersectionRank(r) => {
                write!(f, "the intersection of the side groups has free rank {r}")
            }
            NotGlued::IntersectionNotCyclic => {
                write!(f, "the intersection of the side groups is not cyclic")
            }
            NotGlued::GeneratorNotShared(d) => {
                write!(f, "the intersection generator {d} is not in both sides")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum GluingError {
    #[error("not glued: {0}")]
    NotGlued(NotGlued),
    #[error("generators {0:?} are redundant; gluings need a minimal generating set")]
    NotMinimal(Vec<usize>),
    #[error("{len} generators exceed the split enumeration cap of {cap}")]
    TooManyGenerators { len: usize, cap: usize },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// A verified gluing witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingCertificate {
    pub split: SplitSpec,
    pub glued_degree: GroupElement,
    /// `X^{γ_X} − Y^{γ_Y}`, stored with `plus` on the left side.
    pub glued_binomial: Binomial,
    pub left_presentation: Presentation,
    pub right_presentation: Presentation,
    pub combined: Presentation,
}

/// Whether `m = j·d` for some integer `j ≥ 1`.
pub fn is_positive_multiple(s: &Semigroup, m: &GroupElement, d: &GroupElement) -> bool {
    let (wm, wd) = (s.weight_of(m), s.weight_of(d));
    if !wd.is_positive() || !wm.is_positive() {
        return false;
    }
    let (j, r) = wm.div_rem(&wd);
    r.is_zero() && s.group().scale(d, &j) == *m
}

fn require_minimal(s: &Semigroup) -> Result<(), GluingError> {
    let redundant = s.redundant_generators();
    if redundant.is_empty() {
        Ok(())
    } else {
        Err(GluingError::NotMinimal(redundant))
    }
}

/// Runs the three Betti-complex conditions and returns the glued degree.
fn glued_degree_of(s: &Semigroup, complexes: &[NablaComplex], split: &SplitSpec) -> Result<GroupElement, NotGlued> {
    for nabla in complexes {
        for comp in &nabla.components {
            let pure = comp.iter().any(|&i| {
                let f = &nabla.fiber.members[i];
                f.supported_in(split.left()) || f.supported_in(split.right())
            });
            if !pure {
                return Err(NotGlued::MixedOnlyComponent(nabla.fiber.degree.clone()));
            }
        }
    }
    let mut shared = Vec::new();
    let mut qualifying = Vec::new();
    for nabla in complexes {
        let parts = split_fiber(&nabla.fiber, split);
        if !parts.pure_left.is_empty() && !parts.pure_right.is_empty() {
            shared.push(nabla.fiber.degree.clone());
            if parts.mixed.is_empty() {
                qualifying.push(nabla.fiber.degree.clone());
            }
        }
    }
    let d = match qualifying.len() {
        0 => {
            return Err(match shared.first() {
                Some(m) => NotGlued::MixedAtGluedDegree(m.clone()),
                None => NotGlued::NoGluedDegree,
            })
        }
        1 => qualifying.pop().expect("one element"),
        _ => return Err(NotGlued::MultipleGluedDegrees(qualifying)),
    };
    if let Some(bad) = shared.iter().find(|m| **m != d && !is_positive_multiple(s, m, &d)) {
        return Err(NotGlued::NonMultipleSharedDegree(bad.clone()));
    }
    Ok(d)
}

/// Decides whether `S` is the gluing of the two sides of `split`, building
/// a certificate on success.
pub fn check_gluing(s: &Semigroup, split: &SplitSpec) -> Result<GluingCertificate, GluingError> {
    require_minimal(s)?;
    let analysis = BettiAnalysis::new(s)?;
    check_gluing_with(s, &analysis, split)
}

/// [`check_gluing`] against a precomputed Betti analysis; minimality of
/// the generators is the caller's responsibility.
pub fn check_gluing_with(
    s: &Semigroup,
    analysis: &BettiAnalysis,
    split: &SplitSpec,
) -> Result<GluingCertificate, GluingError> {
    check_split_len(s, split)?;
    let d = glued_degree_of(s, &analysis.complexes, split).map_err(GluingError::NotGlued)?;
    let nabla = analysis.complex(&d).expect("glued degree is a Betti degree");
    let parts = split_fiber(&nabla.fiber, split);
    let glued_binomial = Binomial {
        plus: parts.pure_left[0].clone(),
        minus: parts.pure_right[0].clone(),
        degree: d.clone(),
    };
    let side_presentation = |indices: &[usize]| -> Result<Presentation, GluingError> {
        let sub = s.restrict(indices)?;
        let p = crate::presentation::minimal_presentation(&sub, None)?;
        let binomials = p.binomials.iter().map(|b| b.embed(indices, s.len())).collect();
        Ok(Presentation::from_binomials(s, binomials, true))
    };
    let left_presentation = side_presentation(split.left())?;
    let right_presentation = side_presentation(split.right())?;
    let combined = combine(s, &left_presentation, &right_presentation, &glued_binomial);
    Ok(GluingCertificate {
        split: split.clone(),
        glued_degree: d,
        glued_binomial,
        left_presentation,
        right_presentation,
        combined,
    })
}

fn combine(s: &Semigroup, left: &Presentation, right: &Presentation, glued: &Binomial) -> Presentation {
    let mut all: Vec<Binomial> = left.binomials.clone();
    all.extend(right.binomials.iter().cloned());
    let mut g = glued.clone();
    if g.plus < g.minus {
        std::mem::swap(&mut g.plus, &mut g.minus);
    }
    all.push(g);
    Presentation::from_binomials(s, all, true)
}

fn check_split_len(s: &Semigroup, split: &SplitSpec) -> Result<(), GluingError> {
    if split.len() != s.len() {
        return Err(SemigroupError::InvalidSplit(format!(
            "split covers {} generators but the semigroup has {}",
            split.len(),
            s.len()
        ))
        .into());
    }
    Ok(())
}

/// The generator `d` of `G(S₁) ∩ G(S₂)`, required to lie in both sides.
pub fn group_oracle(s: &Semigroup, split: &SplitSpec) -> Result<GroupElement, GluingError> {
    require_minimal(s)?;
    let d = intersection_generator(s, split)?;
    let shared =
        find_factorization(s, split.left(), &d).is_some() && find_factorization(s, split.right(), &d).is_some();
    if !shared {
        return Err(GluingError::NotGlued(NotGlued::GeneratorNotShared(d)));
    }
    Ok(d)
}

/// The generator of positive weight of `G(S₁) ∩ G(S₂)` when that group is
/// infinite cyclic.
pub fn intersection_generator(s: &Semigroup, split: &SplitSpec) -> Result<GroupElement, GluingError> {
    check_split_len(s, split)?;
    let group = s.group();
    let left = s.subgroup_of(split.left());
    let right = s.subgroup_of(split.right());
    let meet = left.intersection(&right).map_err(SemigroupError::from)?;
    let k = group.free_rank();
    let free_rows: Vec<&[BigInt]> = meet
        .basis()
        .row_iter()
        .filter(|r| r[..k].iter().any(|x| !x.is_zero()))
        .collect();
    if free_rows.len() != 1 {
        return Err(GluingError::NotGlued(NotGlued::IntersectionRank(free_rows.len())));
    }
    let row = free_rows[0].to_vec();
    let relations = group.relation_lattice();
    let cyclic = Lattice::from_vectors(group.lifted_dim(), [row.clone()])
        .and_then(|l| l.sum(&relations))
        .map_err(SemigroupError::from)?;
    if !cyclic.contains_lattice(&meet).map_err(SemigroupError::from)? {
        return Err(GluingError::NotGlued(NotGlued::IntersectionNotCyclic));
    }
    let mut d = group.from_lifted(&row)?;
    if s.weight_of(&d).is_negative() {
        d = group.neg(&d);
    }
    Ok(d)
}

/// Every split `{left | right}` of the generators that is a gluing, with
/// certificates, in canonical split order.
pub fn enumerate_gluings(s: &Semigroup, cap: usize) -> Result<Vec<(SplitSpec, GluingCertificate)>, GluingError> {
    let l = s.len();
    if l > cap || l >= usize::BITS as usize {
        return Err(GluingError::TooManyGenerators { len: l, cap });
    }
    require_minimal(s)?;
    let analysis = BettiAnalysis::new(s)?;
    let splits = all_splits(l);
    let found: Vec<Option<(SplitSpec, GluingCertificate)>> = splits
        .into_par_iter()
        .map(|split| match check_gluing_with(s, &analysis, &split) {
            Ok(cert) => Ok(Some((split, cert))),
            Err(GluingError::NotGlued(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_, _>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// The `2^(l−1) − 1` bipartitions with the first generator on the left,
/// ordered by left side.
pub fn all_splits(l: usize) -> Vec<SplitSpec> {
    if l < 2 {
        return Vec::new();
    }
    let mut out: Vec<SplitSpec> = (0u64..(1u64 << (l - 1)) - 1)
        .map(|mask| {
            // bit i set puts generator i + 1 on the left
            let left: Vec<usize> = std::iter::once(0)
                .chain((1..l).filter(|&i| mask >> (i - 1) & 1 == 1))
                .collect();
            let right: Vec<usize> = (0..l).filter(|i| !left.contains(i)).collect();
            SplitSpec::new(l, left, right).expect("bipartition")
        })
        .collect();
    out.sort_by(|a, b| (a.left().len(), a.left()).cmp(&(b.left().len(), b.left())));
    out
}

/// Why a certificate fails independent verification.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateFlaw {
    #[error("split does not match the semigroup")]
    SplitShape,
    #[error("glued binomial must be pure left minus pure right, both nonzero")]
    GluedSupport,
    #[error("glued binomial is not homogeneous of the glued degree")]
    GluedDegree,
    #[error("a side presentation uses generators from the other side")]
    SideSupport,
    #[error("a binomial is not homogeneous")]
    Inhomogeneous,
    #[error("combined presentation is not the union of its parts")]
    Combined,
    #[error("combined binomials do not span the kernel lattice")]
    Lattice,
    #[error("combined binomials leave the complex at {0} disconnected")]
    Spanning(GroupElement),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// Independent re-check of a certificate: supports, homogeneity, the
/// kernel lattice, and that each Betti complex is spanned.
pub fn verify_certificate(s: &Semigroup, cert: &GluingCertificate) -> Result<(), CertificateFlaw> {
    let split = &cert.split;
    if split.len() != s.len() {
        return Err(CertificateFlaw::SplitShape);
    }
    let g = &cert.glued_binomial;
    if g.plus.0.len() != s.len()
        || g.minus.0.len() != s.len()
        || g.plus.is_zero()
        || g.minus.is_zero()
        || !g.plus.supported_in(split.left())
        || !g.minus.supported_in(split.right())
    {
        return Err(CertificateFlaw::GluedSupport);
    }
    if s.degree(&g.plus.0)? != cert.glued_degree || s.degree(&g.minus.0)? != cert.glued_degree {
        return Err(CertificateFlaw::GluedDegree);
    }
    for (p, side) in [
        (&cert.left_presentation, split.left()),
        (&cert.right_presentation, split.right()),
    ] {
        for b in &p.binomials {
            if !b.plus.supported_in(side) || !b.minus.supported_in(side) {
                return Err(CertificateFlaw::SideSupport);
            }
        }
    }
    for b in &cert.combined.binomials {
        if b.plus.0.len() != s.len() || s.degree(&b.plus.0)? != b.degree || s.degree(&b.minus.0)? != b.degree {
            return Err(CertificateFlaw::Inhomogeneous);
        }
    }
    let expected = combine(s, &cert.left_presentation, &cert.right_presentation, g);
    if expected.binomials != cert.combined.binomials {
        return Err(CertificateFlaw::Combined);
    }
    if cert.combined.lattice(s.len()) != *s.kernel() {
        return Err(CertificateFlaw::Lattice);
    }
    let analysis = BettiAnalysis::new(s)?;
    for nabla in &analysis.complexes {
        if !connects_components(nabla, &cert.combined.of_degree(&nabla.fiber.degree)) {
            return Err(CertificateFlaw::Spanning(nabla.fiber.degree.clone()));
        }
    }
    Ok(())
}
