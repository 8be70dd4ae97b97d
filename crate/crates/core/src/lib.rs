//! Glued semigroups: fibers, gcd-complexes, Betti elements, minimal
//! presentations, gluing detection and gluing-based construction, for
//! finitely generated reduced cancellative semigroups that may carry torsion.

pub mod builder;
pub mod catalog;
pub mod cli;
mod completion;
pub mod exactlin;
pub mod fibers;
pub mod gluing;
pub mod grading;
pub mod presentation;
pub mod semigroup;

pub use builder::{GlueRecipe, GlueResult};
pub use exactlin::{IntMatrix, Lattice, SmithDecomposition};
pub use fibers::{Factorization, Fiber, NablaComplex};
pub use gluing::{GluingCertificate, GluingError, NotGlued};
pub use presentation::{BettiAnalysis, Binomial, Presentation};
pub use semigroup::{AbelianGroup, GroupElement, Semigroup, SemigroupError, Side, SplitSpec};
