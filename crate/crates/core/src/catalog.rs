//! Named semigroups used throughout the documentation and test suites.

use crate::semigroup::Semigroup;

/// Eight generators in `N²` whose first four and last four generators glue
/// at degree `(13,13)`.
pub fn thoma() -> Semigroup {
    Semigroup::affine(&[
        vec![13, 0],
        vec![5, 8],
        vec![2, 11],
        vec![0, 13],
        vec![4, 4],
        vec![6, 6],
        vec![7, 7],
        vec![9, 9],
    ])
    .expect("valid generators")
}

/// `⟨(-7,2),(11,1),(5,0),(0,1)⟩ ⊂ Z²`.
pub fn skew_plane() -> Semigroup {
    Semigroup::affine(&[vec![-7, 2], vec![11, 1], vec![5, 0], vec![0, 1]]).expect("valid generators")
}

/// `⟨3,5,7⟩`.
pub fn three_five_seven() -> Semigroup {
    Semigroup::numerical(&[3, 5, 7]).expect("valid generators")
}

/// `⟨4,6,9⟩`, glued along `{4,6}|{9}` at 18.
pub fn four_six_nine() -> Semigroup {
    Semigroup::numerical(&[4, 6, 9]).expect("valid generators")
}

/// The free semigroup `N²` on the unit vectors.
pub fn free_plane() -> Semigroup {
    Semigroup::affine(&[vec![1, 0], vec![0, 1]]).expect("valid generators")
}
