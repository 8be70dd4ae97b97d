mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use semiglue::builder::{glue, GlueRecipe};
use semiglue::catalog::{four_six_nine, free_plane, skew_plane, thoma, three_five_seven};
use semiglue::exactlin::to_bigints;
use semiglue::Semigroup;

use common::{
    ci_by_brute_force, fiber_agreement, gcd_all, gluing_agreement, numerical_betti_bound, numerical_minimal,
    presentation_agreement, Plain, CORPUS,
};

fn numerical(gens: &[i64]) -> Semigroup {
    Semigroup::numerical(gens).unwrap()
}

fn minimal_numerical(max: i64, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(2..=max, len)
        .prop_map(|s| s.into_iter().collect::<Vec<_>>())
        .prop_filter("coprime, minimally generated", |g| {
            gcd_all(g) == 1 && numerical_minimal(g)
        })
}

#[test]
fn detector_matches_oracles_on_corpus() {
    let mut count = 0;
    let mut glued = 0;
    for &gens in CORPUS {
        assert!(numerical_minimal(gens), "{gens:?}");
        glued += gluing_agreement(&numerical(gens), Some(gens)).unwrap();
        count += 1;
    }
    for s in [thoma(), skew_plane(), free_plane()] {
        glued += gluing_agreement(&s, None).unwrap();
        count += 1;
    }
    assert!(count >= 25);
    assert!(glued >= 10, "corpus should contain gluings, found {glued}");
    // {4,6}|{9} at 18 and {4}|{6,9} at 12
    assert_eq!(gluing_agreement(&four_six_nine(), Some(&[4, 6, 9])), Ok(2));
    assert_eq!(gluing_agreement(&three_five_seven(), Some(&[3, 5, 7])), Ok(0));
}

#[test]
fn thoma_presentation_against_brute_force() {
    let s = thoma();
    // every Betti degree of this semigroup has weight below 140
    presentation_agreement(&s, &Plain::of(&s).betti_up_to(140)).unwrap();
}

#[test]
fn torsion_presentation_against_brute_force() {
    let g = common::torsion_group(1, &[4]);
    let gens = [(3, 1), (5, 0), (7, 2), (4, 3)]
        .iter()
        .map(|&(f, t)| g.element(to_bigints(&[f]), to_bigints(&[t])).unwrap())
        .collect();
    let s = Semigroup::new(g, gens).unwrap();
    presentation_agreement(&s, &Plain::of(&s).betti_up_to(60)).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn detector_matches_oracles(gens in minimal_numerical(30, 2..=5)) {
        gluing_agreement(&numerical(&gens), Some(&gens)).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn presentations_match_brute_force(gens in minimal_numerical(25, 2..=4)) {
        let s = numerical(&gens);
        presentation_agreement(&s, &Plain::of(&s).betti_up_to(numerical_betti_bound(&gens))).map_err(TestCaseError::fail)?;
        // pairwise relations lie in the presentation lattice
        let lattice = semiglue::presentation::minimal_presentation(&s, Some(3)).unwrap().lattice(s.len());
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let mut v = vec![BigInt::from(0); gens.len()];
                v[i] = BigInt::from(gens[j]);
                v[j] = BigInt::from(-gens[i]);
                prop_assert!(lattice.contains(&v).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn complete_intersection_law(
        a in minimal_numerical(12, 2..=3),
        b in minimal_numerical(12, 2..=3),
        gx in prop::collection::vec(0u64..3, 3),
        gy in prop::collection::vec(0u64..3, 3),
    ) {
        let gx = gx[..a.len()].to_vec();
        let gy = gy[..b.len()].to_vec();
        let recipe = GlueRecipe::new(numerical(&a), numerical(&b), gx, gy);
        prop_assume!(recipe.is_ok());
        let recipe = recipe.unwrap();
        prop_assume!(recipe.satisfies_glue_condition());
        let out = glue(&recipe).unwrap();
        prop_assert_eq!(out.semigroup.kernel().rank(), (a.len() - 1) + (b.len() - 1) + 1);
        prop_assume!(out.minimal);
        prop_assert!(out.glued);
        prop_assert_eq!(out.ci_flag(), ci_by_brute_force(&a) && ci_by_brute_force(&b));
    }
}

#[derive(Clone, Debug)]
enum Sample {
    Numerical(Vec<i64>),
    Plane(Vec<(i64, i64)>),
    Torsion(i64, Vec<(i64, i64)>),
}

impl Sample {
    fn build(&self) -> Option<Semigroup> {
        match self {
            Sample::Numerical(g) => Semigroup::numerical(g).ok(),
            Sample::Plane(g) => Semigroup::affine(&g.iter().map(|&(x, y)| vec![x, y]).collect::<Vec<_>>()).ok(),
            Sample::Torsion(n, g) => {
                let group = common::torsion_group(1, &[*n]);
                let gens = g
                    .iter()
                    .map(|&(f, t)| group.element(to_bigints(&[f]), to_bigints(&[t])).unwrap())
                    .collect();
                Semigroup::new(group, gens).ok()
            }
        }
    }
}

fn sample() -> impl Strategy<Value = Sample> {
    prop_oneof![
        prop::collection::vec(2i64..13, 1..=5).prop_map(Sample::Numerical),
        prop::collection::vec((0i64..6, 0i64..6).prop_filter("weight", |(x, y)| x + y >= 2), 1..=5)
            .prop_map(Sample::Plane),
        (2i64..6, prop::collection::vec((2i64..9, 0i64..6), 1..=5)).prop_map(|(n, g)| Sample::Torsion(n, g)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fibers_match_naive_enumeration(sample in sample()) {
        let s = sample.build();
        prop_assume!(s.is_some());
        let s = s.unwrap();
        fiber_agreement(&s, 30).map_err(TestCaseError::fail)?;
    }
}
