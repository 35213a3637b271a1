//! Property-based invariants: Serre duality on random classes, cone
//! membership under scaling and addition, and exactness of the section
//! sequences at random bidegrees.

use num::{BigInt, BigRational};
use proptest::prelude::*;
use qample::cohomology::{CharLabel, Engine};
use qample::geometry::Geometry;
use qample::positivity::{n_minus_1_ample, q_nef_i64};
use qample::ring::{koszul_spaces, verify_sequence4, GradedRing};

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn serre_duality_on_random_quadric_classes(a in -8i64..=8, b in -8i64..=8) {
        let g = Geometry::builtin("p1xp1").unwrap();
        let e = Engine::new();
        let h = g.cohomology(&e, &[a, b], CharLabel::Zero).unwrap();
        // K = (-2, -2) on the quadric.
        let hd = g.cohomology(&e, &[-2 - a, -2 - b], CharLabel::Zero).unwrap();
        prop_assert_eq!(h[0], hd[2]);
        prop_assert_eq!(h[1], hd[1]);
        prop_assert_eq!(h[2], hd[0]);
    }

    #[test]
    fn pseudoeffective_cone_is_closed_under_scaling_and_addition(
        a in -5i64..=5, b in -5i64..=5, c in -5i64..=5, d in -5i64..=5, k in 1i64..=4
    ) {
        let g = Geometry::builtin("hirzebruch1").unwrap();
        let v = vec![rational(a), rational(b)];
        let w = vec![rational(c), rational(d)];
        let pv = g.is_pseudoeffective(&v).unwrap();
        let pw = g.is_pseudoeffective(&w).unwrap();
        let scaled = vec![rational(k * a), rational(k * b)];
        prop_assert_eq!(g.is_pseudoeffective(&scaled).unwrap(), pv);
        if pv && pw {
            let sum = vec![rational(a + c), rational(b + d)];
            prop_assert!(g.is_pseudoeffective(&sum).unwrap());
        }
    }

    #[test]
    fn top_minus_one_ample_is_open_under_polarization_bumps(a in -5i64..=5, b in -5i64..=5) {
        let g = Geometry::builtin("p1xp1").unwrap();
        if n_minus_1_ample(&g, &[a, b]).unwrap() {
            // Adding an ample class preserves the open condition.
            prop_assert!(n_minus_1_ample(&g, &[a + 1, b + 1]).unwrap());
        }
    }

    #[test]
    fn zero_nef_is_monotone_under_nef_bumps(a in -4i64..=4, b in -4i64..=4) {
        let g = Geometry::builtin("p1xp1").unwrap();
        if q_nef_i64(&g, &[a, b], 0).unwrap() {
            prop_assert!(q_nef_i64(&g, &[a + 1, b], 0).unwrap());
            prop_assert!(q_nef_i64(&g, &[a, b + 1], 0).unwrap());
        }
    }
}

#[test]
fn section_sequences_are_exact_on_the_quadric() {
    let g = Geometry::builtin("p1xp1").unwrap();
    let e = Engine::new();
    let a = GradedRing::section_ring(&g, &e, &g.polarization(), 7).unwrap();
    let spaces = koszul_spaces(&a, 4).unwrap();
    for j in 0..=3 {
        for l in 0..=3 {
            let rep = verify_sequence4(&a, &spaces, j, l).unwrap();
            assert!(rep.exact, "inexact at j = {j}, l = {l}: {:?}", rep.homology);
        }
    }
}
