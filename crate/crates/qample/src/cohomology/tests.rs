use super::regularity::{asymptotic_h, is_regular_at, regularity};
use super::*;
use crate::geometry::Geometry;
use num::BigRational;

fn toric(name: &str) -> Geometry {
    Geometry::builtin(name).unwrap()
}

#[test]
fn p1_matches_oracle() {
    let g = toric("p1");
    let e = Engine::new();
    for d in -6..=6 {
        let dims = g.cohomology(&e, &[d], CharLabel::Zero).unwrap();
        assert_eq!(dims, vec![oracles::p1_h0(d), oracles::p1_h1(d)], "O({d})");
    }
}

#[test]
fn p2_classics() {
    let g = toric("p2");
    let e = Engine::new();
    let h0 = |d: i64| if d >= 0 { ((d + 1) * (d + 2) / 2) as u64 } else { 0 };
    for d in -7..=7 {
        let dims = g.cohomology(&e, &[d], CharLabel::Zero).unwrap();
        assert_eq!(dims[0], h0(d), "h^0(O({d}))");
        assert_eq!(dims[1], 0, "h^1(O({d}))");
        assert_eq!(dims[2], h0(-d - 3), "h^2(O({d}))");
    }
}

#[test]
fn p1xp1_grid_matches_kunneth() {
    let g = toric("p1xp1");
    let e = Engine::new();
    for a in -4..=4 {
        for b in -4..=4 {
            let dims = g.cohomology(&e, &[a, b], CharLabel::Zero).unwrap();
            assert_eq!(dims, oracles::p1xp1_dims(a, b), "O({a},{b})");
            let kun = oracles::kunneth_oracle(
                &[oracles::p1_h0(a), oracles::p1_h1(a)],
                &[oracles::p1_h0(b), oracles::p1_h1(b)],
            );
            assert_eq!(dims, kun);
        }
    }
}

#[test]
fn split_bundle_matches_pushforward_oracle() {
    let g = toric("totaro3fold");
    let e = Engine::new();
    for a in -3..=3 {
        for b in -3..=3 {
            // c = 0: no fiber contribution, just the pulled-back bundle.
            let dims = g.cohomology(&e, &[a, b, 0], CharLabel::Zero).unwrap();
            let mut base = oracles::p1xp1_dims(a, b);
            base.push(0);
            assert_eq!(dims, base, "pi^*O({a},{b})");
            for c in 1..=3 {
                let dims = g.cohomology(&e, &[a, b, c], CharLabel::Zero).unwrap();
                assert_eq!(
                    dims,
                    oracles::split_bundle_oracle(a, b, c).unwrap(),
                    "O({a},{b},{c})"
                );
            }
        }
    }
}

#[test]
fn euler_characteristic_is_the_classical_polynomial() {
    let g = toric("p1xp1");
    let Geometry::Toric(t) = &g else { panic!() };
    let e = Engine::new();
    for a in -5i64..=5 {
        for b in -5i64..=5 {
            let table = e.cohomology(&t.basis.lift_i64(&[a, b]), CharLabel::Zero).unwrap();
            assert_eq!(table.euler(), ((a + 1) * (b + 1)) as i128);
        }
    }
}

#[test]
fn prime_characteristic_agrees_here_and_reports_both() {
    let g = toric("p1xp1");
    let e = Engine::new();
    let Geometry::Toric(t) = &g else { panic!() };
    for class in [[2, -3], [-2, -2], [0, 4]] {
        let table = e.cohomology(&t.basis.lift_i64(&class), CharLabel::Prime(2)).unwrap();
        assert!(!table.torsion);
        assert_eq!(table.dims_char0.as_ref().unwrap(), &table.dims);
        assert_eq!(table.dims, oracles::p1xp1_dims(class[0], class[1]));
    }
}

#[test]
fn composite_characteristic_rejected() {
    let g = toric("p1");
    let e = Engine::new();
    assert!(matches!(
        g.cohomology(&e, &[1], CharLabel::Prime(6)),
        Err(Error::UnsupportedCharacteristic(6))
    ));
}

#[test]
fn per_weight_breakdown_sums_to_dims() {
    let opts = EngineOptions { per_weight: true, ..Default::default() };
    let e = Engine::with_options(opts);
    let g = toric("p1xp1");
    let Geometry::Toric(t) = &g else { panic!() };
    for class in [[2, 0], [-3, 1], [-2, -2]] {
        let table = e.cohomology(&t.basis.lift_i64(&class), CharLabel::Zero).unwrap();
        let pw = table.per_weight.as_ref().unwrap();
        let mut sums = vec![0u64; 3];
        for c in pw {
            sums[c.degree] += c.multiplicity;
        }
        assert_eq!(sums, table.dims, "{class:?}");
        // weights contributing to h^0 of an effective bundle are the
        // lattice points of the polytope and have multiplicity one
        if class == [2, 0] {
            assert!(pw.iter().filter(|c| c.degree == 0).all(|c| c.multiplicity == 1));
        }
    }
}

#[test]
fn box_cap_reports_region_overflow() {
    let opts = EngineOptions { max_box_points: 4, ..Default::default() };
    let e = Engine::with_options(opts);
    let g = toric("p1xp1");
    let Geometry::Toric(t) = &g else { panic!() };
    assert!(matches!(
        e.cohomology(&t.basis.lift_i64(&[5, 5]), CharLabel::Zero),
        Err(Error::RegionOverflow { .. })
    ));
}

#[test]
fn disk_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coh.jsonl");
    let g = toric("p1xp1");
    let Geometry::Toric(t) = &g else { panic!() };

    let e1 = Engine::new().with_disk_cache(path.clone()).unwrap();
    let mut expected = Vec::new();
    for a in -2..=2 {
        for b in -2..=2 {
            expected.push(((a, b), e1.dims(&t.basis.lift_i64(&[a, b]), CharLabel::Zero).unwrap()));
        }
    }
    drop(e1);
    assert!(path.exists());

    let e2 = Engine::new().with_disk_cache(path).unwrap();
    for ((a, b), dims) in expected {
        assert_eq!(e2.dims(&t.basis.lift_i64(&[a, b]), CharLabel::Zero).unwrap(), dims);
    }
}

#[test]
fn disk_cache_audit_catches_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("coh.jsonl");
    let g = toric("p1");
    let Geometry::Toric(t) = &g else { panic!() };

    // Seed 19 honest entries, then append one corrupted line.
    let e1 = Engine::new().with_disk_cache(path.clone()).unwrap();
    for d in 1..=19 {
        e1.dims(&t.basis.lift_i64(&[d]), CharLabel::Zero).unwrap();
    }
    drop(e1);
    let bogus = serde_json::json!({
        "fan": t.fan.hash_hex(),
        "coeffs": [99, 0],
        "ch": 0,
        "dims": [7, 7],
        "torsion": false
    });
    use std::io::Write;
    let mut f = std::fs::OpenOptions::new().append(true).open(&path).unwrap();
    writeln!(f, "{bogus}").unwrap();

    // The corrupted key lands on the audited (20th) disk hit.
    let e2 = Engine::new().with_disk_cache(path).unwrap();
    for d in 1..=19 {
        e2.dims(&t.basis.lift_i64(&[d]), CharLabel::Zero).unwrap();
    }
    let err = e2.dims(&t.basis.lift_i64(&[99]), CharLabel::Zero);
    assert!(matches!(err, Err(Error::Internal(_))), "{err:?}");
}

#[test]
fn regularity_classics() {
    let e = Engine::new();
    assert_eq!(regularity(&toric("p2"), &e, &[0]).unwrap(), 0);
    assert_eq!(regularity(&toric("p2"), &e, &[-3]).unwrap(), 3);
    // h^2(O(-2,-2)) = 1 on P1 x P1, so the trivial bundle is 1-regular
    // but not 0-regular for H = O(1,1).
    assert_eq!(regularity(&toric("p1xp1"), &e, &[0, 0]).unwrap(), 1);
    assert_eq!(regularity(&toric("p1xp1"), &e, &[-2, -2]).unwrap(), 3);
    // On SL(3)/B the canonical class is -2H, so h^3((-3)H) = 8 and
    // h^3((-2)H) = 1; the trivial bundle is first regular at m = 2.
    assert_eq!(regularity(&toric("sl3b"), &e, &[0, 0]).unwrap(), 2);
}

#[test]
fn regularity_is_upward_closed_on_samples() {
    let e = Engine::new();
    let g = toric("p1xp1");
    for class in [[-2, 3], [1, -4], [0, 0], [-3, -3]] {
        let r = regularity(&g, &e, &class).unwrap();
        for m in r..r + 4 {
            assert!(is_regular_at(&g, &e, &class, m).unwrap(), "{class:?} at {m}");
        }
        assert!(!is_regular_at(&g, &e, &class, r - 1).unwrap(), "{class:?} at {}", r - 1);
    }
}

#[test]
fn asymptotic_estimate_on_p2() {
    // h^0(O(m)) * 2 / m^2 = (m+1)(m+2)/m^2, maximal at m = 4 in [4, 8].
    let e = Engine::new();
    let v = asymptotic_h(&toric("p2"), &e, &[1], 0, 8).unwrap();
    assert_eq!(v, BigRational::new(15.into(), 8.into()));
}
