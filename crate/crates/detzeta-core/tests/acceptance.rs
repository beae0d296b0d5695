//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N ...: PASS` line (visible with `--nocapture`) after its
//! assertions hold. Criterion 1 additionally has an `#[ignore]`d
//! full-budget variant for the largest grid point.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;

use detzeta_core::orbits::class_orbit_factored;
use detzeta_core::zeta::MotivicZeta;
use detzeta_core::{
    bernstein_sato_maximal, check_holomorphy, check_maximal_minors, check_monodromy_conjecture,
    eigenvalue_set, enumerate_orbits, fiber_class, fiber_euler_closed,
    monodromy_zeta_at_point, motivic_zeta_rational, motivic_zeta_series, stratum_class,
    stratum_class_at_level, topological_zeta, topological_zeta_via_strata,
    twisted_topological_zeta, twisted_topological_zeta_via_strata, verify_shape, LClass,
    PointClass, Verdict,
};

/// Census grid sized so the whole criterion stays far under the budget;
/// (3,3,1) at q = 3 is the `#[ignore]`d variant below.
const CENSUS_GRID: &[(u32, u32, u32, u64)] = &[
    (2, 2, 1, 2),
    (2, 2, 1, 3),
    (2, 2, 2, 2),
    (2, 2, 2, 3),
    (2, 3, 1, 2),
    (2, 3, 1, 3),
    (3, 3, 1, 2),
];

#[test]
fn criterion_01_orbit_class_certification() {
    for &(m, n, l, q) in CENSUS_GRID {
        let verdicts = verify_shape(m, n, l, q).expect("census in budget");
        assert!(!verdicts.is_empty());
        for v in &verdicts {
            assert!(
                v.pass,
                "class of {} at ({m},{n},l={l},q={q}): symbolic {} vs census {}",
                v.lambda, v.expected, v.actual
            );
        }
        let total: BigInt = verdicts.iter().map(|v| v.actual.clone()).sum();
        assert_eq!(total, BigInt::from(q).pow(m * n * (l + 1)));
    }
    println!("criterion 1 (orbit-class certification vs exhaustive oracle): PASS");
}

#[test]
#[ignore = "3^18 jets; run explicitly with --ignored (still inside the default budget)"]
fn criterion_01_full_grid_point() {
    let verdicts = verify_shape(3, 3, 1, 3).expect("census in budget");
    for v in &verdicts {
        assert!(v.pass, "class of {}: {} vs {}", v.lambda, v.expected, v.actual);
    }
    println!("criterion 1 (full grid point (3,3,1) at q=3): PASS");
}

#[test]
fn criterion_02_jet_space_partition() {
    let mut shapes: Vec<(u32, u32, u32)> = CENSUS_GRID.iter().map(|&(m, n, l, _)| (m, n, l)).collect();
    shapes.dedup();
    for (m, n, l) in shapes {
        let mut sum = LClass::zero();
        for lambda in enumerate_orbits(m, n, l).unwrap() {
            sum = sum.add(&class_orbit_factored(m, n, &lambda).unwrap().to_lclass());
        }
        assert_eq!(
            sum,
            LClass::l_pow(i64::from(m) * i64::from(n) * i64::from(l + 1)),
            "partition fails at ({m},{n},l={l})"
        );
    }
    println!("criterion 2 (jet-space partition sums to L^(mn(l+1))): PASS");
}

#[test]
fn criterion_03_topological_zeta_closed_form() {
    for n in 1..=3u32 {
        for m in 1..=n {
            for r in 1..=m {
                let closed = topological_zeta(m, n, r).unwrap();
                let strata = topological_zeta_via_strata(m, n, r).unwrap();
                assert_eq!(closed, strata, "zeta routes diverge at ({m},{n},{r})");
            }
        }
    }
    assert_eq!(
        topological_zeta(3, 3, 2).unwrap().to_string(),
        "1/((1+2s/9)(1+s/4))"
    );
    println!("criterion 3 (strata zeta equals the closed product, incl. (3,3,2)): PASS");
}

fn falling_factorial_ratio(a: u32, r: u32) -> BigInt {
    // a! / (a-r)!
    ((a - r + 1)..=a).map(BigInt::from).product()
}

#[test]
fn criterion_04_stratum_euler_characteristics() {
    for n in 1..=4u32 {
        for m in 1..=n {
            for r in 1..=m {
                for mask in 0u32..(1 << r) {
                    let subset: Vec<u32> =
                        (1..=r).filter(|j| mask >> (j - 1) & 1 == 1).collect();
                    let s = stratum_class(m, n, r, &subset).unwrap();
                    let chi = s.value.euler().unwrap();
                    if subset.len() == r as usize {
                        let expected =
                            falling_factorial_ratio(m, r) * falling_factorial_ratio(n, r);
                        assert_eq!(chi, expected, "chi(E_full) at ({m},{n},{r})");
                    } else if !subset.is_empty() {
                        assert_eq!(
                            chi,
                            BigInt::ZERO,
                            "chi(E_J) != 0 at ({m},{n},{r}), J={subset:?}"
                        );
                    }
                }
            }
        }
    }
    println!("criterion 4 (stratum Euler characteristics on the n <= 4 grid): PASS");
}

#[test]
fn criterion_05_monodromy_zeta_table_and_fiber_euler() {
    let table = [
        (1u32, 2u32, "1"),
        (1, 3, "1 - t^2"),
        (2, 2, "1 - t"),
        (2, 3, "1 - t"),
    ];
    for (i, q, expected) in table {
        let p = PointClass::new(3, 3, 2, i, Some(q)).unwrap();
        assert_eq!(monodromy_zeta_at_point(&p).unwrap().to_string(), expected);
    }
    for n in 1..=3u32 {
        for m in 1..=n {
            for r in 1..=m {
                for i in 1..=r {
                    for q in r..=m {
                        let closed = fiber_euler_closed(m, n, r, i, q).unwrap();
                        let fiber = fiber_class(m, n, r, i, q, r + 2).unwrap();
                        assert_eq!(
                            fiber.euler().unwrap(),
                            BigInt::from(closed),
                            "fiber Euler at ({m},{n},{r}), i={i}, q={q}"
                        );
                    }
                }
            }
        }
    }
    println!("criterion 5 (monodromy zeta table and fiber Euler numbers): PASS");
}

#[test]
fn criterion_06_twisted_zeta() {
    for n in 1..=3u32 {
        for m in 1..=n {
            for r in 1..=m {
                for d in 2..=6u32 {
                    assert!(
                        twisted_topological_zeta(m, n, r, d).unwrap().is_zero(),
                        "Z^(d) != 0 at ({m},{n},{r}), d={d}"
                    );
                    assert!(
                        twisted_topological_zeta_via_strata(m, n, r, d).unwrap().is_zero(),
                        "strata Z^(d) != 0 at ({m},{n},{r}), d={d}"
                    );
                }
                assert_eq!(
                    twisted_topological_zeta(m, n, r, 1).unwrap(),
                    topological_zeta(m, n, r).unwrap()
                );
                assert_eq!(
                    twisted_topological_zeta_via_strata(m, n, r, 1).unwrap(),
                    topological_zeta(m, n, r).unwrap()
                );
            }
        }
    }
    println!("criterion 6 (twisted zeta vanishes for 2 <= d <= 6, equals Z_top at d=1): PASS");
}

#[test]
fn criterion_07_conjecture_grid() {
    let start = Instant::now();
    for n in 1..=5u32 {
        for m in 1..=n {
            for r in 1..=m {
                let rep = check_monodromy_conjecture(m, n, r).unwrap();
                assert_eq!(rep.verdict, Verdict::Pass, "monodromy FAIL at ({m},{n},{r})");
                let hol = check_holomorphy(m, n, r, 6).unwrap();
                assert_eq!(hol.verdict, Verdict::Pass, "holomorphy FAIL at ({m},{n},{r})");
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "conjecture grid took {elapsed:?}, budget is 1s"
    );
    println!(
        "criterion 7 (monodromy + holomorphy checkers PASS on n <= 5 grid in {elapsed:?}): PASS"
    );
}

#[test]
fn criterion_08_maximal_minors() {
    for n in 1..=5u32 {
        for m in 1..=n {
            let rep = check_maximal_minors(m, n).unwrap();
            assert_eq!(rep.verdict, Verdict::Pass, "maximal-minors FAIL at ({m},{n})");
            let roots: BTreeSet<i64> = bernstein_sato_maximal(m, n).unwrap().roots.into_iter().collect();
            let z = topological_zeta(m, n, m).unwrap();
            for j in 1..=m {
                let s0 = -i64::from(n + 1 - j);
                assert!(roots.contains(&s0), "pole {s0} not a b-root at ({m},{n})");
                let (nn, nu) = (m + 1 - j, (m + 1 - j) * (n + 1 - j));
                assert!(z.exponent_of(nn, nu) < 0, "candidate pole not actual");
            }
            let eig = eigenvalue_set(m, n, m).unwrap();
            assert_eq!(eig, BTreeSet::from([(0u32, 1u32)]));
        }
    }
    println!("criterion 8 (maximal-minor poles are Bernstein-Sato roots, exponentials in spectrum): PASS");
}

#[test]
fn criterion_09_level_stability() {
    for n in 1..=4u32 {
        for m in 1..=n {
            for r in 1..=m {
                for mask in 1u32..(1 << r) {
                    let subset: Vec<u32> =
                        (1..=r).filter(|j| mask >> (j - 1) & 1 == 1).collect();
                    let l0 = stratum_class(m, n, r, &subset).unwrap().witnessed_level;
                    let a = stratum_class_at_level(m, n, r, &subset, l0).unwrap();
                    let b = stratum_class_at_level(m, n, r, &subset, l0 + 1).unwrap();
                    assert_eq!(
                        a.value, b.value,
                        "stratum unstable at ({m},{n},{r}), J={subset:?}"
                    );
                }
                for i in 1..=r {
                    for q in r..=m {
                        let a = fiber_class(m, n, r, i, q, r + 2).unwrap();
                        let b = fiber_class(m, n, r, i, q, r + 3).unwrap();
                        assert_eq!(a, b, "fiber unstable at ({m},{n},{r}), i={i}, q={q}");
                    }
                }
            }
        }
    }
    println!("criterion 9 (stratum and fiber classes stable across consecutive levels): PASS");
}

#[test]
fn criterion_10_series_rational_agreement() {
    for (m, n, r) in [(2u32, 2u32, 1u32), (2, 2, 2), (2, 3, 1)] {
        let mz: MotivicZeta = motivic_zeta_rational(m, n, r).unwrap();
        let from_strata = mz.series_coefficients(6).unwrap();
        let direct = motivic_zeta_series(m, n, r, 6).unwrap();
        assert_eq!(from_strata.len(), direct.len());
        for (k, (a, b)) in from_strata.iter().zip(&direct).enumerate() {
            assert_eq!(a, b, "T^{k} coefficient differs at ({m},{n},{r})");
        }
    }
    println!("criterion 10 (strata T-expansion matches direct orbit series to order 6): PASS");
}
