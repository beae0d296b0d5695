//! Property-based and randomized invariants: ring laws for the exact
//! fraction arithmetic, structural identities for the closed-form classes,
//! and oracle invariances (the census does not care how a jet is dressed
//! up by invertible row/column jets).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use detzeta_core::oracle::{jet_gl_order, JetMatrix, TruncRing};
use detzeta_core::{
    class_gl, class_grassmannian, class_orbit, count_orbits, enumerate_orbits, fiber_class,
    image_signature, smith_invariants, topological_zeta, Ent, LClass, LPoly, OrbitIndex,
};

fn small_lpoly() -> impl Strategy<Value = LPoly> {
    proptest::collection::vec((-4i64..=4, -9i64..=9), 0..5).prop_map(|terms| {
        let mut p = LPoly::zero();
        for (e, c) in terms {
            p = p.add(&LPoly::monomial(e, BigInt::from(c)));
        }
        p
    })
}

fn small_lclass() -> impl Strategy<Value = LClass> {
    (small_lpoly(), small_lpoly()).prop_map(|(num, den)| {
        if den.is_zero() {
            LClass::from_poly(num)
        } else {
            LClass::new(num, den).expect("nonzero denominator")
        }
    })
}

proptest! {
    #[test]
    fn lclass_ring_laws(a in small_lclass(), b in small_lclass(), c in small_lclass()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), LClass::zero());
        prop_assert_eq!(a.mul(&LClass::one()), a.clone());
    }

    #[test]
    fn lclass_division_inverts_multiplication(a in small_lclass(), b in small_lclass()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a);
    }

    #[test]
    fn lclass_eval_is_a_homomorphism(a in small_lclass(), b in small_lclass(), q in 2u64..=7) {
        let den_ok = |c: &LClass| c.eval(q).is_ok();
        prop_assume!(den_ok(&a) && den_ok(&b));
        prop_assert_eq!(a.add(&b).eval(q).unwrap(), a.eval(q).unwrap() + b.eval(q).unwrap());
        prop_assert_eq!(a.mul(&b).eval(q).unwrap(), a.eval(q).unwrap() * b.eval(q).unwrap());
    }

    #[test]
    fn lclass_serde_round_trips(a in small_lclass()) {
        let via_json = LClass::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(&via_json, &a);
        let via_str: LClass = a.to_string().parse().unwrap();
        prop_assert_eq!(&via_str, &a);
    }

    #[test]
    fn gl_recursion(d in 1u32..=6) {
        // [GL_d] = (L^d - 1) L^(d-1) [GL_(d-1)]
        let lhs = class_gl(d);
        let step = LClass::l_pow(i64::from(d)).sub(&LClass::one())
            .mul(&LClass::l_pow(i64::from(d) - 1));
        let rhs = step.mul(&class_gl(d - 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn grassmannian_duality_and_flag_identity(k in 1u32..=6, d_seed in 0u32..=6) {
        let d = d_seed % (k + 1);
        let g = class_grassmannian(d, k).unwrap();
        let dual = class_grassmannian(k - d, k).unwrap();
        prop_assert_eq!(&g, &dual);
        // [GL_k] = [G(d,k)] [GL_d] [GL_(k-d)] L^(d(k-d))
        let flag = g
            .mul(&class_gl(d))
            .mul(&class_gl(k - d))
            .mul(&LClass::l_pow(i64::from(d) * i64::from(k - d)));
        prop_assert_eq!(class_gl(k), flag);
    }

    #[test]
    fn partition_identity(m in 1u32..=3, n_off in 0u32..=2, l in 0u32..=2) {
        let n = m + n_off;
        prop_assume!(n <= 3);
        let mut sum = LClass::zero();
        for lambda in enumerate_orbits(m, n, l).unwrap() {
            sum = sum.add(&class_orbit(m, n, &lambda).unwrap());
        }
        prop_assert_eq!(sum, LClass::l_pow(i64::from(m * n * (l + 1))));
    }

    #[test]
    fn orbit_index_serde_round_trips(raw in proptest::collection::vec(0u32..=5, 1..4), l in 0u32..=4) {
        let mut entries: Vec<Ent> = raw
            .iter()
            .map(|&v| if v > l { Ent::Top } else { Ent::Fin(v) })
            .collect();
        entries.sort();
        let idx = OrbitIndex::new(entries, l).unwrap();
        let json = serde_json::to_string(&idx).unwrap();
        let back: OrbitIndex = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(OrbitIndex::new(back.entries().to_vec(), l).unwrap(), idx.clone());
        let via_str: OrbitIndex = idx.to_string().parse().unwrap();
        prop_assert_eq!(via_str.entries(), idx.entries());
    }

    #[test]
    fn zeta_eval_matches_product(m in 1u32..=4, n_off in 0u32..=2, r_seed in 1u32..=4, s_num in -30i64..=30) {
        let n = m + n_off;
        let r = 1 + (r_seed - 1) % m;
        let z = topological_zeta(m, n, r).unwrap();
        let s = BigRational::new(BigInt::from(s_num), BigInt::from(7));
        if let Some(v) = z.eval(&s) {
            let mut expected = BigRational::one();
            for j in 1..=r {
                let (nn, nu) = (r + 1 - j, (m + 1 - j) * (n + 1 - j));
                let denom = BigRational::one()
                    + BigRational::from(BigInt::from(nn)) * &s / BigRational::from(BigInt::from(nu));
                prop_assume!(!denom.is_zero());
                expected /= denom;
            }
            prop_assert_eq!(v, expected);
        }
    }
}

#[test]
fn image_signature_is_admissible_on_the_enumeration() {
    for (m, n) in [(2u32, 2u32), (2, 3), (3, 3)] {
        for l in 0..=2u32 {
            for lambda in enumerate_orbits(m, n, l).unwrap() {
                for r in 1..=m.min(n) {
                    if let Ok((i, q)) = image_signature(&lambda, r) {
                        assert!(1 <= i && i <= r && r <= q && q <= m.min(n));
                    }
                }
            }
        }
    }
}

#[test]
fn census_is_complete_and_supported_on_the_enumeration() {
    for (m, n, l, q) in [(2u32, 2u32, 0u32, 2u64), (2, 2, 1, 2), (1, 2, 2, 3)] {
        let census = count_orbits(m, n, l, q).unwrap();
        let listed: BTreeSet<OrbitIndex> = enumerate_orbits(m, n, l).unwrap().collect();
        for (lambda, count) in census.iter() {
            assert!(listed.contains(lambda));
            assert!(count > 0);
        }
        let total: u64 = census.total();
        assert_eq!(u128::from(total), u128::from(q).pow(m * n * (l + 1)));
        // every listed orbit is realized by some jet
        assert_eq!(census.len(), listed.len());
    }
}

fn random_jet(ring: &TruncRing, rng: &mut ChaCha8Rng, rows: u32, cols: u32) -> JetMatrix {
    let entries: Vec<u64> = (0..rows * cols).map(|_| rng.gen_range(0..ring.size())).collect();
    JetMatrix::new(rows, cols, entries).unwrap()
}

fn random_invertible(ring: &TruncRing, rng: &mut ChaCha8Rng, d: u32) -> JetMatrix {
    loop {
        let g = random_jet(ring, rng, d, d);
        let inv = smith_invariants(ring, &g).unwrap();
        if inv.entries().iter().all(|&e| e == Ent::Fin(0)) {
            return g;
        }
    }
}

fn mat_mul(ring: &TruncRing, a: &JetMatrix, b: &JetMatrix) -> JetMatrix {
    assert_eq!(a.n, b.m);
    let (rows, inner, cols) = (a.m as usize, a.n as usize, b.n as usize);
    let mut out = vec![0u64; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            let mut acc = 0;
            for k in 0..inner {
                acc = ring.add(acc, ring.mul(a.entries[i * inner + k], b.entries[k * cols + j]));
            }
            out[i * cols + j] = acc;
        }
    }
    JetMatrix::new(a.m, b.n, out).unwrap()
}

#[test]
fn smith_invariants_are_constant_on_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xDE7E_7A01);
    for &(m, n, l, q) in &[(2u32, 3u32, 2u32, 2u64), (2, 2, 1, 3), (3, 3, 1, 2)] {
        let ring = TruncRing::new(q, l).unwrap();
        for _ in 0..340 {
            let a = random_jet(&ring, &mut rng, m, n);
            let p = random_invertible(&ring, &mut rng, m);
            let qmat = random_invertible(&ring, &mut rng, n);
            let b = mat_mul(&ring, &mat_mul(&ring, &p, &a), &qmat);
            assert_eq!(
                smith_invariants(&ring, &a).unwrap(),
                smith_invariants(&ring, &b).unwrap(),
                "GL x GL action changed the invariants"
            );
        }
    }
}

#[test]
fn smith_recovers_diagonal_standard_forms() {
    for (m, n) in [(1u32, 1u32), (2, 2), (2, 3), (3, 3)] {
        for l in 0..=2u32 {
            let ring = TruncRing::new(2, l).unwrap();
            for lambda in enumerate_orbits(m, n, l).unwrap() {
                let mut entries = vec![0u64; (m * n) as usize];
                for (d, &e) in lambda.entries().iter().enumerate() {
                    if let Ent::Fin(v) = e {
                        let mut digits = vec![0u64; l as usize + 1];
                        digits[v as usize] = 1;
                        entries[d * n.max(m) as usize + d] = ring.from_digits(&digits);
                    }
                }
                // entries laid out for the m <= n orientation
                let a = JetMatrix::new(m.min(n), m.max(n), entries).unwrap();
                assert_eq!(smith_invariants(&ring, &a).unwrap(), lambda);
            }
        }
    }
}

#[test]
fn orbit_counts_divide_the_acting_group_order() {
    for (m, n, l, q) in [(2u32, 2u32, 1u32, 2u64), (2, 3, 1, 2), (2, 2, 1, 3)] {
        let census = count_orbits(m, n, l, q).unwrap();
        let group = jet_gl_order(m, l, q) * jet_gl_order(n, l, q);
        for (lambda, count) in census.iter() {
            assert!(
                group.is_multiple_of(&BigInt::from(count)),
                "orbit {lambda} of size {count} does not divide |G|"
            );
        }
    }
}

#[test]
fn census_is_transpose_symmetric() {
    for (m, n, l, q) in [(1u32, 2u32, 1u32, 2u64), (2, 3, 0, 3), (2, 3, 1, 2)] {
        let a = count_orbits(m, n, l, q).unwrap();
        let b = count_orbits(n, m, l, q).unwrap();
        let av: Vec<(OrbitIndex, u64)> = a.iter().map(|(k, v)| (k.clone(), v)).collect();
        let bv: Vec<(OrbitIndex, u64)> = b.iter().map(|(k, v)| (k.clone(), v)).collect();
        assert_eq!(av, bv);
    }
}

#[test]
fn class_orbit_is_transpose_symmetric() {
    for l in 0..=2u32 {
        for lambda in enumerate_orbits(2, 3, l).unwrap() {
            assert_eq!(
                class_orbit(2, 3, &lambda).unwrap(),
                class_orbit(3, 2, &lambda).unwrap()
            );
        }
    }
}

#[test]
fn fiber_summands_are_nonzero_and_integral_at_primes() {
    // the equation-(5) sum is a ratio of honest orbit classes: evaluating
    // at a prime must produce a well-defined positive rational
    for (i, q) in [(1u32, 2u32), (1, 3), (2, 2), (2, 3)] {
        let f = fiber_class(3, 3, 2, i, q, 4).unwrap();
        assert!(!f.is_zero());
        let v = f.eval(5).unwrap();
        assert!(v > BigRational::zero(), "fiber value not positive at L=5");
    }
}

#[test]
fn jet_gl_order_matches_census_of_invertibles() {
    // |J_l(GL_m)(F_q)| equals the number of jets with all-zero invariants
    for (m, l, q) in [(1u32, 1u32, 2u64), (2, 0, 3), (2, 1, 2)] {
        let census = count_orbits(m, m, l, q).unwrap();
        let zero = OrbitIndex::new(vec![Ent::Fin(0); m as usize], l).unwrap();
        assert_eq!(BigInt::from(census.get(&zero)), jet_gl_order(m, l, q));
    }
}
