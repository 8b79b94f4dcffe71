mod common;

use augq::abgroup::{random_group, LambdaProfile};
use augq::augring::quotient_from_powers;
use augq::constructors::{burnside_ring, group_ring, CayleyGroup};
use augq::lattice::{hnf, lattice_from_generators, quotient_invariants, snf, snf_diagonal, IntMatrix};
use augq::stabilize::{analyze, detect_stabilization, quotient_sequence, StabilizationReport};
use augq::{AugmentedRing, FinAbGroup};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-20i64..=20, rows * cols)
        .prop_map(move |v| IntMatrix::from_i64_rows(cols, &v.chunks(cols).map(<[i64]>::to_vec).collect::<Vec<_>>()))
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))
}

fn group() -> impl Strategy<Value = FinAbGroup> {
    prop::collection::vec(2u64..=200, 0..=5).prop_map(|v| FinAbGroup::from_cyclic_orders(&v).unwrap())
}

/// gcd of all k×k minors, computed by brute force.
fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut g = BigInt::zero();
    for rs in subsets(m.rows(), k) {
        for cs in subsets(m.cols(), k) {
            let minor =
                IntMatrix::from_rows(k, rs.iter().map(|&i| cs.iter().map(|&j| m[(i, j)].clone()).collect()).collect());
            g = num_integer::Integer::gcd(&g, &minor.determinant());
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_is_a_valid_factorization(m in any_matrix()) {
        let (s, u, v) = snf(&m);
        prop_assert!(u.is_unimodular() && v.is_unimodular());
        prop_assert_eq!(u.mul(&m).mul(&v), s.clone());
        prop_assert!(s.is_diagonal());
        let d = snf_diagonal(&s);
        for w in d.windows(2) {
            prop_assert!(w[0] >= BigInt::zero());
            prop_assert!(w[1].is_zero() || (&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn snf_matches_determinantal_divisors(m in any_matrix()) {
        let d = snf_diagonal(&snf(&m).0);
        let mut prod = BigInt::from(1);
        for (k, dk) in d.iter().enumerate() {
            prod *= dk;
            prop_assert_eq!(determinantal_divisor(&m, k + 1), prod.clone());
        }
    }

    #[test]
    fn snf_is_invariant_under_unimodular_mixing(m in any_matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = common::random_unimodular(&mut rng, m.rows());
        let v = common::random_unimodular(&mut rng, m.cols());
        prop_assert_eq!(snf_diagonal(&snf(&u.mul(&m).mul(&v)).0), snf_diagonal(&snf(&m).0));
    }

    #[test]
    fn hnf_is_canonical(m in any_matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = common::random_unimodular(&mut rng, m.rows());
        let (a, ta) = hnf(&m);
        let (b, _) = hnf(&u.mul(&m));
        prop_assert_eq!(a.basis(), b.basis());
        prop_assert!(ta.is_unimodular());
        let incremental = lattice_from_generators(m.cols(), &m.row_vecs());
        prop_assert_eq!(incremental.basis(), a.basis());
        for row in m.row_vecs() {
            prop_assert!(a.contains(&row));
        }
    }

    #[test]
    fn quotient_order_is_determinant_ratio(b in matrix(3, 3), c in matrix(3, 3)) {
        prop_assume!(!b.determinant().is_zero() && !c.determinant().is_zero());
        let sup = lattice_from_generators(3, &b.row_vecs());
        let sub = lattice_from_generators(3, &c.mul(&b).row_vecs());
        let inv = quotient_invariants(&sup, &sub).unwrap();
        prop_assert_eq!(inv.torsion_order(), c.determinant().abs());
        prop_assert_eq!(sup.index_by_pivots(&sub), Some(c.determinant().abs()));
    }

    #[test]
    fn sylow_parts_recompose(g in group()) {
        let mut acc = FinAbGroup::trivial();
        for p in g.primes() {
            let sy = g.sylow(p).unwrap();
            prop_assert_eq!(sy.lambda_p(p).unwrap(), g.lambda_p(p).unwrap());
            prop_assert_eq!(sy.primes(), vec![p]);
            acc = acc.direct_sum(&sy);
        }
        prop_assert_eq!(acc, g);
    }

    #[test]
    fn lambda_of_shifted_group_has_closed_form(g in group(), s in 0u32..6) {
        for (p, exps) in g.primary_decomposition() {
            let expected: u64 = exps.iter().map(|&e| e.saturating_sub(s) as u64).sum();
            prop_assert_eq!(g.p_power_multiply(p, s).unwrap().lambda_p(p).unwrap(), expected);
        }
    }

    #[test]
    fn shifting_commutes_with_sums(a in group(), b in group(), s in 0u32..4) {
        for p in [2u64, 3, 5, 7] {
            let lhs = a.direct_sum(&b).p_power_multiply(p, s).unwrap();
            let rhs = a.p_power_multiply(p, s).unwrap().direct_sum(&b.p_power_multiply(p, s).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lambda_profile_roundtrips(g in group()) {
        let profile = g.lambda_profile();
        prop_assert_eq!(FinAbGroup::from_lambda_profile(&profile).unwrap(), g.clone());
        let json = LambdaProfile::from_json(&profile.to_json()).unwrap();
        prop_assert_eq!(json, profile);
    }

    #[test]
    fn lambda_profile_is_monotone(g in group()) {
        let profile = g.lambda_profile();
        for p in profile.primes() {
            let mut s = 0;
            while profile.get(p, s) > 0 {
                prop_assert!(profile.get(p, s + 1) <= profile.get(p, s));
                s += 1;
            }
        }
    }

    #[test]
    fn display_parse_roundtrips(g in group()) {
        prop_assert_eq!(g.to_string().parse::<FinAbGroup>().unwrap(), g);
    }

    #[test]
    fn augmentation_is_multiplicative(seed in any::<u64>(), pick in 0usize..4) {
        let ring = sample_ring(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..16 {
            let x = common::random_matrix(&mut rng, 1, ring.dim(), 50).row(0).to_vec();
            let y = common::random_matrix(&mut rng, 1, ring.dim(), 50).row(0).to_vec();
            let xy = ring.multiply(&x, &y).unwrap();
            prop_assert_eq!(ring.augment(&xy).unwrap(), ring.augment(&x).unwrap() * ring.augment(&y).unwrap());
        }
    }
}

fn sample_ring(pick: usize) -> AugmentedRing {
    match pick {
        0 => group_ring(&"C2xC6".parse().unwrap()),
        1 => burnside_ring(&CayleyGroup::symmetric(3), 64).unwrap(),
        2 => augq::constructors::rep_ring_dihedral(7).unwrap(),
        _ => burnside_ring(&CayleyGroup::dihedral(4), 64).unwrap(),
    }
}

#[test]
fn augmentation_is_multiplicative_on_a_thousand_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    for pick in 0..4 {
        let ring = sample_ring(pick);
        for _ in 0..1000 {
            let x = common::random_matrix(&mut rng, 1, ring.dim(), 1000).row(0).to_vec();
            let y = common::random_matrix(&mut rng, 1, ring.dim(), 1000).row(0).to_vec();
            let xy = ring.multiply(&x, &y).unwrap();
            assert_eq!(ring.augment(&xy).unwrap(), ring.augment(&x).unwrap() * ring.augment(&y).unwrap());
        }
    }
}

#[test]
fn ideal_powers_form_a_descending_chain() {
    for pick in 0..4 {
        let ring = sample_ring(pick);
        let powers = ring.ideal_powers(8).unwrap();
        for (n, w) in powers.windows(2).enumerate() {
            assert!(w[0].contains_lattice(&w[1]), "{}: I^{} ⊉ I^{}", ring.name(), n + 1, n + 2);
            assert_eq!(w[1].rank(), ring.dim() - 1);
            let q = quotient_from_powers(n + 1, &w[0], &w[1]).unwrap();
            assert_eq!(q.ideal_rank, ring.dim() - 1);
        }
    }
}

#[test]
fn small_quotients_match_an_independent_snf() {
    // I^n / I^{n+1} from raw spanning sets: the SNF of the coordinate matrix of
    // the products I·I^n expressed in a basis of I^n.
    for g in common::abelian_up_to(8) {
        let ring = group_ring(&g);
        let m = ring.dim();
        let ideal: Vec<Vec<BigInt>> =
            (1..m).map(|i| (0..m).map(|k| BigInt::from((k == i) as i64 - (k == 0) as i64)).collect()).collect();
        let mut power = lattice_from_generators(m, &ideal);
        for n in 1..=3 {
            let mut gens = Vec::new();
            for a in &ideal {
                for b in power.basis_vectors() {
                    gens.push(ring.multiply(a, b).unwrap());
                }
            }
            let coords: Vec<Vec<BigInt>> = gens.iter().map(|v| power.coordinates(v).unwrap()).collect();
            let rel = IntMatrix::from_rows(power.rank(), coords);
            let d: Vec<u64> = snf_diagonal(&snf(&rel).0)
                .iter()
                .filter(|x| **x > BigInt::from(1))
                .map(|x| u64::try_from(x).unwrap())
                .collect();
            let expected = FinAbGroup::from_cyclic_orders(&d).unwrap();
            assert_eq!(ring.quotient_group(n).unwrap().group, expected, "{g} n = {n}");
            power = lattice_from_generators(m, &gens);
        }
    }
}

#[test]
fn torsion_and_bound_hold_on_samples() {
    for pick in 0..4 {
        let ring = sample_ring(pick);
        let qs = quotient_sequence(&ring, 12).unwrap();
        let d = qs[0].group.exponent();
        let bound = BigUint::from(d).pow((ring.dim() - 1) as u32);
        for q in &qs {
            assert!(q.group.invariant_factors().iter().all(|f| d.is_multiple_of(*f)));
            assert!(q.order <= bound);
        }
    }
}

#[test]
fn report_is_self_consistent() {
    for pick in 0..4 {
        let ring = sample_ring(pick);
        let report = analyze(&ring, 14, 5).unwrap();
        let groups = report.groups();
        let n0 = report.n0_candidate.unwrap();
        for g in &groups[n0 - 1..] {
            assert!(g.is_isomorphic(&groups[n0 - 1]));
        }
        for (&(p, s), row) in &report.lambda_table {
            assert!(report.d.is_multiple_of(p));
            for (g, &v) in groups.iter().zip(row) {
                assert_eq!(g.p_power_multiply(p, s).unwrap().lambda_p(p).unwrap(), v);
            }
        }
        for q in &report.quotients {
            let mut prod = BigUint::from(1u32);
            for p in q.group.primes() {
                prod *= BigUint::from(p).pow(q.group.lambda_p(p).unwrap() as u32);
            }
            assert_eq!(prod, q.order);
        }
        assert_eq!(detect_stabilization(&groups, 5).n0(), Some(n0));
        assert_eq!(StabilizationReport::from_json(&report.to_json()).unwrap(), report);
        assert!(!report.certified);
    }
}

#[test]
fn seeded_groups_are_reproducible() {
    for seed in 0..20 {
        assert_eq!(random_group(seed, 5, 1024), random_group(seed, 5, 1024));
    }
}
