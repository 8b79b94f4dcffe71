mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use augq::abgroup::{factorize, is_prime, random_group, random_subgroup_quotient};
use augq::augring::CheckKind;
use augq::constructors::{burnside_ring, group_ring, rep_ring_abelian, CayleyGroup};
use augq::lattice::{hnf, lattice_from_generators, quotient_invariants, snf, snf_diagonal, IntMatrix};
use augq::stabilize::{detect_stabilization, quotient_sequence};
use augq::{AugmentedRing, FinAbGroup, Stabilization};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_N: usize = 20;
const WINDOW: usize = 5;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Outcome { passed: true, detail: ok }
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        Outcome { passed: false, detail: format!("{} failure(s): {}", failures.len(), shown.join("; ")) }
    }
}

struct Computed {
    name: String,
    groups: Vec<FinAbGroup>,
    orders: Vec<BigUint>,
    r: usize,
}

fn compute(ring: &AugmentedRing) -> Result<Computed, String> {
    let qs = quotient_sequence(ring, MAX_N).map_err(|e| format!("{}: {e}", ring.name()))?;
    Ok(Computed {
        name: ring.name().to_string(),
        groups: qs.iter().map(|q| q.group.clone()).collect(),
        orders: qs.iter().map(|q| q.order.clone()).collect(),
        r: ring.dim() - 1,
    })
}

/// `λ_p(p^s G)` from the invariant factors: each primary summand `p^e`
/// contributes `max(e − s, 0)`.
fn lambda_shifted(g: &FinAbGroup, p: u64, s: u32) -> u64 {
    g.invariant_factors()
        .iter()
        .flat_map(|&f| factorize(f))
        .filter(|&(q, _)| q == p)
        .map(|(_, e)| e.saturating_sub(s) as u64)
        .sum()
}

fn lambda(g: &FinAbGroup, p: u64) -> u64 {
    lambda_shifted(g, p, 0)
}

fn exponent(g: &FinAbGroup) -> u64 {
    g.invariant_factors().last().copied().unwrap_or(1)
}

fn criterion_1() -> Outcome {
    let c2 = FinAbGroup::cyclic(2).unwrap();
    let rings = [group_ring(&c2), burnside_ring(&CayleyGroup::cyclic(2), 64).unwrap()];
    let mut failures = Vec::new();
    for ring in &rings {
        match quotient_sequence(ring, 10) {
            Ok(qs) => {
                for q in qs {
                    if q.group.invariant_factors() != [2] {
                        failures.push(format!("{} Q_{} = {}", ring.name(), q.n, q.group));
                    }
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    outcome(failures, "ZC2 and Burnside(C2): Q_n = [2] for n = 1..10".into())
}

fn criterion_2(corpus: &[Computed]) -> Outcome {
    let mut failures = Vec::new();
    let mut n0s = BTreeMap::new();
    for c in corpus {
        match detect_stabilization(&c.groups, WINDOW) {
            Stabilization::Detected { n0, window } if window >= WINDOW => {
                *n0s.entry(n0).or_insert(0usize) += 1;
            }
            other => failures.push(format!("{}: {other:?}", c.name)),
        }
    }
    let hist: Vec<String> = n0s.iter().map(|(n0, k)| format!("n0={n0}:{k}")).collect();
    outcome(failures, format!("{} rings stabilized with window >= {WINDOW} ({})", corpus.len(), hist.join(", ")))
}

fn criterion_3(corpus: &[Computed]) -> Outcome {
    let mut failures = Vec::new();
    for c in corpus {
        let d = exponent(&c.groups[0]);
        let bound = BigUint::from(d).pow(c.r as u32);
        for (i, (g, order)) in c.groups.iter().zip(&c.orders).enumerate() {
            let product: BigUint = g.invariant_factors().iter().map(|&f| BigUint::from(f)).product();
            if &product != order {
                failures.push(format!("{}: Q_{} order mismatch", c.name, i + 1));
            }
            if order > &bound {
                failures.push(format!("{}: |Q_{}| = {order} > {bound}", c.name, i + 1));
            }
        }
    }
    outcome(failures, format!("|Q_n| <= d^r for {} rings, n <= {MAX_N}", corpus.len()))
}

fn criterion_4(corpus: &[Computed]) -> Outcome {
    let mut failures = Vec::new();
    for c in corpus {
        let d = exponent(&c.groups[0]);
        for (i, g) in c.groups.iter().enumerate() {
            if let Some(f) = g.invariant_factors().iter().find(|&&f| !d.is_multiple_of(f)) {
                failures.push(format!("{}: factor {f} of Q_{} does not divide d = {d}", c.name, i + 1));
            }
        }
    }
    outcome(failures, format!("every invariant factor divides d in {} rings", corpus.len()))
}

fn criterion_5() -> Outcome {
    let primes: Vec<u64> = (2..=31).filter(|&p| is_prime(p)).collect();
    let mut failures = Vec::new();
    for seed in 0..500u64 {
        let g = random_group(seed, 4, 1 << 10);
        let (h, q) = random_subgroup_quotient(seed.wrapping_mul(7919) + 1, &g);
        for &p in &primes {
            let (lh, lg, lq) = (h.lambda_p(p).unwrap(), g.lambda_p(p).unwrap(), q.lambda_p(p).unwrap());
            if lh as i64 - lg as i64 + lq as i64 != 0 {
                failures.push(format!("seed {seed}, p = {p}: H = {h}, G = {g}, G/H = {q}"));
            }
            if lg != lambda(&g, p) || lh != lambda(&h, p) || lq != lambda(&q, p) {
                failures.push(format!("seed {seed}, p = {p}: lambda disagrees with primary count"));
            }
            if g.sylow(p).unwrap().lambda_p(p).unwrap() != lg {
                failures.push(format!("seed {seed}, p = {p}: Sylow reduction fails for {g}"));
            }
        }
        let order: BigUint = g.invariant_factors().iter().map(|&f| BigUint::from(f)).product();
        let h_order: BigUint = h.invariant_factors().iter().map(|&f| BigUint::from(f)).product();
        let q_order: BigUint = q.invariant_factors().iter().map(|&f| BigUint::from(f)).product();
        if h_order * q_order != order {
            failures.push(format!("seed {seed}: |H| |G/H| != |G|"));
        }
    }
    outcome(failures, "500 triples, primes <= 31, additivity and Sylow reduction exact".into())
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    for seed in 0..200u64 {
        let g = random_group(1_000_000 + seed, 6, 1 << 10);
        match FinAbGroup::from_lambda_profile(&g.lambda_profile()) {
            Ok(back) if back == g => {}
            Ok(back) => failures.push(format!("seed {seed}: {g} -> {back}")),
            Err(e) => failures.push(format!("seed {seed}: {g}: {e}")),
        }
    }
    outcome(failures, "200 groups reconstructed from their lambda profiles".into())
}

fn criterion_7(corpus: &[Computed]) -> Outcome {
    let mut failures = Vec::new();
    let mut rows = 0usize;
    for c in corpus {
        let Stabilization::Detected { n0, .. } = detect_stabilization(&c.groups, WINDOW) else {
            failures.push(format!("{}: no stable tail", c.name));
            continue;
        };
        let d = exponent(&c.groups[0]);
        let bound = BigUint::from(d).pow(c.r as u32);
        for (p, _) in factorize(d) {
            let mut s = 0u32;
            while BigUint::from(p).pow(s) <= bound {
                let row: Vec<u64> = c.groups[n0 - 1..].iter().map(|g| lambda_shifted(g, p, s)).collect();
                rows += 1;
                if row.windows(2).any(|w| w[0] != w[1]) {
                    failures.push(format!("{}: lambda_{p}({p}^{s} Q_n) = {row:?}", c.name));
                }
                let lib: Vec<u64> =
                    c.groups[n0 - 1..].iter().map(|g| g.p_power_multiply(p, s).unwrap().lambda_p(p).unwrap()).collect();
                if lib != row {
                    failures.push(format!("{}: p_power_multiply disagrees at (p, s) = ({p}, {s})", c.name));
                }
                s += 1;
            }
        }
    }
    outcome(failures, format!("{rows} lambda rows constant on the stable tail"))
}

fn random_full_rank(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMatrix {
    loop {
        let m = common::random_matrix(rng, n, n, bound);
        if m.determinant() != BigInt::from(0) {
            return m;
        }
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();

    let mut tests: Vec<IntMatrix> = vec![
        IntMatrix::from_i64_rows(2, &[vec![2, 4], vec![6, 8]]),
        IntMatrix::from_i64_rows(3, &[vec![2, 0, 0], vec![0, 4, 0], vec![0, 0, 0]]),
        IntMatrix::from_i64_rows(3, &[vec![6, 4, 2], vec![12, 8, 4]]),
    ];
    for k in 0..7 {
        let (r, c) = (2 + k % 4, 2 + (k * 3) % 5);
        tests.push(common::random_matrix(&mut rng, r, c, 9));
    }
    for (t, m) in tests.iter().enumerate() {
        let base = snf_diagonal(&snf(m).0);
        for trial in 0..100 {
            let u = common::random_unimodular(&mut rng, m.rows());
            let v = common::random_unimodular(&mut rng, m.cols());
            let (s, su, sv) = snf(&u.mul(m).mul(&v));
            if snf_diagonal(&s) != base {
                failures.push(format!("SNF of test matrix {t} changed on trial {trial}"));
            }
            if su.mul(&u.mul(m).mul(&v)).mul(&sv) != s || !su.is_unimodular() || !sv.is_unimodular() {
                failures.push(format!("SNF transforms of test matrix {t} invalid on trial {trial}"));
            }
        }
    }

    for t in 0..100 {
        let dim = rng.gen_range(1..=5);
        let gens = rng.gen_range(1..=dim + 2);
        let a = common::random_matrix(&mut rng, gens, dim, 7);
        let mixed = common::random_unimodular(&mut rng, gens).mul(&a);
        let mut extra = mixed.row_vecs();
        for _ in 0..rng.gen_range(0..3) {
            let combo = common::random_matrix(&mut rng, 1, gens, 4).mul(&a);
            extra.push(combo.row(0).to_vec());
        }
        let l1 = lattice_from_generators(dim, &a.row_vecs());
        let l2 = lattice_from_generators(dim, &extra);
        let (l3, _) = hnf(&IntMatrix::from_rows(dim, extra.clone()));
        if l1.basis() != l2.basis() || l1.basis() != l3.basis() {
            failures.push(format!("HNF bases differ for span-equivalent set {t}"));
        }
    }

    for t in 0..100 {
        let n = rng.gen_range(1..=5);
        let b = random_full_rank(&mut rng, n, 6);
        let c = random_full_rank(&mut rng, n, 6);
        let sup = lattice_from_generators(n, &b.row_vecs());
        let sub = lattice_from_generators(n, &c.mul(&b).row_vecs());
        match quotient_invariants(&sup, &sub) {
            Ok(inv) if inv.is_finite() && inv.torsion_order() == c.determinant().abs() => {}
            Ok(inv) => failures.push(format!("pair {t}: order {} vs |det| {}", inv.torsion_order(), c.determinant())),
            Err(e) => failures.push(format!("pair {t}: {e}")),
        }
    }
    outcome(
        failures,
        format!("SNF stable under 100 transforms x {} matrices, HNF canonical x100, index = |det| x100", tests.len()),
    )
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for m in 3..=12 {
        let (residual, agree) = common::dihedral_fusion_check(m);
        worst = worst.max(residual);
        if residual >= 1e-9 {
            failures.push(format!("D{m}: residual {residual:e}"));
        }
        if !agree {
            failures.push(format!("D{m}: structure constants disagree with characters"));
        }
        let report = augq::constructors::rep_ring_dihedral(m).unwrap().validate();
        if !report.check(CheckKind::Associativity).is_some_and(|c| c.passed) || !report.is_valid() {
            failures.push(format!("D{m}: validation failed"));
        }
    }
    outcome(failures, format!("m = 3..12, max residual {worst:.1e}, associativity exhaustive"))
}

fn criterion_10() -> Outcome {
    let mut failures = Vec::new();
    let groups = common::abelian_up_to(16);
    for g in &groups {
        let a = quotient_sequence(&rep_ring_abelian(g), MAX_N);
        let b = quotient_sequence(&group_ring(g), MAX_N);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                let ga: Vec<&FinAbGroup> = a.iter().map(|q| &q.group).collect();
                let gb: Vec<&FinAbGroup> = b.iter().map(|q| &q.group).collect();
                if ga != gb {
                    failures.push(format!("{g}: sequences differ"));
                }
            }
            _ => failures.push(format!("{g}: computation failed")),
        }
    }
    outcome(failures, format!("{} abelian groups, identical Q_1..Q_{MAX_N}", groups.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let corpus: Result<Vec<Computed>, String> = common::corpus().iter().map(compute).collect();

    results.push((1, "hand-derived quotients", criterion_1()));
    match &corpus {
        Ok(corpus) => {
            results.push((2, "stabilization window", criterion_2(corpus)));
            results.push((3, "order bound d^r", criterion_3(corpus)));
            results.push((4, "d-torsion", criterion_4(corpus)));
        }
        Err(e) => {
            for (k, name) in [(2, "stabilization window"), (3, "order bound d^r"), (4, "d-torsion")] {
                results.push((k, name, Outcome { passed: false, detail: e.clone() }));
            }
        }
    }
    results.push((5, "lambda additivity", criterion_5()));
    results.push((6, "lambda profile roundtrip", criterion_6()));
    match &corpus {
        Ok(corpus) => results.push((7, "lambda tail constancy", criterion_7(corpus))),
        Err(e) => results.push((7, "lambda tail constancy", Outcome { passed: false, detail: e.clone() })),
    }
    results.push((8, "exact linear algebra", criterion_8()));
    results.push((9, "dihedral fusion rules", criterion_9()));
    results.push((10, "rep ring equals group ring", criterion_10()));

    let mut all = true;
    for (k, name, o) in &results {
        all &= o.passed;
        println!("{} criterion {k:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        results.iter().filter(|r| r.2.passed).count(),
        results.len(),
        start.elapsed()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
