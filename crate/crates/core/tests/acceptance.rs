//! Acceptance suite. Each test prints one `PASS`/`FAIL` line before asserting.
//! Oracles here are written independently of the library code they check.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use codequiv::affine::{affine_group, brute_force_aut, ga_order, minimal_degree_affine, DEFAULT_ENUMERATION_BOUND};
use codequiv::code::{dual, hull, weight_enumerator, LinearCode, DEFAULT_CAP};
use codequiv::cryptosys::{decrypt, encrypt, encrypt_with_error, keygen, known_code_instance};
use codequiv::hsp::{dimension_bound_check, rm_hsp_check};
use codequiv::rm::{rm_generator, rm_raw_generator, RmParams};
use codequiv::ssa::{brute_force_equivalence, random_equivalence_instance, recover_scrambler, solve_equivalence};
use codequiv::{BitMatrix, BitVec, Error, Permutation};

const MIN_DEGREE_LIMIT: Duration = Duration::from_secs(10);
const AUT_LIMIT: Duration = Duration::from_secs(60);
const SSA_LIMIT: Duration = Duration::from_secs(120);
const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(30);

fn report(id: u32, name: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("{tag} criterion {id:>2} {name}: {detail}");
}

fn binomial_table(n: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; n + 1]; n + 1];
    for i in 0..=n {
        t[i][0] = 1;
        for j in 1..=i {
            t[i][j] = t[i - 1][j - 1] + if j < i { t[i - 1][j] } else { 0 };
        }
    }
    t
}

/// `S · M · P` built bit by bit: column `j` of `S M` lands at `p.apply(j)`.
fn naive_smp(s: &BitMatrix, m: &BitMatrix, p: &Permutation) -> Vec<Vec<bool>> {
    let (k, n) = (m.rows(), m.cols());
    let mut out = vec![vec![false; n]; k];
    for (i, row) in out.iter_mut().enumerate() {
        for j in 0..n {
            let mut bit = false;
            for l in 0..k {
                bit ^= s.get(i, l) && m.get(l, j);
            }
            row[p.apply(j)] = bit;
        }
    }
    out
}

fn as_rows(m: &BitMatrix) -> Vec<Vec<bool>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect()
}

fn random_bits<R: Rng>(len: usize, rng: &mut R) -> BitVec {
    BitVec::from_bits(&(0..len).map(|_| rng.gen_range(0..2u8)).collect::<Vec<_>>())
}

#[test]
fn criterion_01_minimal_degree() {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut m4_time = Duration::ZERO;
    for m in 2..=4usize {
        let start = Instant::now();
        let d = minimal_degree_affine(m, DEFAULT_ENUMERATION_BOUND).unwrap();
        if m == 4 {
            m4_time = start.elapsed();
        }
        ok &= d == 1 << (m - 1);
        parts.push(format!("m={m} -> {d}"));
    }
    ok &= m4_time < MIN_DEGREE_LIMIT;
    let detail = format!("{}; m=4 took {m4_time:.2?} (limit {MIN_DEGREE_LIMIT:?})", parts.join(", "));
    report(1, "minimal degree of GA(m,2) is 2^(m-1)", ok, &detail);
    assert!(ok);
}

#[test]
fn criterion_02_rm13_automorphisms_are_affine() {
    let start = Instant::now();
    let auts: BTreeSet<Permutation> = brute_force_aut(&rm_generator(1, 3).unwrap())
        .unwrap()
        .into_iter()
        .collect();
    let elapsed = start.elapsed();
    let ga: BTreeSet<Permutation> = affine_group(3, DEFAULT_ENUMERATION_BOUND)
        .unwrap()
        .iter()
        .map(|g| g.as_permutation().unwrap())
        .collect();
    let ok = auts.len() == 1344 && auts == ga && elapsed < AUT_LIMIT;
    let detail = format!(
        "|Aut| = {}, |GA(3,2)| = {}, equal = {}, {elapsed:.2?} (limit {AUT_LIMIT:?})",
        auts.len(),
        ga.len(),
        auts == ga
    );
    report(2, "Aut(RM(1,3)) over S_8 equals GA(3,2)", ok, &detail);
    assert!(ok);
}

#[test]
fn criterion_03_affine_group_order() {
    let mut ok = true;
    for m in 1..=64usize {
        // |GL(m,2)| = 2^{m(m-1)/2} ∏_{i=1}^{m} (2^i - 1)
        let mut gl = BigUint::from(1u32) << (m * (m - 1) / 2);
        for i in 1..=m {
            gl *= (BigUint::from(1u32) << i) - 1u32;
        }
        let expected = gl << m;
        let got = ga_order(m);
        ok &= got.order == expected && got.order <= (BigUint::from(1u32) << (m * m + m));
    }
    report(3, "|GA(m,2)| exact and <= 2^(m^2+m)", ok, "m = 1..=64");
    assert!(ok);
}

#[test]
fn criterion_04_rm_dimension() {
    let binom = binomial_table(10);
    let mut ok = true;
    let mut checked = 0;
    for (m, row) in binom.iter().enumerate().skip(2) {
        for r in 1..m {
            let expected: u64 = row[..=r].iter().sum();
            let raw = rm_raw_generator(&RmParams::new(r, m).unwrap()).unwrap();
            ok &= raw.rank() as u64 == expected && rm_generator(r, m).unwrap().k() as u64 == expected;
            checked += 1;
        }
    }
    report(4, "rank RM(r,m) = sum C(m,j)", ok, &format!("{checked} pairs, 1 <= r < m <= 10"));
    assert!(ok);
}

#[test]
fn criterion_05_dual_and_hull() {
    let mut ok = true;
    let mut checked = 0;
    for m in 1..=6usize {
        for r in 0..m {
            let c = rm_generator(r, m).unwrap();
            let d = rm_generator(m - r - 1, m).unwrap();
            let h = rm_generator(r.min(m - r - 1), m).unwrap();
            ok &= dual(&c).generator() == d.generator();
            ok &= hull(&c).generator() == h.generator();
            checked += 1;
        }
    }
    report(5, "dual and hull of RM(r,m)", ok, &format!("{checked} codes, m <= 6, RREF equality"));
    assert!(ok);
}

#[test]
fn criterion_06_ssa_on_random_codes() {
    let trials = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut successes, mut wrong, mut failures) = (0, 0, Vec::new());
    let start = Instant::now();
    for _ in 0..trials {
        let inst = random_equivalence_instance(32, 16, 1..=6, &mut rng).unwrap();
        match solve_equivalence(&inst.known, &inst.public, DEFAULT_CAP) {
            Ok((s, p)) => {
                if naive_smp(&s, &inst.known, &p) == as_rows(&inst.public) {
                    successes += 1;
                } else {
                    wrong += 1;
                }
            }
            Err(e) => failures.push(e.kind()),
        }
    }
    let elapsed = start.elapsed();
    let ok = wrong == 0 && elapsed < SSA_LIMIT;
    let detail = format!(
        "{successes}/{trials} recovered ({:.1}%), {wrong} wrong, {} structured failures, {elapsed:.2?} (limit {SSA_LIMIT:?})",
        100.0 * successes as f64 / trials as f64,
        failures.len()
    );
    report(6, "support splitting on random [32,16] codes", ok, &detail);
    assert!(ok);
}

#[test]
fn criterion_07_ssa_fails_honestly_on_rm() {
    let mut ok = true;
    let mut parts = Vec::new();
    for (seed, (r, m)) in [(1, 4), (2, 5), (2, 6)].into_iter().enumerate() {
        let inst = known_code_instance(r, m, &mut ChaCha8Rng::seed_from_u64(seed as u64)).unwrap();
        let outcome = match solve_equivalence(&inst.known, &inst.public, DEFAULT_CAP) {
            Ok((s, p)) => {
                ok = false;
                let valid = naive_smp(&s, &inst.known, &p) == as_rows(&inst.public);
                format!("returned a {} pair", if valid { "valid" } else { "WRONG" })
            }
            Err(e @ (Error::Ambiguous { .. } | Error::CostExceeded { .. })) => e.kind().to_string(),
            Err(e) => {
                ok = false;
                format!("unexpected {}", e.kind())
            }
        };
        parts.push(format!("RM({r},{m}) -> {outcome}"));
    }
    report(7, "support splitting on RM instances", ok, &parts.join(", "));
    assert!(ok);
}

#[test]
fn criterion_08_brute_force_oracle() {
    let mut ok = true;
    let mut instances = 0;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=8usize);
        let k = rng.gen_range(1..=n);
        let inst = random_equivalence_instance(n, k, 0..=k, &mut rng).unwrap();
        let target = as_rows(&inst.public);
        match brute_force_equivalence(&inst.known, &inst.public) {
            Ok((s, p)) => ok &= naive_smp(&s, &inst.known, &p) == target,
            Err(_) => ok = false,
        }
        match recover_scrambler(&inst.known, &inst.public, &inst.hidden_permutation) {
            Ok(s) => ok &= s == inst.hidden_scrambler,
            Err(_) => ok = false,
        }
        instances += 1;
    }
    report(8, "exhaustive search and scrambler recovery", ok, &format!("{instances} seeded instances, n <= 8"));
    assert!(ok);
}

#[test]
fn criterion_09_round_trip() {
    let start = Instant::now();
    let mut failures = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (sk, pk) = keygen(1, 3, &mut rng).unwrap();
    for bits in 0u8..16 {
        let msg = BitVec::from_bits(&(0..4).map(|i| (bits >> i) & 1).collect::<Vec<_>>());
        for pos in 0..8 {
            let mut e = BitVec::zeros(8);
            e.set(pos, true);
            let ct = encrypt_with_error(&pk, &msg, &e).unwrap();
            failures += usize::from(decrypt(&sk, &ct).ok() != Some(msg.clone()));
        }
    }
    let (sk, pk) = keygen(2, 5, &mut rng).unwrap();
    assert_eq!(pk.t, 3);
    for _ in 0..1000 {
        let msg = random_bits(pk.k(), &mut rng);
        let ct = encrypt(&pk, &msg, &mut rng).unwrap();
        failures += usize::from(decrypt(&sk, &ct).ok() != Some(msg));
    }
    let elapsed = start.elapsed();
    let ok = failures == 0 && elapsed < ROUND_TRIP_LIMIT;
    let detail = format!(
        "128 exhaustive at RM(1,3) + 1000 random at RM(2,5), {failures} failures, {elapsed:.2?} (limit {ROUND_TRIP_LIMIT:?})"
    );
    report(9, "encrypt/decrypt round trip", ok, &detail);
    assert!(ok);
}

#[test]
fn criterion_10_rm_size_arithmetic() {
    let h = rm_hsp_check(2, 20).unwrap();
    // 5 k^2 <= m 2^m with k = 1 + 20 + 190
    let k_oracle = 1 + 20 + 190u64;
    let sq_oracle = 5 * k_oracle * k_oracle <= 20 * (1 << 20);
    let mut ok = h.k == 211 && h.k == k_oracle && h.k_squared_cond && sq_oracle;
    let binom = binomial_table(50);
    let mut parts = vec![format!("(2,20): k = {}, k^2 cond = {}", h.k, h.k_squared_cond)];
    for m in [20usize, 30, 50] {
        let got = dimension_bound_check(m).unwrap();
        let r = m / 10;
        let k: u64 = (0..=r).map(|j| binom[m][j]).sum();
        // Floating-point cross-check; the margins here are far above rounding.
        let oracle = (k as f64) < r as f64 * 2f64.powf(0.47 * m as f64);
        ok &= got && oracle;
        parts.push(format!("m={m}: {got}"));
    }
    report(10, "RM dimension arithmetic", ok, &parts.join(", "));
    assert!(ok);
}

/// `B_j = |C|^{-1} Σ_i A_i K_j(i)` with Krawtchouk polynomials
/// `K_j(i) = Σ_s (-1)^s C(i,s) C(n-i,j-s)`.
fn macwilliams(a: &[u64]) -> Vec<u64> {
    let n = a.len() - 1;
    let binom = binomial_table(n);
    let size: i128 = a.iter().map(|&x| x as i128).sum();
    (0..=n)
        .map(|j| {
            let mut total: i128 = 0;
            for (i, &ai) in a.iter().enumerate() {
                let mut kj: i128 = 0;
                for s in 0..=j.min(i) {
                    if j - s > n - i {
                        continue;
                    }
                    let term = binom[i][s] as i128 * binom[n - i][j - s] as i128;
                    kj += if s % 2 == 0 { term } else { -term };
                }
                total += ai as i128 * kj;
            }
            assert_eq!(total % size, 0);
            u64::try_from(total / size).expect("non-negative")
        })
        .collect()
}

#[test]
fn criterion_11_macwilliams() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut ok = true;
    for _ in 0..50 {
        let n = rng.gen_range(1..=10usize);
        let k = rng.gen_range(0..=n);
        let c = LinearCode::random(n, k, &mut rng).unwrap();
        let a = weight_enumerator(&c, DEFAULT_CAP).unwrap();
        let b = weight_enumerator(&dual(&c), DEFAULT_CAP).unwrap();
        ok &= macwilliams(a.counts()) == b.counts();
    }
    report(11, "MacWilliams transform matches the dual", ok, "50 random codes, n <= 10");
    assert!(ok);
}
