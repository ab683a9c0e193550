// Recover the scrambler and permutation hiding a random code, then show the
// attack giving up on a Reed-Muller code.

use codequiv::cryptosys::known_code_instance;
use codequiv::f2linalg::{apply_perm_cols, mul};
use codequiv::ssa::{random_equivalence_instance, run_benchmark, solve_equivalence};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let inst = random_equivalence_instance(32, 16, 1..=6, &mut rng).unwrap();
    match solve_equivalence(&inst.known, &inst.public, 24) {
        Ok((s, p)) => {
            let rebuilt = apply_perm_cols(&mul(&s, &inst.known).unwrap(), &p).unwrap();
            assert_eq!(rebuilt, inst.public);
            println!("random [32,16]: recovered P = {:?}", p.image());
            println!("  matches the hidden permutation: {}", p == inst.hidden_permutation);
        }
        Err(e) => println!("random [32,16]: {e}"),
    }

    let report = run_benchmark(32, 16, 50, 1, 24).unwrap();
    println!(
        "50 random [32,16] instances: {} recovered, {} ambiguous, {} invalid",
        report.successes, report.ambiguous, report.invalid
    );

    let rm = known_code_instance(1, 4, &mut rng).unwrap();
    match solve_equivalence(&rm.known, &rm.public, 24) {
        Ok(_) => println!("RM(1,4): recovered"),
        Err(e) => println!("RM(1,4): {}", e.kind()),
    }
}
