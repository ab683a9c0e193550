// Size, automorphism and minimal-degree conditions for Reed-Muller codes,
// evaluated with exact arithmetic.

use codequiv::hsp::{dimension_bound_check, first_hard_m, rm_hsp_check};

fn main() {
    for (r, m) in [(1, 3), (1, 10), (2, 20), (2, 30), (3, 40)] {
        let h = rm_hsp_check(r, m).unwrap();
        let v = &h.verdict;
        println!(
            "RM({r},{m}): k = {}, size {}, aut {}, degree {}, all {}, k^2 <= 0.2 m 2^m {}",
            h.k, v.size_cond, v.aut_cond, v.degree_cond, v.overall, h.k_squared_cond
        );
    }
    for m in [20, 30, 50] {
        println!("m = {m}: k < r 2^(0.47 m) with r = {}: {}", m / 10, dimension_bound_check(m).unwrap());
    }
    for r in 1..=3 {
        println!("r = {r}: first m passing every check: {:?}", first_hard_m(r, 2, 200).unwrap());
    }
}
