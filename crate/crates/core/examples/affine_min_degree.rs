// The affine group GA(m,2) acting on the points of F_2^m: its order, its
// smallest nontrivial support, and a check that it fixes RM(1,3).

use codequiv::affine::{
    affine_group, brute_force_aut, ga_order, minimal_degree_affine, AffineMap, DEFAULT_ENUMERATION_BOUND,
};
use codequiv::rm::rm_generator;

fn main() {
    for m in 1..=4 {
        let d = minimal_degree_affine(m, DEFAULT_ENUMERATION_BOUND).unwrap();
        println!("GA({m},2): order {}, minimal degree {d} of {} points", ga_order(m).order, 1 << m);
    }
    println!("|GA(10,2)| = {}", ga_order(10).order);

    let t = AffineMap::transvection(3).unwrap();
    println!("a transvection on F_2^3 moves {} points", t.support());

    let auts = brute_force_aut(&rm_generator(1, 3).unwrap()).unwrap();
    let ga = affine_group(3, DEFAULT_ENUMERATION_BOUND).unwrap();
    println!("Aut(RM(1,3)) has {} elements; GA(3,2) has {}", auts.len(), ga.len());
}
