// Duals, hulls, puncturing and weight enumerators of small codes, including
// the cap that stops enumeration of large hulls.

use std::collections::BTreeSet;

use codequiv::code::{dual, hull, puncture, weight_enumerator, LinearCode};
use codequiv::rm::rm_generator;
use codequiv::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn describe(name: &str, c: &LinearCode) {
    let we = weight_enumerator(c, 24).unwrap();
    let h = hull(c);
    println!("{name}: [{}, {}], weights {we}, hull dimension {}", c.n(), c.k(), h.k());
}

fn main() {
    let rm13 = rm_generator(1, 3).unwrap();
    describe("RM(1,3)", &rm13);
    describe("dual of RM(1,3)", &dual(&rm13));

    let rm24 = rm_generator(2, 4).unwrap();
    describe("RM(2,4)", &rm24);
    describe("RM(2,4) punctured at 0", &puncture(&rm24, &BTreeSet::from([0])).unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let random = LinearCode::random(12, 6, &mut rng).unwrap();
    describe("random [12,6]", &random);
    println!("{}", random.generator());

    // RM(2,5) is self-dual, so its punctured hull is large.
    let punctured = puncture(&rm_generator(2, 5).unwrap(), &BTreeSet::from([0])).unwrap();
    match weight_enumerator(&hull(&punctured), 12) {
        Err(Error::CostExceeded { dimension, cap }) => {
            println!("punctured RM(2,5): hull dimension {dimension} exceeds cap {cap}")
        }
        other => println!("punctured RM(2,5): {other:?}"),
    }
}
