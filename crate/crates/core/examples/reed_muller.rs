// Build RM(r, m), encode a message, add errors up to the decoding radius and
// decode with the majority-logic decoder.

use codequiv::code::min_distance;
use codequiv::cryptosys::random_error;
use codequiv::rm::{fht_decode_first_order, reed_decode, rm_encode, rm_generator, RmParams};
use codequiv::BitVec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (r, m) in [(1, 3), (1, 5), (2, 5), (3, 7)] {
        let params = RmParams::new(r, m).unwrap();
        let code = rm_generator(r, m).unwrap();
        let d = min_distance(&code, 24).map_or("too large to enumerate".to_string(), |d| d.to_string());
        println!(
            "RM({r},{m}): n = {}, k = {}, min distance = {d}, corrects t = {}",
            params.n(),
            params.k(),
            params.t()
        );

        let msg = BitVec::from_bits(&(0..params.k()).map(|_| rng.gen_range(0..2u8)).collect::<Vec<_>>());
        let codeword = rm_encode(&params, &msg).unwrap();
        let noisy = codeword.xor(&random_error(codeword.len(), params.t() as usize, &mut rng));
        let decoded = reed_decode(&params, &noisy).unwrap();
        assert_eq!(decoded.message, msg);
        println!("  {} errors corrected", codeword.distance(&noisy));

        if r == 1 {
            assert_eq!(fht_decode_first_order(&params, &noisy).unwrap().message, msg);
            println!("  Hadamard-transform decoder agrees");
        }
    }
}
