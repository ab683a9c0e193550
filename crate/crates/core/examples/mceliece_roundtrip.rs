// Key generation, encryption and decryption over a hidden RM(2,5) code.

use codequiv::cryptosys::{decrypt, encrypt, keygen};
use codequiv::BitVec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (sk, pk) = keygen(2, 5, &mut rng).unwrap();
    println!("public key: {} x {}, errors per ciphertext: {}", pk.k(), pk.n(), pk.t);

    let trials = 200;
    for _ in 0..trials {
        let msg = BitVec::from_bits(&(0..pk.k()).map(|_| rng.gen_range(0..2u8)).collect::<Vec<_>>());
        let ct = encrypt(&pk, &msg, &mut rng).unwrap();
        assert_eq!(decrypt(&sk, &ct).unwrap(), msg);
    }
    println!("{trials} messages decrypted correctly");

    let msg = BitVec::zeros(pk.k());
    let ct = encrypt(&pk, &msg, &mut rng).unwrap();
    println!("ciphertext of the zero message is the error itself: {ct}");
}
