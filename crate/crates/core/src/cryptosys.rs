//! McEliece-type encryption over a hidden Reed-Muller code (Sidelnikov's
//! variant): the public generator is `S G P` for a random invertible
//! scrambler `S` and a random coordinate permutation `P`.

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::f2linalg::{apply_perm_cols, invert, mul, random_invertible, BitMatrix, BitVec, Permutation};
use crate::rm::{reed_decode, rm_raw_generator, RmParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey {
    pub scrambler: BitMatrix,
    pub params: RmParams,
    pub permutation: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    pub generator: BitMatrix,
    pub t: usize,
}

impl PublicKey {
    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }
}

fn check_params(r: usize, m: usize) -> Result<RmParams> {
    if r == 0 {
        return Err(Error::InvalidParams("key generation needs r >= 1".into()));
    }
    RmParams::new(r, m)
}

/// Assembles a key pair from explicit secret components.
pub fn key_pair_from_parts(
    params: RmParams,
    scrambler: BitMatrix,
    permutation: Permutation,
) -> Result<(PrivateKey, PublicKey)> {
    let raw = rm_raw_generator(&params)?;
    if scrambler.rows() != raw.rows() || !scrambler.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "scrambler must be {0}x{0}",
            raw.rows()
        )));
    }
    invert(&scrambler)?;
    let generator = apply_perm_cols(&mul(&scrambler, &raw)?, &permutation)?;
    let public = PublicKey {
        generator,
        t: params.t() as usize,
    };
    let private = PrivateKey {
        scrambler,
        params,
        permutation,
    };
    Ok((private, public))
}

/// Uniform `S` and `P`; the public generator stays in raw, non-echelon form.
pub fn keygen<R: Rng + ?Sized>(r: usize, m: usize, rng: &mut R) -> Result<(PrivateKey, PublicKey)> {
    let params = check_params(r, m)?;
    let k = params.k() as usize;
    let n = rm_raw_generator(&params)?.cols();
    let scrambler = random_invertible(k, rng);
    let permutation = Permutation::random(n, rng);
    key_pair_from_parts(params, scrambler, permutation)
}

pub fn random_error<R: Rng + ?Sized>(n: usize, weight: usize, rng: &mut R) -> BitVec {
    let mut e = BitVec::zeros(n);
    for i in sample(rng, n, weight) {
        e.set(i, true);
    }
    e
}

/// `msg · M' ⊕ e` for a caller-chosen error vector.
pub fn encrypt_with_error(pk: &PublicKey, msg: &BitVec, error: &BitVec) -> Result<BitVec> {
    if error.len() != pk.n() {
        return Err(Error::LengthMismatch {
            expected: pk.n(),
            got: error.len(),
        });
    }
    Ok(pk.generator.left_mul_vec(msg)?.xor(error))
}

/// `msg · M' ⊕ e` with `e` uniform of weight exactly `t`.
pub fn encrypt<R: Rng + ?Sized>(pk: &PublicKey, msg: &BitVec, rng: &mut R) -> Result<BitVec> {
    if msg.len() != pk.k() {
        return Err(Error::LengthMismatch {
            expected: pk.k(),
            got: msg.len(),
        });
    }
    let e = random_error(pk.n(), pk.t, rng);
    encrypt_with_error(pk, msg, &e)
}

pub fn decrypt(sk: &PrivateKey, ct: &BitVec) -> Result<BitVec> {
    let n = sk.permutation.len();
    if ct.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: ct.len(),
        });
    }
    let unpermuted = sk.permutation.inverse().permute_vec(ct)?;
    let decoded = reed_decode(&sk.params, &unpermuted)?;
    let s_inv = invert(&sk.scrambler)?;
    s_inv.left_mul_vec(&decoded.message)
}

/// A Code Equivalence instance as seen by a known-code adversary: the
/// structured generator `known`, the public `public = S · known · P`, and the
/// witness kept for verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceInstance {
    pub known: BitMatrix,
    pub public: BitMatrix,
    pub hidden_scrambler: BitMatrix,
    pub hidden_permutation: Permutation,
}

pub fn known_code_instance<R: Rng + ?Sized>(r: usize, m: usize, rng: &mut R) -> Result<EquivalenceInstance> {
    let (sk, pk) = keygen(r, m, rng)?;
    Ok(EquivalenceInstance {
        known: rm_raw_generator(&sk.params)?,
        public: pk.generator,
        hidden_scrambler: sk.scrambler,
        hidden_permutation: sk.permutation,
    })
}
