//! Binary Reed-Muller codes `RM(r, m)`.
//!
//! Point `i` (0-based) of `F_2^m` is the vector whose bit `j` (variable
//! `x_{j+1}`) is bit `j` of `i`, least significant first. Monomials are
//! ordered by degree, then lexicographically by their sorted variable sets;
//! that order fixes the message coordinates used by [`rm_encode`].

use itertools::Itertools;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::f2linalg::{BitMatrix, BitVec};

/// Largest `m` for which generators and codewords are materialized.
pub const MAX_MATERIALIZED_M: usize = 16;

/// Largest `m` accepted for pure arithmetic (dimension, distance).
pub const MAX_ARITHMETIC_M: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RmParams {
    r: usize,
    m: usize,
}

impl RmParams {
    pub fn new(r: usize, m: usize) -> Result<Self> {
        if r >= m {
            return Err(Error::InvalidParams(format!("RM(r, m) needs r < m, got r={r}, m={m}")));
        }
        if m > MAX_ARITHMETIC_M {
            return Err(Error::InvalidParams(format!("m = {m} exceeds {MAX_ARITHMETIC_M}")));
        }
        Ok(Self { r, m })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Block length `2^m`.
    pub fn n(&self) -> u128 {
        1u128 << self.m
    }

    pub fn k(&self) -> u64 {
        dimension(self.r, self.m)
    }

    /// Unique-decoding radius `2^{m-r-1} - 1`.
    pub fn t(&self) -> u64 {
        (1u64 << (self.m - self.r - 1)) - 1
    }

    /// Monomials of degree at most `r` as variable bitmasks, in message order.
    pub fn monomials(&self) -> Vec<u64> {
        (0..=self.r)
            .flat_map(|d| {
                (0..self.m)
                    .combinations(d)
                    .map(|vars| vars.into_iter().fold(0u64, |acc, v| acc | (1 << v)))
            })
            .collect()
    }

    fn materialized_len(&self) -> Result<usize> {
        if self.m > MAX_MATERIALIZED_M {
            return Err(Error::InvalidParams(format!(
                "m = {} is too large to materialize (limit {MAX_MATERIALIZED_M})",
                self.m
            )));
        }
        Ok(1usize << self.m)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    // Exact for the ranges used here: the running product is always a binomial.
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1)) as u64
}

fn dimension(r: usize, m: usize) -> u64 {
    (0..=r as u64).map(|j| binomial(m as u64, j)).sum()
}

/// `sum_{j <= r} C(m, j)`.
pub fn rm_dimension(r: usize, m: usize) -> Result<u64> {
    Ok(RmParams::new(r, m)?.k())
}

/// `2^{m-r}`.
pub fn rm_min_distance(r: usize, m: usize) -> Result<u128> {
    let p = RmParams::new(r, m)?;
    Ok(1u128 << (p.m - p.r))
}

/// Evaluation vector of a monomial over all `2^m` points.
fn monomial_eval(mask: u64, n: usize) -> BitVec {
    let mut v = BitVec::zeros(n);
    for x in 0..n {
        if (x as u64) & mask == mask {
            v.set(x, true);
        }
    }
    v
}

/// The monomial-evaluation generator, one row per monomial, not canonicalized.
pub fn rm_raw_generator(params: &RmParams) -> Result<BitMatrix> {
    let n = params.materialized_len()?;
    let rows: Vec<BitVec> = params
        .monomials()
        .into_iter()
        .map(|mask| monomial_eval(mask, n))
        .collect();
    BitMatrix::from_rows(n, &rows)
}

pub fn rm_generator(r: usize, m: usize) -> Result<LinearCode> {
    let params = RmParams::new(r, m)?;
    Ok(LinearCode::from_generator(&rm_raw_generator(&params)?))
}

/// Evaluates the polynomial whose monomial coefficients are `message`.
pub fn rm_encode(params: &RmParams, message: &BitVec) -> Result<BitVec> {
    let n = params.materialized_len()?;
    let monomials = params.monomials();
    if message.len() != monomials.len() {
        return Err(Error::LengthMismatch {
            expected: monomials.len(),
            got: message.len(),
        });
    }
    let mut word = BitVec::zeros(n);
    for (idx, &mask) in monomials.iter().enumerate() {
        if message.get(idx) {
            word.xor_assign(&monomial_eval(mask, n));
        }
    }
    Ok(word)
}

/// Decoder output: polynomial coefficients and the re-encoded codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub message: BitVec,
    pub codeword: BitVec,
}

/// Reed's majority-logic decoder.
///
/// For each degree from `r` down to 0, every coefficient of that degree is
/// the majority of its `2^{m-d}` check sums, one per coset of the subspace
/// spanned by the monomial's variables; the decided terms are then stripped
/// from the word. An exact tie is reported as `DecodeFailure`.
pub fn reed_decode(params: &RmParams, word: &BitVec) -> Result<Decoded> {
    let n = params.materialized_len()?;
    if word.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: word.len(),
        });
    }
    let monomials = params.monomials();
    let mut residual: Vec<bool> = word.iter().collect();
    let mut message = BitVec::zeros(monomials.len());

    // Message indices grouped by degree, highest first.
    let mut start = monomials.len();
    for d in (0..=params.r).rev() {
        let first = monomials.iter().position(|m| m.count_ones() as usize == d).unwrap_or(start);
        let degree_slice = first..start;
        start = first;

        let mut decided = Vec::new();
        for idx in degree_slice {
            let mask = monomials[idx];
            let mut ones = 0usize;
            let mut zeros = 0usize;
            for base in (0..n as u64).filter(|x| x & mask == 0) {
                let mut parity = false;
                let mut sub = 0u64;
                loop {
                    parity ^= residual[(base | sub) as usize];
                    sub = sub.wrapping_sub(mask) & mask;
                    if sub == 0 {
                        break;
                    }
                }
                if parity {
                    ones += 1;
                } else {
                    zeros += 1;
                }
            }
            match ones.cmp(&zeros) {
                std::cmp::Ordering::Greater => {
                    message.set(idx, true);
                    decided.push(mask);
                }
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => {
                    return Err(Error::DecodeFailure(format!(
                        "majority tie ({ones} vs {zeros}) on a degree-{d} coefficient"
                    )));
                }
            }
        }
        for mask in decided {
            for (x, bit) in residual.iter_mut().enumerate() {
                if (x as u64) & mask == mask {
                    *bit ^= true;
                }
            }
        }
    }
    let codeword = rm_encode(params, &message)?;
    Ok(Decoded { message, codeword })
}

/// First-order decoder via the fast Walsh-Hadamard transform.
///
/// Same contract as [`reed_decode`] for `r = 1`: the closest affine function
/// wins, and a tie for the largest correlation is a `DecodeFailure`.
pub fn fht_decode_first_order(params: &RmParams, word: &BitVec) -> Result<Decoded> {
    if params.r != 1 {
        return Err(Error::InvalidParams(format!(
            "the Hadamard decoder handles r = 1 only, got r = {}",
            params.r
        )));
    }
    let n = params.materialized_len()?;
    if word.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: word.len(),
        });
    }
    let mut f: Vec<i64> = word.iter().map(|b| if b { -1 } else { 1 }).collect();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (f[i], f[i + h]);
                f[i] = a + b;
                f[i + h] = a - b;
            }
        }
        h *= 2;
    }
    let best = f.iter().map(|v| v.abs()).max().expect("n >= 2");
    let mut winners = f.iter().enumerate().filter(|(_, v)| v.abs() == best);
    let (u, &corr) = winners.next().expect("max exists");
    if winners.next().is_some() {
        return Err(Error::DecodeFailure(format!(
            "correlation tie at magnitude {best}"
        )));
    }
    let mut message = BitVec::zeros(params.m + 1);
    message.set(0, corr < 0);
    for j in 0..params.m {
        message.set(j + 1, (u >> j) & 1 == 1);
    }
    let codeword = rm_encode(params, &message)?;
    Ok(Decoded { message, codeword })
}
