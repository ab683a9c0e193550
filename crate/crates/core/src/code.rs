//! Binary linear codes held in canonical form.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::f2linalg::{kernel_basis, random_matrix, rref, BitMatrix, BitVec};

/// Default limit on the dimension of codes enumerated exhaustively.
pub const DEFAULT_CAP: usize = 24;

/// Hard ceiling regardless of the caller's cap; counts are `u64`.
const MAX_ENUMERABLE_DIM: usize = 62;

/// An `[n, k]` binary code. The generator is always in reduced row echelon
/// form with exactly `k` nonzero rows, so two codes are equal iff their
/// generators are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    n: usize,
    gen: BitMatrix,
}

impl LinearCode {
    /// Canonicalizes the row space of `m`. A rank-0 input yields the zero
    /// code (`k = 0`), which is a valid degenerate code.
    pub fn from_generator(m: &BitMatrix) -> Self {
        let r = rref(m);
        let gen = r.matrix.select_rows(&(0..r.rank).collect::<Vec<_>>());
        Self { n: m.cols(), gen }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            gen: BitMatrix::zeros(0, n),
        }
    }

    pub fn full_space(n: usize) -> Self {
        Self {
            n,
            gen: BitMatrix::identity(n),
        }
    }

    /// `[n, 1]` repetition code.
    pub fn repetition(n: usize) -> Self {
        Self::from_generator(&BitMatrix::from_rows(n, &[BitVec::ones(n)]).expect("row length"))
    }

    /// Uniformly random generator matrix of full rank `k`.
    pub fn random<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParams(format!("k = {k} exceeds n = {n}")));
        }
        loop {
            let m = random_matrix(k, n, rng);
            if m.rank() == k {
                return Ok(Self::from_generator(&m));
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    pub fn is_zero_code(&self) -> bool {
        self.k() == 0
    }

    pub fn contains(&self, word: &BitVec) -> bool {
        if word.len() != self.n {
            return false;
        }
        let extended = self
            .gen
            .vstack(&BitMatrix::from_rows(self.n, std::slice::from_ref(word)).expect("row length"))
            .expect("same width");
        extended.rank() == self.k()
    }

    /// Every codeword, in Gray-code order. Exponential; for small codes only.
    pub fn codewords(&self) -> Vec<BitVec> {
        assert!(self.k() < 24, "refusing to list 2^{} codewords", self.k());
        let mut cur = BitVec::zeros(self.n);
        let mut out = Vec::with_capacity(1 << self.k());
        out.push(cur.clone());
        for i in 1u64..(1u64 << self.k()) {
            cur.xor_assign(&self.gen.row_vec(i.trailing_zeros() as usize));
            out.push(cur.clone());
        }
        out
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[{}, {}] {:?}", self.n, self.k(), self.gen)
    }
}

/// `counts[w]` = number of codewords of Hamming weight `w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeightEnumerator {
    counts: Vec<u64>,
}

impl WeightEnumerator {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Block length of the code this enumerates.
    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts.iter().skip(1).position(|&c| c > 0).map(|w| w + 1)
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn dual(c: &LinearCode) -> LinearCode {
    LinearCode {
        n: c.n,
        gen: kernel_basis(&c.gen),
    }
}

/// `C ∩ C^⊥`, as the common kernel of both parity-check matrices.
pub fn hull(c: &LinearCode) -> LinearCode {
    let d = dual(c);
    let checks = d.gen.vstack(&c.gen).expect("same width");
    LinearCode {
        n: c.n,
        gen: kernel_basis(&checks),
    }
}

/// Deletes the coordinates in `coords`. Duplicate or zero columns that result
/// are kept as they are.
pub fn puncture(c: &LinearCode, coords: &BTreeSet<usize>) -> Result<LinearCode> {
    if let Some(&bad) = coords.iter().find(|&&j| j >= c.n) {
        return Err(Error::InvalidParams(format!(
            "coordinate {bad} out of range for length {}",
            c.n
        )));
    }
    if coords.len() == c.n {
        return Err(Error::AllPunctured(c.n));
    }
    let keep: Vec<usize> = (0..c.n).filter(|j| !coords.contains(j)).collect();
    Ok(LinearCode::from_generator(&c.gen.select_cols(&keep)))
}

/// Exhaustive weight distribution over all `2^k` codewords.
pub fn weight_enumerator(c: &LinearCode, cap: usize) -> Result<WeightEnumerator> {
    let k = c.k();
    if k > cap.min(MAX_ENUMERABLE_DIM) {
        return Err(Error::CostExceeded { dimension: k, cap });
    }
    let mut counts = vec![0u64; c.n + 1];
    counts[0] = 1;
    let total = 1u64 << k;
    if c.n <= 64 {
        let rows: Vec<u64> = (0..k).map(|r| c.gen.row(r).first().copied().unwrap_or(0)).collect();
        let mut cur = 0u64;
        for i in 1..total {
            cur ^= rows[i.trailing_zeros() as usize];
            counts[cur.count_ones() as usize] += 1;
        }
    } else {
        let mut cur = vec![0u64; c.gen.row(0).len()];
        for i in 1..total {
            for (a, b) in cur.iter_mut().zip(c.gen.row(i.trailing_zeros() as usize)) {
                *a ^= b;
            }
            let w: u32 = cur.iter().map(|w| w.count_ones()).sum();
            counts[w as usize] += 1;
        }
    }
    Ok(WeightEnumerator { counts })
}

pub fn min_distance(c: &LinearCode, cap: usize) -> Result<usize> {
    if c.is_zero_code() {
        return Err(Error::InvalidParams(
            "minimum distance of the zero code is undefined".into(),
        ));
    }
    let we = weight_enumerator(c, cap)?;
    Ok(we.min_nonzero_weight().expect("k >= 1 has a nonzero codeword"))
}
