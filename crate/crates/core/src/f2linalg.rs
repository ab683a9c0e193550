//! Exact linear algebra over GF(2).
//!
//! Matrices are stored row-major with each row packed into `u64` words, so a
//! row operation touches `ceil(cols / 64)` words. Bits past `cols` in the last
//! word of a row are always zero.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_tail();
        v
    }

    /// Builds a vector from a slice of 0/1 values; any nonzero byte is a one.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn distance(&self, other: &BitVec) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the one bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// A dense `rows x cols` matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            m.row_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Builds a matrix from nested 0/1 values. Panics on ragged input; meant
    /// for literals in examples and tests.
    pub fn from_bit_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let vecs: Vec<BitVec> = rows.iter().map(|r| BitVec::from_bits(r.as_ref())).collect();
        Self::from_rows(cols, &vecs).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_vec(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row(r).to_vec())
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|r| self.row_vec(r)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// `row[dst] ^= row[src]`.
    #[inline]
    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (src_off, dst_off) = (src * s, dst * s);
        for w in 0..s {
            let v = self.data[src_off + w];
            self.data[dst_off + w] ^= v;
        }
    }

    pub fn is_row_zero(&self, r: usize) -> bool {
        self.row(r).iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_cols(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (dst, &src) in cols.iter().enumerate() {
                if self.get(r, src) {
                    out.set(r, dst, true);
                }
            }
        }
        out
    }

    /// Keeps the listed rows, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows.len(), self.cols);
        for (dst, &src) in rows.iter().enumerate() {
            out.row_mut(dst).copy_from_slice(self.row(src));
        }
        out
    }

    /// Stacks `self` on top of `below`.
    pub fn vstack(&self, below: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, below.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(BitMatrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    /// Drops all-zero rows.
    pub fn without_zero_rows(&self) -> BitMatrix {
        let keep: Vec<usize> = (0..self.rows).filter(|&r| !self.is_row_zero(r)).collect();
        self.select_rows(&keep)
    }

    /// Row vector times matrix: `v * self`.
    pub fn left_mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let mut acc = vec![0u64; self.stride];
        for r in (0..self.rows).filter(|&r| v.get(r)) {
            for (a, b) in acc.iter_mut().zip(self.row(r)) {
                *a ^= b;
            }
        }
        Ok(BitVec::from_words(self.cols, acc))
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            if r + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row_vec(r))?;
        }
        write!(f, "]")
    }
}

/// A bijection on `{0..n-1}`.
///
/// Acting on columns (or vector coordinates), entry `j` moves to position
/// `image[j]`. This matches right-multiplication by the permutation matrix
/// with ones at `(j, image[j])`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::InvalidParams(format!(
                    "not a permutation of 0..{n}: {image:?}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    /// Uniformly random permutation.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(rng);
        Self { image }
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.image.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, j: usize) -> usize {
        self.image[j]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (j, &i) in self.image.iter().enumerate() {
            inv[i] = j;
        }
        Permutation { image: inv }
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &Permutation) -> Permutation {
        assert_eq!(self.len(), inner.len());
        Permutation {
            image: inner.image.iter().map(|&j| self.image[j]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Number of points that are moved.
    pub fn support(&self) -> usize {
        self.image.iter().enumerate().filter(|&(i, &x)| i != x).count()
    }

    /// Moves coordinate `j` of `v` to position `image[j]`.
    pub fn permute_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: v.len(),
            });
        }
        let mut out = BitVec::zeros(v.len());
        for j in v.support() {
            out.set(self.image[j], true);
        }
        Ok(out)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.image)
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; zero rows sit at the bottom.
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &BitMatrix) -> Rref {
    let mut r = m.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..r.cols {
        if next == r.rows {
            break;
        }
        let Some(p) = (next..r.rows).find(|&i| r.get(i, c)) else {
            continue;
        };
        r.swap_rows(p, next);
        for i in 0..r.rows {
            if i != next && r.get(i, c) {
                r.xor_row_into(next, i);
            }
        }
        pivots.push(c);
        next += 1;
    }
    let rank = pivots.len();
    Rref {
        matrix: r,
        pivots,
        rank,
    }
}

/// Basis of `{x : M x^T = 0}`, returned in RREF with `cols - rank` rows.
pub fn kernel_basis(m: &BitMatrix) -> BitMatrix {
    let Rref { matrix, pivots, .. } = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut basis = BitMatrix::zeros(free.len(), n);
    for (row, &f) in free.iter().enumerate() {
        basis.set(row, f, true);
        for (i, &p) in pivots.iter().enumerate() {
            if matrix.get(i, f) {
                basis.set(row, p, true);
            }
        }
    }
    rref(&basis).matrix
}

pub fn invert(m: &BitMatrix) -> Result<BitMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "cannot invert a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = BitMatrix::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&i| a.get(i, c)).ok_or(Error::Singular)?;
        a.swap_rows(p, c);
        inv.swap_rows(p, c);
        for i in 0..n {
            if i != c && a.get(i, c) {
                a.xor_row_into(c, i);
                inv.xor_row_into(c, i);
            }
        }
    }
    Ok(inv)
}

pub fn mul(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut out = BitMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        let dst = i * out.stride;
        for l in (0..a.cols()).filter(|&l| a.get(i, l)) {
            for (w, &v) in b.row(l).iter().enumerate() {
                out.data[dst + w] ^= v;
            }
        }
    }
    Ok(out)
}

/// `M P`: input column `j` lands at output column `p.image()[j]`.
pub fn apply_perm_cols(m: &BitMatrix, p: &Permutation) -> Result<BitMatrix> {
    if p.len() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "permutation on {} points applied to {} columns",
            p.len(),
            m.cols()
        )));
    }
    let mut out = BitMatrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if m.get(r, c) {
                out.set(r, p.apply(c), true);
            }
        }
    }
    Ok(out)
}

/// True iff the two matrices span the same row space (identical RREF).
pub fn row_space_equal(a: &BitMatrix, b: &BitMatrix) -> bool {
    if a.cols() != b.cols() {
        return false;
    }
    let ra = rref(a);
    let rb = rref(b);
    ra.rank == rb.rank && (0..ra.rank).all(|i| ra.matrix.row(i) == rb.matrix.row(i))
}

/// Uniform element of GL_k(F_2), by rejection sampling.
pub fn random_invertible<R: Rng + ?Sized>(k: usize, rng: &mut R) -> BitMatrix {
    assert!(k >= 1, "random_invertible needs k >= 1");
    loop {
        let m = random_matrix(k, k, rng);
        if m.rank() == k {
            return m;
        }
    }
}

/// Every entry independent and uniform.
pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    let mask = tail_mask(cols);
    for r in 0..rows {
        let row = m.row_mut(r);
        for w in row.iter_mut() {
            *w = rng.gen();
        }
        if let Some(last) = row.last_mut() {
            *last &= mask;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn span(m: &BitMatrix) -> BTreeSet<BitVec> {
        let k = m.rows();
        (0u64..(1 << k))
            .map(|mask| {
                let coeffs: Vec<u8> = (0..k).map(|i| ((mask >> i) & 1) as u8).collect();
                m.left_mul_vec(&BitVec::from_bits(&coeffs)).unwrap()
            })
            .collect()
    }

    #[test]
    fn rref_identity() {
        let r = rref(&BitMatrix::identity(3));
        assert_eq!(r.matrix, BitMatrix::identity(3));
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_duplicate_rows() {
        let r = rref(&BitMatrix::from_bit_rows(&[[1, 1], [1, 1]]));
        assert_eq!(r.matrix, BitMatrix::from_bit_rows(&[[1, 1], [0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_preserves_row_space_by_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = loop {
            let m = random_matrix(4, 8, &mut rng);
            if m.rank() == 4 {
                break m;
            }
        };
        let r = rref(&m);
        assert_eq!(r.rank, 4);
        let a = span(&m);
        let b = span(&r.matrix);
        assert_eq!(a.len(), 16);
        assert_eq!(a, b);
        assert!(row_space_equal(&m, &r.matrix));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&BitMatrix::identity(3)).rows(), 0);
        let k = kernel_basis(&BitMatrix::from_bit_rows(&[[1, 1]]));
        assert_eq!(k, BitMatrix::from_bit_rows(&[[1, 1]]));
    }

    #[test]
    fn kernel_of_wide_zero_matrix_is_everything() {
        let k = kernel_basis(&BitMatrix::zeros(2, 5));
        assert_eq!(k, BitMatrix::identity(5));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(&BitMatrix::identity(4)).unwrap(), BitMatrix::identity(4));
        let u = BitMatrix::from_bit_rows(&[[1, 1], [0, 1]]);
        assert_eq!(invert(&u).unwrap(), u);
        let s = BitMatrix::from_bit_rows(&[[1, 1], [1, 1]]);
        assert_eq!(invert(&s), Err(Error::Singular));
        assert!(matches!(
            invert(&BitMatrix::zeros(2, 3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn invert_exhaustive_3x3() {
        let mut invertible = 0;
        for bits in 0u32..(1 << 9) {
            let m = BitMatrix::from_bit_rows(
                &(0..3)
                    .map(|r| (0..3).map(|c| ((bits >> (3 * r + c)) & 1) as u8).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            );
            match invert(&m) {
                Ok(inv) => {
                    invertible += 1;
                    assert_eq!(mul(&m, &inv).unwrap(), BitMatrix::identity(3));
                    assert_eq!(mul(&inv, &m).unwrap(), BitMatrix::identity(3));
                }
                Err(e) => {
                    assert_eq!(e, Error::Singular);
                    assert!(m.rank() < 3);
                }
            }
        }
        assert_eq!(invertible, 168);
    }

    #[test]
    fn random_invertible_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 1..=12 {
            let m = random_invertible(k, &mut rng);
            let inv = invert(&m).unwrap();
            assert_eq!(mul(&m, &inv).unwrap(), BitMatrix::identity(k));
            assert_eq!(mul(&inv, &m).unwrap(), BitMatrix::identity(k));
        }
    }

    #[test]
    fn random_invertible_small_groups() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert_eq!(random_invertible(1, &mut rng), BitMatrix::identity(1));
        }
        // |GL_2(F_2)| = 6: count invertible 2x2 matrices among all 16.
        let all_invertible = (0u8..16)
            .filter(|b| {
                let m = BitMatrix::from_bit_rows(&[[b & 1, (b >> 1) & 1], [(b >> 2) & 1, (b >> 3) & 1]]);
                m.rank() == 2
            })
            .count();
        assert_eq!(all_invertible, 6);
        let reached: BTreeSet<String> = (0..300)
            .map(|seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                random_invertible(2, &mut rng).to_string()
            })
            .collect();
        assert_eq!(reached.len(), 6);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        assert_eq!(random_invertible(8, &mut rng).rank(), 8);
    }

    #[test]
    fn mul_and_perm_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = random_matrix(5, 70, &mut rng);
        assert_eq!(mul(&BitMatrix::identity(5), &b).unwrap(), b);
        assert_eq!(apply_perm_cols(&b, &Permutation::identity(70)).unwrap(), b);
        assert!(mul(&b, &b).is_err());
        assert!(apply_perm_cols(&b, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn apply_perm_cols_convention() {
        let m = BitMatrix::from_bit_rows(&[[1, 0, 0]]);
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(
            apply_perm_cols(&m, &p).unwrap(),
            BitMatrix::from_bit_rows(&[[0, 0, 1]])
        );
        let v = BitVec::from_bits(&[1, 0, 0]);
        assert_eq!(p.permute_vec(&v).unwrap(), BitVec::from_bits(&[0, 0, 1]));
    }

    #[test]
    fn permutation_composition_matches_column_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_matrix(3, 9, &mut rng);
        let p = Permutation::random(9, &mut rng);
        let q = Permutation::random(9, &mut rng);
        let stepwise = apply_perm_cols(&apply_perm_cols(&m, &p).unwrap(), &q).unwrap();
        assert_eq!(stepwise, apply_perm_cols(&m, &q.compose(&p)).unwrap());
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn permutation_rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
    }

    #[test]
    fn row_space_invariant_under_scrambling() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let m = random_matrix(6, 20, &mut rng);
            let s = random_invertible(6, &mut rng);
            assert!(row_space_equal(&m, &mul(&s, &m).unwrap()));
        }
    }

    #[test]
    fn left_mul_vec_length_check() {
        let m = BitMatrix::identity(3);
        assert!(m.left_mul_vec(&BitVec::zeros(2)).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix_strategy() -> impl Strategy<Value = BitMatrix> {
            (0usize..8, 0usize..80, any::<u64>()).prop_map(|(r, c, seed)| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                random_matrix(r, c, &mut rng)
            })
        }

        proptest! {
            #[test]
            fn rref_is_idempotent(m in matrix_strategy()) {
                let r = rref(&m);
                prop_assert_eq!(rref(&r.matrix).matrix, r.matrix.clone());
                prop_assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
                prop_assert_eq!(r.rank, r.pivots.len());
                prop_assert!(row_space_equal(&m, &r.matrix));
            }

            #[test]
            fn kernel_is_orthogonal(m in matrix_strategy()) {
                let k = kernel_basis(&m);
                prop_assert_eq!(k.rows(), m.cols() - m.rank());
                prop_assert_eq!(k.rank(), k.rows());
                for a in k.row_vecs() {
                    for b in m.row_vecs() {
                        prop_assert!(!a.dot(&b));
                    }
                }
            }

            #[test]
            fn row_space_equal_under_scramble(m in matrix_strategy(), seed in any::<u64>()) {
                prop_assume!(m.rows() >= 1);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let s = random_invertible(m.rows(), &mut rng);
                prop_assert!(row_space_equal(&m, &mul(&s, &m).unwrap()));
                prop_assert!(row_space_equal(&m, &m));
            }
        }
    }
}
