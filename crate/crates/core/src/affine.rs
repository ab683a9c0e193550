//! The general affine group `GA(m, 2)` acting on the `2^m` points of `F_2^m`,
//! in the point order used by the `rm` module.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::f2linalg::{apply_perm_cols, row_space_equal, BitMatrix, BitVec, Permutation};

/// Default bound on `m` for exhaustive enumeration of `GA(m, 2)`.
pub const DEFAULT_ENUMERATION_BOUND: usize = 4;

/// Largest `m` for which a map is expanded into a permutation of `2^m` points.
pub const MAX_PERMUTATION_M: usize = 20;

/// Largest block length scanned by [`brute_force_aut`].
pub const BRUTE_FORCE_MAX_N: usize = 8;

/// `x ↦ A x + β` with `A` invertible.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    a: BitMatrix,
    beta: BitVec,
}

impl AffineMap {
    pub fn new(a: BitMatrix, beta: BitVec) -> Result<Self> {
        let m = a.rows();
        if !a.is_square() || beta.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "affine map needs an m x m matrix and length-m shift, got {}x{} and {}",
                a.rows(),
                a.cols(),
                beta.len()
            )));
        }
        if m > 64 {
            return Err(Error::InvalidParams(format!("m = {m} exceeds 64")));
        }
        if a.rank() != m {
            return Err(Error::Singular);
        }
        Ok(Self { a, beta })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            a: BitMatrix::identity(m),
            beta: BitVec::zeros(m),
        }
    }

    pub fn translation(beta: BitVec) -> Self {
        Self {
            a: BitMatrix::identity(beta.len()),
            beta,
        }
    }

    /// Identity plus a one in the top-right corner: a transvection fixing
    /// exactly the hyperplane `x_m = 0`.
    pub fn transvection(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams("transvection needs m >= 2".into()));
        }
        let mut a = BitMatrix::identity(m);
        a.set(0, m - 1, true);
        Ok(Self {
            a,
            beta: BitVec::zeros(m),
        })
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn linear_part(&self) -> &BitMatrix {
        &self.a
    }

    pub fn shift(&self) -> &BitVec {
        &self.beta
    }

    pub fn is_identity(&self) -> bool {
        self.beta.is_zero() && self.a == BitMatrix::identity(self.m())
    }

    fn row_masks(&self) -> Vec<u64> {
        (0..self.m()).map(|i| self.a.row(i).first().copied().unwrap_or(0)).collect()
    }

    fn shift_mask(&self) -> u64 {
        self.beta.words().first().copied().unwrap_or(0)
    }

    /// Image of the point with index `x`.
    pub fn apply(&self, x: u64) -> u64 {
        apply_masks(&self.row_masks(), self.shift_mask(), x)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> Result<AffineMap> {
        let a = crate::f2linalg::mul(&self.a, &inner.a)?;
        let mut beta = self.a.transpose().left_mul_vec(&inner.beta)?;
        beta.xor_assign(&self.beta);
        Ok(AffineMap { a, beta })
    }

    /// The map as a permutation of point indices: `i ↦ index(A α_i + β)`.
    pub fn as_permutation(&self) -> Result<Permutation> {
        let m = self.m();
        if m > MAX_PERMUTATION_M {
            return Err(Error::CostExceeded {
                dimension: m,
                cap: MAX_PERMUTATION_M,
            });
        }
        let rows = self.row_masks();
        let shift = self.shift_mask();
        let image = (0..1u64 << m)
            .map(|x| apply_masks(&rows, shift, x) as usize)
            .collect();
        Permutation::new(image)
    }

    /// Number of moved points, `2^m - |{x : (A + I) x = β}|`.
    pub fn support(&self) -> u128 {
        let m = self.m();
        let mut system = BitMatrix::zeros(m, m + 1);
        for i in 0..m {
            for j in 0..m {
                system.set(i, j, self.a.get(i, j) ^ (i == j));
            }
            system.set(i, m, self.beta.get(i));
        }
        let coeff_rank = system.select_cols(&(0..m).collect::<Vec<_>>()).rank();
        let total = 1u128 << m;
        if system.rank() > coeff_rank {
            total
        } else {
            total - (1u128 << (m - coeff_rank))
        }
    }
}

#[inline]
fn apply_masks(rows: &[u64], shift: u64, x: u64) -> u64 {
    let mut y = shift;
    for (i, &row) in rows.iter().enumerate() {
        y ^= u64::from((row & x).count_ones() & 1) << i;
    }
    y
}

fn rank_of_masks(rows: &[u64]) -> usize {
    let mut rows = rows.to_vec();
    let mut rank = 0;
    for bit in 0..64 {
        let Some(p) = (rank..rows.len()).find(|&i| (rows[i] >> bit) & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && (*r >> bit) & 1 == 1 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Visits every element of `GL_m(F_2)` as row masks, by filtering all
/// `2^{m^2}` matrices on rank.
fn for_each_gl(m: usize, mut f: impl FnMut(&[u64])) {
    let mut rows = vec![0u64; m];
    let cells = m * m;
    for code in 0u64..(1u64 << cells) {
        for (i, r) in rows.iter_mut().enumerate() {
            *r = (code >> (i * m)) & ((1u64 << m) - 1);
        }
        if rank_of_masks(&rows) == m {
            f(&rows);
        }
    }
}

fn check_bound(m: usize, bound: usize) -> Result<()> {
    // 2^{m^2} candidates must also fit the u64 counter.
    if m > bound || m * m >= 64 {
        return Err(Error::CostExceeded {
            dimension: m,
            cap: bound,
        });
    }
    Ok(())
}

fn masks_to_map(m: usize, rows: &[u64], shift: u64) -> AffineMap {
    let a = BitMatrix::from_rows(
        m,
        &rows
            .iter()
            .map(|&r| BitVec::from_words(m, vec![r]))
            .collect::<Vec<_>>(),
    )
    .expect("row length");
    AffineMap {
        a,
        beta: BitVec::from_words(m, vec![shift]),
    }
}

/// Every element of `GL_m(F_2)`.
pub fn general_linear_group(m: usize, bound: usize) -> Result<Vec<BitMatrix>> {
    check_bound(m, bound)?;
    let mut out = Vec::new();
    for_each_gl(m, |rows| out.push(masks_to_map(m, rows, 0).a));
    Ok(out)
}

/// Every element of `GA(m, 2)`.
pub fn affine_group(m: usize, bound: usize) -> Result<Vec<AffineMap>> {
    check_bound(m, bound)?;
    let mut out = Vec::new();
    for_each_gl(m, |rows| {
        for shift in 0..1u64 << m {
            out.push(masks_to_map(m, rows, shift));
        }
    });
    Ok(out)
}

/// Smallest support of a non-identity element of `GA(m, 2)`, by exhaustive
/// enumeration of `GL_m(F_2) × F_2^m` and of every point.
pub fn minimal_degree_affine(m: usize, bound: usize) -> Result<u64> {
    check_bound(m, bound)?;
    if m == 0 {
        return Err(Error::InvalidParams("GA(0, 2) is trivial".into()));
    }
    let mut best = u64::MAX;
    for_each_gl(m, |rows| {
        let linear_identity = rows.iter().enumerate().all(|(i, &r)| r == 1 << i);
        for shift in 0..1u64 << m {
            if linear_identity && shift == 0 {
                continue;
            }
            let moved = (0..1u64 << m)
                .filter(|&x| apply_masks(rows, shift, x) != x)
                .count() as u64;
            best = best.min(moved);
        }
    });
    Ok(best)
}

/// `|GA(m, 2)| = 2^m · ∏_{i<m} (2^m - 2^i)` and the bound `2^{m^2 + m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaOrder {
    pub m: usize,
    pub order: BigUint,
    pub bound: BigUint,
}

impl GaOrder {
    pub fn log2_bound(&self) -> u64 {
        (self.m * self.m + self.m) as u64
    }
}

pub fn ga_order(m: usize) -> GaOrder {
    let two_m = BigUint::one() << m;
    let mut order = two_m.clone();
    for i in 0..m {
        order *= &two_m - (BigUint::one() << i);
    }
    let bound = BigUint::one() << (m * m + m);
    assert!(order <= bound, "|GA({m},2)| exceeds 2^(m^2+m)");
    GaOrder { m, order, bound }
}

/// True iff `C P = C` as row spaces.
pub fn is_automorphism(c: &LinearCode, p: &Permutation) -> bool {
    match apply_perm_cols(c.generator(), p) {
        Ok(moved) => row_space_equal(c.generator(), &moved),
        Err(_) => false,
    }
}

/// Scans all of `S_n` for automorphisms; permutations come out in
/// lexicographic order of their image sequences.
pub fn brute_force_aut(c: &LinearCode) -> Result<Vec<Permutation>> {
    let n = c.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::CostExceeded {
            dimension: n,
            cap: BRUTE_FORCE_MAX_N,
        });
    }
    Ok((0..n)
        .permutations(n)
        .map(|image| Permutation::new(image).expect("itertools yields bijections"))
        .filter(|p| is_automorphism(c, p))
        .collect())
}

/// True iff the given points (as index bitmasks) span `F_2^m`.
pub fn spans_space(points: &[u64], m: usize) -> bool {
    rank_of_masks(points) == m
}
