//! Support splitting: recover the hidden permutation between two equivalent
//! codes by labelling each coordinate with a permutation-invariant signature,
//! the weight enumerator of the hull of the code punctured there.
//!
//! When single-coordinate labels collide, one coordinate of the smallest
//! ambiguous block is individualized on each side and every other coordinate
//! is relabelled by the signature of the code punctured at the individualized
//! set plus itself. Between rounds, labels are propagated along the table of
//! pair signatures `signature({x, y})`: each coordinate is relabelled by its
//! label and the multiset of (pair signature, neighbour label) until the
//! partition stops splitting. Punctured sets never exceed [`MAX_PUNCTURED`]
//! coordinates, so at most two coordinates are individualized; a partition
//! that is still not discrete after that is reported as `Ambiguous`. A candidate matching is
//! only returned after the row-space check `C P = C'` passes, so a success is
//! never wrong.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{hull, puncture, weight_enumerator, LinearCode, WeightEnumerator};
use crate::error::{Error, Result};
use crate::f2linalg::{
    apply_perm_cols, invert, mul, random_invertible, row_space_equal, rref, BitMatrix, Permutation,
};
use crate::cryptosys::EquivalenceInstance;

/// Largest punctured set used by any signature.
pub const MAX_PUNCTURED: usize = 3;

/// Largest block length accepted by [`brute_force_equivalence`].
pub const BRUTE_FORCE_MAX_N: usize = 8;

/// Appended to the label of an individualized coordinate. An encoded
/// enumerator always starts with a nonzero length, so this cannot collide.
const INDIVIDUALIZED: [u8; 4] = [0, 0, 0, 0];

/// Label for a probe that would puncture every coordinate.
const EXHAUSTED: [u8; 4] = [0xff; 4];

/// Precedes a `u32` class index produced by pair refinement.
const CLASS: [u8; 4] = [0xff, 0xff, 0xff, 0xfe];

/// Canonical encoding of one or more weight enumerators: for each, a `u32`
/// big-endian count of entries followed by each entry as `u64` big-endian.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Signature(Vec<u8>);

impl Signature {
    pub fn from_enumerator(we: &WeightEnumerator) -> Self {
        let mut bytes = Vec::with_capacity(4 + 8 * we.counts().len());
        bytes.extend_from_slice(&(we.counts().len() as u32).to_be_bytes());
        for &c in we.counts() {
            bytes.extend_from_slice(&c.to_be_bytes());
        }
        Self(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    fn extended(&self, tail: &[u8]) -> Self {
        let mut bytes = self.0.clone();
        bytes.extend_from_slice(tail);
        Self(bytes)
    }

    /// The enumerators this signature encodes, in order; marker segments are
    /// skipped.
    pub fn enumerators(&self) -> Vec<WeightEnumerator> {
        let mut out = Vec::new();
        let mut rest = self.0.as_slice();
        while rest.len() >= 4 {
            let len = u32::from_be_bytes(rest[..4].try_into().expect("4 bytes"));
            rest = &rest[4..];
            if len == 0 || len == u32::MAX {
                continue;
            }
            if len == u32::MAX - 1 {
                rest = &rest[4..];
                continue;
            }
            let len = len as usize;
            let counts = rest[..8 * len]
                .chunks_exact(8)
                .map(|b| u64::from_be_bytes(b.try_into().expect("8 bytes")))
                .collect();
            rest = &rest[8 * len..];
            out.push(WeightEnumerator::from_counts(counts));
        }
        out
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.enumerators().iter().map(|w| w.to_string()).collect();
        write!(f, "Signature[{}]", parts.join(" "))
    }
}

/// Signature of `hull(puncture(C, coords))`.
pub fn signature(c: &LinearCode, coords: &BTreeSet<usize>, cap: usize) -> Result<Signature> {
    let h = hull(&puncture(c, coords)?);
    Ok(Signature::from_enumerator(&weight_enumerator(&h, cap)?))
}

/// Like [`signature`], but a probe covering the whole support gets a fixed
/// marker instead of an error.
fn probe(c: &LinearCode, coords: &BTreeSet<usize>, cap: usize) -> Result<Signature> {
    if coords.len() == c.n() {
        return Ok(Signature(EXHAUSTED.to_vec()));
    }
    signature(c, coords, cap)
}

/// Runs `f` over all coordinates in parallel and reports the error of the
/// lowest failing coordinate, so results do not depend on scheduling.
fn per_coordinate<T: Send>(n: usize, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    (0..n).into_par_iter().map(f).collect::<Vec<_>>().into_iter().collect()
}

/// Coordinates grouped by label.
#[derive(Clone, PartialEq, Eq)]
pub struct CoordinatePartition {
    labels: Vec<Signature>,
    blocks: BTreeMap<Signature, Vec<usize>>,
}

impl CoordinatePartition {
    pub fn from_labels(labels: Vec<Signature>) -> Self {
        let mut blocks: BTreeMap<Signature, Vec<usize>> = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            blocks.entry(l.clone()).or_default().push(i);
        }
        Self { labels, blocks }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &Signature {
        &self.labels[i]
    }

    pub fn blocks(&self) -> &BTreeMap<Signature, Vec<usize>> {
        &self.blocks
    }

    /// Blocks as coordinate lists, ordered by smallest member.
    pub fn block_list(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.blocks.values().cloned().collect();
        out.sort();
        out
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.labels.len()
    }

    pub fn singleton_count(&self) -> usize {
        self.blocks.values().filter(|b| b.len() == 1).count()
    }

    /// Same labels with the same block sizes.
    pub fn matches(&self, other: &CoordinatePartition) -> bool {
        self.blocks.len() == other.blocks.len()
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|((la, a), (lb, b))| la == lb && a.len() == b.len())
    }

    /// Smallest block with more than one member; ties go to the block with
    /// the smallest coordinate.
    fn pivot_block(&self) -> Option<(&Signature, &Vec<usize>)> {
        self.blocks
            .iter()
            .filter(|(_, b)| b.len() > 1)
            .min_by_key(|(_, b)| (b.len(), b[0]))
    }

    fn individualize(&self, c: &LinearCode, fixed: &[usize], pivot: usize, cap: usize) -> Result<Self> {
        let tails = per_coordinate(c.n(), |x| {
            if x == pivot {
                return Ok(Signature(INDIVIDUALIZED.to_vec()));
            }
            let coords: BTreeSet<usize> = fixed.iter().copied().chain([pivot, x]).collect();
            probe(c, &coords, cap)
        })?;
        let labels = self
            .labels
            .iter()
            .zip(tails)
            .map(|(l, t)| l.extended(t.as_bytes()))
            .collect();
        Ok(Self::from_labels(labels))
    }
}

impl fmt::Debug for CoordinatePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoordinatePartition{:?}", self.block_list())
    }
}

/// Groups coordinates by their single-coordinate signature.
pub fn initial_partition(c: &LinearCode, cap: usize) -> Result<CoordinatePartition> {
    let labels = per_coordinate(c.n(), |i| signature(c, &BTreeSet::from([i]), cap))?;
    Ok(CoordinatePartition::from_labels(labels))
}

/// One refinement round.
///
/// Takes the smallest non-singleton block, individualizes its smallest
/// coordinate `i` in `C`, and pairs it with the first `j` of the matching
/// block in `C'` whose relabelled partition still matches. `history` lists
/// the pairs individualized so far and gains the new pair.
pub fn refine(
    c: &LinearCode,
    c2: &LinearCode,
    part: &CoordinatePartition,
    part2: &CoordinatePartition,
    history: &mut Vec<(usize, usize)>,
    cap: usize,
) -> Result<(CoordinatePartition, CoordinatePartition)> {
    if !part.matches(part2) {
        return Err(Error::SignatureMismatch);
    }
    let Some((label, block)) = part.pivot_block() else {
        return Ok((part.clone(), part2.clone()));
    };
    if history.len() + 2 > MAX_PUNCTURED {
        return Err(Error::Ambiguous {
            blocks: part.block_list(),
        });
    }
    let fixed: Vec<usize> = history.iter().map(|&(i, _)| i).collect();
    let fixed2: Vec<usize> = history.iter().map(|&(_, j)| j).collect();
    let i = block[0];
    let refined = part.individualize(c, &fixed, i, cap)?;
    for &j in &part2.blocks()[label] {
        let refined2 = part2.individualize(c2, &fixed2, j, cap)?;
        if refined.matches(&refined2) {
            history.push((i, j));
            return Ok((refined, refined2));
        }
    }
    Err(Error::SignatureMismatch)
}

/// Pair signatures of both codes, interned into one shared index space so
/// that equal ids mean equal signatures across the two codes.
struct PairTables {
    ids: [Vec<Vec<u32>>; 2],
}

impl PairTables {
    fn new(c: &LinearCode, c2: &LinearCode, cap: usize) -> Result<Self> {
        let raw = |code: &LinearCode| {
            let n = code.n();
            per_coordinate(n, |x| {
                ((x + 1)..n)
                    .map(|y| probe(code, &BTreeSet::from([x, y]), cap))
                    .collect::<Result<Vec<_>>>()
            })
        };
        let (a, b) = (raw(c)?, raw(c2)?);
        let dict: BTreeMap<&Signature, u32> = a
            .iter()
            .chain(&b)
            .flatten()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .zip(0..)
            .collect();
        let square = |upper: &[Vec<Signature>]| {
            let n = upper.len();
            let mut t = vec![vec![u32::MAX; n]; n];
            for (x, row) in upper.iter().enumerate() {
                for (off, sig) in row.iter().enumerate() {
                    let y = x + 1 + off;
                    t[x][y] = dict[sig];
                    t[y][x] = dict[sig];
                }
            }
            t
        };
        Ok(Self {
            ids: [square(&a), square(&b)],
        })
    }

    /// Colour refinement of both partitions to a fixed point.
    fn propagate(
        &self,
        part: &CoordinatePartition,
        part2: &CoordinatePartition,
    ) -> (CoordinatePartition, CoordinatePartition) {
        let mut parts = [part.clone(), part2.clone()];
        loop {
            let classes: BTreeMap<&Signature, u32> = parts[0]
                .blocks()
                .keys()
                .chain(parts[1].blocks().keys())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .zip(0..)
                .collect();
            let keys: Vec<Vec<ClassKey>> = (0..2)
                .map(|side| {
                    let p = &parts[side];
                    let t = &self.ids[side];
                    (0..p.n())
                        .map(|x| {
                            let mut around: Vec<(u32, u32)> = (0..p.n())
                                .filter(|&y| y != x)
                                .map(|y| (t[x][y], classes[p.label(y)]))
                                .collect();
                            around.sort_unstable();
                            (classes[p.label(x)], around)
                        })
                        .collect()
                })
                .collect();
            let index: BTreeMap<&ClassKey, u32> = keys
                .iter()
                .flatten()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .zip(0..)
                .collect();
            let next: Vec<CoordinatePartition> = (0..2)
                .map(|side| {
                    let labels = keys[side]
                        .iter()
                        .enumerate()
                        .map(|(x, key)| {
                            let mut tail = CLASS.to_vec();
                            tail.extend_from_slice(&index[key].to_be_bytes());
                            parts[side].label(x).extended(&tail)
                        })
                        .collect();
                    CoordinatePartition::from_labels(labels)
                })
                .collect();
            let split = next[0].blocks().len() > parts[0].blocks().len()
                || next[1].blocks().len() > parts[1].blocks().len();
            if !split {
                return (parts[0].clone(), parts[1].clone());
            }
            let [a, b]: [CoordinatePartition; 2] = next.try_into().expect("two sides");
            parts = [a, b];
        }
    }
}

/// A coordinate's class and its sorted (pair signature, neighbour class) list.
type ClassKey = (u32, Vec<(u32, u32)>);

enum Search {
    Found(Permutation),
    /// This branch cannot be completed consistently.
    DeadEnd,
}

/// Matching induced by two matching discrete partitions.
fn matching_permutation(part: &CoordinatePartition, part2: &CoordinatePartition) -> Permutation {
    let mut image = vec![0; part.n()];
    for ((_, a), (_, b)) in part.blocks().iter().zip(part2.blocks()) {
        image[a[0]] = b[0];
    }
    Permutation::new(image).expect("matching discrete partitions give a bijection")
}

fn search(
    c: &LinearCode,
    c2: &LinearCode,
    tables: &PairTables,
    part: &CoordinatePartition,
    part2: &CoordinatePartition,
    history: &[(usize, usize)],
    cap: usize,
) -> Result<Search> {
    let (part, part2) = tables.propagate(part, part2);
    if !part.matches(&part2) {
        return Ok(Search::DeadEnd);
    }
    if part.is_discrete() {
        let p = matching_permutation(&part, &part2);
        let moved = apply_perm_cols(c.generator(), &p)?;
        return Ok(if row_space_equal(&moved, c2.generator()) {
            Search::Found(p)
        } else {
            Search::DeadEnd
        });
    }
    let (label, block) = part.pivot_block().expect("not discrete");
    if history.len() + 2 > MAX_PUNCTURED {
        return Err(Error::Ambiguous {
            blocks: part.block_list(),
        });
    }
    let fixed: Vec<usize> = history.iter().map(|&(i, _)| i).collect();
    let fixed2: Vec<usize> = history.iter().map(|&(_, j)| j).collect();
    let i = block[0];
    let refined = part.individualize(c, &fixed, i, cap)?;
    for &j in &part2.blocks()[label] {
        let refined2 = part2.individualize(c2, &fixed2, j, cap)?;
        let mut next = history.to_vec();
        next.push((i, j));
        // Ambiguity or cost errors propagate; other candidates would face the
        // same refinement depth.
        if let Search::Found(p) = search(c, c2, tables, &refined, &refined2, &next, cap)? {
            return Ok(Search::Found(p));
        }
    }
    Ok(Search::DeadEnd)
}

/// Finds `P` with `C P = C'` as row spaces, or explains why not.
///
/// Errors: `NotEquivalent` when no consistent matching exists, `Ambiguous`
/// with the final partition when the refinement depth runs out or every
/// punctured hull is trivial, `CostExceeded` when a hull is too large to
/// enumerate.
pub fn recover_permutation(c: &LinearCode, c2: &LinearCode, cap: usize) -> Result<Permutation> {
    if c.n() != c2.n() || c.k() != c2.k() {
        return Err(Error::NotEquivalent);
    }
    let n = c.n();
    if n == 0 {
        return Ok(Permutation::identity(0));
    }
    let part = initial_partition(c, cap)?;
    let part2 = initial_partition(c2, cap)?;
    if !part.matches(&part2) {
        return Err(Error::NotEquivalent);
    }
    let trivial = Signature::from_enumerator(&WeightEnumerator::from_counts(
        std::iter::once(1).chain(std::iter::repeat_n(0, n - 1)).collect(),
    ));
    if n > 1 && part.blocks().len() == 1 && part.blocks().contains_key(&trivial) {
        return Err(Error::Ambiguous {
            blocks: part.block_list(),
        });
    }
    let tables = PairTables::new(c, c2, cap)?;
    match search(c, c2, &tables, &part, &part2, &[], cap)? {
        Search::Found(p) => Ok(p),
        Search::DeadEnd => Err(Error::NotEquivalent),
    }
}

/// `S` with `S (M P) = M'`, read off an information set of `M P`.
pub fn recover_scrambler(m: &BitMatrix, m2: &BitMatrix, p: &Permutation) -> Result<BitMatrix> {
    if m.rows() != m2.rows() || m.cols() != m2.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} versus {}x{}",
            m.rows(),
            m.cols(),
            m2.rows(),
            m2.cols()
        )));
    }
    let mp = apply_perm_cols(m, p)?;
    let echelon = rref(&mp);
    if echelon.rank != m.rows() {
        return Err(Error::InvalidParams(format!(
            "generator has rank {} but {} rows",
            echelon.rank,
            m.rows()
        )));
    }
    let info = &echelon.pivots;
    let s = mul(&m2.select_cols(info), &invert(&mp.select_cols(info))?)?;
    if mul(&s, &mp)? != *m2 {
        return Err(Error::NotConsistent);
    }
    Ok(s)
}

/// Recovers `(S, P)` with `S M P = M'`.
pub fn solve_equivalence(m: &BitMatrix, m2: &BitMatrix, cap: usize) -> Result<(BitMatrix, Permutation)> {
    if m.rows() != m2.rows() || m.cols() != m2.cols() {
        return Err(Error::NotEquivalent);
    }
    let c = LinearCode::from_generator(m);
    if c.k() != m.rows() {
        return Err(Error::InvalidParams("M must have full row rank".into()));
    }
    let c2 = LinearCode::from_generator(m2);
    if c2.k() != c.k() {
        return Err(Error::NotEquivalent);
    }
    let p = recover_permutation(&c, &c2, cap)?;
    let s = recover_scrambler(m, m2, &p)?;
    Ok((s, p))
}

/// Ground truth by scanning all of `S_n` (`n ≤ 8`), identity first.
pub fn brute_force_equivalence(m: &BitMatrix, m2: &BitMatrix) -> Result<(BitMatrix, Permutation)> {
    let n = m.cols();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::CostExceeded {
            dimension: n,
            cap: BRUTE_FORCE_MAX_N,
        });
    }
    if m.rows() != m2.rows() || m2.cols() != n {
        return Err(Error::NotEquivalent);
    }
    if m.rank() != m.rows() {
        return Err(Error::InvalidParams("M must have full row rank".into()));
    }
    for image in (0..n).permutations(n) {
        let p = Permutation::new(image).expect("bijection");
        if row_space_equal(&apply_perm_cols(m, &p)?, m2) {
            let s = recover_scrambler(m, m2, &p)?;
            return Ok((s, p));
        }
    }
    Err(Error::NotEquivalent)
}

/// Random `[n, k]` code whose hull dimension lies in `hull_dims`, disguised
/// by a uniform scrambler and permutation.
pub fn random_equivalence_instance<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    hull_dims: std::ops::RangeInclusive<usize>,
    rng: &mut R,
) -> Result<EquivalenceInstance> {
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let max_hull = k.min(n - k);
    if *hull_dims.start() > max_hull {
        return Err(Error::InvalidParams(format!(
            "hull dimension {} impossible for [{n},{k}]",
            hull_dims.start()
        )));
    }
    loop {
        let known = crate::f2linalg::random_matrix(k, n, rng);
        let code = LinearCode::from_generator(&known);
        if code.k() != k || !hull_dims.contains(&hull(&code).k()) {
            continue;
        }
        let s = random_invertible(k, rng);
        let p = Permutation::random(n, rng);
        let public = apply_perm_cols(&mul(&s, &known)?, &p)?;
        return Ok(EquivalenceInstance {
            known,
            public,
            hidden_scrambler: s,
            hidden_permutation: p,
        });
    }
}

/// Outcome counts of [`run_benchmark`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BenchReport {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub cap: usize,
    pub trials: usize,
    pub successes: usize,
    /// Successes that failed `S M P = M'`; always zero for a sound solver.
    pub invalid: usize,
    pub ambiguous: usize,
    pub cost_exceeded: usize,
    pub not_equivalent: usize,
    pub other_errors: usize,
}

/// Attacks `trials` seeded random instances with hull dimension in `[1, 6]`.
pub fn run_benchmark(n: usize, k: usize, trials: usize, seed: u64, cap: usize) -> Result<BenchReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = BenchReport {
        n,
        k,
        seed,
        cap,
        trials,
        ..BenchReport::default()
    };
    for _ in 0..trials {
        let inst = random_equivalence_instance(n, k, 1..=6, &mut rng)?;
        match solve_equivalence(&inst.known, &inst.public, cap) {
            Ok((s, p)) => {
                let rebuilt = apply_perm_cols(&mul(&s, &inst.known)?, &p)?;
                if rebuilt == inst.public {
                    report.successes += 1;
                } else {
                    report.invalid += 1;
                }
            }
            Err(Error::Ambiguous { .. }) => report.ambiguous += 1,
            Err(Error::CostExceeded { .. }) => report.cost_exceeded += 1,
            Err(Error::NotEquivalent) => report.not_equivalent += 1,
            Err(_) => report.other_errors += 1,
        }
    }
    Ok(report)
}
