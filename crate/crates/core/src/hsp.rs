//! Exact checks of the sufficient conditions for hardness of the hidden
//! subgroup instance attached to a code: a size condition `q^{k^2} <= n^{0.2 n}`,
//! a small automorphism group, and a large minimal degree.
//!
//! The last two are asymptotic (`|Aut| <= e^{o(n)}`, minimal degree `Ω(n)`).
//! For a single instance they are replaced by fixed surrogates, reported in
//! every verdict:
//!
//! * `log2 |Aut| <= n / 10`
//! * `minimal degree >= n / 2`
//!
//! Everything here is integer or rational arithmetic; no floating point.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::affine::ga_order;
use crate::error::{Error, Result};
use crate::rm::{rm_dimension, RmParams};

/// Largest non-power-of-two length for which `n^{2n}` is materialized.
pub const MAX_GENERIC_N: u128 = 1 << 20;

pub const AUT_SURROGATE: &str = "log2|Aut| <= n/10";
pub const DEGREE_SURROGATE: &str = "min_degree >= n/2";

/// Outcome of [`theorem1_check`] with the values each side was compared on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HardnessVerdict {
    pub q: u32,
    pub n: String,
    pub k: String,
    pub size_cond: bool,
    pub aut_cond: bool,
    pub degree_cond: bool,
    pub overall: bool,
    /// `k^2 log2 q`.
    pub size_lhs_log2: String,
    /// `0.2 n log2 n`, exact when `n` is a power of two, otherwise the floor
    /// of `log2 n^{2n}` divided by ten.
    pub size_rhs_log2: String,
    pub log2_aut: String,
    pub aut_threshold: String,
    pub min_degree: String,
    pub degree_threshold: String,
    pub aut_surrogate: &'static str,
    pub degree_surrogate: &'static str,
}

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn exact_log2(n: u128) -> Option<u32> {
    n.is_power_of_two().then(|| n.trailing_zeros())
}

/// `floor(log2(n^{2n}))`, exactly.
fn floor_log2_n_pow_2n(n: u128) -> Result<BigUint> {
    if let Some(l) = exact_log2(n) {
        return Ok(BigUint::from(n) * 2u32 * l);
    }
    if n > MAX_GENERIC_N {
        return Err(Error::InvalidParams(format!(
            "n = {n} is not a power of two and exceeds {MAX_GENERIC_N}"
        )));
    }
    let big = BigUint::from(n).pow((2 * n) as u32);
    Ok(BigUint::from(big.bits() - 1))
}

/// Checks the three hardness conditions for a binary `[n, k]` code.
///
/// `log2_aut` is `log2 |Aut|` or any upper bound for it; `min_degree` is the
/// minimal degree of the automorphism group.
pub fn theorem1_check(
    q: u32,
    n: u128,
    k: u128,
    log2_aut: &BigRational,
    min_degree: &BigUint,
) -> Result<HardnessVerdict> {
    if q != 2 {
        return Err(Error::InvalidParams(format!("only q = 2 is supported, got {q}")));
    }
    if n < 2 {
        return Err(Error::InvalidParams(format!("need n >= 2, got {n}")));
    }
    if k < 1 || k > n {
        return Err(Error::InvalidParams(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let k2 = BigUint::from(k) * BigUint::from(k);

    // q^{k^2} <= n^{0.2n}  <=>  2^{10 k^2} <= n^{2n}  <=>  10 k^2 <= floor(log2 n^{2n}).
    let rhs_floor = floor_log2_n_pow_2n(n)?;
    let size_cond = &k2 * 10u32 <= rhs_floor;
    let size_rhs = match exact_log2(n) {
        Some(l) => BigRational::new(BigInt::from(n) * BigInt::from(l), BigInt::from(5)),
        None => BigRational::new(BigInt::from(rhs_floor), BigInt::from(10)),
    };

    let n_big = BigInt::from(n);
    let aut_threshold = BigRational::new(n_big.clone(), BigInt::from(10));
    let aut_cond = *log2_aut <= aut_threshold;

    let degree_threshold = BigRational::new(n_big, BigInt::from(2));
    let degree_cond = BigRational::from_integer(BigInt::from(min_degree.clone())) >= degree_threshold;

    Ok(HardnessVerdict {
        q,
        n: n.to_string(),
        k: k.to_string(),
        size_cond,
        aut_cond,
        degree_cond,
        overall: size_cond && aut_cond && degree_cond,
        size_lhs_log2: k2.to_string(),
        size_rhs_log2: rational_string(&size_rhs),
        log2_aut: rational_string(log2_aut),
        aut_threshold: rational_string(&aut_threshold),
        min_degree: min_degree.to_string(),
        degree_threshold: rational_string(&degree_threshold),
        aut_surrogate: AUT_SURROGATE,
        degree_surrogate: DEGREE_SURROGATE,
    })
}

/// Hardness verdict for `RM(r, m)` plus the order-specific side conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RmHardness {
    pub r: usize,
    pub m: usize,
    pub k: u64,
    /// Exact `|GA(m, 2)|`.
    pub aut_order: String,
    /// `m^2 + m`, the bound used as `log2 |Aut|`.
    pub log2_aut_bound: u64,
    /// `r <= 0.1 m`.
    pub r_small: bool,
    /// `k^2 <= 0.2 m 2^m`.
    pub k_squared_cond: bool,
    /// `k < r 2^{0.47 m}` at `r = floor(0.1 m)`; absent when that `r` is 0.
    pub dimension_bound: Option<bool>,
    pub verdict: HardnessVerdict,
}

pub fn rm_hsp_check(r: usize, m: usize) -> Result<RmHardness> {
    if r == 0 {
        return Err(Error::InvalidParams("need r >= 1".into()));
    }
    let params = RmParams::new(r, m)?;
    let k = params.k();
    let n = params.n();
    let order = ga_order(m);
    let log2_aut_bound = order.log2_bound();
    let min_degree = BigUint::one() << (m - 1);
    let verdict = theorem1_check(
        2,
        n,
        u128::from(k),
        &BigRational::from_integer(BigInt::from(log2_aut_bound)),
        &min_degree,
    )?;
    let k2 = BigUint::from(k) * BigUint::from(k);
    let k_squared_cond = k2 * 5u32 <= BigUint::from(m) * (BigUint::one() << m);
    let dimension_bound = if m / 10 >= 1 {
        Some(dimension_bound_check(m)?)
    } else {
        None
    };
    Ok(RmHardness {
        r,
        m,
        k,
        aut_order: order.order.to_string(),
        log2_aut_bound,
        r_small: 10 * r <= m,
        k_squared_cond,
        dimension_bound,
        verdict,
    })
}

/// `ceil(2^{47 m / 100})` as an exact integer.
pub fn ceil_pow2_047(m: usize) -> BigUint {
    let target = BigUint::one() << (47 * m);
    let root = target.nth_root(100);
    if root.pow(100) == target {
        root
    } else {
        root + 1u32
    }
}

/// `rm_dimension(r, m) < r · ceil(2^{0.47 m})` for `r = floor(0.1 m)`.
pub fn dimension_bound_check(m: usize) -> Result<bool> {
    let r = m / 10;
    if r == 0 {
        return Err(Error::InvalidParams(format!("floor(0.1 m) = 0 for m = {m}")));
    }
    let k = rm_dimension(r, m)?;
    Ok(BigUint::from(k) < BigUint::from(r) * ceil_pow2_047(m))
}

/// Smallest `m` in `[start, limit]` at which every condition of
/// [`rm_hsp_check`] holds for fixed `r`.
pub fn first_hard_m(r: usize, start: usize, limit: usize) -> Result<Option<usize>> {
    for m in start.max(r + 1)..=limit {
        let h = rm_hsp_check(r, m)?;
        if h.verdict.overall && h.r_small {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
