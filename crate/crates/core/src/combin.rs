//! Small combinatorial helpers shared across the crate: binomial
//! coefficients, falling factorials, and the colexicographic ranking of
//! sorted tuples that backs dense edge-indexed storage.

use num::{BigInt, BigRational, BigUint, One};

/// Binomial coefficient `C(n, k)` in `u64`, saturating on overflow.
///
/// Saturation is deliberate: callers use this for storage sizing and
/// search-space estimates, where an over-large saturated value triggers a
/// `too-large` refusal rather than a wrap-around.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Exact binomial coefficient as a big integer.
pub fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Falling factorial `(n)_k = n (n-1) ... (n-k+1)` as a big integer.
///
/// Returns zero when `k > n`, matching the count of injections from a
/// `k`-set into an `n`-set.
pub fn falling(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
    }
    acc
}

/// `1 / (n)_k` as an exact rational. Errors with `degenerate-dims` when a
/// factor of the falling factorial would be non-positive, i.e. when `k > n`.
pub fn inverse_falling(n: u64, k: u64) -> crate::error::Result<BigRational> {
    if k > n {
        return Err(crate::error::Error::DegenerateDims(format!(
            "falling factorial ({n})_{k} has a non-positive factor"
        )));
    }
    Ok(BigRational::new(
        BigInt::one(),
        BigInt::from(falling(n, k)),
    ))
}

/// Factorial `k!` as a big integer.
pub fn factorial(k: u64) -> BigUint {
    falling(k, k).max(BigUint::one())
}

/// Colexicographic rank of a strictly increasing tuple among all sorted
/// `t.len()`-subsets of the naturals: `rank = sum_i C(t[i], i+1)`.
pub fn colex_rank(t: &[u32]) -> u64 {
    t.iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as u64, i as u64 + 1))
        .sum()
}

/// Advances `t` to the next sorted `k`-subset of `[0, n)` in lexicographic
/// order; returns `false` once the last subset has been passed.
pub fn next_subset(t: &mut [u32], n: u32) -> bool {
    let k = t.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if t[i] < n - (k - i) as u32 {
            t[i] += 1;
            for j in i + 1..k {
                t[j] = t[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All sorted `k`-subsets of `[0, n)` in lexicographic order.
pub fn subsets(n: u32, k: u32) -> Vec<Vec<u32>> {
    let k = k as usize;
    if k > n as usize {
        return Vec::new();
    }
    let mut t: Vec<u32> = (0..k as u32).collect();
    let mut out = Vec::new();
    loop {
        out.push(t.clone());
        if !next_subset(&mut t, n) {
            return out;
        }
    }
}
