//! Arithmetic and elimination over prime fields `Z/pZ` with `p < 2^32`.

use crate::error::{Error, Result};

/// Default prime for probabilistic rank computations.
pub const DEFAULT_PRIME: u64 = 1_048_583;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Checks that `p` is a prime usable by the dense kernels below.
pub fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) || p >= 1 << 32 {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Rank of a dense row-major matrix of residues. The buffer is consumed as
/// scratch space.
pub fn rank_dense_mod(rows: usize, cols: usize, mut a: Vec<u64>, p: u64) -> usize {
    debug_assert_eq!(a.len(), rows * cols);
    for x in a.iter_mut() {
        *x %= p;
    }
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if piv != rank {
            for c in col..cols {
                a.swap(piv * cols + c, rank * cols + c);
            }
        }
        let inv = inv_mod(a[rank * cols + col], p);
        for c in col..cols {
            a[rank * cols + c] = mul_mod(a[rank * cols + c], inv, p);
        }
        let (head, tail) = a.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        for row in tail.chunks_exact_mut(cols) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for c in col..cols {
                if pivot_row[c] != 0 {
                    row[c] = ((row[c] as u128 + neg as u128 * pivot_row[c] as u128) % p as u128) as u64;
                }
            }
        }
        rank += 1;
    }
    rank
}
