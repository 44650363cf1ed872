//! Oracles shared by integration tests. Written against the bare rational
//! type only; nothing here calls the library's formula code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Naive truncated product of two coefficient lists.
fn mul(a: &[Q], b: &[Q], order: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); order + 1];
    for i in 0..=order {
        for j in 0..=order - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// `m!` times the `h^m` coefficient of `e^h / (1 - z - h)^r`, the Taylor
/// expansion of `e^{z+h} / (1 - z - h)^r` around `z` with `e^z` removed.
/// `1/(1 - z - h)` is inverted term by term and raised to the `r`-th power
/// by repeated multiplication.
pub fn recentered_derivative(m: usize, r: u32, z: &Q) -> Q {
    let a0 = Q::one() - z;
    assert!(!a0.is_zero());
    // (a0 - h) * b = 1  =>  b_0 = 1/a0, b_n = b_{n-1} / a0
    let mut inv = vec![Q::zero(); m + 1];
    inv[0] = a0.recip();
    for n in 1..=m {
        inv[n] = &inv[n - 1] / &a0;
    }
    let mut pow = vec![Q::zero(); m + 1];
    pow[0] = Q::one();
    for _ in 0..r {
        pow = mul(&pow, &inv, m);
    }
    let mut exp = vec![Q::one(); m + 1];
    for n in 1..=m {
        exp[n] = &exp[n - 1] / Q::from_integer(BigInt::from(n));
    }
    let series = mul(&exp, &pow, m);
    let mut fact = Q::one();
    for k in 1..=m {
        fact *= Q::from_integer(BigInt::from(k));
    }
    &series[m] * fact
}

/// Leibniz expansion over all permutations.
pub fn leibniz_det(rows: &[Vec<Q>]) -> Q {
    let n = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Q::zero();
    loop {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = Q::one();
        for i in 0..n {
            term *= &rows[i][perm[i]];
        }
        if inversions % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    total
}
