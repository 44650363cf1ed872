//! Brute-force counts by exhaustive enumeration. Nothing here calls into
//! the formula modules.

use crate::{Error, Result};

pub const MAX_DERANGEMENT_N: usize = 9;
pub const MAX_WREATH_ELEMENTS: u64 = 10_000_000;

/// Calls `visit` with every permutation of `0..n` (lexicographic order).
fn for_each_permutation(n: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(perm: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, visit: &mut impl FnMut(&[usize])) {
        if perm.len() == n {
            visit(perm);
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                perm.push(v);
                go(perm, used, n, visit);
                perm.pop();
                used[v] = false;
            }
        }
    }
    go(&mut Vec::with_capacity(n), &mut vec![false; n], n, visit);
}

/// Number of permutations of `n` letters with no fixed point, `n <= 9`.
pub fn count_derangements_brute(n: usize) -> Result<u64> {
    if n > MAX_DERANGEMENT_N {
        return Err(Error::SizeTooLarge { size: n, limit: MAX_DERANGEMENT_N });
    }
    let mut count = 0u64;
    for_each_permutation(n, &mut |p| {
        let mut fixed = false;
        for i in 0..n {
            if p[i] == i {
                fixed = true;
            }
        }
        if !fixed {
            count += 1;
        }
    });
    Ok(count)
}

/// `r^n n!`, or `None` on overflow.
pub fn wreath_size(n: usize, r: u32) -> Option<u64> {
    let mut size = 1u64;
    for i in 1..=n as u64 {
        size = size.checked_mul(i)?.checked_mul(r as u64)?;
    }
    Some(size)
}

/// Counts pairs `(σ, c)` with `σ` a permutation of `n` letters and
/// `c ∈ {0..r-1}^n` a coloring, such that no `i` has `σ(i) = i` and
/// `c_i = 0`. Refuses grids with more than ten million elements.
pub fn count_cyclic_derangements_brute(n: usize, r: u32) -> Result<u64> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    match wreath_size(n, r) {
        Some(s) if s <= MAX_WREATH_ELEMENTS => {}
        _ => {
            return Err(Error::SizeTooLarge {
                size: wreath_size(n, r).map_or(usize::MAX, |s| s as usize),
                limit: MAX_WREATH_ELEMENTS as usize,
            })
        }
    }
    let r = r as usize;
    let mut count = 0u64;
    let mut colors = vec![0usize; n];
    for_each_permutation(n, &mut |p| {
        colors.iter_mut().for_each(|c| *c = 0);
        loop {
            let mut fixed = false;
            for i in 0..n {
                if p[i] == i && colors[i] == 0 {
                    fixed = true;
                }
            }
            if !fixed {
                count += 1;
            }
            // odometer increment over {0..r-1}^n
            let mut pos = 0;
            while pos < n {
                colors[pos] += 1;
                if colors[pos] < r {
                    break;
                }
                colors[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    });
    Ok(count)
}
