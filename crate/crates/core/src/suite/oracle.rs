//! Independent counts the algebra computations are compared against.

use crate::ncalg::permutations;

/// Number of inversions of a permutation.
pub fn length(p: &[usize]) -> usize {
    (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
}

/// `|S_d|` by listing the permutations.
pub fn symmetric_dim(d: usize) -> u128 {
    permutations(d).len() as u128
}

/// `dim A^{⊗d} ⋊ S_d`: tensor basis tuples times permutations.
pub fn wreath_dim(dim_a: usize, d: usize) -> u128 {
    (dim_a as u128).pow(d as u32) * symmetric_dim(d)
}

/// Number of ways to write `n` as an ordered sum of `parts` naturals.
fn compositions(n: usize, parts: usize) -> u128 {
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for _ in 0..parts {
        for k in 1..=n {
            ways[k] += ways[k - 1];
        }
    }
    ways[n]
}

/// Per-degree count of `x^l σ` with `l ∈ ℕ^d`, `σ ∈ S_d`, total degree
/// `|l| + ℓ(σ)`.
pub fn degenerate_affine_counts(d: usize, max: usize) -> Vec<u128> {
    let perms = permutations(d);
    (0..=max).map(|n| perms.iter().filter(|p| length(p) <= n).map(|p| compositions(n - length(p), d)).sum()).collect()
}

/// Per-degree count of `x^l · tokens · σ` for the affine wreath product
/// with a group algebra of order `group_order`: each strand carries either
/// no token or one non-identity element, each of degree one.
pub fn affine_wreath_counts(group_order: usize, d: usize, max: usize) -> Vec<u128> {
    let perms = permutations(d);
    let tokens: Vec<u128> = (0..=d).map(|k| binomial(d, k) * ((group_order - 1) as u128).pow(k as u32)).collect();
    (0..=max)
        .map(|n| {
            let mut total = 0;
            for p in &perms {
                for (k, &t) in tokens.iter().enumerate() {
                    let used = length(p) + k;
                    if used <= n {
                        total += t * compositions(n - used, d);
                    }
                }
            }
            total
        })
        .collect()
}

/// Per-degree count of Laurent monomials `σ^k` with `|k|` the degree.
pub fn laurent_counts(max: usize) -> Vec<u128> {
    (0..=max).map(|n| if n == 0 { 1 } else { 2 }).collect()
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn cumulative(counts: &[u128]) -> Vec<u128> {
    counts
        .iter()
        .scan(0u128, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!((1..=4).map(symmetric_dim).collect::<Vec<_>>(), [1, 2, 6, 24]);
        assert_eq!((1..=3).map(|d| wreath_dim(2, d)).collect::<Vec<_>>(), [2, 8, 48]);
        // d = 2: x-monomials of degree n number n + 1, shifted by one for the crossing
        assert_eq!(degenerate_affine_counts(2, 3), [1, 3, 5, 7]);
        assert_eq!(cumulative(&laurent_counts(3)), [1, 3, 5, 7]);
        assert_eq!(affine_wreath_counts(2, 1, 2), [1, 2, 2]);
        assert_eq!(affine_wreath_counts(2, 2, 1), [1, 5]);
    }
}
