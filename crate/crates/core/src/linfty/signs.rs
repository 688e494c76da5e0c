//! Sign bookkeeping for graded multilinear maps.
//!
//! Convention: chain (homological) grading, `l_k` has degree `k - 2`, and the
//! generalized Jacobi identity of arity `n` reads
//!
//! ```text
//! Σ_{i+j=n+1} Σ_{σ ∈ unsh(i, n-i)} χ(σ) (-1)^{i(j-1)} l_j(l_i(x_σ(1),..,x_σ(i)), x_σ(i+1),..,x_σ(n)) = 0
//! ```
//!
//! where `χ(σ) = sgn(σ) · ε(σ; x)` and the Koszul sign `ε` picks up
//! `(-1)^{|x_a||x_b|}` for every pair of arguments the permutation swaps.

/// All `(p, q)`-unshuffles as index sequences: the first `p` entries and the
/// last `q` entries are each increasing. Ordered lexicographically by the
/// first block.
pub fn unshuffles(p: usize, q: usize) -> Vec<Vec<usize>> {
    let n = p + q;
    crate::algebra::increasing_tuples(n, p)
        .into_iter()
        .map(|head| {
            let mut perm = head.clone();
            perm.extend((0..n).filter(|i| !head.contains(i)));
            perm
        })
        .collect()
}

/// Koszul sign of reordering arguments of the given degrees into `perm`.
pub fn koszul_sign(perm: &[usize], degrees: &[i32]) -> i32 {
    let mut sign = 1;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && (degrees[perm[a]] * degrees[perm[b]]) % 2 != 0 {
                sign = -sign;
            }
        }
    }
    sign
}

/// `χ(σ) = sgn(σ) ε(σ)`.
pub fn antisymmetric_koszul_sign(perm: &[usize], degrees: &[i32]) -> i32 {
    crate::algebra::permutation_sign(perm) * koszul_sign(perm, degrees)
}

/// `(-1)^{i(j-1)}` from the arity-`n` identity.
pub fn composition_sign(i: usize, j: usize) -> i32 {
    if (i * (j - 1)).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unshuffle_counts() {
        assert_eq!(unshuffles(2, 1), vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 2, 0]]);
        assert_eq!(unshuffles(2, 2).len(), 6);
        assert_eq!(unshuffles(3, 1).len(), 4);
        assert_eq!(unshuffles(1, 0), vec![vec![0]]);
    }

    #[test]
    fn unshuffle_signs_match_composition_pattern() {
        // degree-0 arguments: signs (+, -, +)
        let signs: Vec<i32> = unshuffles(2, 1).iter().map(|p| antisymmetric_koszul_sign(p, &[0, 0, 0])).collect();
        assert_eq!(signs, vec![1, -1, 1]);
    }

    #[test]
    fn koszul_on_odd_pairs() {
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]), -1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 0]), 1);
        assert_eq!(antisymmetric_koszul_sign(&[1, 0], &[1, 1]), 1);
    }

    #[test]
    fn composition_signs() {
        assert_eq!(composition_sign(1, 2), -1);
        assert_eq!(composition_sign(2, 1), 1);
        assert_eq!(composition_sign(3, 2), -1);
        assert_eq!(composition_sign(2, 3), 1);
        assert_eq!(composition_sign(3, 3), 1);
    }
}
