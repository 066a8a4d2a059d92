//! Permutations of `0..n` as image vectors: `p[i]` is the image of `i`.

use crate::numkit::IntPartition;

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// All `n!` permutations in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p = identity(n);
    loop {
        out.push(p.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// `a ∘ b`: apply `b` first.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = p[i];
        }
        out.push(cycle);
    }
    out
}

pub fn cycle_type(p: &[usize]) -> IntPartition {
    let mut mult = vec![0u64; p.len()];
    for c in cycles(p) {
        mult[c.len() - 1] += 1;
    }
    IntPartition::from_multiplicities(mult)
}

/// A permutation of type `lambda` whose cycles are runs of consecutive
/// points, longest first.
pub fn representative(lambda: &IntPartition) -> Perm {
    let mut p = Vec::new();
    for len in lambda.parts() {
        let start = p.len();
        let len = len as usize;
        p.extend((0..len).map(|i| start + (i + 1) % len));
    }
    p
}
