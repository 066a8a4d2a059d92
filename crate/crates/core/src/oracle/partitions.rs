//! Set partitions, rectangles and their relatives, by exhaustive search.

use serde::Serialize;

use super::{OracleError, MAX_MATRIX_CELLS, MAX_PARTITION_LABELS, MAX_RECT_LABELS};
use crate::numkit::Integer;

/// Blocks sorted internally and by first element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SetPartition<T = usize> {
    blocks: Vec<Vec<T>>,
}

impl<T: Clone + Ord> SetPartition<T> {
    /// Canonicalizes the block order; panics on an empty block.
    pub fn new(mut blocks: Vec<Vec<T>>) -> Self {
        for b in &mut blocks {
            assert!(!b.is_empty(), "empty block");
            b.sort();
        }
        blocks.sort();
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Vec<T>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, x: &T) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(x).is_ok())
    }

    pub fn is_finest(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn map<U: Clone + Ord>(&self, f: impl Fn(&T) -> U) -> SetPartition<U> {
        SetPartition::new(self.blocks.iter().map(|b| b.iter().map(&f).collect()).collect())
    }
}

/// A pair of partitions with finest meet; a rectangle when in addition
/// every block of `pi` meets every block of `tau`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Rect<T = usize> {
    pub pi: SetPartition<T>,
    pub tau: SetPartition<T>,
}

/// Partitions of `items` in which `conflict(i, j)` positions never share a
/// block. Items are assigned in order, so blocks come out canonical when
/// `items` is sorted.
fn partitions_avoiding<T: Clone + Ord>(
    items: &[T],
    conflict: &dyn Fn(usize, usize) -> bool,
) -> Vec<SetPartition<T>> {
    fn go<T: Clone + Ord>(
        items: &[T],
        conflict: &dyn Fn(usize, usize) -> bool,
        next: usize,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<SetPartition<T>>,
    ) {
        if next == items.len() {
            out.push(SetPartition::new(
                blocks.iter().map(|b| b.iter().map(|&i| items[i].clone()).collect()).collect(),
            ));
            return;
        }
        for bi in 0..blocks.len() {
            if blocks[bi].iter().any(|&j| conflict(j, next)) {
                continue;
            }
            blocks[bi].push(next);
            go(items, conflict, next + 1, blocks, out);
            blocks[bi].pop();
        }
        blocks.push(vec![next]);
        go(items, conflict, next + 1, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(items, conflict, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub(crate) fn partitions_of<T: Clone + Ord>(items: &[T]) -> Vec<SetPartition<T>> {
    partitions_avoiding(items, &|_, _| false)
}

/// Block index of each position of `items` under each partition.
fn block_indices<T: Clone + Ord>(items: &[T], parts: &[SetPartition<T>]) -> Vec<Vec<usize>> {
    items
        .iter()
        .map(|x| parts.iter().map(|p| p.block_of(x).expect("covers items")).collect())
        .collect()
}

/// Tuples `(π_1, ..., π_k)` whose meet is finest: no two items share a
/// block in every `π_i`.
pub(crate) fn k_partial_rects_on<T: Clone + Ord>(items: &[T], k: usize) -> Vec<Vec<SetPartition<T>>> {
    let mut tuples: Vec<Vec<SetPartition<T>>> = vec![vec![]];
    for step in 0..k {
        let last = step + 1 == k;
        let mut next = Vec::new();
        for prefix in tuples {
            // only the last partition has to separate what the others merge
            let idx = block_indices(items, &prefix);
            let conflict = |i: usize, j: usize| last && idx[i] == idx[j];
            for p in partitions_avoiding(items, &conflict) {
                let mut t = prefix.clone();
                t.push(p);
                next.push(t);
            }
        }
        tuples = next;
    }
    tuples
}

/// `k`-rectangles: partial `k`-rectangles whose block counts multiply to
/// the number of items, so that every choice of blocks meets in one point.
pub(crate) fn k_rects_on<T: Clone + Ord>(items: &[T], k: usize) -> Vec<Vec<SetPartition<T>>> {
    let n = items.len();
    if n == 0 {
        return vec![];
    }
    // blocks of a rectangle partition all have size n / (number of blocks)
    let equal: Vec<SetPartition<T>> = partitions_of(items)
        .into_iter()
        .filter(|p| p.blocks.iter().all(|b| b.len() * p.num_blocks() == n))
        .collect();
    let mut tuples: Vec<(usize, Vec<SetPartition<T>>)> = vec![(1, vec![])];
    for _ in 0..k {
        let mut next = Vec::new();
        for (prod, prefix) in tuples {
            for p in &equal {
                let q = prod * p.num_blocks();
                if n.is_multiple_of(q) {
                    let mut t = prefix.clone();
                    t.push(p.clone());
                    next.push((q, t));
                }
            }
        }
        tuples = next;
    }
    tuples
        .into_iter()
        .filter(|(prod, t)| {
            if *prod != n {
                return false;
            }
            let mut idx = block_indices(items, t);
            idx.sort();
            idx.windows(2).all(|w| w[0] != w[1])
        })
        .map(|(_, t)| t)
        .collect()
}

pub(crate) fn rects_on<T: Clone + Ord>(items: &[T]) -> Vec<Rect<T>> {
    k_rects_on(items, 2)
        .into_iter()
        .map(|mut t| {
            let tau = t.pop().expect("pair");
            Rect { pi: t.pop().expect("pair"), tau }
        })
        .collect()
}

pub(crate) fn partial_rects_on<T: Clone + Ord>(items: &[T]) -> Vec<Rect<T>> {
    k_partial_rects_on(items, 2)
        .into_iter()
        .map(|mut t| {
            let tau = t.pop().expect("pair");
            Rect { pi: t.pop().expect("pair"), tau }
        })
        .collect()
}

fn check(what: &'static str, got: usize, limit: usize) -> Result<(), OracleError> {
    if got > limit {
        Err(OracleError::ScaleLimit { what, limit, got })
    } else {
        Ok(())
    }
}

fn ground(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

/// All partitions of `{1..n}`, sorted.
pub fn set_partitions(n: usize) -> Result<Vec<SetPartition>, OracleError> {
    check("set partitions", n, MAX_PARTITION_LABELS)?;
    Ok(partitions_of(&ground(n)))
}

/// Rectangles on `{1..n}`; none on the empty set.
pub fn rectangles(n: usize) -> Result<Vec<Rect>, OracleError> {
    check("rectangles", n, MAX_RECT_LABELS)?;
    Ok(rects_on(&ground(n)))
}

pub fn k_rectangles(n: usize, k: usize) -> Result<Vec<Vec<SetPartition>>, OracleError> {
    check("k-rectangles", n, MAX_RECT_LABELS)?;
    Ok(k_rects_on(&ground(n), k))
}

/// Partial rectangles on `{1..n}`; the empty set carries one.
pub fn partial_rectangles(n: usize) -> Result<Vec<Rect>, OracleError> {
    check("partial rectangles", n, MAX_RECT_LABELS)?;
    Ok(partial_rects_on(&ground(n)))
}

pub fn k_partial_rectangles(n: usize, k: usize) -> Result<Vec<Vec<SetPartition>>, OracleError> {
    check("k-partial rectangles", n, MAX_RECT_LABELS)?;
    Ok(k_partial_rects_on(&ground(n), k))
}

/// `m × n` (0,1)-matrices with exactly `r` ones and no zero row or column.
pub fn matrices_01(m: u64, n: u64, r: u64) -> Result<Integer, OracleError> {
    let cells = m * n;
    check("matrix cells", cells as usize, MAX_MATRIX_CELLS as usize)?;
    if r > cells {
        return Ok(Integer::from(0));
    }
    let row = |mask: u64, i: u64| (mask >> (i * n)) & ((1u64 << n) - 1) != 0;
    let col = |mask: u64, j: u64| (0..m).any(|i| (mask >> (i * n + j)) & 1 == 1);
    let count = (0u64..1 << cells)
        .filter(|&mask| mask.count_ones() as u64 == r)
        .filter(|&mask| (0..m).all(|i| row(mask, i)) && (0..n).all(|j| col(mask, j)))
        .count();
    Ok(Integer::from(count))
}

/// Words over `0..alpha` strictly smaller than each of their proper
/// rotations.
pub fn lyndon_words(n: usize, alpha: u64) -> Result<Vec<Vec<u64>>, OracleError> {
    let total = (alpha as f64).powi(n as i32);
    check("words", if total > 1e6 { usize::MAX } else { total as usize }, 1_000_000)?;
    let mut out = Vec::new();
    let mut word = vec![0u64; n];
    loop {
        if n > 0 && (1..n).all(|s| word[..] < [&word[s..], &word[..s]].concat()[..]) {
            out.push(word.clone());
        }
        // odometer
        let Some(i) = (0..n).rev().find(|&i| word[i] + 1 < alpha) else {
            return Ok(out);
        };
        word[i] += 1;
        word[i + 1..].iter_mut().for_each(|c| *c = 0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{bell, k_rect_count, lyndon_count, rect_coeff, divisors};

    #[test]
    fn bell_numbers() {
        for n in 0..=8 {
            assert_eq!(Integer::from(set_partitions(n).unwrap().len()), bell(n as u64));
        }
        assert_eq!(set_partitions(3).unwrap().len(), 5);
        assert!(matches!(set_partitions(11), Err(OracleError::ScaleLimit { .. })));
    }

    #[test]
    fn rectangle_counts() {
        let r4 = rectangles(4).unwrap();
        assert_eq!(r4.len(), 8);
        let heights: Vec<usize> = r4.iter().map(|r| r.pi.num_blocks()).collect();
        assert_eq!(heights.iter().filter(|&&h| h == 2).count(), 6);
        assert_eq!(rectangles(6).unwrap().len(), 122);
        assert!(rectangles(0).unwrap().is_empty());
        for n in 1..=7u64 {
            let want: Integer = divisors(n).unwrap().into_iter().map(|d| rect_coeff(n, d).unwrap()).sum();
            assert_eq!(Integer::from(rectangles(n as usize).unwrap().len()), want);
        }
    }

    #[test]
    fn rectangle_axioms() {
        for r in rectangles(6).unwrap() {
            for b in r.pi.blocks() {
                for c in r.tau.blocks() {
                    assert_eq!(b.iter().filter(|x| c.contains(x)).count(), 1);
                }
            }
        }
        for r in partial_rectangles(4).unwrap() {
            for b in r.pi.blocks() {
                for c in r.tau.blocks() {
                    assert!(b.iter().filter(|x| c.contains(x)).count() <= 1);
                }
            }
        }
    }

    #[test]
    fn k_rectangle_counts() {
        for n in 1..=6 {
            for k in 1..=3 {
                assert_eq!(
                    Integer::from(k_rectangles(n, k).unwrap().len()),
                    k_rect_count(n as u64, k).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn partial_rectangle_counts() {
        assert_eq!(partial_rectangles(2).unwrap().len(), 3);
        assert_eq!(partial_rectangles(0).unwrap().len(), 1);
        assert_eq!(k_partial_rectangles(3, 1).unwrap().len(), 1);
    }

    #[test]
    fn matrices() {
        assert_eq!(matrices_01(2, 2, 2).unwrap(), Integer::from(2));
        assert_eq!(matrices_01(1, 1, 1).unwrap(), Integer::from(1));
        assert_eq!(matrices_01(0, 0, 0).unwrap(), Integer::from(1));
        assert!(matrices_01(5, 5, 3).is_err());
    }

    #[test]
    fn lyndon() {
        assert_eq!(lyndon_words(2, 2).unwrap(), vec![vec![0, 1]]);
        for n in 1..=6 {
            for a in 1..=3 {
                assert_eq!(
                    Integer::from(lyndon_words(n, a).unwrap().len()),
                    lyndon_count(n as u64, a).unwrap()
                );
            }
        }
    }
}
