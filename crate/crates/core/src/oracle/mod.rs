//! Brute-force ground truth: set partitions, rectangles, explicit
//! structures on small label sets, transport and fixed-point counts.

mod fix;
mod partitions;
pub mod perm;
mod structure;

use thiserror::Error;

pub use fix::{
    box_permutation, decomposition_counts, fix_by_type, fix_by_types, fix_count,
    oracle_cycle_index, orbit_type_count, tuple_decompositions, TupleDecomposition,
};
pub use partitions::{
    k_partial_rectangles, k_rectangles, lyndon_words, matrices_01, partial_rectangles, rectangles,
    set_partitions, Rect, SetPartition,
};
pub use structure::{atoms, enumerate, support, transport, Bijection, Label, Structure};

pub const MAX_PARTITION_LABELS: usize = 10;
pub const MAX_RECT_LABELS: usize = 8;
pub const MAX_ENUMERATE_LABELS: usize = 8;
pub const MAX_MATRIX_CELLS: u64 = 20;
pub const MAX_NECKLACE_ALPHABET: u64 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} limited to {limit} labels or cells, got {got}")]
    ScaleLimit { what: &'static str, limit: usize, got: usize },
    #[error("`{0}` is not supported by the enumerator")]
    UnsupportedAtom(String),
    #[error("bijection domain differs from the structure's label set")]
    DomainMismatch,
    #[error("structures of `{0}` are not closed under relabelling")]
    NotTransportable(String),
    #[error("precondition violated at `{0}`: {1}")]
    Precondition(String, String),
}
