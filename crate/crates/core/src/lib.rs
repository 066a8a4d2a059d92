//! Exact computation with arithmetic products of combinatorial species.
//!
//! - [`numkit`]: big integers, rationals, divisor functions, partitions.
//! - [`series`]: truncated power series, `⊡` and `⊡̃` on generating series.
//! - [`zindex`]: cycle index series and their arithmetic product.
//! - [`species`]: the expression tree and its evaluators.
//! - [`oracle`]: exhaustive enumeration used as ground truth.
//! - [`dsl`]: the textual expression language.

pub mod dsl;
pub mod numkit;
pub mod oracle;
pub mod series;
pub mod species;
pub mod zindex;
