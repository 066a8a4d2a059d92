//! Species expressions and their evaluators.
//!
//! A [`SpeciesExpr`] is the one description of a species that every backend
//! consumes: the EGF/count evaluator, the cycle-index evaluator, and the
//! brute-force enumerator in [`crate::oracle`].

mod cyclotomic;
mod eval;
mod hct;
mod multiplicative;
mod numeric;
mod partial_rect;

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::numkit::Integer;

pub use cyclotomic::{cyclotomic_check, cyclotomic_product};
pub use eval::{eval_counts, eval_egf, eval_ogf, eval_zi, validate};
pub use hct::{hct_counts, hct_recursion};
pub use multiplicative::{euler_reconstruct, is_multiplicative, prime_power_counts, Multiplicativity};
pub use numeric::{
    c_power_numeric, l_power_numeric, le_numeric, pittel_numeric, shifted_product_numeric,
    Kernel, NumericEstimate, ShiftWeight,
};
pub use partial_rect::{mnr_formula, partial_rect_mnr, pr_k_exact};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpeciesExpr {
    /// The empty-set species `1`.
    One,
    X,
    E,
    Eplus,
    Ek(u64),
    L,
    Lplus,
    C,
    S,
    Splus,
    /// `X^n`: linear orders of length `n`.
    XPow(u64),
    /// `(1+X)^{[n]}`: injections into `[n]`.
    OnePlusXPow(u64),
    /// Oriented cycles with beads colored from an `α`-letter alphabet.
    Necklace(u64),
    /// Necklaces whose period equals their length.
    AperiodicNecklace(u64),
    Derivative(Box<SpeciesExpr>),
    Point(Box<SpeciesExpr>),
    NonEmpty(Box<SpeciesExpr>),
    Restrict(Box<SpeciesExpr>, u64),
    Sum(Box<SpeciesExpr>, Box<SpeciesExpr>),
    Prod(Box<SpeciesExpr>, Box<SpeciesExpr>),
    Cartesian(Box<SpeciesExpr>, Box<SpeciesExpr>),
    /// `Subst(F, G)` is `F ∘ G`.
    Subst(Box<SpeciesExpr>, Box<SpeciesExpr>),
    AProd(Box<SpeciesExpr>, Box<SpeciesExpr>),
    MAProd(Box<SpeciesExpr>, Box<SpeciesExpr>),
    /// Hyper-cloned rooted trees enriched by the given species.
    Hct(Box<SpeciesExpr>),
}

macro_rules! binary_ctor {
    ($($name:ident => $variant:ident),* $(,)?) => {
        $(pub fn $name(a: SpeciesExpr, b: SpeciesExpr) -> SpeciesExpr {
            SpeciesExpr::$variant(Box::new(a), Box::new(b))
        })*
    };
}

macro_rules! unary_ctor {
    ($($name:ident => $variant:ident),* $(,)?) => {
        $(pub fn $name(a: SpeciesExpr) -> SpeciesExpr {
            SpeciesExpr::$variant(Box::new(a))
        })*
    };
}

impl SpeciesExpr {
    binary_ctor!(sum => Sum, prod => Prod, cart => Cartesian, subst => Subst, aprod => AProd, maprod => MAProd);
    unary_ctor!(deriv => Derivative, point => Point, nonempty => NonEmpty, hct => Hct);

    pub fn restrict(a: SpeciesExpr, n: u64) -> SpeciesExpr {
        SpeciesExpr::Restrict(Box::new(a), n)
    }

    pub fn children(&self) -> Vec<&SpeciesExpr> {
        use SpeciesExpr::*;
        match self {
            One | X | E | Eplus | Ek(_) | L | Lplus | C | S | Splus | XPow(_) | OnePlusXPow(_)
            | Necklace(_) | AperiodicNecklace(_) => vec![],
            Derivative(a) | Point(a) | NonEmpty(a) | Restrict(a, _) | Hct(a) => vec![a],
            Sum(a, b) | Prod(a, b) | Cartesian(a, b) | Subst(a, b) | AProd(a, b) | MAProd(a, b) => {
                vec![a, b]
            }
        }
    }

    pub fn is_atom(&self) -> bool {
        self.children().is_empty()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// The node reached by following child indices from the root.
    pub fn at(&self, path: &NodePath) -> Option<&SpeciesExpr> {
        path.0.iter().try_fold(self, |node, &i| node.children().get(i).copied())
    }

    /// True if the expression contains a node the cycle-index evaluator
    /// cannot handle.
    pub fn needs_counts_only(&self) -> bool {
        matches!(self, SpeciesExpr::MAProd(..) | SpeciesExpr::Hct(_))
            || self.children().iter().any(|c| c.needs_counts_only())
    }

    fn precedence(&self) -> u8 {
        match self {
            SpeciesExpr::Sum(..) => 0,
            SpeciesExpr::Prod(..) => 1,
            _ => 2,
        }
    }
}

/// Canonical surface syntax; the parser in [`crate::dsl`] reads it back to
/// the same tree.
impl fmt::Display for SpeciesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SpeciesExpr::*;
        let wrap = |f: &mut fmt::Formatter<'_>, e: &SpeciesExpr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            One => write!(f, "1"),
            X => write!(f, "X"),
            E => write!(f, "E"),
            Eplus => write!(f, "Ep"),
            Ek(k) => write!(f, "Ek({k})"),
            L => write!(f, "L"),
            Lplus => write!(f, "Lp"),
            C => write!(f, "C"),
            S => write!(f, "S"),
            Splus => write!(f, "Sp"),
            XPow(n) => write!(f, "Xpow({n})"),
            OnePlusXPow(n) => write!(f, "OnePlusXpow({n})"),
            Necklace(a) => write!(f, "necklace({a})"),
            AperiodicNecklace(a) => write!(f, "aperiodic({a})"),
            Derivative(a) => write!(f, "deriv({a})"),
            Point(a) => write!(f, "point({a})"),
            NonEmpty(a) => write!(f, "plus({a})"),
            Restrict(a, n) => write!(f, "restrict({a}, {n})"),
            Hct(a) => write!(f, "hct({a})"),
            Cartesian(a, b) => write!(f, "cart({a}, {b})"),
            Subst(a, b) => write!(f, "comp({a}, {b})"),
            AProd(a, b) => write!(f, "aprod({a}, {b})"),
            MAProd(a, b) => write!(f, "maprod({a}, {b})"),
            Sum(a, b) => {
                wrap(f, a, 0)?;
                write!(f, " + ")?;
                wrap(f, b, 1)
            }
            Prod(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " * ")?;
                wrap(f, b, 2)
            }
        }
    }
}

/// Child indices from the root to a node; renders as `/0/1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodePath(pub Vec<usize>);

impl NodePath {
    pub fn root() -> Self {
        Self::default()
    }

    pub fn child(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.push(i);
        Self(v)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "/");
        }
        for i in &self.0 {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("precondition violated at {path} (`{node}`): {reason}")]
    PreconditionViolated { path: NodePath, node: String, reason: String },
    #[error("`{node}` at {path} has no cycle-index evaluator")]
    UnsupportedForCycleIndex { path: NodePath, node: String },
    #[error("incomplete data: {0}")]
    IncompleteData(String),
    #[error("domain error: {0}")]
    Domain(String),
}

/// `|F[0]|, ..., |F[N]|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSeq {
    counts: Vec<Integer>,
}

impl CountSeq {
    pub fn new(counts: Vec<Integer>) -> Self {
        debug_assert!(counts.iter().all(|c| *c >= Integer::zero()));
        Self { counts }
    }

    pub fn order(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> Option<&Integer> {
        self.counts.get(n)
    }

    pub fn counts(&self) -> &[Integer] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<Integer> {
        self.counts
    }
}

impl std::ops::Index<usize> for CountSeq {
    type Output = Integer;
    fn index(&self, n: usize) -> &Integer {
        &self.counts[n]
    }
}
