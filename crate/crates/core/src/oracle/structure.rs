//! Explicit structures of a species expression on a finite label set, and
//! their transport along bijections.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Serialize, Serializer};

use super::partitions::{partial_rects_on, partitions_of, rects_on, Rect, SetPartition};
use super::perm::{all_permutations, Perm};
use super::{OracleError, MAX_ENUMERATE_LABELS, MAX_NECKLACE_ALPHABET};
use crate::species::SpeciesExpr;

/// A point of a ground set. Blocks of a partition become points of the
/// set the outer species acts on; derivatives add a distinguished extra
/// point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Atom(usize),
    Extra(u32),
    Block(Vec<Label>),
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Atom(a) => s.serialize_str(&a.to_string()),
            Label::Extra(k) => s.serialize_str(&format!("*{k}")),
            Label::Block(b) => b.serialize(s),
        }
    }
}

pub fn atoms(n: usize) -> Vec<Label> {
    (1..=n).map(Label::Atom).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Structure {
    Empty,
    Singleton { label: Label },
    Set { elements: Vec<Label> },
    List { order: Vec<Label> },
    /// Oriented cycle, rotated to start at its least label.
    Cycle { order: Vec<Label> },
    /// Pairs `(x, σ(x))` sorted by `x`.
    Permutation { pairs: Vec<(Label, Label)> },
    /// Pairs `(x, f(x))` with `f` injective into `1..=n`.
    Injection {
        #[serde(serialize_with = "image_strings")]
        pairs: Vec<(Label, u64)>,
    },
    /// A cycle with one color per bead, `colors[i]` on `cycle[i]`.
    Necklace {
        cycle: Vec<Label>,
        #[serde(serialize_with = "strings")]
        colors: Vec<u64>,
    },
    Left { inner: Box<Structure> },
    Right { inner: Box<Structure> },
    Product { left_support: Vec<Label>, left: Box<Structure>, right: Box<Structure> },
    Cartesian { left: Box<Structure>, right: Box<Structure> },
    /// Outer structure on the blocks, one inner structure per block.
    Composite { outer: Box<Structure>, parts: Vec<(Label, Structure)> },
    /// `(π, τ, m, n)` with `m` on the blocks of `π`, `n` on those of `τ`.
    Arith { pi: SetPartition<Label>, tau: SetPartition<Label>, left: Box<Structure>, right: Box<Structure> },
    Derived { star: Label, inner: Box<Structure> },
    Pointed { point: Label, inner: Box<Structure> },
    Leaf { label: Label },
    Tree {
        root: Label,
        pi: SetPartition<Label>,
        tau: SetPartition<Label>,
        enrichment: Box<Structure>,
        subtree: Box<Structure>,
    },
}

// JSON dumps keep every integer as a decimal string.
fn strings<S: Serializer>(v: &[u64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(u64::to_string))
}

fn image_strings<S: Serializer>(v: &[(Label, u64)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(l, y)| (l, y.to_string())))
}

fn block_labels(p: &SetPartition<Label>) -> Vec<Label> {
    p.blocks().iter().map(|b| Label::Block(b.clone())).collect()
}

fn rotate_to_min(order: &mut [Label], colors: Option<&mut [u64]>) {
    if let Some(i) = order.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).map(|(i, _)| i) {
        order.rotate_left(i);
        if let Some(c) = colors {
            c.rotate_left(i);
        }
    }
}

/// Cycles on `labels` (sorted), each starting at `labels[0]`.
fn cycles_on(labels: &[Label]) -> Vec<Vec<Label>> {
    if labels.is_empty() {
        return vec![];
    }
    all_permutations(labels.len() - 1)
        .into_iter()
        .map(|p| {
            std::iter::once(labels[0].clone())
                .chain(p.iter().map(|&i| labels[i + 1].clone()))
                .collect()
        })
        .collect()
}

fn colorings(n: usize, alpha: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u64>| {
                (0..alpha).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Least `k >= 1` with the coloring invariant under rotation by `k`.
fn period(colors: &[u64]) -> usize {
    let n = colors.len();
    (1..=n)
        .find(|&k| (0..n).all(|i| colors[i] == colors[(i + k) % n]))
        .unwrap_or(0)
}

fn injections(n: usize, k: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u64>| {
                let free: Vec<u64> = (1..=k).filter(|c| !w.contains(c)).collect();
                free.into_iter().map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn require_empty_free(expr: &SpeciesExpr, parent: &SpeciesExpr, why: &str) -> Result<(), OracleError> {
    if structures(expr, &[])?.is_empty() {
        Ok(())
    } else {
        Err(OracleError::Precondition(parent.to_string(), why.to_string()))
    }
}

/// Every structure of `expr` on the label set `labels` (which is sorted
/// and deduplicated first), in sorted order.
pub fn enumerate(expr: &SpeciesExpr, labels: &[Label]) -> Result<Vec<Structure>, OracleError> {
    let set: BTreeSet<Label> = labels.iter().cloned().collect();
    if set.len() > MAX_ENUMERATE_LABELS {
        return Err(OracleError::ScaleLimit {
            what: "enumeration labels",
            limit: MAX_ENUMERATE_LABELS,
            got: set.len(),
        });
    }
    let labels: Vec<Label> = set.into_iter().collect();
    let mut out = structures(expr, &labels)?;
    out.sort();
    Ok(out)
}

fn structures(expr: &SpeciesExpr, u: &[Label]) -> Result<Vec<Structure>, OracleError> {
    use SpeciesExpr as Sp;
    use Structure as St;
    let n = u.len();
    let all_when = |ok: bool, f: &dyn Fn() -> Vec<Structure>| if ok { f() } else { vec![] };
    let lists = || all_permutations(n).into_iter().map(|p| St::List { order: p.iter().map(|&i| u[i].clone()).collect() }).collect();
    Ok(match expr {
        Sp::One => all_when(n == 0, &|| vec![St::Empty]),
        Sp::X => all_when(n == 1, &|| vec![St::Singleton { label: u[0].clone() }]),
        Sp::E => vec![St::Set { elements: u.to_vec() }],
        Sp::Eplus => all_when(n >= 1, &|| vec![St::Set { elements: u.to_vec() }]),
        Sp::Ek(k) => all_when(n as u64 == *k, &|| vec![St::Set { elements: u.to_vec() }]),
        Sp::L => lists(),
        Sp::Lplus => all_when(n >= 1, &lists),
        Sp::XPow(k) => all_when(n as u64 == *k, &lists),
        Sp::C => cycles_on(u).into_iter().map(|order| St::Cycle { order }).collect(),
        Sp::S | Sp::Splus => {
            if *expr == Sp::Splus && n == 0 {
                vec![]
            } else {
                all_permutations(n)
                    .into_iter()
                    .map(|p: Perm| St::Permutation {
                        pairs: (0..n).map(|i| (u[i].clone(), u[p[i]].clone())).collect(),
                    })
                    .collect()
            }
        }
        Sp::OnePlusXPow(k) => injections(n, *k)
            .into_iter()
            .map(|f| St::Injection { pairs: u.iter().cloned().zip(f).collect() })
            .collect(),
        Sp::Necklace(a) | Sp::AperiodicNecklace(a) => {
            if *a > MAX_NECKLACE_ALPHABET {
                return Err(OracleError::UnsupportedAtom(expr.to_string()));
            }
            let aperiodic = matches!(expr, Sp::AperiodicNecklace(_));
            let mut out = Vec::new();
            for cycle in cycles_on(u) {
                for colors in colorings(n, *a) {
                    if !aperiodic || period(&colors) == n {
                        out.push(St::Necklace { cycle: cycle.clone(), colors });
                    }
                }
            }
            out
        }
        Sp::Derivative(f) => {
            let next = u
                .iter()
                .filter_map(|l| match l {
                    Label::Extra(k) => Some(k + 1),
                    _ => None,
                })
                .max()
                .unwrap_or(0);
            let star = Label::Extra(next);
            let mut v = u.to_vec();
            v.push(star.clone());
            v.sort();
            structures(f, &v)?
                .into_iter()
                .map(|s| St::Derived { star: star.clone(), inner: Box::new(s) })
                .collect()
        }
        Sp::Point(f) => {
            let inner = structures(f, u)?;
            u.iter()
                .flat_map(|p| {
                    inner.iter().map(move |s| St::Pointed { point: p.clone(), inner: Box::new(s.clone()) })
                })
                .collect()
        }
        Sp::NonEmpty(f) => if n == 0 { vec![] } else { structures(f, u)? },
        Sp::Restrict(f, k) => if n as u64 == *k { structures(f, u)? } else { vec![] },
        Sp::Sum(f, g) => {
            let mut out: Vec<Structure> =
                structures(f, u)?.into_iter().map(|s| St::Left { inner: Box::new(s) }).collect();
            out.extend(structures(g, u)?.into_iter().map(|s| St::Right { inner: Box::new(s) }));
            out
        }
        Sp::Prod(f, g) => {
            let mut out = Vec::new();
            for mask in 0u64..1 << n {
                let (a, b): (Vec<_>, Vec<_>) = (0..n).partition(|&i| mask >> i & 1 == 1);
                let a: Vec<Label> = a.into_iter().map(|i| u[i].clone()).collect();
                let b: Vec<Label> = b.into_iter().map(|i| u[i].clone()).collect();
                let fs = structures(f, &a)?;
                if fs.is_empty() {
                    continue;
                }
                let gs = structures(g, &b)?;
                for l in &fs {
                    for r in &gs {
                        out.push(St::Product {
                            left_support: a.clone(),
                            left: Box::new(l.clone()),
                            right: Box::new(r.clone()),
                        });
                    }
                }
            }
            out
        }
        Sp::Cartesian(f, g) => {
            let gs = structures(g, u)?;
            structures(f, u)?
                .into_iter()
                .flat_map(|l| {
                    gs.iter().map(move |r| St::Cartesian { left: Box::new(l.clone()), right: Box::new(r.clone()) })
                })
                .collect()
        }
        Sp::Subst(f, g) => {
            require_empty_free(g, expr, "inner species has structures on the empty set")?;
            let mut out = Vec::new();
            for p in partitions_of(u) {
                let blocks = block_labels(&p);
                let outer = structures(f, &blocks)?;
                if outer.is_empty() {
                    continue;
                }
                // one inner structure per block, all combinations
                let mut parts: Vec<Vec<(Label, Structure)>> = vec![vec![]];
                for (label, block) in blocks.iter().zip(p.blocks()) {
                    let inner = structures(g, block)?;
                    parts = parts
                        .into_iter()
                        .flat_map(|pre| {
                            inner.iter().map(move |s| {
                                let mut v = pre.clone();
                                v.push((label.clone(), s.clone()));
                                v
                            })
                        })
                        .collect();
                }
                for o in &outer {
                    for ps in &parts {
                        out.push(St::Composite { outer: Box::new(o.clone()), parts: ps.clone() });
                    }
                }
            }
            out
        }
        Sp::AProd(f, g) | Sp::MAProd(f, g) => {
            let partial = matches!(expr, Sp::MAProd(..));
            if !partial {
                require_empty_free(f, expr, "operands must have no structures on the empty set")?;
                require_empty_free(g, expr, "operands must have no structures on the empty set")?;
            }
            let rects = if partial { partial_rects_on(u) } else { rects_on(u) };
            arith(f, g, rects, |pi, tau, l, r| St::Arith { pi, tau, left: l, right: r })?
        }
        Sp::Hct(r) => match n {
            0 => vec![],
            1 => vec![St::Leaf { label: u[0].clone() }],
            _ => {
                let root = u[0].clone();
                let h = Sp::Hct(r.clone());
                arith(r, &h, rects_on(&u[1..]), |pi, tau, l, s| St::Tree {
                    root: root.clone(),
                    pi,
                    tau,
                    enrichment: l,
                    subtree: s,
                })?
            }
        },
    })
}

/// Structures `(π, τ, m, n)` over the given pairs of partitions.
fn arith(
    f: &SpeciesExpr,
    g: &SpeciesExpr,
    rects: Vec<Rect<Label>>,
    build: impl Fn(SetPartition<Label>, SetPartition<Label>, Box<Structure>, Box<Structure>) -> Structure,
) -> Result<Vec<Structure>, OracleError> {
    let mut out = Vec::new();
    for Rect { pi, tau } in rects {
        let ms = structures(f, &block_labels(&pi))?;
        if ms.is_empty() {
            continue;
        }
        let ns = structures(g, &block_labels(&tau))?;
        for m in &ms {
            for k in &ns {
                out.push(build(pi.clone(), tau.clone(), Box::new(m.clone()), Box::new(k.clone())));
            }
        }
    }
    Ok(out)
}

/// A bijection between label sets, given by its graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bijection {
    map: BTreeMap<Label, Label>,
}

impl Bijection {
    /// Panics unless the images are distinct.
    pub fn new(map: BTreeMap<Label, Label>) -> Self {
        let images: BTreeSet<&Label> = map.values().collect();
        assert_eq!(images.len(), map.len(), "not injective");
        Self { map }
    }

    pub fn identity(labels: &[Label]) -> Self {
        Self::new(labels.iter().map(|l| (l.clone(), l.clone())).collect())
    }

    /// `Atom(i+1) ↦ Atom(p[i]+1)` on `{1..n}`.
    pub fn from_perm(p: &[usize]) -> Self {
        Self::new(p.iter().enumerate().map(|(i, &j)| (Label::Atom(i + 1), Label::Atom(j + 1))).collect())
    }

    pub fn domain(&self) -> BTreeSet<Label> {
        self.map.keys().cloned().collect()
    }

    pub fn apply(&self, l: &Label) -> Label {
        match self.map.get(l) {
            Some(m) => m.clone(),
            None => match l {
                Label::Block(b) => {
                    let mut v: Vec<Label> = b.iter().map(|x| self.apply(x)).collect();
                    v.sort();
                    Label::Block(v)
                }
                other => other.clone(),
            },
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Bijection) -> Bijection {
        Bijection::new(other.map.iter().map(|(k, v)| (k.clone(), self.apply(v))).collect())
    }
}

/// The labels a structure lives on.
pub fn support(s: &Structure) -> BTreeSet<Label> {
    use Structure as St;
    let set = |v: &[Label]| v.iter().cloned().collect::<BTreeSet<_>>();
    let blocks = |p: &SetPartition<Label>| p.blocks().iter().flatten().cloned().collect::<BTreeSet<_>>();
    match s {
        St::Empty => BTreeSet::new(),
        St::Singleton { label } | St::Leaf { label } => BTreeSet::from([label.clone()]),
        St::Set { elements: v } | St::List { order: v } | St::Cycle { order: v } | St::Necklace { cycle: v, .. } => set(v),
        St::Permutation { pairs } => pairs.iter().map(|p| p.0.clone()).collect(),
        St::Injection { pairs } => pairs.iter().map(|p| p.0.clone()).collect(),
        St::Left { inner } | St::Right { inner } | St::Pointed { inner, .. } => support(inner),
        St::Product { left_support, right, .. } => {
            let mut s = set(left_support);
            s.extend(support(right));
            s
        }
        St::Cartesian { left, .. } => support(left),
        St::Composite { parts, .. } => parts
            .iter()
            .flat_map(|(l, _)| match l {
                Label::Block(b) => b.clone(),
                other => vec![other.clone()],
            })
            .collect(),
        St::Arith { pi, .. } => blocks(pi),
        St::Derived { star, inner } => {
            let mut s = support(inner);
            s.remove(star);
            s
        }
        St::Tree { root, pi, .. } => {
            let mut s = blocks(pi);
            s.insert(root.clone());
            s
        }
    }
}

fn relabel(s: &Structure, f: &Bijection) -> Structure {
    use Structure as St;
    let map = |v: &[Label]| v.iter().map(|l| f.apply(l)).collect::<Vec<_>>();
    let sorted = |v: &[Label]| {
        let mut w = map(v);
        w.sort();
        w
    };
    let boxed = |s: &Structure| Box::new(relabel(s, f));
    let part = |p: &SetPartition<Label>| p.map(|l| f.apply(l));
    match s {
        St::Empty => St::Empty,
        St::Singleton { label } => St::Singleton { label: f.apply(label) },
        St::Leaf { label } => St::Leaf { label: f.apply(label) },
        St::Set { elements } => St::Set { elements: sorted(elements) },
        St::List { order } => St::List { order: map(order) },
        St::Cycle { order } => {
            let mut order = map(order);
            rotate_to_min(&mut order, None);
            St::Cycle { order }
        }
        St::Necklace { cycle, colors } => {
            let mut cycle = map(cycle);
            let mut colors = colors.clone();
            rotate_to_min(&mut cycle, Some(&mut colors));
            St::Necklace { cycle, colors }
        }
        St::Permutation { pairs } => {
            let mut pairs: Vec<_> = pairs.iter().map(|(a, b)| (f.apply(a), f.apply(b))).collect();
            pairs.sort();
            St::Permutation { pairs }
        }
        St::Injection { pairs } => {
            let mut pairs: Vec<_> = pairs.iter().map(|(a, b)| (f.apply(a), *b)).collect();
            pairs.sort();
            St::Injection { pairs }
        }
        St::Left { inner } => St::Left { inner: boxed(inner) },
        St::Right { inner } => St::Right { inner: boxed(inner) },
        St::Product { left_support, left, right } => St::Product {
            left_support: sorted(left_support),
            left: boxed(left),
            right: boxed(right),
        },
        St::Cartesian { left, right } => St::Cartesian { left: boxed(left), right: boxed(right) },
        St::Composite { outer, parts } => {
            let mut parts: Vec<_> = parts.iter().map(|(l, s)| (f.apply(l), relabel(s, f))).collect();
            parts.sort();
            St::Composite { outer: boxed(outer), parts }
        }
        St::Arith { pi, tau, left, right } => St::Arith {
            pi: part(pi),
            tau: part(tau),
            left: boxed(left),
            right: boxed(right),
        },
        St::Derived { star, inner } => St::Derived { star: star.clone(), inner: boxed(inner) },
        St::Pointed { point, inner } => St::Pointed { point: f.apply(point), inner: boxed(inner) },
        St::Tree { root, pi, tau, enrichment, subtree } => St::Tree {
            root: f.apply(root),
            pi: part(pi),
            tau: part(tau),
            enrichment: boxed(enrichment),
            subtree: boxed(subtree),
        },
    }
}

fn contains_hct(expr: &SpeciesExpr) -> bool {
    matches!(expr, SpeciesExpr::Hct(_)) || expr.children().into_iter().any(contains_hct)
}

/// Transport of an `expr`-structure along a bijection whose domain is the
/// structure's label set.
///
/// Tree structures are built with the least label as root, so they are not
/// closed under relabelling and are rejected.
pub fn transport(expr: &SpeciesExpr, s: &Structure, f: &Bijection) -> Result<Structure, OracleError> {
    if contains_hct(expr) {
        return Err(OracleError::NotTransportable(expr.to_string()));
    }
    if support(s) != f.domain() {
        return Err(OracleError::DomainMismatch);
    }
    Ok(relabel(s, f))
}

#[cfg(test)]
mod tests {
    use super::SpeciesExpr as Sp;
    use super::*;

    fn count(e: &Sp, n: usize) -> usize {
        enumerate(e, &atoms(n)).unwrap().len()
    }

    #[test]
    fn basic_counts() {
        assert_eq!(count(&Sp::X, 1), 1);
        assert_eq!(count(&Sp::aprod(Sp::C, Sp::Lplus), 4), 42);
        assert_eq!(count(&Sp::hct(Sp::E), 5), 10);
        assert_eq!(count(&Sp::maprod(Sp::E, Sp::E), 2), 3);
        assert_eq!(count(&Sp::subst(Sp::E, Sp::Eplus), 4), 15);
        assert_eq!(count(&Sp::deriv(Sp::deriv(Sp::C)), 2), 6);
        assert_eq!(count(&Sp::AperiodicNecklace(2), 4), 72);
        assert_eq!(count(&Sp::OnePlusXPow(3), 2), 6);
    }

    #[test]
    fn no_duplicates() {
        for e in [Sp::prod(Sp::L, Sp::E), Sp::aprod(Sp::Splus, Sp::C), Sp::subst(Sp::C, Sp::Lplus)] {
            let v = enumerate(&e, &atoms(4)).unwrap();
            let set: BTreeSet<_> = v.iter().collect();
            assert_eq!(set.len(), v.len(), "{e}");
        }
    }

    #[test]
    fn preconditions_and_limits() {
        assert!(matches!(
            enumerate(&Sp::aprod(Sp::E, Sp::X), &atoms(2)),
            Err(OracleError::Precondition(..))
        ));
        assert!(matches!(enumerate(&Sp::E, &atoms(9)), Err(OracleError::ScaleLimit { .. })));
        assert!(matches!(enumerate(&Sp::Necklace(4), &atoms(2)), Err(OracleError::UnsupportedAtom(_))));
    }

    #[test]
    fn transport_laws() {
        let e = Sp::aprod(Sp::C, Sp::Lplus);
        let u = atoms(4);
        let all = enumerate(&e, &u).unwrap();
        let id = Bijection::identity(&u);
        let sigma = Bijection::from_perm(&[1, 2, 0, 3]);
        let rho = Bijection::from_perm(&[3, 0, 2, 1]);
        for s in &all {
            assert_eq!(&transport(&e, s, &id).unwrap(), s);
            let t = transport(&e, s, &sigma).unwrap();
            assert!(all.binary_search(&t).is_ok());
            let twice = transport(&e, &t, &rho).unwrap();
            assert_eq!(twice, transport(&e, s, &rho.compose(&sigma)).unwrap());
        }
    }

    #[test]
    fn transport_rejections() {
        let h = Sp::hct(Sp::E);
        let s = enumerate(&h, &atoms(2)).unwrap().remove(0);
        assert!(matches!(transport(&h, &s, &Bijection::identity(&atoms(2))), Err(OracleError::NotTransportable(_))));
        let s = enumerate(&Sp::E, &atoms(2)).unwrap().remove(0);
        assert_eq!(transport(&Sp::E, &s, &Bijection::identity(&atoms(3))), Err(OracleError::DomainMismatch));
    }
}
