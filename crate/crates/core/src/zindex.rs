//! Cycle index series truncated by total weight.
//!
//! A [`CycleIndex`] stores `fix[λ]` for each cycle type `λ`; the series it
//! denotes is `Σ_λ fix[λ] x^λ / aut(λ)`. Keeping fix-values (rather than
//! monomial coefficients) makes the arithmetic and Hadamard products
//! coefficientwise in the natural sense, and keeps the entries of a real
//! species integral.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::numkit::{
    aut, euler_phi, factorial, gcd, int_partitions_up_to, lcm, rat_int, IntPartition, Integer,
    Rational,
};
use crate::series::TruncSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZindexError {
    #[error("unknown cycle-index atom `{0}`")]
    UnknownAtom(String),
    #[error("plethysm requires an inner index series with no weight-0 term")]
    Composition,
    #[error("arithmetic product requires index series with no weight-0 term")]
    ZeroConstantRequired,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleIndex {
    bound: u64,
    fix: BTreeMap<IntPartition, Rational>,
}

/// Sparse polynomial in the power-sum monomials `x^λ`.
type Monomials = BTreeMap<IntPartition, Rational>;

impl CycleIndex {
    pub fn zero(bound: u64) -> Self {
        Self { bound, fix: BTreeMap::new() }
    }

    /// Builds from fix-values, dropping zeros and weights above `bound`.
    pub fn from_fix(bound: u64, entries: impl IntoIterator<Item = (IntPartition, Rational)>) -> Self {
        let mut out = Self::zero(bound);
        for (lambda, v) in entries {
            out.add_fix(lambda, v);
        }
        out
    }

    /// Fix-values given by a function of the cycle type, for every type of
    /// weight `<= bound`.
    pub fn from_fn(bound: u64, mut f: impl FnMut(&IntPartition) -> Rational) -> Self {
        Self::from_fix(
            bound,
            int_partitions_up_to(bound).into_iter().map(|l| {
                let v = f(&l);
                (l, v)
            }),
        )
    }

    fn add_fix(&mut self, lambda: IntPartition, v: Rational) {
        if v.is_zero() || lambda.weight() > self.bound {
            return;
        }
        let sum = self.fix(&lambda) + v;
        if sum.is_zero() {
            self.fix.remove(&lambda);
        } else {
            self.fix.insert(lambda, sum);
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn fix(&self, lambda: &IntPartition) -> Rational {
        self.fix.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries in canonical partition order.
    pub fn entries(&self) -> impl Iterator<Item = (&IntPartition, &Rational)> {
        self.fix.iter()
    }

    /// Coefficient of `x^λ`: `fix[λ] / aut(λ)`.
    pub fn monomial_coeff(&self, lambda: &IntPartition) -> Rational {
        self.fix(lambda) / rat_int(aut(lambda))
    }

    pub fn truncate(&self, bound: u64) -> Self {
        Self::from_fix(bound, self.fix.iter().map(|(k, v)| (k.clone(), v.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.fix.is_empty()
    }

    fn has_weight_zero_term(&self) -> bool {
        self.fix.contains_key(&IntPartition::empty())
    }

    /// Restriction to one weight (the species concentrated on `n`).
    pub fn restrict(&self, n: u64) -> Self {
        Self::from_fix(
            self.bound,
            self.fix.iter().filter(|(k, _)| k.weight() == n).map(|(k, v)| (k.clone(), v.clone())),
        )
    }

    /// Drops the weight-0 term.
    pub fn nonempty(&self) -> Self {
        Self::from_fix(
            self.bound,
            self.fix.iter().filter(|(k, _)| !k.is_empty()).map(|(k, v)| (k.clone(), v.clone())),
        )
    }

    /// `∂/∂x_1`: `fix'[μ] = fix[μ + (1)]`; the bound drops by one.
    pub fn derivative(&self) -> Self {
        let bound = self.bound.saturating_sub(1);
        Self::from_fn(bound, |mu| self.fix(&mu.with_extra_fixed_point()))
    }

    fn to_monomials(&self) -> Monomials {
        self.fix
            .iter()
            .map(|(k, v)| (k.clone(), v / rat_int(aut(k))))
            .collect()
    }

    fn from_monomials(bound: u64, m: Monomials) -> Self {
        Self::from_fix(bound, m.into_iter().map(|(k, v)| {
            let f = v * rat_int(aut(&k));
            (k, f)
        }))
    }
}

fn mono_mul(a: &Monomials, b: &Monomials, bound: u64) -> Monomials {
    let mut out = Monomials::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            if ka.weight() + kb.weight() > bound {
                continue;
            }
            *out.entry(ka.union(kb)).or_insert_with(Rational::zero) += va * vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn mono_one() -> Monomials {
    BTreeMap::from([(IntPartition::empty(), Rational::one())])
}

/// Renders one row per nonzero entry:
/// `1^a 2^b ...: <fix> (monomial coeff <fix/aut>)`.
impl fmt::Display for CycleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.fix {
            writeln!(f, "{k}: {v} (monomial coeff {})", self.monomial_coeff(k))?;
        }
        Ok(())
    }
}

/// Named atoms with classical index series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexAtom {
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
}

impl FromStr for IndexAtom {
    type Err = ZindexError;

    /// Accepts `1 X E Ep L Lp C S Sp` and `Ek<k>` (e.g. `Ek3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "1" => Self::One,
            "X" => Self::X,
            "E" => Self::E,
            "Ep" => Self::Eplus,
            "L" => Self::L,
            "Lp" => Self::Lplus,
            "C" => Self::C,
            "S" => Self::S,
            "Sp" => Self::Splus,
            _ => match s.strip_prefix("Ek").and_then(|k| k.parse().ok()) {
                Some(k) => Self::Ek(k),
                None => return Err(ZindexError::UnknownAtom(s.to_string())),
            },
        })
    }
}

/// `fix C[λ]`: nonzero only when all cycles have one length `d`, `λ = (d^m)`,
/// where it equals `φ(d) d^{m-1} (m-1)!`.
pub fn cycle_fix(lambda: &IntPartition) -> Integer {
    let mut nz = lambda.nonzero();
    match (nz.next(), nz.next()) {
        (Some((d, m)), None) => {
            euler_phi(d).expect("d >= 1")
                * num_traits::pow(Integer::from(d), (m - 1) as usize)
                * factorial(m - 1)
        }
        _ => Integer::zero(),
    }
}

fn is_identity_type(lambda: &IntPartition) -> bool {
    lambda.nonzero().all(|(i, _)| i == 1)
}

pub fn zi_index_atom(atom: IndexAtom, bound: u64) -> CycleIndex {
    let one = Rational::one;
    CycleIndex::from_fn(bound, |l| match atom {
        IndexAtom::One => {
            if l.is_empty() { one() } else { Rational::zero() }
        }
        IndexAtom::X => {
            if *l == IntPartition::ones(1) { one() } else { Rational::zero() }
        }
        IndexAtom::E => one(),
        IndexAtom::Eplus => {
            if l.is_empty() { Rational::zero() } else { one() }
        }
        IndexAtom::Ek(k) => {
            if l.weight() == k { one() } else { Rational::zero() }
        }
        IndexAtom::L | IndexAtom::Lplus => {
            if is_identity_type(l) && !(atom == IndexAtom::Lplus && l.is_empty()) {
                rat_int(factorial(l.weight()))
            } else {
                Rational::zero()
            }
        }
        IndexAtom::C => rat_int(cycle_fix(l)),
        IndexAtom::S => rat_int(aut(l)),
        IndexAtom::Splus => {
            if l.is_empty() { Rational::zero() } else { rat_int(aut(l)) }
        }
    })
}

/// Index series of a named atom, e.g. `zi_atom("Ep", 5)`.
pub fn zi_atom(name: &str, bound: u64) -> Result<CycleIndex, ZindexError> {
    Ok(zi_index_atom(name.parse()?, bound))
}

pub fn zi_add(p: &CycleIndex, q: &CycleIndex) -> CycleIndex {
    let bound = p.bound.min(q.bound);
    CycleIndex::from_fix(
        bound,
        p.fix.iter().chain(q.fix.iter()).map(|(k, v)| (k.clone(), v.clone())),
    )
}

pub fn zi_mul(p: &CycleIndex, q: &CycleIndex) -> CycleIndex {
    let bound = p.bound.min(q.bound);
    CycleIndex::from_monomials(bound, mono_mul(&p.to_monomials(), &q.to_monomials(), bound))
}

/// Plethystic substitution `P ∘ Q`: each `x_i` in `P` becomes
/// `Q(x_i, x_{2i}, x_{3i}, ...)`.
pub fn zi_plethysm(p: &CycleIndex, q: &CycleIndex) -> Result<CycleIndex, ZindexError> {
    if q.has_weight_zero_term() {
        return Err(ZindexError::Composition);
    }
    let bound = p.bound.min(q.bound);
    let qm = q.truncate(bound).to_monomials();
    // powers[i][e] = (Q with x_j -> x_{ij})^e
    let mut powers: BTreeMap<u64, Vec<Monomials>> = BTreeMap::new();
    let mut out = Monomials::new();
    for (beta, coeff) in p.truncate(bound).to_monomials() {
        let mut term = mono_one();
        for (i, m) in beta.nonzero() {
            let pw = powers.entry(i).or_insert_with(|| vec![mono_one()]);
            while pw.len() as u64 <= m {
                let dilated: Monomials = qm.iter().map(|(k, v)| (k.dilate(i), v.clone())).collect();
                let next = mono_mul(pw.last().expect("nonempty"), &dilated, bound);
                pw.push(next);
            }
            term = mono_mul(&term, &pw[m as usize], bound);
        }
        for (k, v) in term {
            *out.entry(k).or_insert_with(Rational::zero) += &coeff * v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(CycleIndex::from_monomials(bound, out))
}

/// `fix[λ] = fix_P[λ] fix_Q[λ]`.
pub fn zi_hadamard(p: &CycleIndex, q: &CycleIndex) -> CycleIndex {
    let bound = p.bound.min(q.bound);
    CycleIndex::from_fix(
        bound,
        p.fix.iter().filter_map(|(k, v)| q.fix.get(k).map(|w| (k.clone(), v * w))),
    )
}

/// Cycle type of `σ_1 ⊠ σ_2` from the types of `σ_1` and `σ_2`:
/// `α_k = Σ_{lcm(i,l)=k} gcd(i,l) β_i γ_l`.
pub fn box_type(beta: &IntPartition, gamma: &IntPartition) -> IntPartition {
    let mut mult: Vec<u64> = Vec::new();
    for (i, bi) in beta.nonzero() {
        for (l, gl) in gamma.nonzero() {
            let k = lcm(i, l) as usize;
            if mult.len() < k {
                mult.resize(k, 0);
            }
            mult[k - 1] += gcd(i, l) * bi * gl;
        }
    }
    IntPartition::from_multiplicities(mult)
}

/// `{α; β, γ} = aut(α) / (aut(β) aut(γ))` when `β ⊠ γ = α`, else zero.
pub fn box_coefficient(alpha: &IntPartition, beta: &IntPartition, gamma: &IntPartition) -> Rational {
    if box_type(beta, gamma) == *alpha {
        Rational::new(aut(alpha), aut(beta) * aut(gamma))
    } else {
        Rational::zero()
    }
}

/// Arithmetic product of index series:
/// `fix[α] = Σ_{β⊠γ=α} {α;β,γ} fix_P[β] fix_Q[γ]`.
pub fn zi_aprod(p: &CycleIndex, q: &CycleIndex) -> Result<CycleIndex, ZindexError> {
    if p.has_weight_zero_term() || q.has_weight_zero_term() {
        return Err(ZindexError::ZeroConstantRequired);
    }
    let bound = p.bound.min(q.bound);
    let mut out = CycleIndex::zero(bound);
    for (beta, fb) in &p.fix {
        for (gamma, fg) in &q.fix {
            if beta.weight() * gamma.weight() > bound {
                continue;
            }
            let alpha = box_type(beta, gamma);
            let c = Rational::new(aut(&alpha), aut(beta) * aut(gamma));
            out.add_fix(alpha, c * fb * fg);
        }
    }
    Ok(out)
}

/// Pointing: `fix[λ] m_1(λ)`.
pub fn zi_point(p: &CycleIndex) -> CycleIndex {
    CycleIndex::from_fix(
        p.bound,
        p.fix.iter().map(|(k, v)| (k.clone(), v * rat_int(k.multiplicity(1)))),
    )
}

/// `x_1 = x`, `x_i = 0` for `i > 1`.
pub fn zi_to_egf(p: &CycleIndex, order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |n| p.monomial_coeff(&IntPartition::ones(n as u64)))
}

/// `x_i = x^i`: the isomorphism-type series.
pub fn zi_to_ogf(p: &CycleIndex, order: usize) -> TruncSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    for k in p.fix.keys() {
        let w = k.weight() as usize;
        if w <= order {
            coeffs[w] += p.monomial_coeff(k);
        }
    }
    TruncSeries::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{bell, int_partitions, rat, tau};
    use crate::series::{aprod_egf, aprod_ogf, compose, expm1_series};

    fn part(p: &[u64]) -> IntPartition {
        IntPartition::from_parts(p).unwrap()
    }

    fn atom(name: &str, n: u64) -> CycleIndex {
        zi_atom(name, n).unwrap()
    }

    #[test]
    fn atoms() {
        let x = atom("X", 5);
        assert_eq!(x.entries().count(), 1);
        assert_eq!(x.fix(&part(&[1])), rat(1, 1));
        let ep = atom("Ep", 5);
        for l in int_partitions_up_to(5) {
            let expected = if l.is_empty() { 0 } else { 1 };
            assert_eq!(ep.fix(&l), rat(expected, 1));
        }
        let sp = atom("Sp", 5);
        assert_eq!(sp.fix(&part(&[2, 2])), rat(8, 1));
        assert_eq!(atom("Ek3", 5).fix(&part(&[2, 1])), rat(1, 1));
        assert!(matches!(zi_atom("Q", 3), Err(ZindexError::UnknownAtom(_))));
        assert!(matches!(zi_atom("Ekx", 3), Err(ZindexError::UnknownAtom(_))));
    }

    #[test]
    fn cycle_fix_specializes_to_counts() {
        // Burnside: Σ_λ fix/aut over λ ⊢ n is 1 (one cycle type up to iso)
        let c = atom("C", 8);
        let ogf = zi_to_ogf(&c, 8);
        for n in 1..=8 {
            assert_eq!(ogf.coeff(n), rat(1, 1));
        }
        let egf = zi_to_egf(&c, 8);
        for n in 1..=8 {
            assert_eq!(egf.coeff(n), rat(1, n as i64));
        }
    }

    #[test]
    fn sum_and_product() {
        let x = atom("X", 4);
        let xx = zi_mul(&x, &x);
        assert_eq!(xx.fix(&part(&[1, 1])), rat(2, 1));
        assert_eq!(xx.entries().count(), 1);
        let p = atom("C", 4);
        assert_eq!(zi_add(&p, &CycleIndex::zero(4)), p);
        let ee = zi_mul(&atom("E", 6), &atom("E", 6));
        let egf = zi_to_egf(&ee, 6);
        for n in 0..=6 {
            assert_eq!(egf.count(n), rat(1 << n, 1));
        }
    }

    #[test]
    fn plethysm_examples() {
        let par = zi_plethysm(&atom("E", 6), &atom("Ep", 6)).unwrap();
        let egf = zi_to_egf(&par, 6);
        for n in 0..=6 {
            assert_eq!(egf.count(n), rat_int(bell(n as u64)));
        }
        let bell_egf = compose(&TruncSeries::exp_x(6), &expm1_series(6)).unwrap();
        assert_eq!(egf, bell_egf);
        // set partitions up to isomorphism are integer partitions
        let ogf = zi_to_ogf(&par, 6);
        for n in 0..=6 {
            assert_eq!(ogf.coeff(n), rat(int_partitions(n as u64).len() as i64, 1));
        }
        let p = atom("C", 5);
        assert_eq!(zi_plethysm(&p, &atom("X", 5)).unwrap(), p);
        assert_eq!(zi_plethysm(&atom("X", 5), &p).unwrap(), p);
        assert_eq!(zi_plethysm(&p, &atom("E", 5)), Err(ZindexError::Composition));
    }

    #[test]
    fn hadamard_examples() {
        let p = atom("C", 5);
        assert_eq!(zi_hadamard(&atom("E", 5), &p), p);
        let s2 = zi_hadamard(&atom("Sp", 5), &atom("Sp", 5));
        assert_eq!(s2.fix(&part(&[1, 1])), rat(4, 1));
        assert!(zi_hadamard(&p, &CycleIndex::zero(5)).is_zero());
    }

    #[test]
    fn box_types() {
        assert_eq!(box_type(&IntPartition::ones(2), &IntPartition::ones(3)), IntPartition::ones(6));
        assert_eq!(box_type(&part(&[2]), &part(&[2])), part(&[2, 2]));
        assert_eq!(box_type(&part(&[2]), &part(&[3])), part(&[6]));
        for b in int_partitions_up_to(4) {
            for g in int_partitions_up_to(4) {
                assert_eq!(box_type(&b, &g).weight(), b.weight() * g.weight());
            }
        }
    }

    #[test]
    fn aprod_examples() {
        let r = zi_aprod(&atom("Ep", 6), &atom("Ep", 6)).unwrap();
        assert_eq!(r.fix(&IntPartition::ones(4)), rat(8, 1));
        let p = atom("C", 6).nonempty();
        assert_eq!(zi_aprod(&atom("X", 6), &p).unwrap(), p);
        let a = part(&[2, 2]);
        assert_eq!(box_coefficient(&a, &part(&[2]), &part(&[2])), rat(2, 1));
        assert_eq!(zi_aprod(&atom("E", 3), &p), Err(ZindexError::ZeroConstantRequired));
    }

    #[test]
    fn pointing() {
        let x = atom("X", 5);
        assert_eq!(zi_point(&x), x);
        assert_eq!(zi_point(&atom("E", 5)).fix(&part(&[1, 1])), rat(2, 1));
        assert!(zi_point(&CycleIndex::zero(4)).is_zero());
    }

    #[test]
    fn specializations() {
        assert_eq!(
            zi_to_egf(&atom("C", 6), 6),
            TruncSeries::from_fn(6, |n| if n == 0 { rat(0, 1) } else { rat(1, n as i64) })
        );
        assert_eq!(zi_to_ogf(&atom("E", 6), 6), TruncSeries::geometric(6));
        let ll = zi_aprod(&atom("Lp", 10), &atom("Lp", 10)).unwrap();
        let ogf = zi_to_ogf(&ll, 10);
        for n in 1..=10 {
            assert_eq!(ogf.coeff(n), rat_int(tau(n as u64).unwrap()));
        }
    }

    #[test]
    fn aprod_commutes_with_specializations() {
        let names = ["Ep", "C", "Lp", "Sp", "X"];
        for a in names {
            for b in names {
                let (p, q) = (atom(a, 10), atom(b, 10));
                let pq = zi_aprod(&p, &q).unwrap();
                assert_eq!(
                    zi_to_egf(&pq, 10),
                    aprod_egf(&zi_to_egf(&p, 10), &zi_to_egf(&q, 10)).unwrap()
                );
                assert_eq!(
                    zi_to_ogf(&pq, 10),
                    aprod_ogf(&zi_to_ogf(&p, 10), &zi_to_ogf(&q, 10)).unwrap()
                );
            }
        }
    }

    #[test]
    fn derivative_of_sets_is_sets() {
        let e = atom("E", 6);
        assert_eq!(e.derivative(), atom("E", 5));
    }

    #[test]
    fn display_rows() {
        let text = atom("X", 3).to_string();
        assert_eq!(text, "1^1: 1 (monomial coeff 1)\n");
        let text = atom("Sp", 2).to_string();
        assert!(text.contains("2^1: 2 (monomial coeff 1)"));
        assert!(text.contains("1^2: 2 (monomial coeff 1)"));
    }
}
