//! Floating-point evaluation of the infinite multi-sums that express
//! modified arithmetic products in the `(1+x)` basis, with certified
//! truncation bounds.

use num_traits::ToPrimitive;

use super::EvalError;
use crate::numkit::Integer;

/// Largest cutoff tried before giving up on a tolerance.
const MAX_CUTOFF: u64 = 4000;

/// Weight `w(i)` attached to one summation index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftWeight {
    /// `1/i!` for `i >= 0`.
    InverseFactorial,
    /// `1/2^i` for `i >= 0`.
    HalfPower,
    /// `1/2^i` for `i >= 1`.
    HalfPowerPositive,
}

impl ShiftWeight {
    fn min_index(self) -> u64 {
        match self {
            Self::HalfPowerPositive => 1,
            _ => 0,
        }
    }

    /// `w(0..=t)`, zero below the minimum index.
    fn table(self, t: u64) -> Vec<f64> {
        let mut w = Vec::with_capacity(t as usize + 1);
        let mut cur = 1.0;
        for i in 0..=t {
            if i > 0 {
                cur *= match self {
                    Self::InverseFactorial => 1.0 / i as f64,
                    _ => 0.5,
                };
            }
            w.push(if i < self.min_index() { 0.0 } else { cur });
        }
        w
    }

    /// `sup_{j >= i} w(j+1)/w(j)`.
    fn ratio_bound(self, i: u64) -> f64 {
        match self {
            Self::InverseFactorial => 1.0 / (i + 1) as f64,
            _ => 0.5,
        }
    }
}

/// The factor depending on the product `P` of the indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kernel {
    /// `(P)_n`.
    Falling,
    /// `(P - 1)_{n-1}`, for `n >= 1`.
    ShiftedFalling,
}

impl Kernel {
    fn degree(self, n: u64) -> u64 {
        match self {
            Self::Falling => n,
            Self::ShiftedFalling => n - 1,
        }
    }

    fn eval(self, p: u64, n: u64) -> f64 {
        let (top, len) = match self {
            Self::Falling => (p, n),
            Self::ShiftedFalling => match p.checked_sub(1) {
                Some(q) => (q, n - 1),
                None => return 0.0,
            },
        };
        if top < len {
            return 0.0;
        }
        (0..len).map(|t| (top - t) as f64).product()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericEstimate {
    pub value: f64,
    /// Bound on `|value - true sum|`, truncation and rounding included.
    pub error_bound: f64,
    /// Every index ran over `0..=cutoff`.
    pub cutoff: u64,
}

impl NumericEstimate {
    /// True if `exact` lies within the certified interval.
    pub fn contains(&self, exact: &Integer) -> bool {
        let x = exact.to_f64().unwrap_or(f64::INFINITY);
        (self.value - x).abs() <= self.error_bound
    }

    pub fn relative_error(&self, exact: &Integer) -> f64 {
        let x = exact.to_f64().unwrap_or(f64::INFINITY);
        if x == 0.0 {
            self.value.abs()
        } else {
            ((self.value - x) / x).abs()
        }
    }
}

/// `prefactor · Σ_{i_1..i_k} w_1(i_1)⋯w_k(i_k) K(i_1⋯i_k)`, with every
/// index cut at the smallest `T` whose tail bound is at most `tol`.
///
/// The tail is bounded with `K(P) <= P^deg`, which splits the sum into a
/// product of one-dimensional series `Σ_i w(i) i^deg`; each of those has a
/// geometric tail past `T` because its term ratio is eventually below 1.
pub fn shifted_product_numeric(
    weights: &[ShiftWeight],
    kernel: Kernel,
    n: u64,
    prefactor: f64,
    tol: f64,
) -> Result<NumericEstimate, EvalError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(EvalError::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if weights.is_empty() {
        return Err(EvalError::Domain("need at least one factor".into()));
    }
    if kernel == Kernel::ShiftedFalling && n == 0 {
        return Err(EvalError::Domain("the shifted kernel needs n >= 1".into()));
    }
    let deg = kernel.degree(n) as i32;
    let term = |w: &[f64], i: u64| w[i as usize] * (i as f64).powi(deg);

    let mut cutoff = 1;
    let truncation = loop {
        if cutoff > MAX_CUTOFF {
            return Err(EvalError::Domain(format!("tolerance {tol} needs a cutoff above {MAX_CUTOFF}")));
        }
        let mut partial = Vec::new();
        let mut tail = Vec::new();
        for &w in weights {
            let table = w.table(cutoff + 1);
            partial.push((0..=cutoff).map(|i| term(&table, i)).sum::<f64>());
            let rho = (1.0 + 1.0 / (cutoff + 1) as f64).powi(deg) * w.ratio_bound(cutoff + 1);
            tail.push(if rho < 1.0 { term(&table, cutoff + 1) / (1.0 - rho) } else { f64::INFINITY });
        }
        let bound: f64 = (0..weights.len())
            .map(|j| {
                tail[j]
                    * (0..weights.len())
                        .filter(|&l| l != j)
                        .map(|l| partial[l] + tail[l])
                        .product::<f64>()
            })
            .sum::<f64>()
            * prefactor;
        if bound <= tol {
            break bound;
        }
        cutoff += 1;
    };

    let tables: Vec<Vec<f64>> = weights.iter().map(|w| w.table(cutoff)).collect();
    let mut terms = 0u64;
    let sum = nested_sum(&tables, 0, 1, 1.0, kernel, n, &mut terms);
    let value = prefactor * sum;
    let rounding = value.abs() * (terms as f64 + n as f64 + 8.0) * f64::EPSILON;
    Ok(NumericEstimate { value, error_bound: truncation + rounding, cutoff })
}

fn nested_sum(
    tables: &[Vec<f64>],
    depth: usize,
    product: u64,
    weight: f64,
    kernel: Kernel,
    n: u64,
    terms: &mut u64,
) -> f64 {
    if depth == tables.len() {
        *terms += 1;
        return weight * kernel.eval(product, n);
    }
    let mut acc = 0.0;
    for (i, w) in tables[depth].iter().enumerate() {
        if *w == 0.0 {
            continue;
        }
        acc += nested_sum(tables, depth + 1, product * i as u64, weight * w, kernel, n, terms);
    }
    acc
}

/// `e^{-k} Σ_{i_1..i_k >= 0} (i_1⋯i_k)_n / (i_1!⋯i_k!)`, the number of
/// `k`-partial rectangles on `[n]`.
pub fn pittel_numeric(k: u32, n: u64, tol: f64) -> Result<NumericEstimate, EvalError> {
    let weights = vec![ShiftWeight::InverseFactorial; k as usize];
    shifted_product_numeric(&weights, Kernel::Falling, n, (-(k as f64)).exp(), tol)
}

/// `|(L ⊡̃ E)[n]| = (1/2e) Σ_{r,s >= 0} (rs)_n / (2^r s!)`.
pub fn le_numeric(n: u64, tol: f64) -> Result<NumericEstimate, EvalError> {
    let weights = [ShiftWeight::HalfPower, ShiftWeight::InverseFactorial];
    shifted_product_numeric(&weights, Kernel::Falling, n, 0.5 / std::f64::consts::E, tol)
}

/// `|L^{⊡̃k}[n]| = 2^{-k} Σ_{i_1..i_k >= 0} (i_1⋯i_k)_n / 2^{i_1+⋯+i_k}`.
pub fn l_power_numeric(k: u32, n: u64, tol: f64) -> Result<NumericEstimate, EvalError> {
    let weights = vec![ShiftWeight::HalfPower; k as usize];
    shifted_product_numeric(&weights, Kernel::Falling, n, 0.5f64.powi(k as i32), tol)
}

/// `|C^{⊡̃k}[n]| = Σ_{i_1..i_k >= 1} (i_1⋯i_k - 1)_{n-1} / 2^{i_1+⋯+i_k}`;
/// zero at `n = 0`.
pub fn c_power_numeric(k: u32, n: u64, tol: f64) -> Result<NumericEstimate, EvalError> {
    if n == 0 {
        return Ok(NumericEstimate { value: 0.0, error_bound: 0.0, cutoff: 0 });
    }
    let weights = vec![ShiftWeight::HalfPowerPositive; k as usize];
    shifted_product_numeric(&weights, Kernel::ShiftedFalling, n, 1.0, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::int;

    #[test]
    fn pittel_small_values() {
        let est = pittel_numeric(2, 2, 1e-6).unwrap();
        assert!(est.contains(&int(3)), "{est:?}");
        assert!(est.error_bound <= 1e-6 + 1e-9);
        for n in 0..6 {
            assert!(pittel_numeric(1, n, 1e-8).unwrap().contains(&int(1)));
        }
    }

    #[test]
    fn singleton_products() {
        assert!(l_power_numeric(2, 1, 1e-9).unwrap().contains(&int(1)));
        assert!(c_power_numeric(2, 1, 1e-9).unwrap().contains(&int(1)));
        assert!(le_numeric(1, 1e-9).unwrap().contains(&int(1)));
        // L ⊡̃ L on two points: (0,1)-matrices with two ones and no zero
        // line, labels placed on the ones: 2·(1x2, 2x1, two 2x2 diagonals) = 8
        assert!(l_power_numeric(2, 2, 1e-9).unwrap().contains(&int(8)));
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(pittel_numeric(2, 2, 0.0).is_err());
        assert!(pittel_numeric(2, 2, f64::NAN).is_err());
    }
}
