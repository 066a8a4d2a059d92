//! The `(1 + x)^j` basis and the shift-trick route to the modified
//! arithmetic product.

use num_traits::{One, Zero};

use super::TruncSeries;
use crate::numkit::{binomial, rat_int, Rational};

/// A polynomial `Σ_j b_j (1 + x)^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedSeries {
    coeffs: Vec<Rational>,
}

impl ShiftedSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// `(1 + x)^j`.
    pub fn basis(j: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); j + 1];
        coeffs[j] = Rational::one();
        Self { coeffs }
    }
}

fn signed_binomial(n: usize, k: usize) -> Rational {
    let b = rat_int(binomial(n as u64, k as u64));
    if (n - k).is_multiple_of(2) {
        b
    } else {
        -b
    }
}

/// Rewrites the truncation `Σ_{i<=N} c_i x^i` in the `(1+x)^j` basis:
/// `b_j = Σ_{i>=j} c_i C(i, j) (-1)^{i-j}`.
pub fn to_shifted(f: &TruncSeries) -> ShiftedSeries {
    let n = f.order();
    ShiftedSeries::new(
        (0..=n)
            .map(|j| {
                (j..=n)
                    .map(|i| f.coeff(i) * signed_binomial(i, j))
                    .sum()
            })
            .collect(),
    )
}

/// Expands back to powers of `x`; the result has order equal to the degree.
pub fn from_shifted(s: &ShiftedSeries) -> TruncSeries {
    from_shifted_truncated(s, s.degree())
}

/// Expands back to powers of `x`, keeping coefficients up to `order`.
pub fn from_shifted_truncated(s: &ShiftedSeries, order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |i| {
        (i..=s.degree())
            .map(|j| s.coeff(j) * rat_int(binomial(j as u64, i as u64)))
            .sum()
    })
}

/// Bilinear extension of `(1+x)^m ⊡̃ (1+x)^n = (1+x)^{mn}`.
pub fn maprod_shifted(s: &ShiftedSeries, t: &ShiftedSeries) -> ShiftedSeries {
    let mut out = vec![Rational::zero(); s.degree() * t.degree() + 1];
    for (m, a) in s.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (n, b) in t.coeffs.iter().enumerate() {
            out[m * n] += a * b;
        }
    }
    ShiftedSeries::new(out)
}

/// Modified arithmetic product by the shift trick: move both truncations
/// to the `(1+x)` basis, multiply exponents, move back, truncate.
pub fn maprod_egf_via_shift(f: &TruncSeries, g: &TruncSeries, order: usize) -> TruncSeries {
    let order = order.min(f.order()).min(g.order());
    let fs = to_shifted(&f.truncate(order));
    let gs = to_shifted(&g.truncate(order));
    from_shifted_truncated(&maprod_shifted(&fs, &gs), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::rat;
    use crate::series::{compose, maprod_egf};

    fn ints(v: &[i64]) -> TruncSeries {
        TruncSeries::from_coeffs(v.iter().map(|&c| rat(c, 1)).collect())
    }

    fn shifted(v: &[i64]) -> ShiftedSeries {
        ShiftedSeries::new(v.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn basis_changes() {
        assert_eq!(to_shifted(&TruncSeries::x(1)), shifted(&[-1, 1]));
        assert_eq!(
            to_shifted(&TruncSeries::monomial(2, rat(1, 1), 2)),
            shifted(&[1, -2, 1])
        );
        assert_eq!(from_shifted(&ShiftedSeries::basis(6)).coeff(2), rat(15, 1));
        let f = ints(&[4, -3, 0, 7, 2]);
        assert_eq!(from_shifted(&to_shifted(&f)), f);
    }

    #[test]
    fn exponents_multiply() {
        let p = maprod_shifted(&ShiftedSeries::basis(2), &ShiftedSeries::basis(3));
        assert_eq!(p, ShiftedSeries::basis(6));
        let s = shifted(&[3, -1, 4]);
        assert_eq!(maprod_shifted(&s, &ShiftedSeries::basis(1)), s);
    }

    #[test]
    fn x_shifted_strips_constant() {
        let t = ints(&[5, 1, -2, 3]);
        let x = shifted(&[-1, 1]);
        let via_shift = from_shifted_truncated(&maprod_shifted(&x, &to_shifted(&t)), 3);
        assert_eq!(via_shift, t.without_constant());
        assert_eq!(via_shift, maprod_egf(&TruncSeries::x(3), &t, 3));
    }

    #[test]
    fn routes_agree_on_examples() {
        let n = 7;
        let f = ints(&[2, -1, 3, 0, 5, 1, 0, 7]);
        let one_plus_x = ints(&[1, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(maprod_egf_via_shift(&one_plus_x, &f, n), f);
        assert_eq!(maprod_egf_via_shift(&TruncSeries::x(n), &f, n), f.without_constant());
        let e = TruncSeries::exp_x(n);
        assert_eq!(maprod_egf_via_shift(&e, &e, n), maprod_egf(&e, &e, n));
    }

    #[test]
    fn product_with_binomial_power_is_composition() {
        // F ⊡̃ (1+x)^k = F((1+x)^k - 1)
        let n = 9;
        let f = ints(&[1, 2, -1, 0, 3, 1, 1, 0, -2, 5]);
        for k in 0..4 {
            let pk = from_shifted_truncated(&ShiftedSeries::basis(k), n);
            let inner = &pk - &TruncSeries::one(n);
            let composed = compose(&f, &inner).unwrap();
            assert_eq!(maprod_egf_via_shift(&f, &pk, n), composed, "k={k}");
            assert_eq!(maprod_egf(&f, &pk, n), composed, "k={k}");
        }
    }

    #[test]
    fn polynomial_product_degree_bound() {
        // (x + x^2) ⊡̃ (2x^3), computed by hand in the shifted basis:
        // x + x^2 = -(1+x) + (1+x)^2 ; 2x^3 = 2(-1 + 3(1+x) - 3(1+x)^2 + (1+x)^3)
        let f = ints(&[0, 1, 1, 0]);
        let g = ints(&[0, 0, 0, 2]);
        let full = maprod_shifted(&to_shifted(&f), &to_shifted(&g));
        assert!(full.coeffs()[7..].iter().all(|c| c.is_zero()));
        let expanded = from_shifted(&full);
        let by_hand = maprod_shifted(&shifted(&[0, -1, 1]), &shifted(&[-2, 6, -6, 2]));
        assert_eq!(expanded.truncate(9), from_shifted(&by_hand).truncate(9));
        // x^m ⊡̃ x^n vanishes below degree max(m, n)
        assert!(expanded.coeffs()[..3].iter().all(|c| c.is_zero()));
        assert_eq!(maprod_egf(&f, &g, 3), expanded.truncate(3));
    }
}
