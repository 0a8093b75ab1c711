use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::polyring::Polynomial;

/// Power series in `x` with [`Polynomial`] coefficients, truncated after `x^order`.
///
/// Binary operations on series of different orders truncate to the smaller
/// order. Equality compares coefficients up to the common order.
#[derive(Debug, Clone)]
pub struct PowerSeries {
    coeffs: Vec<Polynomial>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![Polynomial::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, Polynomial::one())
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::monomial(order, 1, Polynomial::one())
    }

    /// `coeff * x^power`, or zero if `power > order`.
    pub fn monomial(order: usize, power: usize, coeff: Polynomial) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = coeff;
        }
        s
    }

    /// Truncates or zero-pads `coeffs` to `order + 1` entries.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Polynomial>) -> Self {
        coeffs.resize(order + 1, Polynomial::zero());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Polynomial {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, value: Polynomial) {
        self.coeffs[n] = value;
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        assert!(order <= self.order(), "truncate cannot extend a series");
        PowerSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scale(&self, c: &Polynomial) -> PowerSeries {
        self.map(|p| p * c)
    }

    /// Multiplies by `x^k`, dropping terms past the order.
    pub fn shift(&self, k: usize) -> PowerSeries {
        let order = self.order();
        let mut out = Self::zero(order);
        for n in k..=order {
            out.coeffs[n] = self.coeffs[n - k].clone();
        }
        out
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn specialize(&self, a: Option<i64>, b: Option<i64>, q: Option<i64>) -> PowerSeries {
        self.map(|p| p.specialize(a, b, q))
    }

    /// Multiplicative inverse, defined when the constant coefficient is `±1`.
    pub fn reciprocal(&self) -> Option<PowerSeries> {
        let c0 = self.coeffs[0].clone();
        let unit = c0.is_constant() && c0.terms().next().is_some_and(|(_, c)| c.abs().is_one());
        if !unit {
            return None;
        }
        // c0 is its own inverse when it is +1 or -1.
        let order = self.order();
        let mut inv = Self::zero(order);
        inv.coeffs[0] = c0.clone();
        for n in 1..=order {
            let mut acc = Polynomial::zero();
            for k in 1..=n {
                acc += &(&self.coeffs[k] * &inv.coeffs[n - k]);
            }
            inv.coeffs[n] = -(&acc * &c0);
        }
        Some(inv)
    }

    /// Coefficients rendered in canonical polynomial form, index = power of `x`.
    pub fn to_canonical_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(Polynomial::to_canonical_string).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_canonical_strings()).expect("string array serializes")
    }

    /// Evaluates every coefficient at an integer point.
    pub fn evaluate(&self, a: i64, b: i64, q: i64) -> Vec<BigInt> {
        self.coeffs.iter().map(|p| p.evaluate(a, b, q)).collect()
    }
}

impl PartialEq for PowerSeries {
    fn eq(&self, other: &Self) -> bool {
        let order = self.order().min(other.order());
        self.coeffs[..=order] == other.coeffs[..=order]
    }
}

impl Add<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect(),
        }
    }
}

impl Sub<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect(),
        }
    }
}

impl Mul<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut out = PowerSeries::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] += &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        out
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        self.map(|p| -p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_order_truncates_to_smaller() {
        let long = PowerSeries::one(8);
        let short = PowerSeries::x(3);
        assert_eq!((&long + &short).order(), 3);
        assert_eq!((&long * &short).order(), 3);
    }

    #[test]
    fn shift_drops_overflow() {
        let s = PowerSeries::from_coeffs(3, vec![1.into(), 2.into(), 3.into(), 4.into()]);
        let t = s.shift(2);
        assert_eq!(t.to_canonical_strings(), ["0", "0", "1", "2"]);
    }

    #[test]
    fn reciprocal_of_one_minus_x() {
        let s = &PowerSeries::one(5) - &PowerSeries::x(5);
        let inv = s.reciprocal().unwrap();
        assert_eq!(inv.to_canonical_strings(), ["1"; 6]);
        assert_eq!(&s * &inv, PowerSeries::one(5));
        assert!(PowerSeries::x(3).reciprocal().is_none());
    }

    #[test]
    fn equality_up_to_common_order() {
        let a = PowerSeries::from_coeffs(4, vec![1.into(), 1.into(), 0.into(), 0.into(), 7.into()]);
        let b = PowerSeries::from_coeffs(2, vec![1.into(), 1.into()]);
        assert_eq!(a, b);
    }
}
