//! Fibonacci operators on truncated power series and the generating
//! functions of the q-biperiodic sequence.
//!
//! Inverse operators `1/(1 - N)` are realized by solving `(1 - N) W = R`
//! degree by degree: every `N` used here strictly raises the `x`-degree, so
//! the coefficient of `x^n` in `N W` only reads coefficients below `n`.

mod series;

pub use series::PowerSeries;

use thiserror::Error;

use crate::polyring::{Monomial, Polynomial};
use crate::qtools::{q_binomial, q_binomial_series_scaled};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenfunError {
    /// The `(1 + 1/q) x² η` term would need `q^-1` on a nonzero constant coefficient.
    #[error("operator produced a q^-1 term from a nonzero constant coefficient {0}")]
    NegativeQPower(String),
}

/// `η f(x) = f(qx)`: the `x^n` coefficient is multiplied by `q^n`.
pub fn eta(s: &PowerSeries) -> PowerSeries {
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c.scale_q_power(n as u32))
        .collect();
    PowerSeries::from_coeffs(s.order(), coeffs)
}

/// `η₂ f(x) = (qx)² f(qx)`: the `x^m` coefficient becomes `q^m` times the input's `x^(m-2)`.
pub fn eta2(s: &PowerSeries) -> PowerSeries {
    eta(&s.shift(2))
}

/// `(1 - bx - x²η) W`
pub fn apply_w_operator(w: &PowerSeries) -> PowerSeries {
    let b = Polynomial::b();
    &(w - &w.shift(1).scale(&b)) - &eta(w).shift(2)
}

/// `(1 + 1/q) x² η f`, with the `x^n` input coefficient sent to `(q^n + q^(n-1))` at `x^(n+2)`.
fn one_plus_inv_q_x2_eta(f: &PowerSeries) -> Result<PowerSeries, GenfunError> {
    if !f.coeff(0).is_zero() {
        return Err(GenfunError::NegativeQPower(f.coeff(0).to_canonical_string()));
    }
    let order = f.order();
    let mut out = PowerSeries::zero(order);
    for n in 1..order.saturating_sub(1) {
        let c = f.coeff(n);
        if c.is_zero() {
            continue;
        }
        let n32 = n as u32;
        out.set_coeff(n + 2, &c.scale_q_power(n32) + &c.scale_q_power(n32 - 1));
    }
    Ok(out)
}

/// How the `x² η₂` term of the odd-part operator acts on coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OddPartReading {
    /// `x^k` goes to `q^(2k+1) x^(k+4)`: the term `-q^(4n-5) F_{2n-3}` in
    /// `F_{2n+1} = (ab + q^(2n-1) + q^(2n-2)) F_{2n-1} - q^(4n-5) F_{2n-3}`.
    #[default]
    Recurrence,
    /// `x² (qx)² f(qx)` taken literally: `x^k` goes to `q^(k+2) x^(k+4)`.
    Literal,
}

fn x2_eta2(f: &PowerSeries, reading: OddPartReading) -> PowerSeries {
    match reading {
        OddPartReading::Literal => eta2(f).shift(2),
        OddPartReading::Recurrence => {
            let order = f.order();
            let mut out = PowerSeries::zero(order);
            for k in 0..order.saturating_sub(3) {
                out.set_coeff(k + 4, f.coeff(k).scale_q_power(2 * k as u32 + 1));
            }
            out
        }
    }
}

/// `(1 - abx² - (1+1/q) x²η + x²η₂) f`
pub fn apply_f_operator(f: &PowerSeries, reading: OddPartReading) -> Result<PowerSeries, GenfunError> {
    let ab = Polynomial::monomial(Monomial::new(1, 1, 0));
    let mut out = f - &f.shift(2).scale(&ab);
    out = &out - &one_plus_inv_q_x2_eta(f)?;
    Ok(&out + &x2_eta2(f, reading))
}

/// Solves `W - raise(W) = rhs` one degree at a time.
fn solve_degree_by_degree<E>(
    rhs: &PowerSeries,
    raise: impl Fn(&PowerSeries) -> Result<PowerSeries, E>,
) -> Result<PowerSeries, E> {
    let order = rhs.order();
    let mut w = PowerSeries::zero(order);
    for n in 0..=order {
        let lower = raise(&w)?;
        w.set_coeff(n, rhs.coeff(n) + lower.coeff(n));
    }
    Ok(w)
}

/// `f(x) = Σ F_{2n-1} x^(2n-1)` as the solution of the odd-part operator equation with seed `x - x³`.
pub fn solve_f_odd(order: usize) -> Result<PowerSeries, GenfunError> {
    solve_f_odd_with(order, OddPartReading::Recurrence)
}

pub fn solve_f_odd_with(order: usize, reading: OddPartReading) -> Result<PowerSeries, GenfunError> {
    let seed = &PowerSeries::x(order) - &PowerSeries::monomial(order, 3, Polynomial::one());
    solve_degree_by_degree(&seed, |w| {
        let applied = apply_f_operator(w, reading)?;
        Ok(w - &applied)
    })
}

/// Right side `x + (a-b) x f(x)` of the W equation.
pub fn w_seed(order: usize) -> Result<PowerSeries, GenfunError> {
    let f = solve_f_odd(order)?;
    let a_minus_b = Polynomial::a() - Polynomial::b();
    Ok(&PowerSeries::x(order) + &f.shift(1).scale(&a_minus_b))
}

/// `W(x) = Σ F_n x^n`, the solution of `(1 - bx - x²η) W = x + (a-b) x f(x)`.
pub fn solve_w(order: usize) -> Result<PowerSeries, GenfunError> {
    let seed = w_seed(order)?;
    solve_degree_by_degree(&seed, |w| Ok(w - &apply_w_operator(w)))
}

/// `x^(n+1) Σ_{j=0}^n b^(n-j) q^(j²) [n, j] x^j`, truncated at `order`.
pub fn operator_power_lemma(n: usize, order: usize) -> PowerSeries {
    let mut out = PowerSeries::zero(order);
    for j in 0..=n {
        let power = n + 1 + j;
        if power > order {
            break;
        }
        let m = Monomial::new(0, (n - j) as u32, (j * j) as u32);
        out.set_coeff(power, q_binomial(n, j as i64).mul_monomial(m));
    }
    out
}

/// `(bx + x²η)^n x`, by applying the operator `n` times.
pub fn operator_power_iterated(n: usize, order: usize) -> PowerSeries {
    let b = Polynomial::b();
    let mut s = PowerSeries::x(order);
    for _ in 0..n {
        s = &s.shift(1).scale(&b) + &eta(&s).shift(2);
    }
    s
}

/// Where `f` sits in the expansion-theorem sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExpansionVariant {
    /// The `j`-th summand carries `1 + (a-b) f(q^j x)`: the `j` factors of `η`
    /// in `(bx + x²η)^n` also act on `f`.
    #[default]
    Shifted,
    /// `1 + (a-b) f(x)` factored out of the whole sum. Agrees with `W` only when `a = b`.
    Statement,
}

/// `η^j f(x) = f(q^j x)`
pub fn eta_pow(s: &PowerSeries, j: u32) -> PowerSeries {
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c.scale_q_power(j * n as u32))
        .collect();
    PowerSeries::from_coeffs(s.order(), coeffs)
}

/// `Σ_j (1 + (a-b) f(q^j x)) q^(j²) x^(2j+1) / (bx; q)_{j+1}`, truncated at `order`.
pub fn expansion_theorem_series(order: usize) -> Result<PowerSeries, GenfunError> {
    expansion_theorem_series_with(order, ExpansionVariant::Shifted)
}

pub fn expansion_theorem_series_with(order: usize, variant: ExpansionVariant) -> Result<PowerSeries, GenfunError> {
    let f = solve_f_odd(order)?;
    let a_minus_b = Polynomial::a() - Polynomial::b();
    let one = PowerSeries::one(order);
    let b = Polynomial::b();
    let mut sum = PowerSeries::zero(order);
    for j in 0..=(order.saturating_sub(1) / 2) {
        let inv_poch = q_binomial_series_scaled(j, &b, order);
        let mut term = inv_poch.shift(2 * j + 1).scale(&Polynomial::q_pow((j * j) as u32));
        if variant == ExpansionVariant::Shifted {
            term = &term * &(&one + &eta_pow(&f, j as u32).scale(&a_minus_b));
        }
        sum = &sum + &term;
    }
    Ok(match variant {
        ExpansionVariant::Shifted => sum,
        ExpansionVariant::Statement => &(&one + &f.scale(&a_minus_b)) * &sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn eta_examples() {
        let one_plus_x = &PowerSeries::one(3) + &PowerSeries::x(3);
        assert_eq!(eta(&one_plus_x).to_canonical_strings(), ["1", "q", "0", "0"]);
        let x2 = PowerSeries::monomial(3, 2, Polynomial::one());
        assert_eq!(eta(&x2).to_canonical_strings(), ["0", "0", "q^2", "0"]);
        assert_eq!(eta(&eta(&PowerSeries::x(2))).to_canonical_strings(), ["0", "q^2", "0"]);
    }

    #[test]
    fn eta2_examples() {
        assert_eq!(eta2(&PowerSeries::one(3)).to_canonical_strings(), ["0", "0", "q^2", "0"]);
        assert_eq!(eta2(&PowerSeries::x(3)).to_canonical_strings(), ["0", "0", "0", "q^3"]);
        let f = PowerSeries::from_coeffs(5, vec![p("a"), p("b"), p("q"), p("1")]);
        let direct = eta(&f).shift(2).scale(&Polynomial::q_pow(2));
        assert_eq!(eta2(&f), direct);
    }

    #[test]
    fn w_low_coefficients() {
        let w = solve_w(3).unwrap();
        assert_eq!(w.to_canonical_strings(), ["0", "1", "a", "a*b + q"]);
    }

    #[test]
    fn f_odd_low_coefficients() {
        let f = solve_f_odd(5).unwrap();
        assert_eq!(f.coeff(1), &Polynomial::one());
        assert_eq!(f.coeff(5), &p("a^2*b^2 + a*b*q + a*b*q^2 + a*b*q^3 + q^4"));
        assert!(f.coeff(4).is_zero());
    }

    #[test]
    fn literal_reading_first_diverges_at_seven() {
        let rec = solve_f_odd(9).unwrap();
        let lit = solve_f_odd_with(9, OddPartReading::Literal).unwrap();
        assert_eq!(rec.truncate(6), lit.truncate(6));
        assert_ne!(rec.coeff(7), lit.coeff(7));
    }

    #[test]
    fn inverse_q_rejected_on_constant_term() {
        let err = apply_f_operator(&PowerSeries::one(4), OddPartReading::Recurrence).unwrap_err();
        assert_eq!(err, GenfunError::NegativeQPower("1".into()));
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(operator_power_lemma(0, 1), PowerSeries::x(1));
        assert_eq!(operator_power_lemma(1, 3).to_canonical_strings(), ["0", "0", "b", "q"]);
        assert_eq!(
            operator_power_lemma(2, 5).to_canonical_strings(),
            ["0", "0", "0", "b^2", "b*q + b*q^2", "q^4"]
        );
        assert_eq!(operator_power_iterated(2, 5), operator_power_lemma(2, 5));
    }

    #[test]
    fn statement_expansion_breaks_at_x4_when_a_differs_from_b() {
        let stated = expansion_theorem_series_with(4, ExpansionVariant::Statement).unwrap();
        assert_eq!(stated.coeff(4), &p("a^2*b + 2*a*q - b*q + b*q^2"));
        let shifted = expansion_theorem_series(4).unwrap();
        assert_eq!(shifted.coeff(4), &p("a^2*b + a*q + a*q^2"));
    }

    #[test]
    fn expansion_low_order_when_a_equals_b() {
        let s = expansion_theorem_series(3).unwrap().specialize(Some(2), Some(2), None);
        // a = b = 2: x + 2x² + (4 + q)x³
        assert_eq!(s.to_canonical_strings(), ["0", "1", "2", "4 + q"]);
    }
}
