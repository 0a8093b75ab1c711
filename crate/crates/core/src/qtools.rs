//! q-combinatorial primitives: the parity indicator, Gaussian binomials and
//! finite q-Pochhammer products in the series variable `x`.

use crate::genfun::PowerSeries;
use crate::polyring::Polynomial;

/// Parity indicator: 0 for even `n`, 1 for odd `n` (negative `n` included).
pub fn xi(n: i64) -> u32 {
    n.rem_euclid(2) as u32
}

/// Floor of `n / 2`, rounding toward negative infinity.
pub fn half_floor(n: i64) -> i64 {
    n.div_euclid(2)
}

/// Triangular table of Gaussian binomials `[n, k]_q` for `0 <= k <= n <= max_n`,
/// filled by the q-Pascal rule `[n, k] = q^(n-k) [n-1, k-1] + [n-1, k]`.
#[derive(Debug, Clone)]
pub struct QBinomialTable {
    rows: Vec<Vec<Polynomial>>,
}

impl QBinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![Polynomial::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(Polynomial::one());
            for k in 1..n {
                row.push(&prev[k - 1].scale_q_power((n - k) as u32) + &prev[k]);
            }
            row.push(Polynomial::one());
            rows.push(row);
        }
        QBinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `[n, k]_q`, zero when `k < 0` or `k > n`. Falls back to direct
    /// computation when `n` exceeds the table.
    pub fn get(&self, n: i64, k: i64) -> Polynomial {
        if n < 0 || k < 0 || k > n {
            return Polynomial::zero();
        }
        match self.rows.get(n as usize) {
            Some(row) => row[k as usize].clone(),
            None => q_binomial(n as usize, k),
        }
    }
}

/// Gaussian binomial `[n, k]_q` as a polynomial in `q`; zero outside `0..=n`.
pub fn q_binomial(n: usize, k: i64) -> Polynomial {
    if k < 0 || k as usize > n {
        return Polynomial::zero();
    }
    let k = k as usize;
    // Row-by-row q-Pascal, keeping only columns 0..=k.
    let mut row = vec![Polynomial::one()];
    for m in 1..=n {
        let width = m.min(k);
        let mut next = Vec::with_capacity(width + 1);
        next.push(Polynomial::one());
        for j in 1..=width {
            let diag = row[j - 1].scale_q_power((m - j) as u32);
            next.push(match row.get(j) {
                Some(up) => &diag + up,
                None => diag,
            });
        }
        row = next;
    }
    row.swap_remove(k)
}

/// `[n, k]_q` with signed arguments; zero if `n < 0` or `k` out of range.
pub fn q_binomial_signed(n: i64, k: i64) -> Polynomial {
    if n < 0 {
        return Polynomial::zero();
    }
    q_binomial(n as usize, k)
}

/// The finite product `(c x; q)_{m} = prod_{i=0}^{m-1} (1 - c q^i x)` as a series.
pub fn q_pochhammer_in_x(c: &Polynomial, m: usize, order: usize) -> PowerSeries {
    let mut acc = PowerSeries::one(order);
    for i in 0..m {
        let factor = &PowerSeries::one(order)
            - &PowerSeries::monomial(order, 1, c.scale_q_power(i as u32));
        acc = &acc * &factor;
    }
    acc
}

/// `sum_i [n+i, i]_q x^i`, truncated at `order`; equals `1/(x; q)_{n+1}`.
pub fn q_binomial_series(n: usize, order: usize) -> PowerSeries {
    q_binomial_series_scaled(n, &Polynomial::one(), order)
}

/// `sum_i [n+i, i]_q c^i x^i`, i.e. the series with `x` replaced by `c x`.
pub fn q_binomial_series_scaled(n: usize, c: &Polynomial, order: usize) -> PowerSeries {
    let table = QBinomialTable::new(n + order);
    let mut power = Polynomial::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    for i in 0..=order {
        coeffs.push(&table.get((n + i) as i64, i as i64) * &power);
        power = &power * c;
    }
    PowerSeries::from_coeffs(order, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi(0), 0);
        assert_eq!(xi(7), 1);
        assert_eq!(xi(-1), 1);
        assert_eq!(xi(-2), 0);
    }

    #[test]
    fn half_floor_rounds_down() {
        assert_eq!(half_floor(-1), -1);
        assert_eq!(half_floor(-2), -1);
        assert_eq!(half_floor(5), 2);
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(5, 0), Polynomial::one());
        assert_eq!(q_binomial(2, 1), p("1 + q"));
        assert_eq!(q_binomial(4, 2), p("1 + q + 2*q^2 + q^3 + q^4"));
        assert!(q_binomial(3, -1).is_zero());
        assert!(q_binomial(3, 4).is_zero());
        assert!(q_binomial_signed(-1, 0).is_zero());
    }

    #[test]
    fn table_matches_direct() {
        let t = QBinomialTable::new(12);
        for n in 0..=14usize {
            for k in -1..=(n as i64 + 1) {
                assert_eq!(t.get(n as i64, k), q_binomial(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        let b = Polynomial::b();
        assert_eq!(q_pochhammer_in_x(&b, 1, 4).to_canonical_strings(), ["1", "-b", "0", "0", "0"]);
        assert_eq!(
            q_pochhammer_in_x(&b, 2, 3).to_canonical_strings(),
            ["1", "-b - b*q", "b^2*q", "0"]
        );
        let poch = q_pochhammer_in_x(&b, 3, 10);
        assert_eq!(&poch * &poch.reciprocal().unwrap(), PowerSeries::one(10));
    }

    #[test]
    fn binomial_series_examples() {
        assert_eq!(q_binomial_series(0, 3).to_canonical_strings(), ["1", "1", "1", "1"]);
        assert_eq!(q_binomial_series(1, 2).to_canonical_strings(), ["1", "1 + q", "1 + q + q^2"]);
    }
}
