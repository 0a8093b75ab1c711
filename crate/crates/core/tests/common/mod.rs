//! Oracles computed without going through the library's own routes.
#![allow(dead_code)]

use num_bigint::BigInt;
use qfib::{Monomial, Polynomial};

/// Integer biperiodic recurrence: `t_n = a t_{n-1} + t_{n-2}` (n even), `b t_{n-1} + t_{n-2}` (n odd).
pub fn biperiodic_recurrence(n: usize, a: i64, b: i64) -> BigInt {
    let (mut prev, mut cur) = (BigInt::from(0), BigInt::from(1));
    if n == 0 {
        return prev;
    }
    for k in 2..=n {
        let mult = if k % 2 == 0 { a } else { b };
        let next = &cur * mult + &prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Explicit sum `a^ξ(n-1) Σ_i C(n-i-1, i) (ab)^(⌊(n-1)/2⌋ - i)`.
pub fn biperiodic_explicit(n: usize, a: i64, b: i64) -> BigInt {
    let n = n as i64;
    let top = (n - 1).div_euclid(2);
    let ab = BigInt::from(a * b);
    let sum: BigInt = (0..=top)
        .map(|i| binomial(n - i - 1, i) * ab.pow((top - i) as u32))
        .sum();
    sum * BigInt::from(a).pow((n - 1).rem_euclid(2) as u32)
}

pub fn fibonacci(n: usize) -> BigInt {
    biperiodic_recurrence(n, 1, 1)
}

/// Coefficients of `x(1 + a x - x²) / (1 - (ab+2) x² + x⁴)` up to `x^order`.
pub fn classical_generating_function(order: usize, a: i64, b: i64) -> Vec<BigInt> {
    let numer = |n: usize| -> BigInt {
        match n {
            1 => 1.into(),
            2 => a.into(),
            3 => (-1).into(),
            _ => 0.into(),
        }
    };
    let mut c: Vec<BigInt> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut v = numer(n);
        if n >= 2 {
            v += &c[n - 2] * (a * b + 2);
        }
        if n >= 4 {
            v -= &c[n - 4];
        }
        c.push(v);
    }
    c
}

/// Dense univariate polynomial in `q`, lowest degree first.
type Dense = Vec<BigInt>;

fn dense_mul(x: &Dense, y: &Dense) -> Dense {
    let mut out = vec![BigInt::from(0); x.len() + y.len() - 1];
    for (i, u) in x.iter().enumerate() {
        for (j, v) in y.iter().enumerate() {
            out[i + j] += u * v;
        }
    }
    out
}

/// Exact division; panics if the remainder is nonzero.
fn dense_div(num: &Dense, den: &Dense) -> Dense {
    let mut rem = num.clone();
    let dl = den.len();
    let lead = den[dl - 1].clone();
    let mut quot = vec![BigInt::from(0); num.len() + 1 - dl];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dl - 1] / &lead;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(|r| *r == BigInt::from(0)), "division not exact");
    quot
}

/// `(q; q)_n = prod_{j=1}^n (1 - q^j)`
fn q_factorial(n: usize) -> Dense {
    let mut acc: Dense = vec![1.into()];
    for j in 1..=n {
        let mut factor = vec![BigInt::from(0); j + 1];
        factor[0] = 1.into();
        factor[j] = (-1).into();
        acc = dense_mul(&acc, &factor);
    }
    acc
}

/// Gaussian binomial from the quotient `(q;q)_n / ((q;q)_k (q;q)_{n-k})`.
pub fn q_binomial_quotient(n: i64, k: i64) -> Polynomial {
    if n < 0 || k < 0 || k > n {
        return Polynomial::zero();
    }
    let (n, k) = (n as usize, k as usize);
    let den = dense_mul(&q_factorial(k), &q_factorial(n - k));
    let quot = dense_div(&q_factorial(n), &den);
    Polynomial::from_terms(quot.into_iter().enumerate().map(|(e, c)| (Monomial::new(0, 0, e as u32), c)))
}

/// `D_n(q) = Σ_j [n-j-1, j] q^(j²)` with quotient-form q-binomials.
pub fn schur_analytic(n: usize) -> Polynomial {
    let n = n as i64;
    (0..=(n - 1).div_euclid(2))
        .map(|j| q_binomial_quotient(n - j - 1, j).scale_q_power((j * j) as u32))
        .sum()
}

/// `F_n` by the defining recurrence, written out independently of `SequenceCache`.
pub fn f_by_hand(n: usize) -> Polynomial {
    let mut v = vec![Polynomial::zero(), Polynomial::one()];
    for k in 2..=n {
        let mult = if k % 2 == 0 { Polynomial::a() } else { Polynomial::b() };
        let next = &mult * &v[k - 1] + Polynomial::q_pow(k as u32 - 2) * &v[k - 2];
        v.push(next);
    }
    v.swap_remove(n)
}
