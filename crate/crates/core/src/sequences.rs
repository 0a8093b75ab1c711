//! The q-biperiodic Fibonacci family: recurrences, closed forms, the
//! Cassini-type determinant, and exact checkers for the tiling identities.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::polyring::{Monomial, Polynomial};
use crate::qtools::{half_floor, q_binomial_signed, xi, QBinomialTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("closed form for {what} is not defined at n = {n}")]
    Domain { what: &'static str, n: u64 },
    #[error("unknown identity '{0}'; valid names: {names}", names = IdentityName::ALL_NAMES.join(", "))]
    UnknownIdentity(String),
}

/// Which member of the family a cache holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// `F_n(q)`: initial values 0, 1.
    F,
    /// `F̂_n(q)`: same recurrence, initial values 1, 0.
    FHat,
    /// Schur's `D_n(q)`: multipliers fixed at 1.
    D,
    /// `F^(s)_n(q)`: parity roles and domino weights offset by `s`.
    FShifted(u32),
}

impl SequenceKind {
    fn initial(self) -> (Polynomial, Polynomial) {
        match self {
            SequenceKind::FHat => (Polynomial::one(), Polynomial::zero()),
            _ => (Polynomial::zero(), Polynomial::one()),
        }
    }

    /// Multiplier on the previous term and the `q` exponent on the one before,
    /// for index `n >= 2`.
    fn step(self, n: u32) -> (Monomial, u32) {
        let even = n.is_multiple_of(2);
        match self {
            SequenceKind::F | SequenceKind::FHat => {
                let m = if even { Monomial::new(1, 0, 0) } else { Monomial::new(0, 1, 0) };
                (m, n - 2)
            }
            SequenceKind::D => (Monomial::ONE, n - 2),
            SequenceKind::FShifted(s) => {
                let x = xi(s as i64 + 1);
                let (ea, eb) = if even { (x, 1 - x) } else { (1 - x, x) };
                (Monomial::new(ea, eb, 0), n - 2 + s)
            }
        }
    }
}

/// Memoized values of one sequence, indexed from 0.
#[derive(Debug, Clone)]
pub struct SequenceCache {
    kind: SequenceKind,
    values: Vec<Polynomial>,
}

impl SequenceCache {
    pub fn new(kind: SequenceKind) -> Self {
        let (v0, v1) = kind.initial();
        SequenceCache { kind, values: vec![v0, v1] }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    pub fn get(&mut self, n: usize) -> &Polynomial {
        while self.values.len() <= n {
            let k = self.values.len();
            let (mult, qexp) = self.kind.step(k as u32);
            let next = &self.values[k - 1].mul_monomial(mult)
                + &self.values[k - 2].scale_q_power(qexp);
            self.values.push(next);
        }
        &self.values[n]
    }
}

/// Shared caches for every sequence kind an identity checker touches.
#[derive(Debug, Default)]
pub struct Sequences {
    caches: HashMap<SequenceKind, SequenceCache>,
}

impl Sequences {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, kind: SequenceKind, n: usize) -> Polynomial {
        self.caches
            .entry(kind)
            .or_insert_with(|| SequenceCache::new(kind))
            .get(n)
            .clone()
    }

    pub fn f(&mut self, n: usize) -> Polynomial {
        self.get(SequenceKind::F, n)
    }

    pub fn f_hat(&mut self, n: usize) -> Polynomial {
        self.get(SequenceKind::FHat, n)
    }

    pub fn f_shifted(&mut self, s: u32, n: usize) -> Polynomial {
        self.get(SequenceKind::FShifted(s), n)
    }

    pub fn cassini_lhs(&mut self, n: usize, k: usize) -> Polynomial {
        &self.f(n) * &self.f_hat(n + k) - &self.f(n + k) * &self.f_hat(n)
    }
}

pub fn f_rec(n: usize) -> Polynomial {
    SequenceCache::new(SequenceKind::F).get(n).clone()
}

pub fn f_hat_rec(n: usize) -> Polynomial {
    SequenceCache::new(SequenceKind::FHat).get(n).clone()
}

pub fn d_rec(n: usize) -> Polynomial {
    SequenceCache::new(SequenceKind::D).get(n).clone()
}

pub fn f_shifted(s: u32, n: usize) -> Polynomial {
    SequenceCache::new(SequenceKind::FShifted(s)).get(n).clone()
}

fn u(x: i64) -> u32 {
    u32::try_from(x).expect("exponent is non-negative")
}

/// Closed form `a^ξ(n-1) Σ_l [n-l-1, l] (ab)^(⌊(n-1)/2⌋-l) q^(l²)`.
pub fn f_closed(n: usize) -> Polynomial {
    let n = n as i64;
    let top = half_floor(n - 1);
    let table = QBinomialTable::new(n.max(1) as usize);
    let sum: Polynomial = (0..=top)
        .map(|l| table.get(n - l - 1, l).mul_monomial(Monomial::new(u(top - l), u(top - l), u(l * l))))
        .sum();
    sum.mul_monomial(Monomial::new(xi(n - 1), 0, 0))
}

/// Closed form `b^ξ(n) Σ_l [n-l-2, l] (ab)^(⌊(n-2)/2⌋-l) q^(l²+l)`, for `n >= 1`.
pub fn f_hat_closed(n: usize) -> Result<Polynomial, SequenceError> {
    if n == 0 {
        return Err(SequenceError::Domain { what: "F-hat", n: 0 });
    }
    let n = n as i64;
    let top = half_floor(n - 2);
    let table = QBinomialTable::new(n as usize);
    let sum: Polynomial = (0..=top)
        .map(|l| {
            table
                .get(n - l - 2, l)
                .mul_monomial(Monomial::new(u(top - l), u(top - l), u(l * l + l)))
        })
        .sum();
    Ok(sum.mul_monomial(Monomial::new(0, xi(n), 0)))
}

/// `F_n F̂_{n+k} - F_{n+k} F̂_n` from the recurrences.
pub fn cassini_lhs(n: usize, k: usize) -> Polynomial {
    Sequences::new().cassini_lhs(n, k)
}

/// The closed evaluation of the Cassini determinant:
/// `(-1)^(n-1) q^C(n,2) Σ_j [k-1-j, j] a^(⌊(k-1)/2⌋+ξ(k+1)ξ(n+1)-j) b^(⌊(k-1)/2⌋+ξ(k+1)ξ(n)-j) q^(j²+nj)`.
///
/// Terms whose q-binomial vanishes are skipped before their exponents are formed.
pub fn cassini_rhs(n: usize, k: usize) -> Polynomial {
    let (n, k) = (n as i64, k as i64);
    let base = half_floor(k - 1);
    let ea = base + (xi(k + 1) * xi(n + 1)) as i64;
    let eb = base + (xi(k + 1) * xi(n)) as i64;
    let mut sum = Polynomial::zero();
    for j in 0..k {
        let binom = q_binomial_signed(k - 1 - j, j);
        if binom.is_zero() {
            continue;
        }
        let m = Monomial::from_signed(ea - j, eb - j, j * j + n * j)
            .expect("nonvanishing terms have non-negative exponents");
        sum += &binom.mul_monomial(m);
    }
    let sign = if xi(n - 1) == 0 { 1 } else { -1 };
    let binom_n2 = u(n * (n - 1) / 2);
    sum.scale_q_power(binom_n2).scale(&sign.into())
}

/// Exponent used for the right-hand dominoes in the median-square double sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MedianVariant {
    /// `q^(i² + (n+i+1) j)`, as derived when counting the right side.
    #[default]
    Proof,
    /// `q^(i² + (n+i+j) j)`, as printed with the theorem.
    Statement,
}

impl FromStr for MedianVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "proof" => Ok(MedianVariant::Proof),
            "statement" => Ok(MedianVariant::Statement),
            _ => Err(format!("unknown median-square variant '{s}' (expected proof or statement)")),
        }
    }
}

/// One `(i, j)` summand of the median-square double sum, without the outer factor `a`:
/// `(ab)^ξ(n-i-j) q^e [n-j, i] [n-i, j] (ab)^(2⌊(n-i-j)/2⌋)`. Zero when `i + j > n`.
pub fn median_square_term(n: usize, i: usize, j: usize, variant: MedianVariant) -> Polynomial {
    if i + j > n {
        return Polynomial::zero();
    }
    let (n, i, j) = (n as i64, i as i64, j as i64);
    let rest = n - i - j;
    let ab = xi(rest) + 2 * u(half_floor(rest));
    let qexp = match variant {
        MedianVariant::Proof => i * i + (n + i + 1) * j,
        MedianVariant::Statement => i * i + (n + i + j) * j,
    };
    (q_binomial_signed(n - j, i) * q_binomial_signed(n - i, j)).mul_monomial(Monomial::new(ab, ab, u(qexp)))
}

/// The identities that [`check_identity`] knows how to probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityName {
    ClosedForm,
    FHatClosedForm,
    Cassini,
    LastDominoSum,
    OddIndexSum,
    Convolution,
    EvenIndex,
    MedianSquare,
}

impl IdentityName {
    pub const ALL: [IdentityName; 8] = [
        IdentityName::ClosedForm,
        IdentityName::FHatClosedForm,
        IdentityName::Cassini,
        IdentityName::LastDominoSum,
        IdentityName::OddIndexSum,
        IdentityName::Convolution,
        IdentityName::EvenIndex,
        IdentityName::MedianSquare,
    ];

    pub const ALL_NAMES: [&'static str; 8] = [
        "closed-form",
        "f-hat-closed-form",
        "cassini",
        "last-domino-sum",
        "odd-index-sum",
        "convolution",
        "even-index",
        "median-square",
    ];

    pub fn as_str(self) -> &'static str {
        Self::ALL_NAMES[Self::ALL.iter().position(|x| *x == self).expect("listed")]
    }

    /// Smallest `n` at which the identity is asserted.
    pub fn min_n(self) -> usize {
        match self {
            IdentityName::FHatClosedForm | IdentityName::EvenIndex => 1,
            _ => 0,
        }
    }

    /// Default upper bound for `n` when none is given.
    pub fn default_max_n(self) -> usize {
        match self {
            IdentityName::ClosedForm | IdentityName::FHatClosedForm => 30,
            IdentityName::Cassini => 15,
            IdentityName::LastDominoSum | IdentityName::Convolution => 12,
            IdentityName::OddIndexSum => 10,
            IdentityName::EvenIndex => 8,
            IdentityName::MedianSquare => 6,
        }
    }
}

impl FromStr for IdentityName {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL_NAMES
            .iter()
            .position(|name| *name == s)
            .map(|i| Self::ALL[i])
            .ok_or_else(|| SequenceError::UnknownIdentity(s.to_string()))
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Index ranges probed by [`check_identity`].
///
/// For `convolution`, `n` bounds the sum `m + n` of the two indices. For
/// `cassini`, `k` runs over `1..=max_k` at each `n`.
#[derive(Debug, Clone)]
pub struct Bounds {
    pub min_n: usize,
    pub max_n: usize,
    pub max_k: usize,
    pub variant: MedianVariant,
}

impl Bounds {
    pub fn up_to(max_n: usize) -> Self {
        Bounds { min_n: 0, max_n, max_k: 10, variant: MedianVariant::Proof }
    }

    pub fn single(n: usize) -> Self {
        Bounds { min_n: n, max_n: n, max_k: 10, variant: MedianVariant::Proof }
    }

    pub fn with_max_k(mut self, max_k: usize) -> Self {
        self.max_k = max_k;
        self
    }

    pub fn with_variant(mut self, variant: MedianVariant) -> Self {
        self.variant = variant;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One probed instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub identity: String,
    pub indices: BTreeMap<String, u64>,
    pub status: Status,
    pub lhs_canonical: String,
    pub rhs_canonical: String,
}

impl VerificationRecord {
    pub fn new(identity: &str, indices: &[(&str, usize)], lhs: &Polynomial, rhs: &Polynomial) -> Self {
        VerificationRecord {
            identity: identity.to_string(),
            indices: indices.iter().map(|(k, v)| (k.to_string(), *v as u64)).collect(),
            status: if lhs == rhs { Status::Pass } else { Status::Fail },
            lhs_canonical: lhs.to_canonical_string(),
            rhs_canonical: rhs.to_canonical_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn indices_label(&self) -> String {
        self.indices
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Ordered list of probed instances.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VerificationReport {
    pub records: Vec<VerificationRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(VerificationRecord::passed)
    }

    pub fn first_failure(&self) -> Option<&VerificationRecord> {
        self.records.iter().find(|r| !r.passed())
    }

    pub fn push(&mut self, record: VerificationRecord) {
        self.records.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }
}

/// Probes `identity` at every index tuple in `bounds`, comparing both sides as
/// exact polynomials.
pub fn check_identity(identity: IdentityName, bounds: &Bounds) -> VerificationReport {
    let mut seqs = Sequences::new();
    let name = identity.as_str();
    let lo = bounds.min_n.max(identity.min_n());
    let mut report = VerificationReport::default();
    for n in lo..=bounds.max_n {
        match identity {
            IdentityName::ClosedForm => {
                report.push(VerificationRecord::new(name, &[("n", n)], &f_closed(n), &seqs.f(n)));
            }
            IdentityName::FHatClosedForm => {
                let closed = f_hat_closed(n).expect("n >= 1");
                report.push(VerificationRecord::new(name, &[("n", n)], &closed, &seqs.f_hat(n)));
            }
            IdentityName::Cassini => {
                for k in 1..=bounds.max_k {
                    let lhs = seqs.cassini_lhs(n, k);
                    report.push(VerificationRecord::new(name, &[("n", n), ("k", k)], &lhs, &cassini_rhs(n, k)));
                }
            }
            IdentityName::LastDominoSum => {
                let (lhs, rhs) = last_domino_sum(&mut seqs, n);
                report.push(VerificationRecord::new(name, &[("n", n)], &lhs, &rhs));
            }
            IdentityName::OddIndexSum => {
                let (lhs, rhs) = odd_index_sum(&mut seqs, n);
                report.push(VerificationRecord::new(name, &[("n", n)], &lhs, &rhs));
            }
            IdentityName::Convolution => {
                // here `n` is the total m + n
                for m in 0..=n {
                    let (lhs, rhs) = convolution(&mut seqs, m, n - m);
                    report.push(VerificationRecord::new(name, &[("m", m), ("n", n - m)], &lhs, &rhs));
                }
            }
            IdentityName::EvenIndex => {
                let (lhs, rhs) = even_index(&mut seqs, n);
                report.push(VerificationRecord::new(name, &[("n", n)], &lhs, &rhs));
            }
            IdentityName::MedianSquare => {
                let (lhs, rhs) = median_square(&mut seqs, n, bounds.variant);
                report.push(VerificationRecord::new(name, &[("n", n)], &lhs, &rhs));
            }
        }
    }
    report
}

/// Sum over the position of the last domino:
/// `Σ_{k=1}^{n+1} q^k F_k a^(ξ(n)ξ(k)) b^(ξ(k+1)-ξ(n)ξ(k+1)) (ab)^⌊(n-k+1)/2⌋`
/// against `F_{n+3} - a^ξ(n) (ab)^⌊(n+2)/2⌋`.
pub fn last_domino_sum(seqs: &mut Sequences, n: usize) -> (Polynomial, Polynomial) {
    let ni = n as i64;
    let lhs: Polynomial = (1..=n + 1)
        .map(|k| {
            let ki = k as i64;
            let ab = u(half_floor(ni - ki + 1));
            let ea = xi(ni) * xi(ki) + ab;
            let eb = xi(ki + 1) - xi(ni) * xi(ki + 1) + ab;
            seqs.f(k).mul_monomial(Monomial::new(ea, eb, k as u32))
        })
        .sum();
    let tail = Monomial::new(xi(ni) + u(half_floor(ni + 2)), u(half_floor(ni + 2)), 0);
    let rhs = seqs.f(n + 3) - Polynomial::monomial(tail);
    (lhs, rhs)
}

/// `a Σ_{k=0}^n F_{2k+1} q^(n²+n-(k²+k))` against `F_{2n+2}`.
pub fn odd_index_sum(seqs: &mut Sequences, n: usize) -> (Polynomial, Polynomial) {
    let lhs: Polynomial = (0..=n)
        .map(|k| {
            let e = (n * n + n - (k * k + k)) as u32;
            seqs.f(2 * k + 1).mul_monomial(Monomial::new(1, 0, e))
        })
        .sum();
    (lhs, seqs.f(2 * n + 2))
}

/// `F_{n+m+1}` against `F_{m+1} F^(m)_{n+1} + q^m F_m F^(m+1)_n`.
pub fn convolution(seqs: &mut Sequences, m: usize, n: usize) -> (Polynomial, Polynomial) {
    let lhs = seqs.f(n + m + 1);
    let breakable = seqs.f(m + 1) * seqs.f_shifted(m as u32, n + 1);
    let unbreakable = (seqs.f(m) * seqs.f_shifted(m as u32 + 1, n)).scale_q_power(m as u32);
    (lhs, breakable + unbreakable)
}

/// `F_{2n}` against `Σ_{k=1}^n a^ξ(k) q^((n-k)²) [n, k] (ab)^⌊k/2⌋ F^(2n-k)_k`.
pub fn even_index(seqs: &mut Sequences, n: usize) -> (Polynomial, Polynomial) {
    let table = QBinomialTable::new(n);
    let rhs: Polynomial = (1..=n)
        .map(|k| {
            let ab = (k / 2) as u32;
            let m = Monomial::new(xi(k as i64) + ab, ab, ((n - k) * (n - k)) as u32);
            table.get(n as i64, k as i64).mul_monomial(m) * seqs.f_shifted((2 * n - k) as u32, k)
        })
        .sum();
    (seqs.f(2 * n), rhs)
}

/// `F_{2n+2}` against `a Σ_i Σ_j` [`median_square_term`].
pub fn median_square(seqs: &mut Sequences, n: usize, variant: MedianVariant) -> (Polynomial, Polynomial) {
    let mut rhs = Polynomial::zero();
    for i in 0..=n {
        for j in 0..=n {
            rhs += &median_square_term(n, i, j, variant);
        }
    }
    (seqs.f(2 * n + 2), rhs.mul_monomial(Monomial::new(1, 0, 0)))
}
