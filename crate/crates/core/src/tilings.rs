//! Square/domino tilings of the n-board weighted by bicolored squares.
//!
//! Cells are numbered from 1. A square on an odd cell contributes `a`, on an
//! even cell `b`; a domino on cells `(i, i+1)` contributes `q^i`. Colors are
//! kept symbolic, so enumeration visits one tiling per square/domino word.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::polyring::{Monomial, Polynomial};
use crate::qtools::{half_floor, q_binomial, xi};

pub const DEFAULT_CAP: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("board length {n} exceeds the enumeration cap {cap} (would enumerate {count} tilings)")]
    CapExceeded { n: usize, cap: usize, count: u128 },
    #[error("median-square census needs an odd board length, got {0}")]
    EvenBoard(usize),
    #[error("invalid arguments: {0}")]
    InvalidArgument(String),
}

/// Number of tilings of the n-board: the classical Fibonacci number `Fib(n+1)`.
pub fn tiling_count(n: usize) -> u128 {
    let (mut x, mut y) = (0u128, 1u128);
    for _ in 0..n {
        (x, y) = (y, x.saturating_add(y));
    }
    y
}

fn check_cap(n: usize, cap: usize) -> Result<(), TilingError> {
    if n > cap {
        return Err(TilingError::CapExceeded { n, cap, count: tiling_count(n) });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tile {
    Square,
    Domino,
}

impl Tile {
    pub fn cells(self) -> usize {
        match self {
            Tile::Square => 1,
            Tile::Domino => 2,
        }
    }
}

/// Exponents of one tiling's weight `a^a_exponent b^b_exponent q^q_exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TilingWeight {
    /// Squares on odd cells.
    pub a_exponent: u32,
    /// Squares on even cells.
    pub b_exponent: u32,
    /// Sum of the left cells of all dominoes.
    pub q_exponent: u32,
}

impl From<TilingWeight> for Monomial {
    fn from(w: TilingWeight) -> Monomial {
        Monomial::new(w.a_exponent, w.b_exponent, w.q_exponent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tiling {
    tiles: Vec<Tile>,
}

impl Tiling {
    pub fn new(tiles: Vec<Tile>) -> Self {
        Tiling { tiles }
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn board_length(&self) -> usize {
        self.tiles.iter().map(|t| t.cells()).sum()
    }

    pub fn domino_count(&self) -> usize {
        self.tiles.iter().filter(|t| **t == Tile::Domino).count()
    }

    /// `(start cell, tile)` pairs, cells numbered from 1.
    pub fn placements(&self) -> impl Iterator<Item = (usize, Tile)> + '_ {
        self.tiles.iter().scan(1usize, |cell, t| {
            let start = *cell;
            *cell += t.cells();
            Some((start, *t))
        })
    }

    pub fn weight(&self) -> TilingWeight {
        self.placements().fold(TilingWeight::default(), |mut w, (cell, tile)| {
            match tile {
                Tile::Square if cell % 2 == 1 => w.a_exponent += 1,
                Tile::Square => w.b_exponent += 1,
                Tile::Domino => w.q_exponent += cell as u32,
            }
            w
        })
    }

    pub fn weight_monomial(&self) -> Monomial {
        self.weight().into()
    }

    /// True unless a domino covers cells `m` and `m+1`.
    pub fn is_breakable_at(&self, m: usize) -> bool {
        !self.placements().any(|(cell, t)| t == Tile::Domino && cell == m)
    }

    /// One line of the tiling stream: the `S`/`D` word, a tab, then the weight monomial.
    pub fn stream_line(&self) -> String {
        format!("{self}\t{}", self.weight_monomial())
    }
}

impl fmt::Display for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tiles {
            f.write_str(match t {
                Tile::Square => "S",
                Tile::Domino => "D",
            })?;
        }
        Ok(())
    }
}

/// Lexicographic (Square < Domino) walk over all tilings of the n-board.
#[derive(Debug, Clone)]
pub struct TilingIter {
    n: usize,
    next: Option<Vec<Tile>>,
}

impl TilingIter {
    fn new(n: usize) -> Self {
        TilingIter { n, next: Some(vec![Tile::Square; n]) }
    }

    fn successor(&self, tiles: &[Tile]) -> Option<Vec<Tile>> {
        // rightmost square with room for a domino becomes one; refill with squares
        let mut covered = tiles.iter().map(|t| t.cells()).sum::<usize>();
        for i in (0..tiles.len()).rev() {
            covered -= tiles[i].cells();
            if tiles[i] == Tile::Square && covered + 2 <= self.n {
                let mut out = tiles[..i].to_vec();
                out.push(Tile::Domino);
                out.resize(i + 1 + (self.n - covered - 2), Tile::Square);
                return Some(out);
            }
        }
        None
    }
}

impl Iterator for TilingIter {
    type Item = Tiling;

    fn next(&mut self) -> Option<Tiling> {
        let current = self.next.take()?;
        self.next = self.successor(&current);
        Some(Tiling::new(current))
    }
}

pub fn enumerate_tilings(n: usize, cap: usize) -> Result<TilingIter, TilingError> {
    check_cap(n, cap)?;
    Ok(TilingIter::new(n))
}

fn weight_sum<'a>(tilings: impl Iterator<Item = Tiling> + 'a) -> Polynomial {
    let mut counts: BTreeMap<Monomial, u64> = BTreeMap::new();
    for t in tilings {
        *counts.entry(t.weight_monomial()).or_default() += 1;
    }
    Polynomial::from_terms(counts)
}

/// Sum of the weights of all tilings of the n-board.
pub fn total_weight(n: usize, cap: usize) -> Result<Polynomial, TilingError> {
    Ok(weight_sum(enumerate_tilings(n, cap)?))
}

/// Weight sum over tilings with exactly `n_tiles` tiles, `k_dominoes` of them dominoes.
pub fn weight_by_tile_count(n_tiles: usize, k_dominoes: usize, cap: usize) -> Result<Polynomial, TilingError> {
    if k_dominoes > n_tiles {
        return Err(TilingError::InvalidArgument(format!(
            "{k_dominoes} dominoes cannot fit in {n_tiles} tiles"
        )));
    }
    let board = n_tiles + k_dominoes;
    Ok(weight_sum(enumerate_tilings(board, cap)?.filter(|t| t.domino_count() == k_dominoes)))
}

/// `h(n, k) = a^ξ(n+k) q^(k²) [n, k]_q (ab)^⌊(n-k)/2⌋`, zero when `k > n`.
pub fn tile_count_closed_form(n_tiles: usize, k_dominoes: usize) -> Polynomial {
    if k_dominoes > n_tiles {
        return Polynomial::zero();
    }
    let (n, k) = (n_tiles as i64, k_dominoes as i64);
    let ab = half_floor(n - k) as u32;
    q_binomial(n_tiles, k).mul_monomial(Monomial::new(xi(n + k) + ab, ab, (k * k) as u32))
}

/// `(breakable at m, unbreakable at m)` weight sums for the n-board, `1 <= m < n`.
pub fn breakability_split(n: usize, m: usize, cap: usize) -> Result<(Polynomial, Polynomial), TilingError> {
    if m == 0 || m >= n {
        return Err(TilingError::InvalidArgument(format!("cell {m} is not inside 1..{n}")));
    }
    let (breakable, unbreakable): (Vec<Tiling>, Vec<Tiling>) =
        enumerate_tilings(n, cap)?.partition(|t| t.is_breakable_at(m));
    Ok((weight_sum(breakable.into_iter()), weight_sum(unbreakable.into_iter())))
}

/// Weight sums of the (2n+1)-board keyed by `(dominoes left, dominoes right)` of the median square.
pub fn median_square_census(
    n: usize,
    cap: usize,
) -> Result<BTreeMap<(usize, usize), Polynomial>, TilingError> {
    median_square_census_for_board(2 * n + 1, cap)
}

/// As [`median_square_census`], for an explicit board length, which must be odd.
pub fn median_square_census_for_board(
    length: usize,
    cap: usize,
) -> Result<BTreeMap<(usize, usize), Polynomial>, TilingError> {
    if length.is_multiple_of(2) {
        return Err(TilingError::EvenBoard(length));
    }
    let mut cells: BTreeMap<(usize, usize), BTreeMap<Monomial, u64>> = BTreeMap::new();
    for t in enumerate_tilings(length, cap)? {
        let squares = t.tiles().iter().filter(|x| **x == Tile::Square).count();
        // odd board => odd square count; the median has squares/2 squares on each side
        let median = t
            .tiles()
            .iter()
            .enumerate()
            .filter(|(_, x)| **x == Tile::Square)
            .nth(squares / 2)
            .map(|(i, _)| i)
            .expect("odd board has a square");
        let left = t.tiles()[..median].iter().filter(|x| **x == Tile::Domino).count();
        let right = t.domino_count() - left;
        *cells.entry((left, right)).or_default().entry(t.weight_monomial()).or_default() += 1;
    }
    Ok(cells.into_iter().map(|(k, v)| (k, Polynomial::from_terms(v))).collect())
}
