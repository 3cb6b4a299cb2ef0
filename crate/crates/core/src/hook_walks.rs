//! Weighted hook walks on the whole plane.
//!
//! The lines bounding `[λ]`, its first row and its first column cut the
//! plane into ten regions. A walk started in `R1..R4` moves right or down
//! and stops in a corner; one started in `R5..R8` moves left or up and
//! stops in an outer corner. Row `i'` is chosen with weight `x_{i'}` and
//! column `j'` with weight `y_{j'}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bijection::WalkTrace;
use crate::partition::{Cell, Partition};
use crate::syt::syt_count;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("no candidate of {0} has positive weight")]
    ZeroMass(Cell),
    #[error("region {0} has zero start mass under the given weights")]
    EmptyRegion(Region),
    #[error("weight for {axis}{index} must be positive, got {value}")]
    NonPositiveWeight {
        axis: char,
        index: i64,
        value: String,
    },
    #[error("bad weight file: {0}")]
    BadWeights(String),
    #[error("projections are inconsistent with start {start}: {reason}")]
    InconsistentProjections { start: Cell, reason: String },
    #[error("{0} is not defined for this region")]
    Unsupported(String),
    #[error("division by zero in a closed form")]
    ZeroDenominator,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Positive weights `x_i`, `y_j` with finite support; missing indices weigh 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightSystem {
    x: BTreeMap<i64, BigRational>,
    y: BTreeMap<i64, BigRational>,
}

fn range_sum(m: &BTreeMap<i64, BigRational>, lo: i64, hi: i64) -> BigRational {
    if lo > hi {
        return BigRational::zero();
    }
    m.range(lo..=hi)
        .fold(BigRational::zero(), |a, (_, w)| a + w)
}

impl WeightSystem {
    pub fn new() -> Self {
        Self::default()
    }

    fn checked(axis: char, index: i64, w: BigRational) -> Result<BigRational, WalkError> {
        if w.is_positive() {
            Ok(w)
        } else {
            Err(WalkError::NonPositiveWeight {
                axis,
                index,
                value: w.to_string(),
            })
        }
    }

    pub fn set_x(&mut self, i: i64, w: BigRational) -> Result<(), WalkError> {
        self.x.insert(i, Self::checked('x', i, w)?);
        Ok(())
    }

    pub fn set_y(&mut self, j: i64, w: BigRational) -> Result<(), WalkError> {
        self.y.insert(j, Self::checked('y', j, w)?);
        Ok(())
    }

    /// Weight 1 on rows `1−margin ..= ℓ+margin` and columns `1−margin ..= λ_1+margin`.
    pub fn uniform_window(lambda: &Partition, margin: i64) -> Self {
        let mut w = Self::new();
        for i in 1 - margin..=lambda.len() as i64 + margin {
            w.x.insert(i, BigRational::one());
        }
        for j in 1 - margin..=lambda.first_part() as i64 + margin {
            w.y.insert(j, BigRational::one());
        }
        w
    }

    pub fn x(&self, i: i64) -> BigRational {
        self.x.get(&i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn y(&self, j: i64) -> BigRational {
        self.y.get(&j).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `x_lo + … + x_hi`.
    pub fn x_sum(&self, lo: i64, hi: i64) -> BigRational {
        range_sum(&self.x, lo, hi)
    }

    /// `y_lo + … + y_hi`.
    pub fn y_sum(&self, lo: i64, hi: i64) -> BigRational {
        range_sum(&self.y, lo, hi)
    }

    pub fn x_total(&self) -> BigRational {
        self.x.values().fold(BigRational::zero(), |a, w| a + w)
    }

    pub fn y_total(&self) -> BigRational {
        self.y.values().fold(BigRational::zero(), |a, w| a + w)
    }

    pub fn x_support(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.x.iter().map(|(&i, w)| (i, w))
    }

    pub fn y_support(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.y.iter().map(|(&j, w)| (j, w))
    }

    fn x_min(&self) -> i64 {
        self.x.keys().next().copied().unwrap_or(0)
    }
    fn x_max(&self) -> i64 {
        self.x.keys().next_back().copied().unwrap_or(0)
    }
    fn y_min(&self) -> i64 {
        self.y.keys().next().copied().unwrap_or(0)
    }
    fn y_max(&self) -> i64 {
        self.y.keys().next_back().copied().unwrap_or(0)
    }

    /// Positive on rows `1..=ℓ` and columns `1..=λ_1`.
    pub fn covers(&self, lambda: &Partition) -> bool {
        (1..=lambda.len() as i64).all(|i| self.x.contains_key(&i))
            && (1..=lambda.first_part() as i64).all(|j| self.y.contains_key(&j))
    }

    /// Reads `{"x": {"1": "3/2", ...}, "y": {...}}`; values are rational
    /// strings or integers.
    pub fn from_json(text: &str) -> Result<Self, WalkError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| WalkError::BadWeights(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| WalkError::BadWeights("expected an object".into()))?;
        let mut w = Self::new();
        for (key, map) in obj {
            let axis = match key.as_str() {
                "x" => 'x',
                "y" => 'y',
                other => return Err(WalkError::BadWeights(format!("unknown key {other:?}"))),
            };
            let entries = map.as_object().ok_or_else(|| {
                WalkError::BadWeights(format!("{key:?} must map indices to weights"))
            })?;
            for (idx, val) in entries {
                let index: i64 = idx
                    .parse()
                    .map_err(|_| WalkError::BadWeights(format!("bad index {idx:?}")))?;
                let text = match val {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) if n.is_i64() => n.to_string(),
                    other => return Err(WalkError::BadWeights(format!("bad weight {other}"))),
                };
                let value: BigRational = text
                    .trim()
                    .parse()
                    .map_err(|_| WalkError::BadWeights(format!("bad weight {text:?}")))?;
                if axis == 'x' {
                    w.set_x(index, value)?;
                } else {
                    w.set_y(index, value)?;
                }
            }
        }
        Ok(w)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let side = |m: &BTreeMap<i64, BigRational>| {
            serde_json::Value::Object(
                m.iter()
                    .map(|(i, w)| (i.to_string(), serde_json::Value::String(w.to_string())))
                    .collect(),
            )
        };
        serde_json::json!({ "x": side(&self.x), "y": side(&self.y) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Region {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
}

impl Region {
    pub const ALL: [Region; 10] = [
        Region::R1,
        Region::R2,
        Region::R3,
        Region::R4,
        Region::R5,
        Region::R6,
        Region::R7,
        Region::R8,
        Region::R9,
        Region::R10,
    ];
    pub const CORNER_REGIONS: [Region; 4] = [Region::R1, Region::R2, Region::R3, Region::R4];
    pub const OUTER_REGIONS: [Region; 4] = [Region::R5, Region::R6, Region::R7, Region::R8];

    pub fn number(self) -> u8 {
        Region::ALL.iter().position(|&r| r == self).expect("listed") as u8 + 1
    }

    pub fn ends_in_corner(self) -> bool {
        Region::CORNER_REGIONS.contains(&self)
    }

    pub fn ends_in_outer_corner(self) -> bool {
        Region::OUTER_REGIONS.contains(&self)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.number())
    }
}

impl Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Region {
    type Err = WalkError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.trim().trim_start_matches(['R', 'r']);
        digits
            .parse::<usize>()
            .ok()
            .filter(|k| (1..=10).contains(k))
            .map(|k| Region::ALL[k - 1])
            .ok_or_else(|| WalkError::Unsupported(format!("region {s:?}")))
    }
}

/// The block of the plane containing a cell.
pub fn classify(cell: Cell, lambda: &Partition) -> Region {
    let l = lambda.len() as i64;
    let b = lambda.first_part() as i64;
    let row_band = if cell.row <= 0 {
        0
    } else if cell.row <= l {
        1
    } else {
        2
    };
    let col_band = if cell.col <= 0 {
        0
    } else if cell.col <= b {
        1
    } else {
        2
    };
    match (row_band, col_band) {
        (1, 1) if lambda.contains(cell) => Region::R1,
        (1, 1) => Region::R5,
        (1, 0) => Region::R2,
        (0, 1) => Region::R3,
        (0, 0) => Region::R4,
        (1, 2) => Region::R6,
        (2, 1) => Region::R7,
        (2, 2) => Region::R8,
        (2, 0) => Region::R9,
        _ => Region::R10,
    }
}

/// Rows and columns a walk may move to from `cell`, as index ranges.
///
/// Down/right steps go to rows `i < i' ≤ λ'_j` and columns `j < j' ≤ λ_i`;
/// up/left steps to rows `λ'_j < i' < i` and columns `λ_i < j' < j`.
/// `R9` combines upward rows with rightward columns and `R10` leftward
/// columns with downward rows.
fn candidate_ranges(cell: Cell, lambda: &Partition) -> ((i64, i64), (i64, i64)) {
    let (i, j) = (cell.row, cell.col);
    let down = (i + 1, lambda.col_len(j));
    let right = (j + 1, lambda.row_len(i));
    let up = (lambda.col_len(j) + 1, i - 1);
    let left = (lambda.row_len(i) + 1, j - 1);
    match classify(cell, lambda) {
        Region::R1 | Region::R2 | Region::R3 | Region::R4 => (down, right),
        Region::R5 | Region::R6 | Region::R7 | Region::R8 => (up, left),
        Region::R9 => (up, right),
        Region::R10 => (down, left),
    }
}

/// A cell where the walk stops: it has no candidate moves.
pub fn is_terminal(cell: Cell, lambda: &Partition) -> bool {
    let ((r0, r1), (c0, c1)) = candidate_ranges(cell, lambda);
    r0 > r1 && c0 > c1
}

/// Exact distribution of the next cell; empty for terminal cells.
pub fn step_distribution(
    cell: Cell,
    lambda: &Partition,
    w: &WeightSystem,
) -> Result<Vec<(Cell, BigRational)>, WalkError> {
    let ((r0, r1), (c0, c1)) = candidate_ranges(cell, lambda);
    if r0 > r1 && c0 > c1 {
        return Ok(vec![]);
    }
    let mut out: Vec<(Cell, BigRational)> = Vec::new();
    if r0 <= r1 {
        out.extend(
            w.x.range(r0..=r1)
                .map(|(&i, x)| (Cell::new(i, cell.col), x.clone())),
        );
    }
    if c0 <= c1 {
        out.extend(
            w.y.range(c0..=c1)
                .map(|(&j, y)| (Cell::new(cell.row, j), y.clone())),
        );
    }
    let total = out.iter().fold(BigRational::zero(), |a, (_, p)| a + p);
    if total.is_zero() {
        return Err(WalkError::ZeroMass(cell));
    }
    for (_, p) in &mut out {
        *p = &*p / &total;
    }
    Ok(out)
}

fn sample_index<R: Rng>(cumulative: &[f64], rng: &mut R) -> usize {
    let total = *cumulative.last().expect("nonempty distribution");
    let u = rng.gen::<f64>() * total;
    cumulative
        .partition_point(|&c| c <= u)
        .min(cumulative.len() - 1)
}

fn cumulative<'a, I: IntoIterator<Item = &'a BigRational>>(weights: I) -> Vec<f64> {
    let mut acc = 0.0;
    weights
        .into_iter()
        .map(|w| {
            acc += w.to_f64().unwrap_or(0.0);
            acc
        })
        .collect()
}

/// A start cell drawn with probability proportional to `x_i y_j`.
pub fn sample_start<R: Rng>(w: &WeightSystem, rng: &mut R) -> Cell {
    let rows: Vec<(i64, &BigRational)> = w.x_support().collect();
    let cols: Vec<(i64, &BigRational)> = w.y_support().collect();
    let i = rows[sample_index(&cumulative(rows.iter().map(|(_, x)| *x)), rng)].0;
    let j = cols[sample_index(&cumulative(cols.iter().map(|(_, y)| *y)), rng)].0;
    Cell::new(i, j)
}

/// Runs one walk from `start` until it stops.
pub fn run_walk<R: Rng>(
    start: Cell,
    lambda: &Partition,
    w: &WeightSystem,
    rng: &mut R,
) -> Result<WalkTrace, WalkError> {
    let mut cells = vec![start];
    let mut at = start;
    loop {
        let dist = step_distribution(at, lambda, w)?;
        if dist.is_empty() {
            return Ok(WalkTrace::from_cells(cells));
        }
        at = dist[sample_index(&cumulative(dist.iter().map(|(_, p)| p)), rng)].0;
        cells.push(at);
    }
}

/// Cells of a region with positive start weight, with their weights `x_i y_j`.
pub fn region_start_cells(
    lambda: &Partition,
    region: Region,
    w: &WeightSystem,
) -> Vec<(Cell, BigRational)> {
    let mut out = Vec::new();
    for (i, x) in w.x_support() {
        for (j, y) in w.y_support() {
            let c = Cell::new(i, j);
            if classify(c, lambda) == region {
                out.push((c, x * y));
            }
        }
    }
    out
}

/// `Σ x_p y_q` over the region, from the block structure.
pub fn region_mass(lambda: &Partition, region: Region, w: &WeightSystem) -> BigRational {
    let l = lambda.len() as i64;
    let b = lambda.first_part() as i64;
    let (x_above, x_band, x_below) = (
        w.x_sum(w.x_min(), 0),
        w.x_sum(1, l),
        w.x_sum(l + 1, w.x_max()),
    );
    let (y_left, y_band, y_right) = (
        w.y_sum(w.y_min(), 0),
        w.y_sum(1, b),
        w.y_sum(b + 1, w.y_max()),
    );
    let inside = diagram_mass(lambda, w);
    match region {
        Region::R1 => inside,
        Region::R2 => x_band * y_left,
        Region::R3 => x_above * y_band,
        Region::R4 => x_above * y_left,
        Region::R5 => x_band * y_band - inside,
        Region::R6 => x_band * y_right,
        Region::R7 => x_below * y_band,
        Region::R8 => x_below * y_right,
        Region::R9 => x_below * y_left,
        Region::R10 => x_above * y_right,
    }
}

fn diagram_mass(lambda: &Partition, w: &WeightSystem) -> BigRational {
    (1..=lambda.len() as i64).fold(BigRational::zero(), |a, i| {
        a + w.x(i) * w.y_sum(1, lambda.row_len(i))
    })
}

/// `P(R)`: the chance that the start square lies in the region.
pub fn region_probability(
    lambda: &Partition,
    region: Region,
    w: &WeightSystem,
) -> Result<BigRational, WalkError> {
    let total = w.x_total() * w.y_total();
    if total.is_zero() {
        return Err(WalkError::ZeroDenominator);
    }
    Ok(region_mass(lambda, region, w) / total)
}

fn div(a: BigRational, b: BigRational) -> Result<BigRational, WalkError> {
    if b.is_zero() {
        Err(WalkError::ZeroDenominator)
    } else {
        Ok(a / b)
    }
}

/// Terminal cell, row projection and column projection of a walk from
/// `start` as described by `(I, J)`, or why they do not fit together.
fn projection_endpoint(
    rows: &BTreeSet<i64>,
    cols: &BTreeSet<i64>,
    start: Cell,
    lambda: &Partition,
) -> Result<(bool, Cell), WalkError> {
    let bad = |reason: &str| WalkError::InconsistentProjections {
        start,
        reason: reason.to_string(),
    };
    let (Some(&i_min), Some(&i_max), Some(&j_min), Some(&j_max)) =
        (rows.first(), rows.last(), cols.first(), cols.last())
    else {
        return Err(bad("empty projection"));
    };
    let region = classify(start, lambda);
    if region.ends_in_corner() {
        if (i_min, j_min) != (start.row, start.col) {
            return Err(bad("a down/right walk starts at min I, min J"));
        }
        let c = Cell::new(i_max, j_max);
        if !lambda.is_corner(c) {
            return Err(bad("max I, max J is not a corner"));
        }
        Ok((true, c))
    } else if region.ends_in_outer_corner() {
        if (i_max, j_max) != (start.row, start.col) {
            return Err(bad("an up/left walk starts at max I, max J"));
        }
        let c = Cell::new(i_min, j_min);
        if !lambda.is_outer_corner(c) {
            return Err(bad("min I, min J is not an outer corner"));
        }
        Ok((false, c))
    } else {
        Err(bad("walks from R9 and R10 have no projection formula"))
    }
}

/// The probability that a walk from `start` has row projection `rows`
/// and column projection `cols`.
pub fn projection_probability(
    rows: &BTreeSet<i64>,
    cols: &BTreeSet<i64>,
    start: Cell,
    lambda: &Partition,
    w: &WeightSystem,
) -> Result<BigRational, WalkError> {
    let (to_corner, end) = projection_endpoint(rows, cols, start, lambda)?;
    let (r, s) = (end.row, end.col);
    let mut p = BigRational::one();
    for &i in rows.iter().filter(|&&i| i != start.row) {
        p *= w.x(i);
    }
    for &j in cols.iter().filter(|&&j| j != start.col) {
        p *= w.y(j);
    }
    let mut den = BigRational::one();
    for &i in rows.iter().filter(|&&i| i != r) {
        den *= if to_corner {
            w.x_sum(i + 1, r) + w.y_sum(s + 1, lambda.row_len(i))
        } else {
            w.x_sum(r, i - 1) + w.y_sum(lambda.row_len(i) + 1, s - 1)
        };
    }
    for &j in cols.iter().filter(|&&j| j != s) {
        den *= if to_corner {
            w.x_sum(r + 1, lambda.col_len(j)) + w.y_sum(j + 1, s)
        } else {
            w.x_sum(lambda.col_len(j) + 1, r - 1) + w.y_sum(s, j - 1)
        };
    }
    div(p, den)
}

/// `Π_{rs}` for a corner `(r,s)`.
pub fn prod_rs(
    lambda: &Partition,
    corner: Cell,
    w: &WeightSystem,
) -> Result<BigRational, WalkError> {
    let (r, s) = (corner.row, corner.col);
    let mut p = w.x(r) * w.y(s);
    for i in 1..r {
        let d = w.x_sum(i + 1, r) + w.y_sum(s + 1, lambda.row_len(i));
        p *= BigRational::one() + div(w.x(i), d)?;
    }
    for j in 1..s {
        let d = w.x_sum(r + 1, lambda.col_len(j)) + w.y_sum(j + 1, s);
        p *= BigRational::one() + div(w.y(j), d)?;
    }
    Ok(p)
}

/// `Π'_{rs}` for an outer corner `(r,s)`.
pub fn prod_prime_rs(
    lambda: &Partition,
    outer: Cell,
    w: &WeightSystem,
) -> Result<BigRational, WalkError> {
    let (r, s) = (outer.row, outer.col);
    let mut p = BigRational::one();
    for i in 1..r {
        let d = w.x_sum(i, r - 1) + w.y_sum(s, lambda.row_len(i));
        p *= BigRational::one() - div(w.x(i), d)?;
    }
    for j in 1..s {
        let d = w.x_sum(r, lambda.col_len(j)) + w.y_sum(j, s - 1);
        p *= BigRational::one() - div(w.y(j), d)?;
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Conditioning {
    Region(Region),
    Unconditional,
}

impl fmt::Display for Conditioning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conditioning::Region(r) => r.fmt(f),
            Conditioning::Unconditional => f.write_str("unconditional"),
        }
    }
}

/// Terminal cells with their exact probabilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalDistribution {
    pub conditioning: Conditioning,
    pub probabilities: BTreeMap<Cell, BigRational>,
}

impl TerminalDistribution {
    pub fn total(&self) -> BigRational {
        self.probabilities
            .values()
            .fold(BigRational::zero(), |a, p| a + p)
    }

    pub fn get(&self, c: Cell) -> BigRational {
        self.probabilities
            .get(&c)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }
}

/// The corner of `R9` walks and the corner of `R10` walks.
pub fn special_terminals(lambda: &Partition) -> (Cell, Cell) {
    (
        Cell::new(lambda.len() as i64 + 1, 0),
        Cell::new(0, lambda.first_part() as i64 + 1),
    )
}

/// `P(c | R)` (or `P(c)`) from the closed forms; 0 when `c` cannot end
/// a walk started in `R`.
pub fn terminal_probability(
    lambda: &Partition,
    terminal: Cell,
    conditioning: Conditioning,
    w: &WeightSystem,
) -> Result<BigRational, WalkError> {
    let l = lambda.len() as i64;
    let b = lambda.first_part() as i64;
    let (r, s) = (terminal.row, terminal.col);
    let region = match conditioning {
        Conditioning::Region(region) => region,
        Conditioning::Unconditional => return unconditional_probability(lambda, terminal, w),
    };
    if region_mass(lambda, region, w).is_zero() {
        return Err(WalkError::EmptyRegion(region));
    }
    let (r9, r10) = special_terminals(lambda);
    match region {
        Region::R9 => {
            return Ok(if terminal == r9 {
                BigRational::one()
            } else {
                BigRational::zero()
            })
        }
        Region::R10 => {
            return Ok(if terminal == r10 {
                BigRational::one()
            } else {
                BigRational::zero()
            })
        }
        _ => {}
    }
    if region.ends_in_corner() {
        if !lambda.is_corner(terminal) {
            return Ok(BigRational::zero());
        }
        let pi = prod_rs(lambda, terminal, w)?;
        let below = w.x_sum(r + 1, l) + w.y_sum(1, s);
        let above = w.x_sum(1, r) + w.y_sum(s + 1, b);
        let den = match region {
            Region::R1 => diagram_mass(lambda, w),
            Region::R2 => w.x_sum(1, l) * below,
            Region::R3 => w.y_sum(1, b) * above,
            _ => below * above,
        };
        return div(pi, den);
    }
    if !lambda.is_outer_corner(terminal) {
        return Ok(BigRational::zero());
    }
    let pi = prod_prime_rs(lambda, terminal, w)?;
    let lower = w.x_sum(r, l) + w.y_sum(1, s - 1);
    let upper = w.x_sum(1, r - 1) + w.y_sum(s, b);
    let factor = match region {
        Region::R5 => div(lower * upper, region_mass(lambda, Region::R5, w))?,
        Region::R6 => div(lower, w.x_sum(1, l))?,
        Region::R7 => div(upper, w.y_sum(1, b))?,
        _ => BigRational::one(),
    };
    Ok(factor * pi)
}

fn unconditional_probability(
    lambda: &Partition,
    terminal: Cell,
    w: &WeightSystem,
) -> Result<BigRational, WalkError> {
    let l = lambda.len() as i64;
    let b = lambda.first_part() as i64;
    let (r, s) = (terminal.row, terminal.col);
    let total = w.x_total() * w.y_total();
    let (r9, r10) = special_terminals(lambda);
    if terminal == r9 {
        return region_probability(lambda, Region::R9, w);
    }
    if terminal == r10 {
        return region_probability(lambda, Region::R10, w);
    }
    if lambda.is_corner(terminal) {
        let above = w.x_sum(1, r) + w.y_sum(s + 1, b);
        let below = w.x_sum(r + 1, l) + w.y_sum(1, s);
        let fx = BigRational::one() + div(w.x_sum(w.x_min(), 0), above)?;
        let fy = BigRational::one() + div(w.y_sum(w.y_min(), 0), below)?;
        return div(fx * fy * prod_rs(lambda, terminal, w)?, total);
    }
    if lambda.is_outer_corner(terminal) {
        let a = w.x_sum(1, r - 1) + w.y_sum(s, w.y_max());
        let c = w.x_sum(r, w.x_max()) + w.y_sum(1, s - 1);
        return div(a * c * prod_prime_rs(lambda, terminal, w)?, total);
    }
    Ok(BigRational::zero())
}

fn terminals_for(lambda: &Partition, conditioning: Conditioning) -> Vec<Cell> {
    let (r9, r10) = special_terminals(lambda);
    match conditioning {
        Conditioning::Region(Region::R9) => vec![r9],
        Conditioning::Region(Region::R10) => vec![r10],
        Conditioning::Region(r) if r.ends_in_corner() => lambda.corners(),
        Conditioning::Region(_) => lambda.outer_corners(),
        Conditioning::Unconditional => {
            let mut v = lambda.corners();
            v.extend(lambda.outer_corners());
            v.extend([r9, r10]);
            v
        }
    }
}

/// Every terminal with its closed-form probability.
pub fn closed_form_distribution(
    lambda: &Partition,
    conditioning: Conditioning,
    w: &WeightSystem,
) -> Result<TerminalDistribution, WalkError> {
    let mut probabilities = BTreeMap::new();
    for c in terminals_for(lambda, conditioning) {
        let p = terminal_probability(lambda, c, conditioning, w)?;
        if !p.is_zero() {
            probabilities.insert(c, p);
        }
    }
    Ok(TerminalDistribution {
        conditioning,
        probabilities,
    })
}

/// `P(c | R)` when the weights on rows `1..=ℓ` and columns `1..=λ_1` are equal,
/// in terms of standard Young tableau counts.
pub fn uniform_corollary_probability(
    lambda: &Partition,
    terminal: Cell,
    region: Region,
) -> Result<BigRational, WalkError> {
    let n = lambda.size() as i64;
    let l = lambda.len() as i64;
    let b = lambda.first_part() as i64;
    let (r, s) = (terminal.row, terminal.col);
    let f = BigRational::from_integer(BigInt::from(syt_count(lambda)));
    if region.ends_in_corner() {
        if !lambda.is_corner(terminal) {
            return Ok(BigRational::zero());
        }
        let minus = lambda.remove_cell(terminal).expect("corner");
        let fm = BigRational::from_integer(BigInt::from(syt_count(&minus)));
        let ratio = fm / &f;
        return Ok(match region {
            Region::R1 => ratio,
            Region::R2 => rat(n) * ratio / (rat(l) * rat(l - r + s)),
            Region::R3 => rat(n) * ratio / (rat(b) * rat(b + r - s)),
            _ => rat(n) * ratio / (rat(l - r + s) * rat(b + r - s)),
        });
    }
    if !region.ends_in_outer_corner() {
        return Err(WalkError::Unsupported(format!(
            "uniform formula for {region}"
        )));
    }
    if region == Region::R5 && lambda.is_rectangle() {
        return Err(WalkError::EmptyRegion(Region::R5));
    }
    if !lambda.is_outer_corner(terminal) {
        return Ok(BigRational::zero());
    }
    let plus = lambda.add_cell(terminal).expect("outer corner");
    let fp = BigRational::from_integer(BigInt::from(syt_count(&plus)));
    let ratio = fp / (rat(n + 1) * f);
    Ok(match region {
        Region::R5 => rat(l - r + s) * rat(b + r - s) * ratio / rat(l * b - n),
        Region::R6 => rat(l - r + s) * ratio / rat(l),
        Region::R7 => rat(b + r - s) * ratio / rat(b),
        _ => ratio,
    })
}

/// Exact terminal distributions by solving the walk as a Markov chain,
/// independently of the closed forms.
pub struct ExactWalk<'a> {
    lambda: &'a Partition,
    weights: &'a WeightSystem,
    memo: HashMap<Cell, BTreeMap<Cell, BigRational>>,
}

impl<'a> ExactWalk<'a> {
    pub fn new(lambda: &'a Partition, weights: &'a WeightSystem) -> Self {
        Self {
            lambda,
            weights,
            memo: HashMap::new(),
        }
    }

    /// Terminal distribution of a walk started at `cell`.
    pub fn from_cell(&mut self, cell: Cell) -> Result<BTreeMap<Cell, BigRational>, WalkError> {
        if let Some(d) = self.memo.get(&cell) {
            return Ok(d.clone());
        }
        let steps = step_distribution(cell, self.lambda, self.weights)?;
        let mut out = BTreeMap::new();
        if steps.is_empty() {
            out.insert(cell, BigRational::one());
        }
        for (next, p) in steps {
            for (t, q) in self.from_cell(next)? {
                *out.entry(t).or_insert_with(BigRational::zero) += &p * q;
            }
        }
        self.memo.insert(cell, out.clone());
        Ok(out)
    }

    pub fn conditional(&mut self, region: Region) -> Result<TerminalDistribution, WalkError> {
        let starts = region_start_cells(self.lambda, region, self.weights);
        let mass = starts.iter().fold(BigRational::zero(), |a, (_, m)| a + m);
        if mass.is_zero() {
            return Err(WalkError::EmptyRegion(region));
        }
        let mut probabilities: BTreeMap<Cell, BigRational> = BTreeMap::new();
        for (c, m) in starts {
            for (t, q) in self.from_cell(c)? {
                *probabilities.entry(t).or_insert_with(BigRational::zero) += &m * q / &mass;
            }
        }
        Ok(TerminalDistribution {
            conditioning: Conditioning::Region(region),
            probabilities,
        })
    }
}

fn subsets_between(support: &[i64], lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let inner: Vec<i64> = support
        .iter()
        .copied()
        .filter(|&k| lo < k && k < hi)
        .collect();
    (0u64..1 << inner.len())
        .map(|mask| {
            inner
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &k)| k)
                .collect()
        })
        .collect()
}

fn projection_sets(support: &[i64], a: i64, b: i64) -> Vec<BTreeSet<i64>> {
    let (lo, hi) = (a.min(b), a.max(b));
    subsets_between(support, lo, hi)
        .into_iter()
        .map(|mid| mid.into_iter().chain([lo, hi]).collect())
        .collect()
}

/// `P(c | R)` by summing the projection formula over all start squares
/// and all admissible row and column projections.
pub fn projection_sum_distribution(
    lambda: &Partition,
    region: Region,
    w: &WeightSystem,
) -> Result<TerminalDistribution, WalkError> {
    if !region.ends_in_corner() && !region.ends_in_outer_corner() {
        return Err(WalkError::Unsupported(format!(
            "projection sums for {region}"
        )));
    }
    let rows: Vec<i64> = w.x_support().map(|(i, _)| i).collect();
    let cols: Vec<i64> = w.y_support().map(|(j, _)| j).collect();
    let starts = region_start_cells(lambda, region, w);
    let mass = starts.iter().fold(BigRational::zero(), |a, (_, m)| a + m);
    if mass.is_zero() {
        return Err(WalkError::EmptyRegion(region));
    }
    let terminals = terminals_for(lambda, Conditioning::Region(region));
    let mut probabilities = BTreeMap::new();
    for t in terminals {
        let mut total = BigRational::zero();
        for (start, m) in &starts {
            let reachable = if region.ends_in_corner() {
                start.row <= t.row && start.col <= t.col
            } else {
                start.row >= t.row && start.col >= t.col
            };
            if !reachable {
                continue;
            }
            for is in projection_sets(&rows, start.row, t.row) {
                for js in projection_sets(&cols, start.col, t.col) {
                    total += m * projection_probability(&is, &js, *start, lambda, w)?;
                }
            }
        }
        if !total.is_zero() {
            probabilities.insert(t, total / &mass);
        }
    }
    Ok(TerminalDistribution {
        conditioning: Conditioning::Region(region),
        probabilities,
    })
}

/// Number of independent random streams used by [`monte_carlo_estimate`].
pub const MONTE_CARLO_WORKERS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEntry {
    pub count: u64,
    pub estimate: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloEstimate {
    pub region: Region,
    pub trials: usize,
    pub seed: u64,
    pub entries: BTreeMap<Cell, McEntry>,
}

/// Precomputed start and step tables with `f64` cumulative weights.
struct Sampler {
    starts: Vec<Cell>,
    start_cum: Vec<f64>,
    steps: HashMap<Cell, (Vec<Cell>, Vec<f64>)>,
}

impl Sampler {
    fn build(lambda: &Partition, region: Region, w: &WeightSystem) -> Result<Self, WalkError> {
        let start_cells = region_start_cells(lambda, region, w);
        if start_cells.is_empty() {
            return Err(WalkError::EmptyRegion(region));
        }
        let starts: Vec<Cell> = start_cells.iter().map(|(c, _)| *c).collect();
        let start_cum = cumulative(start_cells.iter().map(|(_, m)| m));
        let mut steps = HashMap::new();
        let mut stack = starts.clone();
        while let Some(c) = stack.pop() {
            if steps.contains_key(&c) {
                continue;
            }
            let dist = step_distribution(c, lambda, w)?;
            let cells: Vec<Cell> = dist.iter().map(|(n, _)| *n).collect();
            let cum = cumulative(dist.iter().map(|(_, p)| p));
            stack.extend(cells.iter().copied());
            steps.insert(c, (cells, cum));
        }
        Ok(Self {
            starts,
            start_cum,
            steps,
        })
    }

    fn walk<R: Rng>(&self, rng: &mut R) -> Cell {
        let mut at = self.starts[sample_index(&self.start_cum, rng)];
        loop {
            let (cells, cum) = &self.steps[&at];
            if cells.is_empty() {
                return at;
            }
            at = cells[sample_index(cum, rng)];
        }
    }
}

/// Frequencies of terminal cells over `trials` walks started in `region`.
/// Deterministic for a given seed: worker `k` uses stream `k` of the seed.
pub fn monte_carlo_estimate(
    lambda: &Partition,
    region: Region,
    w: &WeightSystem,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloEstimate, WalkError> {
    let sampler = Sampler::build(lambda, region, w)?;
    let per_worker: Vec<BTreeMap<Cell, u64>> = (0..MONTE_CARLO_WORKERS)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let share =
                trials / MONTE_CARLO_WORKERS + usize::from(k < trials % MONTE_CARLO_WORKERS);
            let mut counts = BTreeMap::new();
            for _ in 0..share {
                *counts.entry(sampler.walk(&mut rng)).or_insert(0u64) += 1;
            }
            counts
        })
        .collect();
    let mut counts: BTreeMap<Cell, u64> = BTreeMap::new();
    for m in per_worker {
        for (c, k) in m {
            *counts.entry(c).or_insert(0) += k;
        }
    }
    let n = trials.max(1) as f64;
    let entries = counts
        .into_iter()
        .map(|(c, count)| {
            let p = count as f64 / n;
            let std_error = (p * (1.0 - p) / n).sqrt();
            (
                c,
                McEntry {
                    count,
                    estimate: p,
                    std_error,
                },
            )
        })
        .collect();
    Ok(MonteCarloEstimate {
        region,
        trials,
        seed,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McComparison {
    #[serde(serialize_with = "crate::identities::serialize_display")]
    pub terminal: Cell,
    #[serde(serialize_with = "crate::identities::serialize_display")]
    pub exact: BigRational,
    pub exact_decimal: f64,
    pub estimate: f64,
    /// Standard deviation of the frequency under the exact probability.
    pub sigma: f64,
    pub within: bool,
}

/// Compares frequencies with exact probabilities, allowing `sigmas`
/// standard deviations.
pub fn compare_with_exact(
    est: &MonteCarloEstimate,
    exact: &TerminalDistribution,
    sigmas: f64,
) -> Vec<McComparison> {
    let cells: BTreeSet<Cell> = est
        .entries
        .keys()
        .chain(exact.probabilities.keys())
        .copied()
        .collect();
    let n = est.trials.max(1) as f64;
    cells
        .into_iter()
        .map(|c| {
            let p = exact.get(c);
            let pf = p.to_f64().unwrap_or(0.0);
            let estimate = est.entries.get(&c).map_or(0.0, |e| e.estimate);
            let sigma = (pf * (1.0 - pf) / n).sqrt();
            let within = if sigma == 0.0 {
                estimate == pf
            } else {
                (estimate - pf).abs() <= sigmas * sigma
            };
            McComparison {
                terminal: c,
                exact: p,
                exact_decimal: pf,
                estimate,
                sigma,
                within,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn classification_examples() {
        let lam = p("66532");
        assert_eq!(classify(Cell::new(2, 3), &lam), Region::R1);
        assert_eq!(classify(Cell::new(3, 6), &lam), Region::R5);
        assert_eq!(classify(Cell::new(6, 7), &lam), Region::R8);
        assert_eq!(classify(Cell::new(0, 0), &lam), Region::R4);
        assert_eq!(classify(Cell::new(3, -1), &lam), Region::R2);
        assert_eq!(classify(Cell::new(-4, 2), &lam), Region::R3);
        assert_eq!(classify(Cell::new(4, 9), &lam), Region::R6);
        assert_eq!(classify(Cell::new(6, 1), &lam), Region::R7);
        assert_eq!(classify(Cell::new(6, 0), &lam), Region::R9);
        assert_eq!(classify(Cell::new(0, 7), &lam), Region::R10);
    }

    #[test]
    fn step_examples() {
        let w = WeightSystem::uniform_window(&p("322"), 2);
        assert!(step_distribution(Cell::new(1, 1), &p("1"), &w)
            .unwrap()
            .is_empty());
        let d = step_distribution(Cell::new(1, 1), &p("322"), &w).unwrap();
        let cells: BTreeSet<Cell> = d.iter().map(|(c, _)| *c).collect();
        let want: BTreeSet<Cell> = [(2, 1), (3, 1), (1, 2), (1, 3)]
            .iter()
            .map(|&c| c.into())
            .collect();
        assert_eq!(cells, want);
        assert!(d.iter().all(|(_, pr)| *pr == q(1, 4)));
        let w1 = WeightSystem::uniform_window(&p("1"), 2);
        let d = step_distribution(Cell::new(2, 2), &p("1"), &w1).unwrap();
        assert_eq!(
            d,
            vec![(Cell::new(1, 2), q(1, 2)), (Cell::new(2, 1), q(1, 2))]
        );
    }

    #[test]
    fn terminals_of_each_family() {
        let lam = p("66532");
        for c in lam.corners() {
            assert!(is_terminal(c, &lam));
        }
        for c in lam.outer_corners() {
            assert!(is_terminal(c, &lam));
        }
        let (r9, r10) = special_terminals(&lam);
        assert!(is_terminal(r9, &lam) && is_terminal(r10, &lam));
        assert!(!is_terminal(Cell::new(1, 1), &lam));
        assert!(!is_terminal(Cell::new(-3, -3), &lam));
    }

    #[test]
    fn projection_examples() {
        let lam = p("1");
        let w = WeightSystem::uniform_window(&lam, 2);
        let one = BTreeSet::from([1]);
        assert_eq!(
            projection_probability(&one, &one, Cell::new(1, 1), &lam, &w).unwrap(),
            BigRational::one()
        );
        let mut w = WeightSystem::new();
        w.set_x(1, q(2, 1)).unwrap();
        w.set_x(2, q(1, 1)).unwrap();
        w.set_y(1, q(3, 1)).unwrap();
        w.set_y(2, q(1, 1)).unwrap();
        let pr = projection_probability(
            &BTreeSet::from([1, 2]),
            &BTreeSet::from([2]),
            Cell::new(2, 2),
            &lam,
            &w,
        )
        .unwrap();
        assert_eq!(pr, q(2, 5));
        assert!(projection_probability(
            &BTreeSet::from([2]),
            &BTreeSet::from([2]),
            Cell::new(1, 1),
            &lam,
            &w
        )
        .is_err());
    }

    #[test]
    fn single_box_products() {
        let lam = p("1");
        let mut w = WeightSystem::new();
        w.set_x(1, q(3, 1)).unwrap();
        w.set_y(1, q(5, 1)).unwrap();
        assert_eq!(prod_rs(&lam, Cell::new(1, 1), &w).unwrap(), q(15, 1));
        assert_eq!(prod_prime_rs(&lam, Cell::new(1, 2), &w).unwrap(), q(3, 8));
    }

    #[test]
    fn spot_values() {
        let lam = p("322");
        let w = WeightSystem::uniform_window(&lam, 2);
        let c = Conditioning::Region(Region::R1);
        assert_eq!(
            terminal_probability(&lam, Cell::new(1, 3), c, &w).unwrap(),
            q(5, 21)
        );
        let c8 = Conditioning::Region(Region::R8);
        assert_eq!(
            terminal_probability(&lam, Cell::new(4, 1), c8, &w).unwrap(),
            q(5, 12)
        );
        assert_eq!(
            uniform_corollary_probability(&lam, Cell::new(4, 1), Region::R8).unwrap(),
            q(70, 168)
        );
        let one = p("1");
        let w1 = WeightSystem::uniform_window(&one, 2);
        assert_eq!(
            terminal_probability(&one, Cell::new(1, 2), c8, &w1).unwrap(),
            q(1, 2)
        );
        assert_eq!(
            terminal_probability(&one, Cell::new(1, 1), c, &w1).unwrap(),
            BigRational::one()
        );
    }

    #[test]
    fn r6_uniform_sum_for_322() {
        let lam = p("322");
        let total = lam
            .outer_corners()
            .into_iter()
            .map(|c| uniform_corollary_probability(&lam, c, Region::R6).unwrap())
            .fold(BigRational::zero(), |a, b| a + b);
        assert_eq!(total, BigRational::one());
        assert!(uniform_corollary_probability(&p("22"), Cell::new(3, 1), Region::R5).is_err());
    }

    #[test]
    fn closed_forms_match_markov_chain() {
        for s in ["1", "2", "21", "322", "3211"] {
            let lam = p(s);
            let w = WeightSystem::uniform_window(&lam, 2);
            let mut exact = ExactWalk::new(&lam, &w);
            for region in Region::ALL {
                if region == Region::R5 && lam.is_rectangle() {
                    continue;
                }
                let a = closed_form_distribution(&lam, Conditioning::Region(region), &w).unwrap();
                let b = exact.conditional(region).unwrap();
                assert_eq!(a.probabilities, b.probabilities, "{s} {region}");
            }
        }
    }

    #[test]
    fn weights_json_round_trip() {
        let w =
            WeightSystem::from_json(r#"{"x": {"1": "3/2", "-1": 2}, "y": {"1": "1"}}"#).unwrap();
        assert_eq!(w.x(1), q(3, 2));
        assert_eq!(w.x(-1), q(2, 1));
        assert_eq!(
            WeightSystem::from_json(&w.to_json().to_string()).unwrap(),
            w
        );
        assert!(WeightSystem::from_json(r#"{"x": {"1": "0"}}"#).is_err());
        assert!(WeightSystem::from_json(r#"{"z": {}}"#).is_err());
    }

    #[test]
    fn monte_carlo_is_deterministic_and_close() {
        let lam = p("1");
        let w = WeightSystem::uniform_window(&lam, 2);
        let a = monte_carlo_estimate(&lam, Region::R8, &w, 20_000, 7).unwrap();
        let b = monte_carlo_estimate(&lam, Region::R8, &w, 20_000, 7).unwrap();
        assert_eq!(a, b);
        let total: u64 = a.entries.values().map(|e| e.count).sum();
        assert_eq!(total, 20_000);
        let exact = closed_form_distribution(&lam, Conditioning::Region(Region::R8), &w).unwrap();
        assert!(compare_with_exact(&a, &exact, 4.0).iter().all(|c| c.within));
    }

    #[test]
    fn special_regions_smoke() {
        let lam = p("21");
        let w = WeightSystem::uniform_window(&lam, 2);
        let mut exact = ExactWalk::new(&lam, &w);
        let (r9, r10) = special_terminals(&lam);
        assert_eq!(
            exact.conditional(Region::R9).unwrap().get(r9),
            BigRational::one()
        );
        assert_eq!(
            exact.conditional(Region::R10).unwrap().get(r10),
            BigRational::one()
        );
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let trace = run_walk(Cell::new(4, -1), &lam, &w, &mut rng).unwrap();
        assert_eq!(trace.terminal(), r9);
    }
}
