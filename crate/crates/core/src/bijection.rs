//! A weight-preserving bijection between the label arrangements counted by
//! the two sides of the complementary branching rule.
//!
//! An arrangement in `F_λ` puts on every cell `(i,j)` a label `x_k`
//! (`i ≤ k ≤ λ'_j`) or `y_l` (`j ≤ l ≤ λ_i`). Reading the labels as moves
//! gives a hook walk from `(1,1)` to an outer corner `(r,s)`; shifting the
//! labels along the walk and its projections onto row `r` and column `s`
//! produces an arrangement in `G_λ`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::partition::{Cell, Partition};
use crate::polynomial::{Axis, Monomial, Variable};

/// A label `x_k` or `y_l`; it is the variable it stands for.
pub type Label = Variable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("cannot parse arrangement: {0}")]
    Parse(String),
    #[error("arrangement is not admissible for {0}")]
    Inadmissible(Partition),
}

/// Starting data for the variants of the bijection: the left side carries
/// an extra factor `x_p`, `y_q`, or `x_p y_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Plain,
    X { p: i64 },
    Y { q: i64 },
    Xy { p: i64, q: i64 },
}

/// The variant without its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariantKind {
    Plain,
    X,
    Y,
    Xy,
}

impl VariantKind {
    fn drops_first_col(self) -> bool {
        matches!(self, VariantKind::X | VariantKind::Xy)
    }
    fn drops_first_row(self) -> bool {
        matches!(self, VariantKind::Y | VariantKind::Xy)
    }

    /// Cells carrying labels on the left side.
    fn domain_cells(self, lambda: &Partition) -> Vec<Cell> {
        lambda
            .cells()
            .filter(|c| {
                !(self.drops_first_col() && c.col == 1) && !(self.drops_first_row() && c.row == 1)
            })
            .collect()
    }

    /// Cells carrying labels on the right side, for outer corner `corner`.
    fn codomain_cells(self, lambda: &Partition, corner: Cell) -> Vec<Cell> {
        lambda
            .cells()
            .filter(|c| {
                let kept = !(self.drops_first_col() && c.col == 1)
                    && !(self.drops_first_row() && c.row == 1);
                kept || (c.col == corner.col && c.row < corner.row)
                    || (c.row == corner.row && c.col < corner.col)
            })
            .collect()
    }

    fn allows_corner(self, corner: Cell) -> bool {
        !(self.drops_first_col() && corner.col == 1) && !(self.drops_first_row() && corner.row == 1)
    }

    /// All admissible starting parameters.
    pub fn variants(self, lambda: &Partition) -> Vec<Variant> {
        let l = lambda.len() as i64;
        let b = lambda.first_part() as i64;
        match self {
            VariantKind::Plain => vec![Variant::Plain],
            VariantKind::X => (1..=l).map(|p| Variant::X { p }).collect(),
            VariantKind::Y => (1..=b).map(|q| Variant::Y { q }).collect(),
            VariantKind::Xy => (1..=l)
                .flat_map(|p| (1..=b).map(move |q| (p, q)))
                .filter(|&(p, q)| !lambda.contains(Cell::new(p, q)))
                .map(|(p, q)| Variant::Xy { p, q })
                .collect(),
        }
    }
}

impl Variant {
    pub fn kind(self) -> VariantKind {
        match self {
            Variant::Plain => VariantKind::Plain,
            Variant::X { .. } => VariantKind::X,
            Variant::Y { .. } => VariantKind::Y,
            Variant::Xy { .. } => VariantKind::Xy,
        }
    }

    fn start(self, lambda: &Partition) -> Cell {
        let col = |p: i64| lambda.row_len(p) + 1;
        let row = |q: i64| lambda.col_len(q) + 1;
        match self {
            Variant::Plain => Cell::new(1, 1),
            Variant::X { p } => Cell::new(1, col(p)),
            Variant::Y { q } => Cell::new(row(q), 1),
            Variant::Xy { p, q } => Cell::new(row(q), col(p)),
        }
    }

    fn x_seed(self) -> Option<Label> {
        match self {
            Variant::X { p } | Variant::Xy { p, .. } => Some(Variable::x(p)),
            _ => None,
        }
    }

    fn y_seed(self) -> Option<Label> {
        match self {
            Variant::Y { q } | Variant::Xy { q, .. } => Some(Variable::y(q)),
            _ => None,
        }
    }

    fn is_admissible(self, lambda: &Partition) -> bool {
        let l = lambda.len() as i64;
        let b = lambda.first_part() as i64;
        match self {
            Variant::Plain => true,
            Variant::X { p } => (1..=l).contains(&p),
            Variant::Y { q } => (1..=b).contains(&q),
            Variant::Xy { p, q } => {
                (1..=l).contains(&p) && (1..=b).contains(&q) && !lambda.contains(Cell::new(p, q))
            }
        }
    }
}

fn label_range(lambda: &Partition, c: Cell, x_from: i64, y_from: i64) -> Vec<Label> {
    (x_from..=lambda.col_len(c.col))
        .map(Variable::x)
        .chain((y_from..=lambda.row_len(c.row)).map(Variable::y))
        .collect()
}

/// Admissible labels of a cell on the left side, `x_i..x_{λ'_j}` then `y_j..y_{λ_i}`.
fn f_labels(lambda: &Partition, c: Cell) -> Vec<Label> {
    label_range(lambda, c, c.row, c.col)
}

/// Admissible labels of a cell on the right side for outer corner `corner`.
fn g_labels(lambda: &Partition, corner: Cell, c: Cell) -> Vec<Label> {
    if c.col == corner.col {
        label_range(lambda, c, c.row + 1, c.col)
    } else if c.row == corner.row {
        label_range(lambda, c, c.row, c.col + 1)
    } else {
        f_labels(lambda, c)
    }
}

fn in_range(lambda: &Partition, label: Label, x_from: i64, y_from: i64, c: Cell) -> bool {
    match label.axis {
        Axis::X => x_from <= label.index && label.index <= lambda.col_len(c.col),
        Axis::Y => y_from <= label.index && label.index <= lambda.row_len(c.row),
    }
}

fn f_admissible(lambda: &Partition, c: Cell, label: Label) -> bool {
    in_range(lambda, label, c.row, c.col, c)
}

fn g_admissible(lambda: &Partition, corner: Cell, c: Cell, label: Label) -> bool {
    if c.col == corner.col {
        in_range(lambda, label, c.row + 1, c.col, c)
    } else if c.row == corner.row {
        in_range(lambda, label, c.row, c.col + 1, c)
    } else {
        f_admissible(lambda, c, label)
    }
}

/// A left-side arrangement: labels on the cells of `[λ]` (the variants
/// leave out the first column, the first row, or both).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrangementF {
    pub partition: Partition,
    pub variant: Variant,
    pub labels: BTreeMap<Cell, Label>,
}

/// A right-side arrangement, attached to an outer corner `(r,s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrangementG {
    pub partition: Partition,
    pub kind: VariantKind,
    pub outer_corner: Cell,
    pub labels: BTreeMap<Cell, Label>,
}

impl ArrangementF {
    pub fn new(partition: Partition, labels: BTreeMap<Cell, Label>) -> Self {
        Self {
            partition,
            variant: Variant::Plain,
            labels,
        }
    }

    pub fn label(&self, c: Cell) -> Option<Label> {
        self.labels.get(&c).copied()
    }

    /// Product of all labels, including the variant's extra variables.
    pub fn weight(&self) -> Monomial {
        let seeds = self
            .variant
            .x_seed()
            .into_iter()
            .chain(self.variant.y_seed());
        monomial_of(self.labels.values().copied().chain(seeds))
    }
}

impl ArrangementG {
    pub fn label(&self, c: Cell) -> Option<Label> {
        self.labels.get(&c).copied()
    }

    pub fn weight(&self) -> Monomial {
        monomial_of(self.labels.values().copied())
    }
}

fn monomial_of<I: IntoIterator<Item = Label>>(labels: I) -> Monomial {
    let mut counts: BTreeMap<Variable, u32> = BTreeMap::new();
    for l in labels {
        *counts.entry(l).or_default() += 1;
    }
    Monomial::from_powers(counts)
}

pub fn validate_f(f: &ArrangementF) -> bool {
    let lambda = &f.partition;
    let cells = f.variant.kind().domain_cells(lambda);
    f.variant.is_admissible(lambda)
        && f.labels.len() == cells.len()
        && cells
            .iter()
            .all(|&c| f.label(c).is_some_and(|l| f_admissible(lambda, c, l)))
}

pub fn validate_g(g: &ArrangementG) -> bool {
    let lambda = &g.partition;
    if !lambda.is_outer_corner(g.outer_corner) || !g.kind.allows_corner(g.outer_corner) {
        return false;
    }
    let cells = g.kind.codomain_cells(lambda, g.outer_corner);
    g.labels.len() == cells.len()
        && cells.iter().all(|&c| {
            g.label(c)
                .is_some_and(|l| g_admissible(lambda, g.outer_corner, c, l))
        })
}

/// The cells of a hook walk and its row and column projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTrace {
    pub cells: Vec<Cell>,
    pub rows: BTreeSet<i64>,
    pub cols: BTreeSet<i64>,
}

impl WalkTrace {
    pub(crate) fn from_cells(cells: Vec<Cell>) -> Self {
        let rows = cells.iter().map(|c| c.row).collect();
        let cols = cells.iter().map(|c| c.col).collect();
        Self { cells, rows, cols }
    }

    pub fn terminal(&self) -> Cell {
        *self.cells.last().expect("a walk has at least one cell")
    }
}

impl fmt::Display for WalkTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" -> "))
    }
}

fn step(lambda: &Partition, at: Cell, label: Label) -> Cell {
    match label.axis {
        Axis::X => Cell::new(at.row, lambda.row_len(label.index) + 1),
        Axis::Y => Cell::new(lambda.col_len(label.index) + 1, at.col),
    }
}

/// Follows the labels of `F` from the starting square to an outer corner.
pub fn hook_walk_from_f(f: &ArrangementF) -> WalkTrace {
    let lambda = &f.partition;
    let mut at = f.variant.start(lambda);
    let mut cells = vec![at];
    while lambda.contains(at) {
        let label = f.label(at).expect("walk cells carry labels");
        at = step(lambda, at, label);
        cells.push(at);
    }
    WalkTrace::from_cells(cells)
}

/// A position during relabelling: a cell of the diagram, or one of the
/// two labels that sit in the outer corner before the final push.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Cell(Cell),
    /// The `x` label that arrived in `(r,s)` along row `r`.
    CornerX,
    /// The `y` label that arrived in `(r,s)` along column `s`.
    CornerY,
}

/// One label transfer; all transfers of a walk happen simultaneously.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub from: Cell,
    pub to: Slot,
}

/// Labels after the shifts along the walk and before the final push; the
/// outer corner may hold two labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelabelState {
    pub outer_corner: Cell,
    pub slots: BTreeMap<Slot, Label>,
}

impl RelabelState {
    pub fn corner_x(&self) -> Option<Label> {
        self.slots.get(&Slot::CornerX).copied()
    }
    pub fn corner_y(&self) -> Option<Label> {
        self.slots.get(&Slot::CornerY).copied()
    }
}

/// Every stage of `φ` on one arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiTrace {
    pub walk: WalkTrace,
    pub moves: Vec<Move>,
    pub relabelled: RelabelState,
    pub result: ArrangementG,
}

fn slot_in_row(corner: Cell, col: i64) -> Slot {
    if col == corner.col {
        Slot::CornerX
    } else {
        Slot::Cell(Cell::new(corner.row, col))
    }
}

fn slot_in_col(corner: Cell, row: i64) -> Slot {
    if row == corner.row {
        Slot::CornerY
    } else {
        Slot::Cell(Cell::new(row, corner.col))
    }
}

/// The transfers determined by a walk ending in `(r,s)`.
///
/// A horizontal step `(i,j) → (i,j')` sends the label of `(i,j)` to
/// `(r,j')` and that of `(r,j)` to `(i,j)`; a vertical step
/// `(i,j) → (i',j)` sends it to `(i',s)` and that of `(i,s)` to `(i,j)`.
/// Steps inside row `r` or column `s` only carry their own label.
fn moves_of(walk: &WalkTrace) -> Vec<Move> {
    let corner = walk.terminal();
    let (r, s) = (corner.row, corner.col);
    let mut moves = Vec::new();
    for w in walk.cells.windows(2) {
        let (from, to) = (w[0], w[1]);
        if from.row == to.row {
            moves.push(Move {
                from,
                to: slot_in_row(corner, to.col),
            });
            if from.row != r {
                moves.push(Move {
                    from: Cell::new(r, from.col),
                    to: Slot::Cell(from),
                });
            }
        } else {
            moves.push(Move {
                from,
                to: slot_in_col(corner, to.row),
            });
            if from.col != s {
                moves.push(Move {
                    from: Cell::new(from.row, s),
                    to: Slot::Cell(from),
                });
            }
        }
    }
    moves
}

fn seed_slots(variant: Variant, start: Cell, corner: Cell) -> Vec<(Slot, Label)> {
    let mut out = Vec::new();
    if let Some(x) = variant.x_seed() {
        out.push((slot_in_row(corner, start.col), x));
    }
    if let Some(y) = variant.y_seed() {
        out.push((slot_in_col(corner, start.row), y));
    }
    out
}

pub fn phi_trace(f: &ArrangementF) -> PhiTrace {
    let lambda = &f.partition;
    let walk = hook_walk_from_f(f);
    let corner = walk.terminal();
    let moves = moves_of(&walk);

    let sources: BTreeSet<Cell> = moves.iter().map(|m| m.from).collect();
    assert_eq!(sources.len(), moves.len(), "each label moves at most once");
    let mut slots: BTreeMap<Slot, Label> = f
        .labels
        .iter()
        .filter(|(c, _)| !sources.contains(c))
        .map(|(&c, &l)| (Slot::Cell(c), l))
        .collect();
    let arrivals = moves
        .iter()
        .map(|m| (m.to, f.label(m.from).expect("moved labels exist")))
        .chain(seed_slots(f.variant, walk.cells[0], corner));
    for (slot, label) in arrivals {
        let clash = slots.insert(slot, label);
        assert!(clash.is_none(), "slot {slot:?} filled twice");
    }
    let relabelled = RelabelState {
        outer_corner: corner,
        slots,
    };
    let result = push(lambda, f.variant.kind(), &relabelled);
    PhiTrace {
        walk,
        moves,
        relabelled,
        result,
    }
}

/// Shifts row `r` (with the corner's `x` label) one square left and column
/// `s` (with the corner's `y` label) one square up.
fn push(lambda: &Partition, kind: VariantKind, state: &RelabelState) -> ArrangementG {
    let corner = state.outer_corner;
    let (r, s) = (corner.row, corner.col);
    let mut labels = BTreeMap::new();
    for c in kind.codomain_cells(lambda, corner) {
        let source = if c.row == r {
            slot_in_row(corner, c.col + 1)
        } else if c.col == s {
            slot_in_col(corner, c.row + 1)
        } else {
            Slot::Cell(c)
        };
        let label = state
            .slots
            .get(&source)
            .copied()
            .expect("every cell receives a label");
        labels.insert(c, label);
    }
    ArrangementG {
        partition: lambda.clone(),
        kind,
        outer_corner: corner,
        labels,
    }
}

pub fn phi(f: &ArrangementF) -> ArrangementG {
    phi_trace(f).result
}

/// Columns `j ≤ s` of `G` entered by a horizontal step, read from row `r`.
fn row_arrivals(g: &ArrangementG) -> Vec<(i64, Label)> {
    let lambda = &g.partition;
    let (r, s) = (g.outer_corner.row, g.outer_corner.col);
    (2..=s)
        .filter_map(|j| {
            let l = g.label(Cell::new(r, j - 1))?;
            (l.axis == Axis::X && l.index > lambda.col_len(j)).then_some((j, l))
        })
        .collect()
}

/// Rows `i ≤ r` of `G` entered by a vertical step, read from column `s`.
fn col_arrivals(g: &ArrangementG) -> Vec<(i64, Label)> {
    let lambda = &g.partition;
    let (r, s) = (g.outer_corner.row, g.outer_corner.col);
    (2..=r)
        .filter_map(|i| {
            let l = g.label(Cell::new(i - 1, s))?;
            (l.axis == Axis::Y && l.index > lambda.row_len(i)).then_some((i, l))
        })
        .collect()
}

/// Recovers the walk of `φ^{-1}(G)` together with its variant parameters.
pub fn walk_from_g(g: &ArrangementG) -> Option<(Variant, WalkTrace)> {
    let corner = g.outer_corner;
    let (r, s) = (corner.row, corner.col);
    let cols_in = row_arrivals(g);
    let rows_in = col_arrivals(g);
    let mut cols: BTreeSet<i64> = cols_in.iter().map(|&(j, _)| j).collect();
    let mut rows: BTreeSet<i64> = rows_in.iter().map(|&(i, _)| i).collect();
    let first_x = cols_in.first().map(|&(j, l)| (j, l.index));
    let first_y = rows_in.first().map(|&(i, l)| (i, l.index));
    let variant = match g.kind {
        VariantKind::Plain => Variant::Plain,
        VariantKind::X => Variant::X { p: first_x?.1 },
        VariantKind::Y => Variant::Y { q: first_y?.1 },
        VariantKind::Xy => Variant::Xy {
            p: first_x?.1,
            q: first_y?.1,
        },
    };
    let start_col = if g.kind.drops_first_col() {
        first_x?.0
    } else {
        1
    };
    let start_row = if g.kind.drops_first_row() {
        first_y?.0
    } else {
        1
    };
    cols.insert(start_col);
    rows.insert(start_row);

    let mut at = Cell::new(start_row, start_col);
    let mut cells = vec![at];
    while at != corner {
        if !g.partition.contains(at) {
            return None;
        }
        let right = if at.row == r {
            true
        } else if at.col == s {
            false
        } else {
            let l = g.label(at)?;
            match l.axis {
                Axis::X => l.index >= r,
                Axis::Y => l.index < s,
            }
        };
        at = if right {
            Cell::new(at.row, *cols.range(at.col + 1..).next()?)
        } else {
            Cell::new(*rows.range(at.row + 1..).next()?, at.col)
        };
        cells.push(at);
    }
    Some((variant, WalkTrace::from_cells(cells)))
}

/// The inverse map; `None` when `G` is not in the image of `φ`.
pub fn phi_inverse(g: &ArrangementG) -> Option<ArrangementF> {
    let lambda = &g.partition;
    let corner = g.outer_corner;
    let (r, s) = (corner.row, corner.col);
    let (variant, walk) = walk_from_g(g)?;

    let mut slots: BTreeMap<Slot, Label> = BTreeMap::new();
    for (&c, &l) in &g.labels {
        let slot = if c.row == r {
            slot_in_row(corner, c.col + 1)
        } else if c.col == s {
            slot_in_col(corner, c.row + 1)
        } else {
            Slot::Cell(c)
        };
        slots.insert(slot, l);
    }
    for (slot, label) in seed_slots(variant, walk.cells[0], corner) {
        if slots.remove(&slot) != Some(label) {
            return None;
        }
    }
    let mut labels = BTreeMap::new();
    for m in moves_of(&walk) {
        labels.insert(m.from, slots.remove(&m.to)?);
    }
    for (slot, label) in slots {
        match slot {
            Slot::Cell(c) => {
                labels.insert(c, label);
            }
            _ => return None,
        }
    }
    let f = ArrangementF {
        partition: lambda.clone(),
        variant,
        labels,
    };
    validate_f(&f).then_some(f)
}

/// Odometer over per-cell label lists; the first cell changes slowest.
struct Odometer {
    choices: Vec<(Cell, Vec<Label>)>,
    digits: Vec<usize>,
    done: bool,
}

impl Odometer {
    fn new(choices: Vec<(Cell, Vec<Label>)>) -> Self {
        let done = choices.iter().any(|(_, ls)| ls.is_empty());
        let digits = vec![0; choices.len()];
        Self {
            choices,
            digits,
            done,
        }
    }
}

impl Iterator for Odometer {
    type Item = BTreeMap<Cell, Label>;
    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self
            .choices
            .iter()
            .zip(&self.digits)
            .map(|((c, ls), &d)| (*c, ls[d]))
            .collect();
        let mut k = self.digits.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] < self.choices[k].1.len() {
                break;
            }
            self.digits[k] = 0;
        }
        Some(out)
    }
}

fn f_choices(lambda: &Partition, kind: VariantKind) -> Vec<(Cell, Vec<Label>)> {
    kind.domain_cells(lambda)
        .into_iter()
        .map(|c| (c, f_labels(lambda, c)))
        .collect()
}

fn g_choices(lambda: &Partition, kind: VariantKind, corner: Cell) -> Vec<(Cell, Vec<Label>)> {
    kind.codomain_cells(lambda, corner)
        .into_iter()
        .map(|c| (c, g_labels(lambda, corner, c)))
        .collect()
}

/// Every left-side arrangement for `λ`, in reading order of cells and
/// `x_i..x_{λ'_j}, y_j..y_{λ_i}` order of labels.
pub fn enumerate_f(lambda: &Partition) -> impl Iterator<Item = ArrangementF> + '_ {
    enumerate_f_variant(lambda, VariantKind::Plain)
}

pub fn enumerate_f_variant(
    lambda: &Partition,
    kind: VariantKind,
) -> impl Iterator<Item = ArrangementF> + '_ {
    kind.variants(lambda).into_iter().flat_map(move |variant| {
        Odometer::new(f_choices(lambda, kind)).map(move |labels| ArrangementF {
            partition: lambda.clone(),
            variant,
            labels,
        })
    })
}

/// Every right-side arrangement, outer corners in increasing row order.
pub fn enumerate_g(lambda: &Partition) -> impl Iterator<Item = ArrangementG> + '_ {
    enumerate_g_variant(lambda, VariantKind::Plain)
}

pub fn enumerate_g_variant(
    lambda: &Partition,
    kind: VariantKind,
) -> impl Iterator<Item = ArrangementG> + '_ {
    lambda
        .outer_corners()
        .into_iter()
        .filter(move |&c| kind.allows_corner(c))
        .flat_map(move |corner| {
            Odometer::new(g_choices(lambda, kind, corner)).map(move |labels| ArrangementG {
                partition: lambda.clone(),
                kind,
                outer_corner: corner,
                labels,
            })
        })
}

/// `|F_λ|` for a variant, without enumerating.
pub fn count_f(lambda: &Partition, kind: VariantKind) -> u128 {
    let per: u128 = f_choices(lambda, kind)
        .iter()
        .map(|(_, l)| l.len() as u128)
        .product();
    kind.variants(lambda).len() as u128 * per
}

/// `|G_λ|` for a variant, without enumerating.
pub fn count_g(lambda: &Partition, kind: VariantKind) -> u128 {
    lambda
        .outer_corners()
        .into_iter()
        .filter(|&c| kind.allows_corner(c))
        .map(|corner| {
            g_choices(lambda, kind, corner)
                .iter()
                .map(|(_, l)| l.len() as u128)
                .product::<u128>()
        })
        .sum()
}

/// Draws a left-side arrangement with every cell's label uniform. Panics if
/// `kind` has no admissible parameters for `lambda`.
pub fn sample_f<R: Rng>(lambda: &Partition, kind: VariantKind, rng: &mut R) -> ArrangementF {
    let variants = kind.variants(lambda);
    let variant = variants[rng.gen_range(0..variants.len())];
    let labels = f_choices(lambda, kind)
        .into_iter()
        .map(|(c, ls)| (c, ls[rng.gen_range(0..ls.len())]))
        .collect();
    ArrangementF {
        partition: lambda.clone(),
        variant,
        labels,
    }
}

/// Outcome of running `φ` and `φ^{-1}` over a set of arrangements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub partition: Partition,
    pub kind: VariantKind,
    pub checked: usize,
    /// Arrangements with `φ(F)` admissible, `φ^{-1}(φ(F)) = F` and equal weights.
    pub round_trips: usize,
    pub domain_size: u128,
    pub codomain_size: u128,
    /// Distinct images among the checked arrangements.
    pub distinct_images: usize,
    /// `φ(φ^{-1}(G)) = G` for every arrangement of the right side (exhaustive runs only).
    pub inverse_round_trips: Option<usize>,
    pub first_failure: Option<ArrangementF>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        let exhaustive_ok = match self.inverse_round_trips {
            Some(n) => {
                n as u128 == self.codomain_size
                    && self.checked as u128 == self.domain_size
                    && self.distinct_images == self.checked
            }
            None => true,
        };
        self.round_trips == self.checked && self.domain_size == self.codomain_size && exhaustive_ok
    }
}

fn round_trip_ok(f: &ArrangementF) -> (bool, ArrangementG) {
    let g = phi(f);
    let ok = validate_g(&g) && g.weight() == f.weight() && phi_inverse(&g).as_ref() == Some(f);
    (ok, g)
}

fn check_all(
    lambda: &Partition,
    kind: VariantKind,
    fs: Vec<ArrangementF>,
    exhaustive: bool,
) -> BijectionReport {
    let results: Vec<(bool, ArrangementG)> = fs.par_iter().map(round_trip_ok).collect();
    let round_trips = results.iter().filter(|(ok, _)| *ok).count();
    let first_failure = fs
        .iter()
        .zip(&results)
        .find(|(_, (ok, _))| !ok)
        .map(|(f, _)| f.clone());
    let distinct_images = results.iter().map(|(_, g)| g).collect::<HashSet<_>>().len();
    let inverse_round_trips = exhaustive.then(|| {
        let gs: Vec<ArrangementG> = enumerate_g_variant(lambda, kind).collect();
        gs.par_iter()
            .filter(|g| phi_inverse(g).is_some_and(|f| phi(&f) == **g))
            .count()
    });
    BijectionReport {
        partition: lambda.clone(),
        kind,
        checked: fs.len(),
        round_trips,
        domain_size: count_f(lambda, kind),
        codomain_size: count_g(lambda, kind),
        distinct_images,
        inverse_round_trips,
        first_failure,
    }
}

/// Round trip over all of `F_λ`, plus the inverse round trip over all of `G_λ`.
pub fn check_exhaustive(lambda: &Partition, kind: VariantKind) -> BijectionReport {
    let fs: Vec<ArrangementF> = enumerate_f_variant(lambda, kind).collect();
    check_all(lambda, kind, fs, true)
}

/// Round trip over `samples` uniformly drawn arrangements.
pub fn check_sampled(
    lambda: &Partition,
    kind: VariantKind,
    samples: usize,
    seed: u64,
) -> BijectionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<ArrangementF> = (0..samples)
        .map(|_| sample_f(lambda, kind, &mut rng))
        .collect();
    check_all(lambda, kind, fs, false)
}

fn write_rows(
    f: &mut fmt::Formatter<'_>,
    lambda: &Partition,
    labels: &BTreeMap<Cell, Label>,
) -> fmt::Result {
    for i in 1..=lambda.len() as i64 {
        let row: Vec<String> = (1..=lambda.row_len(i))
            .map(|j| match labels.get(&Cell::new(i, j)) {
                Some(l) => label_token(*l),
                None => ".".to_string(),
            })
            .collect();
        writeln!(f, "{}", row.join(" "))?;
    }
    Ok(())
}

fn label_token(l: Label) -> String {
    match l.axis {
        Axis::X => format!("x{}", l.index),
        Axis::Y => format!("y{}", l.index),
    }
}

fn parse_label(tok: &str) -> Result<Label, ArrangementError> {
    let bad = || ArrangementError::Parse(format!("bad label {tok:?}"));
    let (axis, rest) = tok.split_at_checked(1).ok_or_else(bad)?;
    let index: i64 = rest.parse().map_err(|_| bad())?;
    if index < 1 {
        return Err(bad());
    }
    match axis {
        "x" => Ok(Variable::x(index)),
        "y" => Ok(Variable::y(index)),
        _ => Err(bad()),
    }
}

/// Reads rows of label tokens; the row lengths give the partition.
fn parse_rows<'a, I: Iterator<Item = &'a str>>(
    lines: I,
) -> Result<(Partition, BTreeMap<Cell, Label>), ArrangementError> {
    let mut parts = Vec::new();
    let mut labels = BTreeMap::new();
    for (i, line) in lines.enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        parts.push(toks.len() as i64);
        for (j, tok) in toks.iter().enumerate() {
            if *tok != "." {
                labels.insert(Cell::new(i as i64 + 1, j as i64 + 1), parse_label(tok)?);
            }
        }
    }
    let partition =
        Partition::from_parts(parts).map_err(|e| ArrangementError::Parse(e.to_string()))?;
    Ok((partition, labels))
}

fn content_lines(s: &str) -> impl Iterator<Item = &str> {
    s.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

impl fmt::Display for ArrangementF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seeds: Vec<String> = self
            .variant
            .x_seed()
            .into_iter()
            .chain(self.variant.y_seed())
            .map(label_token)
            .collect();
        if !seeds.is_empty() {
            writeln!(f, "prefactor {}", seeds.join(" "))?;
        }
        write_rows(f, &self.partition, &self.labels)
    }
}

impl fmt::Display for ArrangementG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "corner {} {}",
            self.outer_corner.row, self.outer_corner.col
        )?;
        match self.kind {
            VariantKind::Plain => writeln!(f)?,
            VariantKind::X => writeln!(f, " x")?,
            VariantKind::Y => writeln!(f, " y")?,
            VariantKind::Xy => writeln!(f, " xy")?,
        }
        write_rows(f, &self.partition, &self.labels)
    }
}

impl FromStr for ArrangementF {
    type Err = ArrangementError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = content_lines(s).peekable();
        let mut variant = Variant::Plain;
        if let Some(rest) = lines.peek().and_then(|l| l.strip_prefix("prefactor")) {
            let (mut p, mut q) = (None, None);
            for tok in rest.split_whitespace() {
                let l = parse_label(tok)?;
                let slot = if l.axis == Axis::X { &mut p } else { &mut q };
                if slot.replace(l.index).is_some() {
                    return Err(ArrangementError::Parse(format!(
                        "repeated prefactor {tok:?}"
                    )));
                }
            }
            variant = match (p, q) {
                (Some(p), None) => Variant::X { p },
                (None, Some(q)) => Variant::Y { q },
                (Some(p), Some(q)) => Variant::Xy { p, q },
                (None, None) => Variant::Plain,
            };
            lines.next();
        }
        let (partition, labels) = parse_rows(lines)?;
        let f = ArrangementF {
            partition: partition.clone(),
            variant,
            labels,
        };
        if validate_f(&f) {
            Ok(f)
        } else {
            Err(ArrangementError::Inadmissible(partition))
        }
    }
}

impl FromStr for ArrangementG {
    type Err = ArrangementError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = content_lines(s);
        let header = lines
            .next()
            .ok_or_else(|| ArrangementError::Parse("missing corner line".into()))?;
        let bad = || ArrangementError::Parse(format!("bad corner {header:?}"));
        let toks: Vec<&str> = match header.strip_prefix("corner") {
            Some(rest) => rest.split_whitespace().collect(),
            None => {
                return Err(ArrangementError::Parse(format!(
                    "expected corner line, got {header:?}"
                )))
            }
        };
        let (r, s, kind) = match toks[..] {
            [r, s] => (r, s, VariantKind::Plain),
            [r, s, "x"] => (r, s, VariantKind::X),
            [r, s, "y"] => (r, s, VariantKind::Y),
            [r, s, "xy"] => (r, s, VariantKind::Xy),
            _ => return Err(bad()),
        };
        let (r, s): (i64, i64) = (r.parse().map_err(|_| bad())?, s.parse().map_err(|_| bad())?);
        let (partition, labels) = parse_rows(lines)?;
        let g = ArrangementG {
            partition: partition.clone(),
            kind,
            outer_corner: Cell::new(r, s),
            labels,
        };
        if validate_g(&g) {
            Ok(g)
        } else {
            Err(ArrangementError::Inadmissible(partition))
        }
    }
}

/// The worked example: `λ = 988666542` with a walk
/// `(1,1) → (4,1) → (4,3) → (4,5) → (7,5) → (7,6)`.
pub const DEMO_ARRANGEMENT: &str = include_str!("../data/demo_988666542.txt");

pub fn demo_arrangement() -> ArrangementF {
    DEMO_ARRANGEMENT
        .parse()
        .expect("bundled arrangement is admissible")
}
