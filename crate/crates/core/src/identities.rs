//! Both sides of the weighted branching identities for hook lengths, as
//! unexpanded sums of products of linear forms, plus their verification.
//!
//! The *ordinary* family (`wbr*`) sums over corners of `λ`; the
//! *complementary* family (`cwbr*`) sums over outer corners. Each family
//! comes with three variants that trade the prefactor on the left for
//! truncated products on the right.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::partition::{Cell, Partition};
use crate::polynomial::{
    factored_equal_by_random_evaluation, Assignment, FactoredSum, Polynomial, Variable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity {0:?} (expected one of wbr, wbr-x, wbr-y, wbr-xy, cwbr, cwbr-x, cwbr-y, cwbr-xy, y2)")]
    UnknownIdentity(String),
    #[error("{0} is stated for nonempty partitions only")]
    RequiresNonempty(IdentityId),
    #[error("full expansion of {identity} for {partition} exceeds the size bound n <= {bound}; use random evaluation")]
    ExpansionLimit {
        identity: IdentityId,
        partition: Partition,
        bound: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    Wbr,
    WbrX,
    WbrY,
    WbrXy,
    Cwbr,
    CwbrX,
    CwbrY,
    CwbrXy,
    Y2Reduced,
}

impl IdentityId {
    pub const ALL: [IdentityId; 9] = [
        IdentityId::Wbr,
        IdentityId::WbrX,
        IdentityId::WbrY,
        IdentityId::WbrXy,
        IdentityId::Cwbr,
        IdentityId::CwbrX,
        IdentityId::CwbrY,
        IdentityId::CwbrXy,
        IdentityId::Y2Reduced,
    ];

    /// The eight branching identities, without the reduced form.
    pub const BRANCHING: [IdentityId; 8] = [
        IdentityId::Wbr,
        IdentityId::WbrX,
        IdentityId::WbrY,
        IdentityId::WbrXy,
        IdentityId::Cwbr,
        IdentityId::CwbrX,
        IdentityId::CwbrY,
        IdentityId::CwbrXy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Wbr => "wbr",
            IdentityId::WbrX => "wbr-x",
            IdentityId::WbrY => "wbr-y",
            IdentityId::WbrXy => "wbr-xy",
            IdentityId::Cwbr => "cwbr",
            IdentityId::CwbrX => "cwbr-x",
            IdentityId::CwbrY => "cwbr-y",
            IdentityId::CwbrXy => "cwbr-xy",
            IdentityId::Y2Reduced => "y2",
        }
    }

    pub fn is_ordinary(self) -> bool {
        matches!(
            self,
            IdentityId::Wbr | IdentityId::WbrX | IdentityId::WbrY | IdentityId::WbrXy
        )
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| IdentityError::UnknownIdentity(s.to_string()))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Which prefactor/truncation variant of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Variant {
    Plain,
    X,
    Y,
    Xy,
}

impl Variant {
    fn skips_first_col(self) -> bool {
        matches!(self, Variant::X | Variant::Xy)
    }
    fn skips_first_row(self) -> bool {
        matches!(self, Variant::Y | Variant::Xy)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySides {
    pub lhs: FactoredSum,
    pub rhs: FactoredSum,
}

/// `x_{x_lo} + … + x_{x_hi} + y_{y_lo} + … + y_{y_hi}`; empty ranges contribute nothing.
pub fn range_form(x_lo: i64, x_hi: i64, y_lo: i64, y_hi: i64) -> Polynomial {
    Polynomial::linear_form(
        (x_lo..=x_hi)
            .map(Variable::x)
            .chain((y_lo..=y_hi).map(Variable::y)),
    )
}

/// The weighted `h + 1` of a cell: `x_i + … + x_{λ'_j} + y_j + … + y_{λ_i}`.
fn cell_form(lambda: &Partition, c: Cell) -> Polynomial {
    range_form(c.row, lambda.col_len(c.col), c.col, lambda.row_len(c.row))
}

/// The weighted `h − 1` of a cell: `x_{i+1} + … + x_{λ'_j} + y_{j+1} + … + y_{λ_i}`.
fn cell_form_minus(lambda: &Partition, c: Cell) -> Polynomial {
    range_form(
        c.row + 1,
        lambda.col_len(c.col),
        c.col + 1,
        lambda.row_len(c.row),
    )
}

fn x_sum(lambda: &Partition) -> Polynomial {
    range_form(1, lambda.len() as i64, 1, 0)
}

fn y_sum(lambda: &Partition) -> Polynomial {
    range_form(1, 0, 1, lambda.first_part() as i64)
}

/// `Σ x_p y_q` over cells `(p,q)` of the bounding rectangle outside `[λ]`.
pub fn xy_prefactor_direct(lambda: &Partition) -> Polynomial {
    let mut out = Polynomial::zero();
    for p in 1..=lambda.len() as i64 {
        for q in 1..=lambda.first_part() as i64 {
            if !lambda.contains(Cell::new(p, q)) {
                out += &(&Polynomial::var(Variable::x(p)) * &Polynomial::var(Variable::y(q)));
            }
        }
    }
    out
}

/// The same prefactor written as `(Σ x_p)(Σ y_q) − Σ_{(p,q)∈[λ]} x_p y_q`.
pub fn xy_prefactor_algebraic(lambda: &Partition) -> Polynomial {
    &(&x_sum(lambda) * &y_sum(lambda)) - &diagram_xy_sum(lambda)
}

fn diagram_xy_sum(lambda: &Partition) -> Polynomial {
    let mut out = Polynomial::zero();
    for c in lambda.cells() {
        out += &(&Polynomial::var(Variable::x(c.row)) * &Polynomial::var(Variable::y(c.col)));
    }
    out
}

fn complementary_family(lambda: &Partition, variant: Variant) -> IdentitySides {
    let keep_cell = |c: &Cell| {
        !(variant.skips_first_col() && c.col == 1) && !(variant.skips_first_row() && c.row == 1)
    };
    let keep_corner = |c: &Cell| {
        !(variant.skips_first_col() && c.col == 1) && !(variant.skips_first_row() && c.row == 1)
    };
    let cells: Vec<Cell> = lambda.cells().filter(keep_cell).collect();

    let mut lhs_factors: Vec<Polynomial> = match variant {
        Variant::Plain => vec![],
        Variant::X => vec![x_sum(lambda)],
        Variant::Y => vec![y_sum(lambda)],
        Variant::Xy => vec![xy_prefactor_direct(lambda)],
    };
    lhs_factors.extend(cells.iter().map(|&c| cell_form(lambda, c)));

    let mut rhs = FactoredSum::new();
    for oc in lambda.outer_corners().into_iter().filter(keep_corner) {
        let (r, s) = (oc.row, oc.col);
        let mut factors: Vec<Polynomial> = cells
            .iter()
            .filter(|c| c.row != r && c.col != s)
            .map(|&c| cell_form(lambda, c))
            .collect();
        factors.extend((1..r).map(|i| range_form(i + 1, r - 1, s, lambda.row_len(i))));
        factors.extend((1..s).map(|j| range_form(r, lambda.col_len(j), j + 1, s - 1)));
        rhs.push(factors);
    }
    IdentitySides {
        lhs: FactoredSum::single(lhs_factors),
        rhs,
    }
}

fn ordinary_family(lambda: &Partition, variant: Variant) -> IdentitySides {
    let corners = lambda.corners();
    let inner: Vec<Cell> = lambda.cells().filter(|c| !corners.contains(c)).collect();

    let mut lhs_factors: Vec<Polynomial> = match variant {
        Variant::Plain => vec![diagram_xy_sum(lambda)],
        Variant::X => vec![x_sum(lambda)],
        Variant::Y => vec![y_sum(lambda)],
        Variant::Xy => vec![],
    };
    lhs_factors.extend(inner.iter().map(|&c| cell_form_minus(lambda, c)));

    let first_i = if variant.skips_first_row() { 2 } else { 1 };
    let first_j = if variant.skips_first_col() { 2 } else { 1 };
    let mut rhs = FactoredSum::new();
    for c in &corners {
        let (r, s) = (c.row, c.col);
        let mut factors: Vec<Polynomial> = inner
            .iter()
            .filter(|c| c.row != r && c.col != s)
            .map(|&c| cell_form_minus(lambda, c))
            .collect();
        factors.extend((first_i..=r).map(|i| range_form(i, r, s + 1, lambda.row_len(i))));
        factors.extend((first_j..=s).map(|j| range_form(r + 1, lambda.col_len(j), j, s)));
        rhs.push(factors);
    }
    IdentitySides {
        lhs: FactoredSum::single(lhs_factors),
        rhs,
    }
}

/// Rows `i > 1` holding an outer corner, and columns of outer corners below row 1.
pub fn reduction_index_sets(lambda: &Partition) -> (BTreeSet<i64>, BTreeSet<i64>) {
    let ocs = lambda.outer_corners();
    let rows = ocs.iter().filter(|c| c.row > 1).map(|c| c.row).collect();
    let cols = ocs.iter().filter(|c| c.row > 1).map(|c| c.col).collect();
    (rows, cols)
}

/// The `y`-variant of the complementary rule after cancelling every factor
/// that occurs on both sides: only cells in rows `I` and columns `J`
/// (see [`reduction_index_sets`]) keep their factors.
pub fn y2_reduced_sides(lambda: &Partition) -> IdentitySides {
    let (rows, cols) = reduction_index_sets(lambda);
    let cells: Vec<Cell> = lambda
        .cells()
        .filter(|c| c.row != 1 && rows.contains(&c.row) && cols.contains(&c.col))
        .collect();
    let mut lhs_factors = vec![y_sum(lambda)];
    lhs_factors.extend(cells.iter().map(|&c| cell_form(lambda, c)));

    let mut rhs = FactoredSum::new();
    for oc in lambda.outer_corners().into_iter().filter(|c| c.row != 1) {
        let (r, s) = (oc.row, oc.col);
        let mut factors: Vec<Polynomial> = cells
            .iter()
            .filter(|c| c.row != r && c.col != s)
            .map(|&c| cell_form(lambda, c))
            .collect();
        factors.extend(
            (1..r)
                .filter(|i| rows.contains(&(i + 1)))
                .map(|i| range_form(i + 1, r - 1, s, lambda.row_len(i))),
        );
        factors.extend(
            (1..s)
                .filter(|j| cols.contains(&(j + 1)))
                .map(|j| range_form(r, lambda.col_len(j), j + 1, s - 1)),
        );
        rhs.push(factors);
    }
    IdentitySides {
        lhs: FactoredSum::single(lhs_factors),
        rhs,
    }
}

/// The `y`-variant of the ordinary rule for `μ`, keeping only factors
/// indexed by rows and columns of corners of `μ`.
pub fn reduced_wbr_y_sides(mu: &Partition) -> IdentitySides {
    let corners = mu.corners();
    let rows: BTreeSet<i64> = corners.iter().map(|c| c.row).collect();
    let cols: BTreeSet<i64> = corners.iter().map(|c| c.col).collect();
    let inner: Vec<Cell> = mu
        .cells()
        .filter(|c| !corners.contains(c) && rows.contains(&c.row) && cols.contains(&c.col))
        .collect();
    let mut lhs_factors = vec![y_sum(mu)];
    lhs_factors.extend(inner.iter().map(|&c| cell_form_minus(mu, c)));

    let mut rhs = FactoredSum::new();
    for c in &corners {
        let (r, s) = (c.row, c.col);
        let mut factors: Vec<Polynomial> = inner
            .iter()
            .filter(|c| c.row != r && c.col != s)
            .map(|&c| cell_form_minus(mu, c))
            .collect();
        factors.extend(
            (2..=r)
                .filter(|i| rows.contains(&(i - 1)))
                .map(|i| range_form(i, r, s + 1, mu.row_len(i))),
        );
        // The j = 1 factor never cancels.
        factors.extend(
            (1..=s)
                .filter(|&j| j == 1 || cols.contains(&(j - 1)))
                .map(|j| range_form(r + 1, mu.col_len(j), j, s)),
        );
        rhs.push(factors);
    }
    IdentitySides {
        lhs: FactoredSum::single(lhs_factors),
        rhs,
    }
}

pub fn sides(id: IdentityId, lambda: &Partition) -> Result<IdentitySides, IdentityError> {
    if id.is_ordinary() && lambda.is_empty() {
        return Err(IdentityError::RequiresNonempty(id));
    }
    Ok(match id {
        IdentityId::Wbr => ordinary_family(lambda, Variant::Plain),
        IdentityId::WbrX => ordinary_family(lambda, Variant::X),
        IdentityId::WbrY => ordinary_family(lambda, Variant::Y),
        IdentityId::WbrXy => ordinary_family(lambda, Variant::Xy),
        IdentityId::Cwbr => complementary_family(lambda, Variant::Plain),
        IdentityId::CwbrX => complementary_family(lambda, Variant::X),
        IdentityId::CwbrY => complementary_family(lambda, Variant::Y),
        IdentityId::CwbrXy => complementary_family(lambda, Variant::Xy),
        IdentityId::Y2Reduced => y2_reduced_sides(lambda),
    })
}

/// `∏_{(i,j)∈[λ]} (x_i + … + x_{λ'_j} + y_j + … + y_{λ_i})`, expanded.
pub fn cwbr_lhs(lambda: &Partition) -> Polynomial {
    complementary_family(lambda, Variant::Plain).lhs.expand()
}

/// The outer-corner sum of the complementary rule, expanded.
pub fn cwbr_rhs(lambda: &Partition) -> Polynomial {
    complementary_family(lambda, Variant::Plain).rhs.expand()
}

/// Left and right sides of `cwbr-x`, `cwbr-y` or `cwbr-xy`, expanded.
pub fn cwbr_variant_sides(id: IdentityId, lambda: &Partition) -> Option<(Polynomial, Polynomial)> {
    let variant = match id {
        IdentityId::CwbrX => Variant::X,
        IdentityId::CwbrY => Variant::Y,
        IdentityId::CwbrXy => Variant::Xy,
        _ => return None,
    };
    let s = complementary_family(lambda, variant);
    Some((s.lhs.expand(), s.rhs.expand()))
}

/// Left and right sides of one of the ordinary identities, expanded.
pub fn wbr_sides(id: IdentityId, lambda: &Partition) -> Option<(Polynomial, Polynomial)> {
    if !id.is_ordinary() {
        return None;
    }
    let s = sides(id, lambda).ok()?;
    Some((s.lhs.expand(), s.rhs.expand()))
}

fn all_ones(sum: &FactoredSum) -> BigInt {
    let ones: Assignment = sum
        .variables()
        .into_iter()
        .map(|v| (v, BigRational::one()))
        .collect();
    sum.evaluate(&ones)
        .expect("all variables bound")
        .to_integer()
}

/// Both sides at `x_i = y_j = 1`.
pub fn specialize_all_ones(
    id: IdentityId,
    lambda: &Partition,
) -> Result<(BigInt, BigInt), IdentityError> {
    let s = sides(id, lambda)?;
    Ok((all_ones(&s.lhs), all_ones(&s.rhs)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    FullExpansion,
    RandomEval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    FullExpansion,
    RandomEval { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest `n` for which full expansion is attempted.
    pub expansion_bound: usize,
    /// When set, exceeding the bound is an error instead of a fallback.
    pub strict: bool,
    pub fallback_trials: usize,
    pub fallback_seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            expansion_bound: 8,
            strict: false,
            fallback_trials: 16,
            fallback_seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerificationDetail {
    Expansion {
        lhs_terms: usize,
        rhs_terms: usize,
        difference_terms: usize,
    },
    RandomEval {
        trials: usize,
        seed: u64,
        error_bound: f64,
        failing_point: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: IdentityId,
    #[serde(serialize_with = "serialize_display")]
    pub partition: Partition,
    pub mode: ModeKind,
    pub verdict: bool,
    pub detail: VerificationDetail,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn serialize_display<T: fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Compares two pairs of sides, either by full expansion or by exact
/// evaluation at random integer points.
pub fn compare_sides(
    lhs: &FactoredSum,
    rhs: &FactoredSum,
    mode: VerifyMode,
) -> (bool, ModeKind, VerificationDetail) {
    match mode {
        VerifyMode::FullExpansion => {
            let (a, b) = (lhs.expand(), rhs.expand());
            let diff = &a - &b;
            (
                diff.is_zero(),
                ModeKind::FullExpansion,
                VerificationDetail::Expansion {
                    lhs_terms: a.num_terms(),
                    rhs_terms: b.num_terms(),
                    difference_terms: diff.num_terms(),
                },
            )
        }
        VerifyMode::RandomEval { trials, seed } => {
            let out = factored_equal_by_random_evaluation(lhs, rhs, trials, seed);
            let failing_point = out.failing_point.map(|pt| {
                pt.iter()
                    .map(|(v, x)| format!("{v}={x}"))
                    .collect::<Vec<_>>()
                    .join(",")
            });
            (
                out.equal,
                ModeKind::RandomEval,
                VerificationDetail::RandomEval {
                    trials: out.trials,
                    seed,
                    error_bound: out.error_bound,
                    failing_point,
                },
            )
        }
    }
}

fn resolve_mode(
    id: IdentityId,
    lambda: &Partition,
    mode: VerifyMode,
    options: &VerifyOptions,
) -> Result<(VerifyMode, Option<String>), IdentityError> {
    if mode == VerifyMode::FullExpansion && lambda.size() > options.expansion_bound {
        if options.strict {
            return Err(IdentityError::ExpansionLimit {
                identity: id,
                partition: lambda.clone(),
                bound: options.expansion_bound,
            });
        }
        let fallback = VerifyMode::RandomEval {
            trials: options.fallback_trials,
            seed: options.fallback_seed,
        };
        let note = format!(
            "n = {} exceeds the full-expansion bound {}; fell back to random evaluation",
            lambda.size(),
            options.expansion_bound
        );
        return Ok((fallback, Some(note)));
    }
    Ok((mode, None))
}

pub fn verify_sides(
    id: IdentityId,
    lambda: &Partition,
    sides: &IdentitySides,
    mode: VerifyMode,
    options: &VerifyOptions,
) -> Result<VerificationReport, IdentityError> {
    let (mode, note) = resolve_mode(id, lambda, mode, options)?;
    let (verdict, mode, detail) = compare_sides(&sides.lhs, &sides.rhs, mode);
    Ok(VerificationReport {
        identity: id,
        partition: lambda.clone(),
        mode,
        verdict,
        detail,
        note,
    })
}

pub fn verify(
    id: IdentityId,
    lambda: &Partition,
    mode: VerifyMode,
    options: &VerifyOptions,
) -> Result<VerificationReport, IdentityError> {
    let s = sides(id, lambda)?;
    verify_sides(id, lambda, &s, mode, options)
}

/// Removes every factor that occurs in the (single-product) left side and
/// in every summand of the right side, with multiplicity. The first
/// `protected` factors of the left side (its prefactor) are kept.
pub fn cancel_common_factors(sides: &IdentitySides, protected: usize) -> IdentitySides {
    let [lhs] = sides.lhs.summands() else {
        return sides.clone();
    };
    let mut common: Vec<Polynomial> = lhs.iter().skip(protected).cloned().collect();
    for summand in sides.rhs.summands() {
        let mut pool = summand.clone();
        common.retain(|f| match pool.iter().position(|g| g == f) {
            Some(k) => {
                pool.swap_remove(k);
                true
            }
            None => false,
        });
    }
    let strip = |factors: &[Polynomial]| -> Vec<Polynomial> {
        let mut remove = common.clone();
        factors
            .iter()
            .filter(|f| match remove.iter().position(|g| g == *f) {
                Some(k) => {
                    remove.swap_remove(k);
                    false
                }
                None => true,
            })
            .cloned()
            .collect()
    };
    let mut rhs = FactoredSum::new();
    for summand in sides.rhs.summands() {
        rhs.push(strip(summand));
    }
    let mut kept = lhs[..protected.min(lhs.len())].to_vec();
    kept.extend(strip(&lhs[protected.min(lhs.len())..]));
    IdentitySides {
        lhs: FactoredSum::single(kept),
        rhs,
    }
}

fn prefactor_len(id: IdentityId) -> usize {
    match id {
        IdentityId::Cwbr | IdentityId::WbrXy => 0,
        _ => 1,
    }
}

/// Which complementary identity is related to an ordinary identity of a
/// complementary partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplementFamily {
    /// `cwbr-y` ↔ `wbr-y` of the complement in `(ℓ+1) × λ_1`, through the
    /// explicit reduced form `y2`.
    Y,
    /// `cwbr` ↔ `wbr-xy`, rectangle `(ℓ+1) × (λ_1+1)`.
    Cwbr,
    /// `cwbr-x` ↔ `wbr-x`, rectangle `ℓ × (λ_1+1)`.
    X,
    /// `cwbr-xy` ↔ `wbr`, rectangle `ℓ × λ_1`.
    Xy,
}

impl ComplementFamily {
    pub fn identities(self) -> (IdentityId, IdentityId) {
        match self {
            ComplementFamily::Y => (IdentityId::Y2Reduced, IdentityId::WbrY),
            ComplementFamily::Cwbr => (IdentityId::Cwbr, IdentityId::WbrXy),
            ComplementFamily::X => (IdentityId::CwbrX, IdentityId::WbrX),
            ComplementFamily::Xy => (IdentityId::CwbrXy, IdentityId::Wbr),
        }
    }

    pub fn rectangle(self, lambda: &Partition) -> (usize, usize) {
        let (l, b) = (lambda.len(), lambda.first_part());
        match self {
            ComplementFamily::Y => (l + 1, b),
            ComplementFamily::Cwbr => (l + 1, b + 1),
            ComplementFamily::X => (l, b + 1),
            ComplementFamily::Xy => (l, b),
        }
    }
}

/// The reversal `x_i ↦ x_{a+1−i}`, `y_j ↦ y_{b+1−j}` for an `a × b` rectangle.
pub fn reverse_indices(rows: usize, cols: usize) -> impl Fn(Variable) -> Variable + Copy {
    move |v| match v.axis {
        crate::polynomial::Axis::X => Variable::x(rows as i64 + 1 - v.index),
        crate::polynomial::Axis::Y => Variable::y(cols as i64 + 1 - v.index),
    }
}

/// The complementary and reduced-ordinary sides being compared by
/// [`complement_equivalence_check`].
pub fn complement_pair(
    lambda: &Partition,
    family: ComplementFamily,
) -> Result<(Partition, IdentitySides, IdentitySides), IdentityError> {
    let (complementary, ordinary) = family.identities();
    if lambda.is_empty() {
        return Err(IdentityError::RequiresNonempty(complementary));
    }
    let (rows, cols) = family.rectangle(lambda);
    let mu = lambda
        .complement(rows, cols)
        .expect("rectangle contains the diagram");
    if mu.is_empty() {
        return Err(IdentityError::RequiresNonempty(ordinary));
    }
    let (own, other) = match family {
        ComplementFamily::Y => (y2_reduced_sides(lambda), reduced_wbr_y_sides(&mu)),
        _ => (
            cancel_common_factors(&sides(complementary, lambda)?, prefactor_len(complementary)),
            cancel_common_factors(&sides(ordinary, &mu)?, prefactor_len(ordinary)),
        ),
    };
    let flip = reverse_indices(rows, cols);
    let other = IdentitySides {
        lhs: other.lhs.rename(flip),
        rhs: other.rhs.rename(flip),
    };
    Ok((mu, own, other))
}

/// Writes the reduced ordinary identity for the complementary partition,
/// reverses its indices, and compares both sides with the reduced
/// complementary identity of `λ`.
pub fn complement_equivalence_check(
    lambda: &Partition,
    family: ComplementFamily,
    mode: VerifyMode,
) -> Result<VerificationReport, IdentityError> {
    let (mu, own, other) = complement_pair(lambda, family)?;
    let (lhs_ok, kind, lhs_detail) = compare_sides(&own.lhs, &other.lhs, mode);
    let (rhs_ok, _, rhs_detail) = compare_sides(&own.rhs, &other.rhs, mode);
    let (identity, _) = family.identities();
    let detail = if lhs_ok { rhs_detail } else { lhs_detail };
    Ok(VerificationReport {
        identity,
        partition: lambda.clone(),
        mode: kind,
        verdict: lhs_ok && rhs_ok,
        detail,
        note: Some(format!("complement {mu}")),
    })
}
