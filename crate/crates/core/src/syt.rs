//! Standard Young tableau counts and the recursions and content statistics
//! they satisfy.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::partition::{partitions_of, Cell, Partition};

/// `f^λ` via the hook-length formula `n! / ∏ h_z`.
pub fn syt_count(lambda: &Partition) -> BigUint {
    let n = lambda.size();
    let factorial: BigUint = (1..=n as u64).map(BigUint::from).product();
    let hooks: BigUint = lambda
        .hook_lengths()
        .into_iter()
        .map(BigUint::from)
        .product();
    factorial / hooks
}

fn f_int(lambda: &Partition) -> BigInt {
    BigInt::from(syt_count(lambda))
}

/// `f^λ = Σ_{c corner} f^{λ−c}`.
pub fn check_removal_recursion(lambda: &Partition) -> bool {
    if lambda.is_empty() {
        return true;
    }
    let sum: BigUint = lambda
        .corners()
        .into_iter()
        .map(|c| syt_count(&lambda.remove_cell(c).expect("corner")))
        .sum();
    sum == syt_count(lambda)
}

/// `(n+1) f^λ = Σ_{c outer corner} f^{λ+c}`.
pub fn check_addition_recursion(lambda: &Partition) -> bool {
    let sum: BigUint = lambda
        .outer_corners()
        .into_iter()
        .map(|c| syt_count(&lambda.add_cell(c).expect("outer corner")))
        .sum();
    sum == BigUint::from(lambda.size() as u64 + 1) * syt_count(lambda)
}

/// `Σ_{λ⊢n} (f^λ)² = n!`.
pub fn check_sum_squares(n: usize) -> bool {
    sum_of_squares(n) == (1..=n as u64).map(BigUint::from).product::<BigUint>()
}

pub fn sum_of_squares(n: usize) -> BigUint {
    partitions_of(n)
        .iter()
        .map(|p| {
            let f = syt_count(p);
            &f * &f
        })
        .sum()
}

/// The six recursions obtained by specializing the hook-walk terminal
/// distributions to equal weights, labelled by starting region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum NewRecursion {
    /// `ℓ f^λ = n Σ_c f^{λ−c} / (ℓ−r+s)`
    CornersR2,
    /// `λ_1 f^λ = n Σ_c f^{λ−c} / (λ_1+r−s)`
    CornersR3,
    /// `f^λ = n Σ_c f^{λ−c} / ((ℓ−r+s)(λ_1+r−s))`
    CornersR4,
    /// `(n+1)(ℓλ_1 − n) f^λ = Σ_c (ℓ−r+s)(λ_1+r−s) f^{λ+c}`
    OuterR5,
    /// `(n+1) ℓ f^λ = Σ_c (ℓ−r+s) f^{λ+c}`
    OuterR6,
    /// `(n+1) λ_1 f^λ = Σ_c (λ_1+r−s) f^{λ+c}`
    OuterR7,
}

impl NewRecursion {
    pub const ALL: [NewRecursion; 6] = [
        NewRecursion::CornersR2,
        NewRecursion::CornersR3,
        NewRecursion::CornersR4,
        NewRecursion::OuterR5,
        NewRecursion::OuterR6,
        NewRecursion::OuterR7,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RecursionStatus {
    /// Both the cleared-denominator integer form and the rational form hold.
    Holds,
    Fails {
        integer_form: bool,
        rational_form: bool,
    },
    Skipped {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursionCheck {
    pub recursion: NewRecursion,
    pub status: RecursionStatus,
}

/// One summand of a recursion: `weight · f^μ / denom`.
struct Summand {
    weight: BigInt,
    f: BigInt,
    denom: BigInt,
}

fn check_form(target: BigInt, summands: &[Summand]) -> RecursionStatus {
    // integer form: target · ∏ d = Σ weight·f·∏_{other} d
    let all: BigInt = summands.iter().map(|s| s.denom.clone()).product();
    let lhs_int = &target * &all;
    let rhs_int: BigInt = (0..summands.len())
        .map(|k| {
            let others: BigInt = summands
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != k)
                .map(|(_, s)| s.denom.clone())
                .product();
            &summands[k].weight * &summands[k].f * others
        })
        .sum();
    let integer_form = lhs_int == rhs_int;
    let rational: BigRational = summands
        .iter()
        .map(|s| BigRational::new(&s.weight * &s.f, s.denom.clone()))
        .sum();
    let rational_form = rational == BigRational::from_integer(target);
    if integer_form && rational_form {
        RecursionStatus::Holds
    } else {
        RecursionStatus::Fails {
            integer_form,
            rational_form,
        }
    }
}

pub fn check_new_recursion(lambda: &Partition, which: NewRecursion) -> RecursionCheck {
    let n = BigInt::from(lambda.size());
    let ell = lambda.len() as i64;
    let first = lambda.first_part() as i64;
    let f = f_int(lambda);
    let big = BigInt::from;

    let corner_summands = |denom: &dyn Fn(Cell) -> i64| -> Vec<Summand> {
        lambda
            .corners()
            .into_iter()
            .map(|c| Summand {
                weight: n.clone(),
                f: f_int(&lambda.remove_cell(c).expect("corner")),
                denom: big(denom(c)),
            })
            .collect()
    };
    let outer_summands = |weight: &dyn Fn(Cell) -> i64| -> Vec<Summand> {
        lambda
            .outer_corners()
            .into_iter()
            .map(|c| Summand {
                weight: big(weight(c)),
                f: f_int(&lambda.add_cell(c).expect("outer corner")),
                denom: BigInt::one(),
            })
            .collect()
    };
    let n1 = &n + 1;

    let status = match which {
        NewRecursion::CornersR2 | NewRecursion::CornersR3 | NewRecursion::CornersR4
            if lambda.is_empty() =>
        {
            RecursionStatus::Skipped {
                reason: "empty partition has no corners".into(),
            }
        }
        NewRecursion::CornersR2 => {
            check_form(big(ell) * &f, &corner_summands(&|c| ell - c.row + c.col))
        }
        NewRecursion::CornersR3 => check_form(
            big(first) * &f,
            &corner_summands(&|c| first + c.row - c.col),
        ),
        NewRecursion::CornersR4 => check_form(
            f.clone(),
            &corner_summands(&|c| (ell - c.row + c.col) * (first + c.row - c.col)),
        ),
        NewRecursion::OuterR5 if lambda.is_rectangle() => RecursionStatus::Skipped {
            reason: "rectangular shape: region R5 is empty".into(),
        },
        NewRecursion::OuterR5 => check_form(
            &n1 * (big(ell * first) - &n) * &f,
            &outer_summands(&|c| (ell - c.row + c.col) * (first + c.row - c.col)),
        ),
        NewRecursion::OuterR6 if lambda.is_empty() => RecursionStatus::Skipped {
            reason: "empty partition: region R6 is empty".into(),
        },
        NewRecursion::OuterR6 => check_form(
            &n1 * big(ell) * &f,
            &outer_summands(&|c| ell - c.row + c.col),
        ),
        NewRecursion::OuterR7 if lambda.is_empty() => RecursionStatus::Skipped {
            reason: "empty partition: region R7 is empty".into(),
        },
        NewRecursion::OuterR7 => check_form(
            &n1 * big(first) * &f,
            &outer_summands(&|c| first + c.row - c.col),
        ),
    };
    RecursionCheck {
        recursion: which,
        status,
    }
}

pub fn check_new_recursions(lambda: &Partition) -> Vec<RecursionCheck> {
    NewRecursion::ALL
        .iter()
        .map(|&w| check_new_recursion(lambda, w))
        .collect()
}

/// One outer corner `c = (r,s)` and the probability `f^{λ+c} / ((n+1) f^λ)`
/// that the cell added by row insertion is `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentRow {
    pub corner: Cell,
    /// `r − s`.
    pub content: i64,
    pub f: BigUint,
    pub probability: BigRational,
}

/// Distribution of the content of the cell added to `λ` by inserting a
/// uniform value into a uniform tableau.
///
/// Contents are stored as row minus column; the mean and variance do not
/// depend on that sign choice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentStats {
    pub partition: Partition,
    pub table: Vec<ContentRow>,
    pub mean: BigRational,
    pub variance: BigRational,
}

pub fn content_statistics(lambda: &Partition) -> ContentStats {
    let denom = BigInt::from(lambda.size() + 1) * f_int(lambda);
    let table: Vec<ContentRow> = lambda
        .outer_corners()
        .into_iter()
        .map(|c| {
            let f = syt_count(&lambda.add_cell(c).expect("outer corner"));
            ContentRow {
                corner: c,
                content: c.row - c.col,
                probability: BigRational::new(BigInt::from(f.clone()), denom.clone()),
                f,
            }
        })
        .collect();
    let moment = |k: u32| -> BigRational {
        table
            .iter()
            .map(|row| {
                &row.probability * BigRational::from_integer(BigInt::from(row.content.pow(k)))
            })
            .fold(BigRational::zero(), |a, b| a + b)
    };
    let mean = moment(1);
    let variance = moment(2) - &mean * &mean;
    ContentStats {
        partition: lambda.clone(),
        table,
        mean,
        variance,
    }
}
