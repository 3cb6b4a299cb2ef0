//! Sparse multivariate polynomials over the integers in commuting variables
//! `x_i`, `y_j` (any integer index), with exact rational evaluation and
//! randomized identity testing.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolynomialError {
    #[error("no value bound for variable {0}")]
    Unbound(Variable),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axis {
    X,
    Y,
}

/// A variable `x_i` or `y_j`. Ordered by axis, then index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub axis: Axis,
    pub index: i64,
}

impl Variable {
    pub const fn x(index: i64) -> Self {
        Self {
            axis: Axis::X,
            index,
        }
    }

    pub const fn y(index: i64) -> Self {
        Self {
            axis: Axis::Y,
            index,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.axis {
            Axis::X => 'x',
            Axis::Y => 'y',
        };
        if self.index >= 0 {
            write!(f, "{name}{}", self.index)
        } else {
            write!(f, "{name}({})", self.index)
        }
    }
}

/// A power product of variables. Entries are sorted by variable and carry
/// positive exponents only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    powers: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Variable) -> Self {
        Self {
            powers: vec![(v, 1)],
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// merging repeats and dropping zero exponents.
    pub fn from_powers<I: IntoIterator<Item = (Variable, u32)>>(powers: I) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0) += e;
        }
        Self {
            powers: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn powers(&self) -> &[(Variable, u32)] {
        &self.powers
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.powers.iter().map(|&(v, _)| v)
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.powers
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map_or(0, |k| self.powers[k].1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut a, mut b) = (
            self.powers.iter().peekable(),
            other.powers.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va < vb {
                        out.push((va, ea));
                        a.next();
                    } else if vb < va {
                        out.push((vb, eb));
                        b.next();
                    } else {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { powers: out }
    }
}

impl Ord for Monomial {
    /// Lexicographic order with `x_1 > x_2 > … > y_1 > y_2 > …`.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        for (&(va, ea), &(vb, eb)) in self.powers.iter().zip(&other.powers) {
            if va != vb {
                // The smaller variable is the lex-larger one; whoever has it wins.
                return if va < vb {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        self.powers.len().cmp(&other.powers.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.powers.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact rational values for variables.
pub type Assignment = BTreeMap<Variable, BigRational>;

/// Integer values for variables, used by randomized identity testing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntegerPoint {
    values: HashMap<Variable, u64>,
}

impl IntegerPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, v: Variable, value: u64) {
        self.values.insert(v, value);
    }

    pub fn get(&self, v: Variable) -> Option<u64> {
        self.values.get(&v).copied()
    }

    /// Sorted `(variable, value)` pairs.
    pub fn entries(&self) -> Vec<(Variable, u64)> {
        let mut out: Vec<_> = self.values.iter().map(|(&v, &x)| (v, x)).collect();
        out.sort_unstable();
        out
    }

    pub fn to_assignment(&self) -> Assignment {
        self.values
            .iter()
            .map(|(&v, &x)| (v, BigRational::from_integer(BigInt::from(x))))
            .collect()
    }
}

/// A polynomial with big-integer coefficients, kept in canonical form: no
/// zero coefficients, monomials ordered.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::term(Monomial::one(), c.into())
    }

    pub fn var(v: Variable) -> Self {
        Self::term(Monomial::var(v), BigInt::one())
    }

    pub fn term(m: Monomial, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Self { terms }
    }

    /// Sum of the listed variables, each with coefficient 1 (repeats add up).
    pub fn linear_form<I: IntoIterator<Item = Variable>>(vars: I) -> Self {
        let mut p = Self::zero();
        for v in vars {
            p.add_term(Monomial::var(v), BigInt::one());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    pub fn add_term(&mut self, m: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<BigRational, PolynomialError> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut value = BigRational::from_integer(c.clone());
            for &(v, e) in m.powers() {
                let x = assignment.get(&v).ok_or(PolynomialError::Unbound(v))?;
                value *= num_traits::pow(x.clone(), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Evaluation at an integer point. Uses 128-bit arithmetic when nothing
    /// overflows and falls back to big integers otherwise.
    pub fn evaluate_integer(&self, point: &IntegerPoint) -> Result<BigInt, PolynomialError> {
        if let Some(v) = self.evaluate_i128(point)? {
            return Ok(BigInt::from(v));
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for &(v, e) in m.powers() {
                let x = point.get(v).ok_or(PolynomialError::Unbound(v))?;
                value *= num_traits::pow(BigInt::from(x), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    fn evaluate_i128(&self, point: &IntegerPoint) -> Result<Option<i128>, PolynomialError> {
        let mut total: i128 = 0;
        for (m, c) in &self.terms {
            let Some(mut value) = c.to_i128() else {
                return Ok(None);
            };
            for &(v, e) in m.powers() {
                let x = point.get(v).ok_or(PolynomialError::Unbound(v))? as i128;
                for _ in 0..e {
                    match value.checked_mul(x) {
                        Some(y) => value = y,
                        None => return Ok(None),
                    }
                }
            }
            match total.checked_add(value) {
                Some(t) => total = t,
                None => return Ok(None),
            }
        }
        Ok(Some(total))
    }

    /// Applies `f` to every variable (a ring homomorphism on variables).
    pub fn rename<F: Fn(Variable) -> Variable>(&self, f: F) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let renamed = Monomial::from_powers(m.powers().iter().map(|&(v, e)| (f(v), e)));
            out.add_term(renamed, c.clone());
        }
        out
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A sum of products of polynomial factors, kept unexpanded so that large
/// identities can be evaluated without expansion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactoredSum {
    terms: Vec<Vec<Polynomial>>,
}

impl FactoredSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(factors: Vec<Polynomial>) -> Self {
        Self {
            terms: vec![factors],
        }
    }

    pub fn push(&mut self, factors: Vec<Polynomial>) {
        self.terms.push(factors);
    }

    /// Each summand as its list of factors; an empty list is the constant 1.
    pub fn summands(&self) -> &[Vec<Polynomial>] {
        &self.terms
    }

    pub fn summands_mut(&mut self) -> &mut Vec<Vec<Polynomial>> {
        &mut self.terms
    }

    pub fn expand(&self) -> Polynomial {
        let mut total = Polynomial::zero();
        for factors in &self.terms {
            let mut prod = Polynomial::one();
            for f in factors {
                prod = &prod * f;
            }
            total += &prod;
        }
        total
    }

    /// Upper bound on the total degree of the expansion.
    pub fn degree_bound(&self) -> u32 {
        self.terms
            .iter()
            .map(|fs| fs.iter().map(Polynomial::total_degree).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .iter()
            .flatten()
            .flat_map(|f| f.variables())
            .collect()
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<BigRational, PolynomialError> {
        let mut total = BigRational::zero();
        for factors in &self.terms {
            let mut prod = BigRational::one();
            for f in factors {
                prod *= f.evaluate(assignment)?;
            }
            total += prod;
        }
        Ok(total)
    }

    pub fn evaluate_integer(&self, point: &IntegerPoint) -> Result<BigInt, PolynomialError> {
        let mut total = BigInt::zero();
        for factors in &self.terms {
            let mut prod = BigInt::one();
            for f in factors {
                prod *= f.evaluate_integer(point)?;
                if prod.is_zero() {
                    break;
                }
            }
            total += prod;
        }
        Ok(total)
    }

    pub fn rename<F: Fn(Variable) -> Variable + Copy>(&self, f: F) -> FactoredSum {
        FactoredSum {
            terms: self
                .terms
                .iter()
                .map(|fs| fs.iter().map(|p| p.rename(f)).collect())
                .collect(),
        }
    }
}

impl From<Polynomial> for FactoredSum {
    fn from(p: Polynomial) -> Self {
        FactoredSum::single(vec![p])
    }
}

/// Evaluation points are drawn uniformly from the integers `1..=SAMPLE_MAX`.
pub const SAMPLE_MAX: u64 = 1 << 31;

/// Verdict of a randomized identity test.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomEvalOutcome {
    pub equal: bool,
    pub trials: usize,
    /// Probability that unequal polynomials pass every trial:
    /// `(degree / SAMPLE_MAX)^trials`.
    pub error_bound: f64,
    /// The first point where the two sides differ, if any.
    pub failing_point: Option<Vec<(Variable, u64)>>,
}

/// Draws `trials` random integer points using a ChaCha8 stream seeded by
/// `seed`. Each point binds every listed variable (in sorted order).
pub fn random_points(vars: &BTreeSet<Variable>, trials: usize, seed: u64) -> Vec<IntegerPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let mut point = IntegerPoint::new();
            for &v in vars {
                point.set(v, rng.gen_range(1..=SAMPLE_MAX));
            }
            point
        })
        .collect()
}

pub fn schwartz_zippel_bound(degree: u32, trials: usize) -> f64 {
    (degree as f64 / SAMPLE_MAX as f64).powi(trials as i32)
}

/// Randomized test of `lhs == rhs` on unexpanded sums of products.
pub fn factored_equal_by_random_evaluation(
    lhs: &FactoredSum,
    rhs: &FactoredSum,
    trials: usize,
    seed: u64,
) -> RandomEvalOutcome {
    let trials = trials.max(1);
    let mut vars = lhs.variables();
    vars.extend(rhs.variables());
    let degree = lhs.degree_bound().max(rhs.degree_bound());
    for point in random_points(&vars, trials, seed) {
        let a = lhs
            .evaluate_integer(&point)
            .expect("point binds every variable");
        let b = rhs
            .evaluate_integer(&point)
            .expect("point binds every variable");
        if a != b {
            return RandomEvalOutcome {
                equal: false,
                trials,
                error_bound: 0.0,
                failing_point: Some(point.entries()),
            };
        }
    }
    RandomEvalOutcome {
        equal: true,
        trials,
        error_bound: schwartz_zippel_bound(degree, trials),
        failing_point: None,
    }
}

/// Evaluates `p − q` at `trials` random integer points in `1..=2^31`.
pub fn equal_by_random_evaluation(
    p: &Polynomial,
    q: &Polynomial,
    trials: usize,
    seed: u64,
) -> RandomEvalOutcome {
    factored_equal_by_random_evaluation(&p.clone().into(), &q.clone().into(), trials, seed)
}
