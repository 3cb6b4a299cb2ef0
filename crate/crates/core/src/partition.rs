//! Integer partitions and their Young diagrams.
//!
//! Cells use 1-based `(row, col)` matrix coordinates. A [`Cell`] may lie
//! anywhere in the plane; membership in the diagram is a predicate.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<i64>),
    #[error("parts must be positive, got {0:?}")]
    NonPositive(Vec<i64>),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("cell {0} is not in the diagram of {1}")]
    NotInDiagram(Cell, Partition),
    #[error("cell {0} is not a corner of {1}")]
    NotACorner(Cell, Partition),
    #[error("cell {0} is not an outer corner of {1}")]
    NotAnOuterCorner(Cell, Partition),
    #[error("rectangle {rows}x{cols} does not contain the diagram of {partition}")]
    RectangleTooSmall {
        partition: Partition,
        rows: usize,
        cols: usize,
    },
}

/// A square of the plane, `(row, col)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: i64,
    pub col: i64,
}

impl Cell {
    pub const fn new(row: i64, col: i64) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl From<(i64, i64)> for Cell {
    fn from((row, col): (i64, i64)) -> Self {
        Self { row, col }
    }
}

/// A partition `λ_1 ≥ λ_2 ≥ … ≥ λ_ℓ > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Validates and builds a partition. Trailing zeros are dropped.
    pub fn from_parts<I: IntoIterator<Item = i64>>(parts: I) -> Result<Self, PartitionError> {
        let mut raw: Vec<i64> = parts.into_iter().collect();
        while raw.last() == Some(&0) {
            raw.pop();
        }
        if raw.iter().any(|&p| p <= 0) {
            return Err(PartitionError::NonPositive(raw));
        }
        if raw.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(raw));
        }
        Ok(Self {
            parts: raw.into_iter().map(|p| p as usize).collect(),
        })
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts, `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_1`, or 0 for the empty partition.
    pub fn first_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn is_rectangle(&self) -> bool {
        self.parts.iter().all(|&p| p == self.first_part())
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first_part();
        let parts = (1..=cols)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Self { parts }
    }

    /// `λ_i` extended to every integer: `λ_1` for `i ≤ 0`, 0 past the last row.
    pub fn row_len(&self, i: i64) -> i64 {
        if i <= 0 {
            self.first_part() as i64
        } else {
            self.parts.get(i as usize - 1).map_or(0, |&p| p as i64)
        }
    }

    /// `λ'_j` extended to every integer: `ℓ(λ)` for `j ≤ 0`, 0 past the first row.
    pub fn col_len(&self, j: i64) -> i64 {
        if j <= 0 {
            self.len() as i64
        } else {
            self.parts.iter().take_while(|&&p| p as i64 >= j).count() as i64
        }
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.row_len(cell.row)
    }

    /// Cells of the diagram in reading order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as i64).map(move |j| Cell::new(i as i64 + 1, j)))
    }

    pub fn hook_length(&self, cell: Cell) -> Result<u64, PartitionError> {
        if !self.contains(cell) {
            return Err(PartitionError::NotInDiagram(cell, self.clone()));
        }
        Ok(self.hook_unchecked(cell))
    }

    pub(crate) fn hook_unchecked(&self, cell: Cell) -> u64 {
        (self.row_len(cell.row) + self.col_len(cell.col) - cell.row - cell.col + 1) as u64
    }

    pub fn hook_lengths(&self) -> Vec<u64> {
        self.cells().map(|c| self.hook_unchecked(c)).collect()
    }

    /// Cells `(i,j)` of the diagram with `(i+1,j)` and `(i,j+1)` outside it.
    pub fn corners(&self) -> Vec<Cell> {
        (1..=self.len() as i64)
            .filter(|&i| self.row_len(i + 1) < self.row_len(i))
            .map(|i| Cell::new(i, self.row_len(i)))
            .collect()
    }

    /// Cells outside the diagram whose addition leaves a Young diagram.
    pub fn outer_corners(&self) -> Vec<Cell> {
        (1..=self.len() as i64 + 1)
            .filter(|&i| i == 1 || self.row_len(i - 1) > self.row_len(i))
            .map(|i| Cell::new(i, self.row_len(i) + 1))
            .collect()
    }

    pub fn is_corner(&self, cell: Cell) -> bool {
        self.contains(cell)
            && !self.contains(Cell::new(cell.row + 1, cell.col))
            && !self.contains(Cell::new(cell.row, cell.col + 1))
    }

    pub fn is_outer_corner(&self, cell: Cell) -> bool {
        cell.row >= 1
            && cell.col >= 1
            && !self.contains(cell)
            && (cell.row == 1 || self.contains(Cell::new(cell.row - 1, cell.col)))
            && (cell.col == 1 || self.contains(Cell::new(cell.row, cell.col - 1)))
    }

    /// `λ + c` for an outer corner `c`.
    pub fn add_cell(&self, cell: Cell) -> Result<Partition, PartitionError> {
        if !self.is_outer_corner(cell) {
            return Err(PartitionError::NotAnOuterCorner(cell, self.clone()));
        }
        let mut parts = self.parts.clone();
        let row = cell.row as usize;
        if row > parts.len() {
            parts.push(1);
        } else {
            parts[row - 1] += 1;
        }
        Ok(Self { parts })
    }

    /// `λ − c` for a corner `c`.
    pub fn remove_cell(&self, cell: Cell) -> Result<Partition, PartitionError> {
        if !self.is_corner(cell) {
            return Err(PartitionError::NotACorner(cell, self.clone()));
        }
        let mut parts = self.parts.clone();
        let row = cell.row as usize;
        parts[row - 1] -= 1;
        if parts[row - 1] == 0 {
            parts.pop();
        }
        Ok(Self { parts })
    }

    /// The complement of the diagram inside the `rows × cols` rectangle,
    /// rotated by 180 degrees.
    pub fn complement(&self, rows: usize, cols: usize) -> Result<Partition, PartitionError> {
        if rows < self.len() || cols < self.first_part() {
            return Err(PartitionError::RectangleTooSmall {
                partition: self.clone(),
                rows,
                cols,
            });
        }
        let parts = std::iter::repeat_n(cols, rows - self.len())
            .chain(self.parts.iter().rev().map(|&p| cols - p))
            .filter(|&p| p > 0)
            .collect();
        Ok(Self { parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        if self.parts.iter().all(|&p| p <= 9) {
            for p in &self.parts {
                write!(f, "{p}")?;
            }
            Ok(())
        } else {
            let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
            f.write_str(&strs.join(","))?;
            if strs.len() == 1 {
                f.write_str(",")?;
            }
            Ok(())
        }
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Accepts a digit string (`"66532"`), a comma list (`"10,4,4"`), or
    /// `"()"` / `""` for the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Self::empty());
        }
        let parse_err = || PartitionError::Parse(s.to_string());
        let raw: Vec<i64> = if s.contains(',') {
            s.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<i64>().map_err(|_| parse_err()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(i64::from).ok_or_else(parse_err))
                .collect::<Result<_, _>>()?
        };
        Self::from_parts(raw)
    }
}

/// All partitions of `n`, in lexicographically descending order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(n, n, &mut current, &mut out);
    out
}

fn fill_partitions(
    remaining: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::from_sorted_unchecked(current.clone()));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill_partitions(remaining - part, part, current, out);
        current.pop();
    }
}

/// All partitions of every size in `0..=max_n`, smallest sizes first.
pub fn partitions_up_to(max_n: usize) -> Vec<Partition> {
    (0..=max_n).flat_map(partitions_of).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn from_parts_validates() {
        assert_eq!(
            Partition::from_parts([3, 2, 2]).unwrap().parts(),
            &[3, 2, 2]
        );
        assert!(Partition::from_parts(Vec::<i64>::new()).unwrap().is_empty());
        assert!(matches!(
            Partition::from_parts([2, 3]),
            Err(PartitionError::NotDecreasing(_))
        ));
        assert!(matches!(
            Partition::from_parts([2, -1]),
            Err(PartitionError::NonPositive(_))
        ));
        assert_eq!(Partition::from_parts([4, 1, 0, 0]).unwrap(), p("41"));
    }

    #[test]
    fn text_forms() {
        assert_eq!(p("66532").parts(), &[6, 6, 5, 3, 2]);
        assert_eq!(p("10,4,4").parts(), &[10, 4, 4]);
        assert_eq!(p("10,4,4").to_string(), "10,4,4");
        assert_eq!(p("3211").to_string(), "3211");
        assert_eq!(p("()"), Partition::empty());
        assert_eq!(Partition::empty().to_string(), "()");
        assert!("3a1".parse::<Partition>().is_err());
        assert!("12".parse::<Partition>().is_err());
    }

    #[test]
    fn conjugates() {
        assert_eq!(p("3211").conjugate(), p("421"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        // column counts of 66532 read off the diagram: 5,5,4,3,3,2
        assert_eq!(p("66532").conjugate(), p("554332"));
    }

    #[test]
    fn extended_lengths() {
        let lam = p("66532");
        assert_eq!(lam.row_len(-3), 6);
        assert_eq!(lam.row_len(0), 6);
        assert_eq!(lam.row_len(6), 0);
        assert_eq!(lam.row_len(3), 5);
        assert_eq!(lam.col_len(-1), 5);
        assert_eq!(lam.col_len(7), 0);
        assert_eq!(lam.col_len(4), 3);
    }

    #[test]
    fn hooks() {
        assert_eq!(p("66532").hook_length(Cell::new(2, 3)).unwrap(), 6);
        assert_eq!(p("322").hook_length(Cell::new(1, 1)).unwrap(), 5);
        let mut h = p("322").hook_lengths();
        h.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(h, vec![5, 4, 3, 2, 2, 1, 1]);
        assert!(p("322").hook_length(Cell::new(1, 4)).is_err());
        for c in p("66532").corners() {
            assert_eq!(p("66532").hook_length(c).unwrap(), 1);
        }
    }

    #[test]
    fn corner_lists() {
        assert_eq!(p("322").corners(), vec![Cell::new(1, 3), Cell::new(3, 2)]);
        assert_eq!(p("1").corners(), vec![Cell::new(1, 1)]);
        assert_eq!(p("4444").corners(), vec![Cell::new(4, 4)]);
        assert!(Partition::empty().corners().is_empty());
    }

    #[test]
    fn outer_corner_lists() {
        let cells = |v: &[(i64, i64)]| v.iter().map(|&c| Cell::from(c)).collect::<Vec<_>>();
        assert_eq!(
            p("3211").outer_corners(),
            cells(&[(1, 4), (2, 3), (3, 2), (5, 1)])
        );
        assert_eq!(Partition::empty().outer_corners(), cells(&[(1, 1)]));
        assert_eq!(p("322").outer_corners(), cells(&[(1, 4), (2, 3), (4, 1)]));
    }

    #[test]
    fn complements() {
        let lam = p("66532");
        assert_eq!(lam.complement(5, 6).unwrap(), p("431"));
        assert_eq!(lam.complement(5, 7).unwrap(), p("54211"));
        assert_eq!(lam.complement(8, 6).unwrap(), p("666431"));
        assert_eq!(lam.complement(6, 8).unwrap(), p("865322"));
        assert_eq!(p("333").complement(3, 3).unwrap(), Partition::empty());
        assert!(lam.complement(4, 6).is_err());
        assert!(lam.complement(5, 5).is_err());
    }

    #[test]
    fn adding_and_removing() {
        assert_eq!(p("322").add_cell(Cell::new(4, 1)).unwrap(), p("3221"));
        assert_eq!(p("322").remove_cell(Cell::new(1, 3)).unwrap(), p("222"));
        assert!(p("322").add_cell(Cell::new(2, 2)).is_err());
        assert!(p("322").remove_cell(Cell::new(2, 2)).is_err());
        assert_eq!(
            p("1").remove_cell(Cell::new(1, 1)).unwrap(),
            Partition::empty()
        );
        assert_eq!(
            Partition::empty().add_cell(Cell::new(1, 1)).unwrap(),
            p("1")
        );
    }

    #[test]
    fn enumeration() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        let four: Vec<String> = partitions_of(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(four, ["4", "31", "22", "211", "1111"]);
        assert_eq!(partitions_of(10).len(), partition_count_oracle(10));
        assert_eq!(partitions_of(15).len(), partition_count_oracle(15));
    }

    // Euler's pentagonal recurrence, independent of the generator above.
    fn partition_count_oracle(n: usize) -> usize {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n as i64 {
            let mut k = 1i64;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p[m as usize] += sign * p[(m - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= m {
                    p[m as usize] += sign * p[(m - g2) as usize];
                }
                k += 1;
            }
        }
        p[n] as usize
    }
}
