//! Integer-sequence combinatorics: partitions, dominant weights, rectangle
//! complements, the Weyl dimension formula, and Littlewood-Richardson
//! coefficients.
//!
//! Everything here is pure and exact. Partitions are stored without trailing
//! zeros so that equality is plain data equality; padding to a fixed length
//! happens only when a [`Weight`] is built.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A partition: weakly decreasing nonnegative integers, trailing zeros
/// stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(
                parts.iter().map(|&p| p as i64).collect(),
            ));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Nonzero parts, largest first.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// The i-th part, zero beyond the stored rows.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// First part, i.e. the number of columns of the diagram.
    pub fn first(&self) -> u32 {
        self.part(0)
    }

    /// Total number of boxes.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.first() as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Mirrored complement inside a `rows` x `width` rectangle:
    /// the i-th part of the result is `width - part(rows - 1 - i)`.
    ///
    /// An involution for fixed rectangle, and box counts add up to the
    /// rectangle area.
    pub fn complement(&self, rows: usize, width: u32) -> Result<Partition> {
        if self.rows() > rows || self.first() > width {
            return Err(Error::RectangleOverflow {
                partition: self.parts.clone(),
                rows,
                width,
            });
        }
        let parts = (0..rows).map(|i| width - self.part(rows - 1 - i)).collect();
        Partition::new(parts)
    }

    /// Does this diagram contain `other`?
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.rows()).all(|i| self.part(i) >= other.part(i))
    }
}

/// An integer vector of fixed length; entries may be negative. The length is
/// part of the value and never changes after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    entries: Vec<i64>,
}

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Weight { entries }
    }

    /// A weight that is checked to be weakly decreasing.
    pub fn dominant(entries: Vec<i64>) -> Result<Self> {
        let w = Weight::new(entries);
        if w.is_dominant() {
            Ok(w)
        } else {
            Err(Error::NotDominant(w.entries))
        }
    }

    /// Pad a partition with zeros up to `len` entries.
    pub fn from_partition(p: &Partition, len: usize) -> Result<Self> {
        if p.rows() > len {
            return Err(Error::WeightLength {
                got: p.rows(),
                expected: len,
            });
        }
        Ok(Weight::new((0..len).map(|i| p.part(i) as i64).collect()))
    }

    pub fn is_dominant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// All entries shifted by the same constant.
    pub fn shifted(&self, c: i64) -> Weight {
        Weight::new(self.entries.iter().map(|&e| e + c).collect())
    }

    /// The weight of the dual representation: reversed and negated.
    pub fn reversed_negated(&self) -> Weight {
        Weight::new(self.entries.iter().rev().map(|&e| -e).collect())
    }

    pub fn concat(&self, other: &Weight) -> Weight {
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        Weight::new(e)
    }

    /// Largest minus smallest entry; zero for the empty weight.
    pub fn spread(&self) -> i64 {
        match (self.entries.iter().max(), self.entries.iter().min()) {
            (Some(a), Some(b)) => a - b,
            _ => 0,
        }
    }

    /// Split a dominant weight as partition plus constant shift, with the
    /// shift chosen as the last entry so the partition has a zero tail.
    pub fn to_partition(&self) -> (Partition, i64) {
        let shift = self.entries.last().copied().unwrap_or(0);
        let parts = self
            .entries
            .iter()
            .map(|&e| u32::try_from(e - shift).expect("dominant weight"))
            .collect();
        (
            Partition::new(parts).expect("dominant weight"),
            shift,
        )
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Dimension of the irreducible GL(m) representation with highest weight
/// `nu`, by the Weyl formula
///
/// ```text
/// dim = prod_{1 <= i < j <= m} (nu_i - nu_j + j - i) / (j - i)
/// ```
///
/// The numerator is accumulated exactly and divided by the denominator
/// product at the end; the division is asserted exact, so no rational
/// intermediates appear. Invariant under shifting all entries by a constant.
pub fn weyl_dimension(nu: &Weight) -> Result<BigUint> {
    if !nu.is_dominant() {
        return Err(Error::NotDominant(nu.entries().to_vec()));
    }
    let e = nu.entries();
    let m = e.len();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m {
        for j in i + 1..m {
            let d = (j - i) as u64;
            num *= (e[i] - e[j]) as u64 + d;
            den *= d;
        }
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "Weyl numerator must be divisible by the denominator");
    Ok(q)
}

/// Littlewood-Richardson decomposition of `S_lambda (x) S_mu` in GL(m):
/// all `nu` with at most `m` rows and `|nu| = |lambda| + |mu|`, paired with
/// the coefficient `c^nu_{lambda,mu} > 0`.
///
/// Coefficients are counted as skew tableaux of shape `nu/lambda` and
/// content `mu` whose reverse reading word is a lattice word. Shapes with
/// more than `m` rows are dropped (they vanish in an m-dimensional space);
/// if `lambda` or `mu` itself exceeds `m` rows the product is empty.
///
/// The dimension identity
/// `sum c * dim(nu) = dim(lambda) * dim(mu)` (all padded to length m)
/// cross-checks the enumeration and is asserted in the test suite.
pub fn littlewood_richardson(
    lambda: &Partition,
    mu: &Partition,
    m: usize,
) -> Vec<(Partition, u64)> {
    if lambda.rows() > m || mu.rows() > m {
        return Vec::new();
    }
    let total = lambda.size() + mu.size();
    let width_cap = lambda.first() + mu.first();
    let mut out: BTreeMap<Partition, u64> = BTreeMap::new();
    let mut stack = Vec::with_capacity(m);
    candidate_shapes(lambda, m, total, width_cap, 0, width_cap, 0, &mut stack, &mut |nu| {
        let c = count_lr_tableaux(nu, lambda, mu);
        if c > 0 {
            out.insert(nu.clone(), c);
        }
    });
    out.into_iter().collect()
}

/// Enumerate partitions `nu` that contain `lambda`, have at most `m` rows,
/// first part at most `cap`, and exactly `total` boxes.
#[allow(clippy::too_many_arguments)]
fn candidate_shapes(
    lambda: &Partition,
    m: usize,
    total: u64,
    cap: u32,
    row: usize,
    prev: u32,
    acc: u64,
    stack: &mut Vec<u32>,
    sink: &mut impl FnMut(&Partition),
) {
    if row == m {
        if acc == total {
            let nu = Partition::new(stack.clone()).expect("rows generated decreasing");
            sink(&nu);
        }
        return;
    }
    let lam_tail: u64 = (row + 1..lambda.rows())
        .map(|i| lambda.part(i) as u64)
        .sum();
    let lo = lambda.part(row);
    let hi = prev.min(cap);
    for v in lo..=hi {
        let a = acc + v as u64;
        if a > total || a + lam_tail > total {
            break;
        }
        // rows below hold at most v boxes each
        if a + (m - row - 1) as u64 * u64::from(v) < total {
            continue;
        }
        stack.push(v);
        candidate_shapes(lambda, m, total, cap, row + 1, v, a, stack, sink);
        stack.pop();
    }
}

/// Count Littlewood-Richardson skew tableaux of shape `nu/lambda` with
/// content `mu`: semistandard fillings whose reverse reading word (rows top
/// to bottom, each row right to left) is a lattice word.
fn count_lr_tableaux(nu: &Partition, lambda: &Partition, mu: &Partition) -> u64 {
    if !nu.contains(lambda) {
        return 0;
    }
    let values = mu.rows();
    // cells in reverse reading order
    let mut cells = Vec::new();
    for r in 0..nu.rows() {
        for c in (lambda.part(r)..nu.part(r)).rev() {
            cells.push((r, c as usize));
        }
    }
    if cells.len() as u64 != mu.size() {
        return 0;
    }
    if cells.is_empty() {
        return 1;
    }
    let width = nu.first() as usize;
    let mut grid = vec![vec![0u32; width]; nu.rows()];
    let mut counts = vec![0u32; values + 1];
    fill_cells(nu, lambda, mu, &cells, 0, &mut grid, &mut counts)
}

fn fill_cells(
    nu: &Partition,
    lambda: &Partition,
    mu: &Partition,
    cells: &[(usize, usize)],
    at: usize,
    grid: &mut Vec<Vec<u32>>,
    counts: &mut Vec<u32>,
) -> u64 {
    if at == cells.len() {
        return 1;
    }
    let (r, c) = cells[at];
    let right_cap = if c + 1 < nu.part(r) as usize {
        grid[r][c + 1]
    } else {
        u32::MAX
    };
    let above_floor = if r > 0 && c >= lambda.part(r - 1) as usize {
        grid[r - 1][c]
    } else {
        0
    };
    let mut n = 0u64;
    for v in 1..=mu.rows() as u32 {
        if counts[v as usize] >= mu.part(v as usize - 1) {
            continue;
        }
        // lattice word: every prefix holds at least as many (v-1)s as vs
        if v > 1 && counts[v as usize] >= counts[v as usize - 1] {
            continue;
        }
        if v > right_cap || v <= above_floor {
            continue;
        }
        grid[r][c] = v;
        counts[v as usize] += 1;
        n += fill_cells(nu, lambda, mu, cells, at + 1, grid, counts);
        counts[v as usize] -= 1;
        grid[r][c] = 0;
    }
    n
}
