//! Dense linear algebra over GF(2) on bit-packed rows.
//!
//! Columns are indexed `0..width`. The packing (64-bit words, least
//! significant bit first) is internal; nothing outside this module depends
//! on it.

use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(width: usize) -> usize {
    width.div_ceil(WORD_BITS)
}

/// A fixed-width vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    width: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(width: usize) -> Self {
        Self {
            width,
            words: vec![0; words_for(width)],
        }
    }

    /// The standard basis vector with a single one at `index`.
    pub fn unit(width: usize, index: usize) -> Self {
        let mut v = Self::zeros(width);
        v.set(index, true);
        v
    }

    /// Builds a vector from 0/1 entries; any nonzero entry counts as one.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of the given width with ones at `positions`.
    pub fn from_positions(width: usize, positions: &[usize]) -> Self {
        let mut v = Self::zeros(width);
        for &p in positions {
            v.flip(p);
        }
        v
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.width, "column {index} out of range");
        (self.words[index / WORD_BITS] >> (index % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.width, "column {index} out of range");
        let mask = 1u64 << (index % WORD_BITS);
        if value {
            self.words[index / WORD_BITS] |= mask;
        } else {
            self.words[index / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, index: usize) {
        assert!(index < self.width, "column {index} out of range");
        self.words[index / WORD_BITS] ^= 1u64 << (index % WORD_BITS);
    }

    /// In-place addition (XOR). Panics if widths differ.
    pub fn add_assign(&mut self, other: &BitVector) {
        assert_eq!(self.width, other.width, "width mismatch in vector addition");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.width, other.width, "width mismatch in dot product");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Positions of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * WORD_BITS + bit)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, w)| wi * WORD_BITS + w.trailing_zeros() as usize)
    }

    pub fn last_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(wi, w)| wi * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.width).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.width {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

/// An ordered list of equal-width rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    width: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    /// A matrix with no rows.
    pub fn empty(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            width: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(width: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.width() != width) {
            return Err(Error::WidthMismatch {
                expected: width,
                found: bad.width(),
            });
        }
        Ok(Self { width, rows })
    }

    /// Builds from 0/1 rows. Panics on ragged input.
    pub fn from_bit_rows(width: usize, rows: &[Vec<u8>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), width, "ragged row");
                BitVector::from_bits(r)
            })
            .collect();
        Self { width, rows }
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.width() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: row.width(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    /// `self · v`, one bit per row.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).pivot_columns.len()
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rref {
    /// Nonzero rows of the reduced row-echelon form, ordered by pivot.
    pub reduced: BitMatrix,
    /// Strictly increasing; `pivot_columns[i]` is the leading one of row `i`.
    pub pivot_columns: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut pivots = self.pivot_columns.iter().peekable();
        (0..self.reduced.width())
            .filter(|c| {
                if pivots.peek() == Some(&c) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Reduces `v` against the pivot rows; the result is zero iff `v` lies
    /// in the row space.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        for (row, &p) in self.reduced.rows().iter().zip(&self.pivot_columns) {
            if v.get(p) {
                v.add_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        if v.width() != self.reduced.width() {
            return Err(Error::WidthMismatch {
                expected: self.reduced.width(),
                found: v.width(),
            });
        }
        Ok(self.reduce(v).is_zero())
    }
}

/// Reduced row-echelon form. Zero rows are dropped from the output.
pub fn rref(m: &BitMatrix) -> Rref {
    let mut rows: Vec<BitVector> = m.rows().to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..m.width() {
        let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.add_assign(&pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    Rref {
        reduced: BitMatrix {
            width: m.width(),
            rows,
        },
        pivot_columns: pivots,
    }
}

/// Basis of `{v : m·v = 0}`, one vector per free column of `rref(m)`.
///
/// The vector for free column `f` has a one at `f`, ones only at pivot
/// columns below `f` otherwise, so `f` is its highest set position. These
/// leading positions are distinct and increase along the returned list.
pub fn right_kernel_basis(m: &BitMatrix) -> Vec<BitVector> {
    let r = rref(m);
    r.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = BitVector::unit(m.width(), f);
            for (row, &p) in r.reduced.rows().iter().zip(&r.pivot_columns) {
                if row.get(f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// The leading position of a kernel basis vector as produced by
/// [`right_kernel_basis`].
pub fn kernel_leading_position(v: &BitVector) -> Option<usize> {
    v.last_one()
}

pub fn row_space_contains(m: &BitMatrix, v: &BitVector) -> Result<bool> {
    if v.width() != m.width() {
        return Err(Error::WidthMismatch {
            expected: m.width(),
            found: v.width(),
        });
    }
    rref(m).contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    // Brute-force oracles, independent of the elimination code.

    fn span_by_subsets(m: &BitMatrix) -> Vec<BitVector> {
        let n = m.num_rows();
        let mut out: Vec<BitVector> = Vec::new();
        for mask in 0u32..(1 << n) {
            let mut v = BitVector::zeros(m.width());
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    v.add_assign(&m.rows()[i]);
                }
            }
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    fn kernel_by_scan(m: &BitMatrix) -> Vec<BitVector> {
        let w = m.width();
        (0u32..(1 << w))
            .map(|mask| {
                let bits: Vec<u8> = (0..w).map(|i| (mask >> i & 1) as u8).collect();
                BitVector::from_bits(&bits)
            })
            .filter(|v| m.mul_vec(v).is_zero())
            .collect()
    }

    fn random_matrix(rng: &mut impl Rng, rows: usize, width: usize) -> BitMatrix {
        let rows = (0..rows)
            .map(|_| (0..width).map(|_| rng.gen_range(0..2u8)).collect())
            .collect::<Vec<Vec<u8>>>();
        BitMatrix::from_bit_rows(width, &rows)
    }

    #[test]
    fn rref_of_empty_matrix() {
        let r = rref(&BitMatrix::empty(5));
        assert_eq!(r.reduced.num_rows(), 0);
        assert_eq!(r.reduced.width(), 5);
        assert!(r.pivot_columns.is_empty());
    }

    #[test]
    fn rref_two_step() {
        let m = BitMatrix::from_bit_rows(3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let r = rref(&m);
        assert_eq!(r.pivot_columns, vec![0, 1]);
        assert_eq!(
            r.reduced,
            BitMatrix::from_bit_rows(3, &[vec![1, 0, 1], vec![0, 1, 1]])
        );
    }

    #[test]
    fn rank_matches_span_size_on_random_6x8() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_matrix(&mut rng, 6, 8);
            let span = span_by_subsets(&m).len();
            assert_eq!(1usize << m.rank(), span);
        }
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(right_kernel_basis(&BitMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_no_rows_is_standard_basis() {
        let k = right_kernel_basis(&BitMatrix::empty(3));
        assert_eq!(k, (0..3).map(|i| BitVector::unit(3, i)).collect::<Vec<_>>());
    }

    #[test]
    fn kernel_single_row_against_scan() {
        let m = BitMatrix::from_bit_rows(4, &[vec![1, 1, 0, 0]]);
        let basis = right_kernel_basis(&m);
        assert_eq!(basis.len(), 3);
        let scanned = kernel_by_scan(&m);
        assert_eq!(scanned.len(), 1 << 3);
        for v in &basis {
            assert!(scanned.contains(v));
        }
    }

    #[test]
    fn zero_vector_always_in_row_space() {
        let m = BitMatrix::from_bit_rows(3, &[vec![1, 1, 0]]);
        assert!(row_space_contains(&m, &BitVector::zeros(3)).unwrap());
        assert!(row_space_contains(&BitMatrix::empty(3), &BitVector::zeros(3)).unwrap());
    }

    #[test]
    fn row_itself_in_row_space() {
        let m = BitMatrix::from_bit_rows(3, &[vec![1, 0, 1]]);
        assert!(row_space_contains(&m, &BitVector::from_bits(&[1, 0, 1])).unwrap());
        assert!(!row_space_contains(&m, &BitVector::from_bits(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn row_space_width_mismatch_is_an_error() {
        let m = BitMatrix::empty(3);
        assert_eq!(
            row_space_contains(&m, &BitVector::zeros(4)),
            Err(Error::WidthMismatch {
                expected: 3,
                found: 4
            })
        );
    }

    #[test]
    fn membership_agrees_with_subset_sums() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let m = random_matrix(&mut rng, 5, 7);
            let span = span_by_subsets(&m);
            let bits: Vec<u8> = (0..7).map(|_| rng.gen_range(0..2u8)).collect();
            let v = BitVector::from_bits(&bits);
            assert_eq!(row_space_contains(&m, &v).unwrap(), span.contains(&v));
        }
    }

    #[test]
    fn from_rows_rejects_ragged() {
        let rows = vec![BitVector::zeros(3), BitVector::zeros(4)];
        assert!(BitMatrix::from_rows(3, rows).is_err());
    }

    #[test]
    fn bit_positions_across_word_boundary() {
        let mut v = BitVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.first_one(), Some(0));
        assert_eq!(v.last_one(), Some(129));
        assert_eq!(v.count_ones(), 3);
    }
}
