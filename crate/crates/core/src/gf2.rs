//! Bit-packed linear algebra over GF(2).
//!
//! Vectors are packed into `u64` words, little-endian within a word:
//! coordinate `i` (0-based) lives in bit `i % 64` of word `i / 64`. All
//! storage past the logical length is kept zero, so equality, hashing and
//! weight are plain word operations.

use crate::error::{Error, Result};

/// Largest supported vector length.
pub const MAX_LEN: usize = 1024;

const WORD_BITS: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// All-zero vector. Panics if `len` is 0 or exceeds [`MAX_LEN`].
    pub fn zeros(len: usize) -> Self {
        assert!(
            (1..=MAX_LEN).contains(&len),
            "vector length {len} outside 1..={MAX_LEN}"
        );
        BitVector {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// All-ones vector of the given length.
    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.mask_tail();
        v
    }

    /// Parses a '0'/'1' string, coordinate 1 first. Reports the offending
    /// column on bad characters.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let len = s.len();
        if !(1..=MAX_LEN).contains(&len) {
            return Err(Error::LengthOutOfRange { len, max: MAX_LEN });
        }
        let mut v = Self::zeros(len);
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => {
                    return Err(Error::Parse {
                        line: 1,
                        col: i + 1,
                        msg: format!("expected '0' or '1', found {c:?}"),
                    })
                }
            }
        }
        Ok(v)
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // length 1..=MAX_LEN by construction
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    /// Number of coordinates set to 1.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Coordinatewise addition mod 2. Panics on length mismatch; the
    /// public operations validate lengths before calling this.
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= b;
        }
    }

    /// Index of the lowest set coordinate, if any.
    pub fn first_set(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Standard inner product mod 2.
    pub fn inner_product(&self, other: &BitVector) -> Result<bool> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                context: "inner product",
                left: self.len,
                right: other.len,
            });
        }
        Ok(self.dot(other))
    }

    /// Inner product without the length check; callers must have validated.
    #[inline]
    pub(crate) fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut parity = 0u64;
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            parity ^= a & b;
        }
        parity.count_ones() & 1 == 1
    }

    /// Returns a copy placed on the last `self.len()` coordinates of a
    /// length-`n` vector, zeros elsewhere.
    pub fn pad_left(&self, n: usize) -> Result<BitVector> {
        if n < self.len || n > MAX_LEN {
            return Err(Error::LengthOutOfRange { len: n, max: MAX_LEN });
        }
        let offset = n - self.len;
        let mut v = BitVector::zeros(n);
        for i in 0..self.len {
            if self.get(i) {
                v.set(offset + i, true);
            }
        }
        Ok(v)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn mask_tail(&mut self) {
        let extra = self.len % WORD_BITS;
        if extra != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << extra) - 1;
            }
        }
    }
}

impl std::fmt::Display for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl std::fmt::Debug for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVector({})", self.to_bitstring())
    }
}

/// A row-major matrix over GF(2); every row has the same length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    num_cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn new(rows: Vec<BitVector>) -> Result<Self> {
        let num_cols = match rows.first() {
            Some(r) => r.len(),
            None => {
                return Err(Error::LengthOutOfRange { len: 0, max: MAX_LEN });
            }
        };
        for r in &rows {
            if r.len() != num_cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix rows",
                    left: num_cols,
                    right: r.len(),
                });
            }
        }
        Ok(BitMatrix { num_cols, rows })
    }

    /// Matrix with no rows over `num_cols` columns.
    pub fn empty(num_cols: usize) -> Self {
        assert!((1..=MAX_LEN).contains(&num_cols));
        BitMatrix {
            num_cols,
            rows: Vec::new(),
        }
    }

    pub fn zeros(num_rows: usize, num_cols: usize) -> Self {
        let rows = (0..num_rows).map(|_| BitVector::zeros(num_cols)).collect();
        BitMatrix { num_cols, rows }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    /// Side-by-side concatenation `(left | right)`.
    pub fn hstack(left: &BitMatrix, right: &BitMatrix) -> Result<BitMatrix> {
        if left.num_rows() != right.num_rows() {
            return Err(Error::DimensionMismatch {
                context: "hstack row counts",
                left: left.num_rows(),
                right: right.num_rows(),
            });
        }
        let n = left.num_cols + right.num_cols;
        if n > MAX_LEN {
            return Err(Error::LengthOutOfRange { len: n, max: MAX_LEN });
        }
        let rows = left
            .rows
            .iter()
            .zip(right.rows.iter())
            .map(|(l, r)| {
                let mut v = BitVector::zeros(n);
                for i in 0..l.len() {
                    if l.get(i) {
                        v.set(i, true);
                    }
                }
                for i in 0..r.len() {
                    if r.get(i) {
                        v.set(left.num_cols + i, true);
                    }
                }
                v
            })
            .collect();
        Ok(BitMatrix { num_cols: n, rows })
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.num_cols != other.num_cols {
            return Err(Error::DimensionMismatch {
                context: "vstack column counts",
                left: self.num_cols,
                right: other.num_cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix {
            num_cols: self.num_cols,
            rows,
        })
    }

    /// Reduced row echelon form with zero rows dropped, plus the sorted
    /// pivot columns (0-based). Unique for a given row space.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..self.num_cols {
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        (
            BitMatrix {
                num_cols: self.num_cols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().0.num_rows()
    }

    /// Basis of `{v : every row of self is orthogonal to v}` as rows;
    /// `num_cols - rank` rows in total.
    pub fn nullspace(&self) -> BitMatrix {
        let (r, pivots) = self.rref();
        let n = self.num_cols;
        let is_pivot = {
            let mut flags = vec![false; n];
            for &p in &pivots {
                flags[p] = true;
            }
            flags
        };
        let mut basis = Vec::with_capacity(n - pivots.len());
        for free in 0..n {
            if is_pivot[free] {
                continue;
            }
            let mut v = BitVector::zeros(n);
            v.set(free, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.rows[i].get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        BitMatrix {
            num_cols: n,
            rows: basis,
        }
    }

    /// Rank of the stacked matrix `[self; other]`, i.e. the dimension of
    /// the sum of the two row spaces.
    pub fn row_space_sum_rank(&self, other: &BitMatrix) -> Result<usize> {
        Ok(self.vstack(other)?.rank())
    }

    /// Whether `v` lies in the row space, decided by elimination.
    pub fn row_space_contains(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.num_cols {
            return Err(Error::DimensionMismatch {
                context: "row space membership",
                left: self.num_cols,
                right: v.len(),
            });
        }
        let (r, pivots) = self.rref();
        Ok(reduce_to_zero(&r, &pivots, v))
    }

    /// Serializes as one ASCII '0'/'1' line per row, trailing newline
    /// included.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows.len() * (self.num_cols + 1));
        for r in &self.rows {
            s.push_str(&r.to_bitstring());
            s.push('\n');
        }
        s
    }
}

/// Reduces `v` against rref rows with known pivot columns; true iff the
/// remainder is zero, i.e. `v` is in the row space.
pub(crate) fn reduce_to_zero(rref: &BitMatrix, pivots: &[usize], v: &BitVector) -> bool {
    let mut rem = v.clone();
    for (row, &p) in rref.rows().iter().zip(pivots.iter()) {
        if rem.get(p) {
            rem.xor_assign(row);
        }
    }
    rem.is_zero()
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitMatrix {}x{}:", self.rows.len(), self.num_cols)?;
        for r in &self.rows {
            write!(f, "\n  {}", r.to_bitstring())?;
        }
        Ok(())
    }
}
