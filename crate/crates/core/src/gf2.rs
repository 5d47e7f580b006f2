//! Bit-packed GF(2) vectors and matrices.
//!
//! Storage is little-endian within 64-bit words: bit `i` lives in word
//! `i / 64` at position `i % 64`. Bits beyond the logical length are kept
//! zero (canonical form), so equality and hashing work directly on the
//! packed words.
//!
//! All mutating arithmetic takes an [`OpCounter`] so decoders can report
//! operation counts. Counters record bit-level XOR work in row-length
//! units (an XOR of two length-L vectors counts L bit operations, however
//! many words it touched), which is the unit the complexity comparisons
//! are expressed in. One floating-point operation is equated to eight
//! bit XORs when totals are normalized.

use std::fmt;

use crate::error::{Error, Result};

pub const WORD_BITS: usize = 64;

/// Counts the arithmetic performed during a decode.
///
/// Monotonically non-decreasing; never shared between decodes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    /// Word-level XOR instructions executed.
    pub xor_word_ops: u64,
    /// Bit-level XOR count, in row-length units.
    pub xor_bit_ops: u64,
    /// Floating-point operations (comparisons during ranking).
    pub float_ops: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add_xor(&mut self, bits: usize, words: usize) {
        self.xor_bit_ops += bits as u64;
        self.xor_word_ops += words as u64;
    }

    #[inline]
    pub fn add_float(&mut self, ops: usize) {
        self.float_ops += ops as u64;
    }

    /// Total with the 8-XOR-per-float convention applied.
    pub fn normalized_total(&self) -> u64 {
        self.xor_bit_ops + 8 * self.float_ops
    }

    pub fn merge(&mut self, other: &OpCounter) {
        self.xor_word_ops += other.xor_word_ops;
        self.xor_bit_ops += other.xor_bit_ops;
        self.float_ops += other.float_ops;
    }
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A packed vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    /// All-zero vector of the given bit length.
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// Builds a vector from 0/1 bytes.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_str01(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i),
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("unexpected character {other:?} in bit string"),
                    })
                }
            }
        }
        Ok(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
    }

    #[inline]
    pub fn assign(&mut self, i: usize, value: bool) {
        if value {
            self.set(i);
        } else {
            self.clear(i);
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterates indices of set bits in ascending order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    None
                } else {
                    let bit = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }

    /// XORs `src` into `self`, counting `src.len()` bit operations.
    pub fn xor_into(&mut self, src: &BitVector, counter: &mut OpCounter) -> Result<()> {
        if self.len != src.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: src.len,
            });
        }
        for (a, b) in self.words.iter_mut().zip(src.words.iter()) {
            *a ^= b;
        }
        counter.add_xor(src.len, src.words.len());
        Ok(())
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Renders as a `0`/`1` string, most significant position last.
    pub fn to_string01(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_string01())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string01())
    }
}

/// A dense matrix over GF(2), stored as packed rows.
///
/// Row-major layout because elimination is row-oriented; column access
/// copies bits into a scratch [`BitVector`].
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i);
        }
        m
    }

    /// Builds from rows; all rows must share one length.
    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVector::len);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    left: cols,
                    right: r.len(),
                });
            }
        }
        Ok(Self { rows, cols })
    }

    /// Convenience constructor from `0`/`1` row strings.
    pub fn from_str_rows(rows: &[&str]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|s| BitVector::from_str01(s))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.rows[row].assign(col, value);
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut BitVector {
        &mut self.rows[i]
    }

    /// Copies column `j` into a fresh vector.
    pub fn column(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.get(j) {
                v.set(i);
            }
        }
        v
    }

    /// Exchanges two rows in place. Pure bookkeeping, no XOR cost.
    pub fn swap_rows(&mut self, p: usize, k: usize) -> Result<()> {
        let n = self.rows.len();
        if p >= n || k >= n {
            return Err(Error::IndexOutOfRange {
                index: p.max(k),
                len: n,
            });
        }
        self.rows.swap(p, k);
        Ok(())
    }

    /// XORs row `src` into row `dst`, counting the row length.
    pub fn xor_rows(&mut self, dst: usize, src: usize, counter: &mut OpCounter) -> Result<()> {
        if dst == src {
            return Err(Error::InvalidParameter(
                "cannot xor a row into itself".into(),
            ));
        }
        let (a, b) = if dst < src {
            let (lo, hi) = self.rows.split_at_mut(src);
            (&mut lo[dst], &hi[0])
        } else {
            let (lo, hi) = self.rows.split_at_mut(dst);
            (&mut hi[0], &lo[src])
        };
        a.xor_into(b, counter)
    }

    /// Matrix-vector product over GF(2).
    ///
    /// Computed row-wise as an AND-then-parity reduction; counted as the
    /// dense cost `rows * cols` bit operations.
    pub fn mat_vec_mul(&self, x: &BitVector, counter: &mut OpCounter) -> Result<BitVector> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: x.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = 0u64;
            for (a, b) in row.words.iter().zip(x.words.iter()) {
                acc ^= a & b;
            }
            counter.add_xor(self.cols, row.words.len());
            if acc.count_ones() & 1 == 1 {
                out.set(i);
            }
        }
        Ok(out)
    }

    /// GF(2) rank via full elimination on a working copy.
    ///
    /// Oracle-quality, not a performance path; production consistency
    /// checks are done incrementally by the elimination decoder.
    pub fn rank(&self) -> usize {
        let mut work = self.rows.clone();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == work.len() {
                break;
            }
            let Some(p) = (pivot_row..work.len()).find(|&r| work[r].get(col)) else {
                continue;
            };
            work.swap(pivot_row, p);
            for r in 0..work.len() {
                if r != pivot_row && work[r].get(col) {
                    let (a, b) = if r < pivot_row {
                        let (lo, hi) = work.split_at_mut(pivot_row);
                        (&mut lo[r], &hi[0])
                    } else {
                        let (lo, hi) = work.split_at_mut(r);
                        (&mut hi[0], &lo[pivot_row])
                    };
                    for (x, y) in a.words.iter_mut().zip(b.words.iter()) {
                        *x ^= y;
                    }
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    pub fn transposed(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_ones() {
                t.rows[j].set(i);
            }
        }
        t
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.rows.len(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {}", row.to_string01())?;
        }
        Ok(())
    }
}

/// Column-major cache of a check matrix, one packed column per slot.
///
/// `col_words` consecutive words hold one column; with `rows <= 64` a
/// column is a single word, so the column XORs that dominate syndrome
/// and verification work touch one word each.
#[derive(Clone)]
pub struct Columns {
    rows: usize,
    col_words: usize,
    words: Vec<u64>,
}

impl Columns {
    pub fn from_matrix(m: &BitMatrix) -> Self {
        let rows = m.n_rows();
        let col_words = words_for(rows).max(1);
        let mut words = vec![0u64; m.n_cols() * col_words];
        for i in 0..rows {
            for j in m.row(i).iter_ones() {
                words[j * col_words + i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
            }
        }
        Self {
            rows,
            col_words,
            words,
        }
    }

    /// Reassembles the row-major matrix (test support).
    pub fn to_matrix(&self, n_cols: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, n_cols);
        for j in 0..n_cols {
            for i in 0..self.rows {
                if self.get(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds the column-permuted cache: slot `i` holds column `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Columns {
        let mut words = Vec::with_capacity(perm.len() * self.col_words);
        for &p in perm {
            words.extend_from_slice(&self.words[p * self.col_words..(p + 1) * self.col_words]);
        }
        Columns {
            rows: self.rows,
            col_words: self.col_words,
            words,
        }
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.words.len() / self.col_words
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[u64] {
        &self.words[j * self.col_words..(j + 1) * self.col_words]
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        (self.words[col * self.col_words + row / WORD_BITS] >> (row % WORD_BITS)) & 1 == 1
    }

    /// Copies column `j` into a [`BitVector`] of length `rows`.
    pub fn col_vector(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        v.words.copy_from_slice(self.col(j));
        v
    }

    /// XORs column `j` into the scratch accumulator, counting `rows` bits.
    #[inline]
    pub fn xor_col_into(&self, j: usize, acc: &mut [u64], counter: &mut OpCounter) {
        for (a, b) in acc.iter_mut().zip(self.col(j)) {
            *a ^= b;
        }
        counter.add_xor(self.rows, self.col_words);
    }
}
