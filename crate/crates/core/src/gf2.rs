//! Dense linear algebra over the two-element field.
//!
//! Vectors are bit-packed into `u64` words, matrices are lists of packed rows.
//! Every routine is a pure function of its input: the same matrix always yields
//! the same echelon form, kernel basis and solution representative.

use std::fmt;

const WORD: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; word_count(len)],
            len,
        }
    }

    /// The `i`th standard basis vector of GF(2)^len.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector of length `len` with ones exactly at `indices`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    /// Low `len` bits of `value`, bit `i` of the integer becoming coordinate `i`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 coordinates");
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = value & mask;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Addition in GF(2)^len.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Standard bilinear pairing `Σ aᵢbᵢ mod 2`.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn highest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * WORD + w.trailing_zeros() as usize)
    }

    /// Copy of `self` with one more coordinate appended at the end.
    pub fn pushed(&self, bit: bool) -> Self {
        let mut out = Self::zeros(self.len + 1);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        if bit {
            out.set(self.len, true);
        }
        out
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| u8::from(self.get(i))).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense matrix over GF(2), stored row by row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    /// The nonzero rows of the reduced form; row `i` has its leading one at `pivots[i]`.
    pub rows: Vec<BitVec>,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
            cols: n,
        }
    }

    /// # Panics
    /// Panics if any row length differs from `cols`.
    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        Self { rows, cols }
    }

    /// Builds a matrix from 0/1 entries. All rows must have the same length.
    pub fn from_nested(entries: &[Vec<u8>]) -> Self {
        let cols = entries.first().map_or(0, Vec::len);
        let rows = entries
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix");
                BitVec::from_bits(r.iter().map(|&b| b & 1 == 1))
            })
            .collect();
        Self { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn set_row(&mut self, r: usize, row: BitVec) {
        assert_eq!(row.len(), self.cols, "row length does not match column count");
        self.rows[r] = row;
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_bits(self.rows.iter().map(|r| r.get(c)))
    }

    pub fn select_rows(&self, indices: &[usize]) -> Self {
        Self {
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            cols: self.cols,
        }
    }

    /// Appends a column on the right.
    pub fn with_column(&self, column: &BitVec) -> Self {
        assert_eq!(column.len(), self.nrows(), "column length mismatch");
        Self {
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| r.pushed(column.get(i)))
                .collect(),
            cols: self.cols + 1,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        BitVec::from_bits(self.rows.iter().map(|r| r.dot(v)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.nrows(), "inner dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Self {
            rows,
            cols: other.cols,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Gauss-Jordan elimination. Pivots are taken column by column from the left.
    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        Rref { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.cols);
        for r in &self.rows {
            basis.insert(r.clone());
        }
        basis.rank()
    }

    /// Basis of `{v : Mv = 0}`, one vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
                    if row.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `Mx = b`, or `None`. The representative has every free
    /// variable of the reduced echelon form set to zero.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.nrows(), "right-hand side length mismatch");
        let rref = self.with_column(b).rref();
        if rref.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    pub fn in_rowspace(&self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut basis = EchelonBasis::new(self.cols);
        for r in &self.rows {
            basis.insert(r.clone());
        }
        basis.contains(v)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// An incrementally built basis of a subspace, each vector keyed by its
/// highest set coordinate.
///
/// `reduce` maps every vector to the unique element of its coset that is zero
/// at all pivot coordinates, which makes it a canonical coset representative.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    /// Sorted by pivot, descending.
    vectors: Vec<(usize, BitVec)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            vectors: Vec::new(),
        }
    }

    pub fn spanned_by<'a, I: IntoIterator<Item = &'a BitVec>>(dim: usize, vectors: I) -> Self {
        let mut basis = Self::new(dim);
        for v in vectors {
            basis.insert(v.clone());
        }
        basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn reduce_in_place(&self, v: &mut BitVec) {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        for (pivot, b) in &self.vectors {
            if v.get(*pivot) {
                v.xor_assign(b);
            }
        }
    }

    /// Adds `v` to the spanning set. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let reduced = self.reduce(&v);
        let Some(pivot) = reduced.highest_one() else {
            return false;
        };
        let at = self.vectors.partition_point(|(p, _)| *p > pivot);
        self.vectors.insert(at, (pivot, reduced));
        true
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Pivot coordinates in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.vectors.iter().map(|(p, _)| *p).collect();
        p.sort_unstable();
        p
    }

    /// Coordinates that are not pivots, increasing. Vectors supported on these
    /// are exactly the canonical coset representatives.
    pub fn free_positions(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for (p, _) in &self.vectors {
            is_pivot[*p] = true;
        }
        (0..self.dim).filter(|&i| !is_pivot[i]).collect()
    }

    /// All canonical coset representatives of the quotient space, in
    /// increasing order of the integer value of the free-coordinate mask.
    ///
    /// # Panics
    /// Panics if the quotient has more than 2^40 elements.
    pub fn coset_representatives(&self) -> Vec<BitVec> {
        let free = self.free_positions();
        assert!(free.len() <= 40, "quotient space too large to enumerate");
        (0u64..(1u64 << free.len()))
            .map(|mask| {
                BitVec::from_indices(
                    self.dim,
                    free.iter()
                        .enumerate()
                        .filter(|(k, _)| (mask >> k) & 1 == 1)
                        .map(|(_, &pos)| pos),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(entries: &[&[u8]]) -> BitMatrix {
        BitMatrix::from_nested(&entries.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn v(bits: &[u8]) -> BitVec {
        BitVec::from_bits(bits.iter().map(|&b| b == 1))
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(m(&[&[1, 1], &[1, 1]]).rank(), 1);
        assert_eq!(m(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(BitMatrix::identity(2).kernel_basis().is_empty());
        assert_eq!(m(&[&[1, 1]]).kernel_basis(), vec![v(&[1, 1])]);
        assert_eq!(BitMatrix::zeros(2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn solve_examples() {
        let b = v(&[1, 0, 1]);
        assert_eq!(BitMatrix::identity(3).solve(&b), Some(b));
        assert_eq!(m(&[&[1, 1]]).solve(&v(&[1])), Some(v(&[1, 0])));
        assert_eq!(BitMatrix::zeros(1, 2).solve(&v(&[1])), None);
    }

    #[test]
    fn rowspace_examples() {
        let full = m(&[&[1, 1], &[0, 1]]);
        for bits in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            assert!(full.in_rowspace(&v(&bits)));
        }
        assert!(!m(&[&[0, 1]]).in_rowspace(&v(&[1, 0])));
        assert!(m(&[&[1, 0], &[0, 1]]).in_rowspace(&v(&[1, 1])));
    }

    #[test]
    fn bit_helpers() {
        let x = BitVec::from_indices(70, [0, 3, 65]);
        assert_eq!(x.iter_ones().collect::<Vec<_>>(), vec![0, 3, 65]);
        assert_eq!(x.highest_one(), Some(65));
        assert_eq!(x.lowest_one(), Some(0));
        assert_eq!(x.count_ones(), 3);
        assert_eq!(BitVec::zeros(5).highest_one(), None);
        assert_eq!(v(&[1, 0]).pushed(true), v(&[1, 0, 1]));
        assert_eq!(BitVec::from_u64(3, 0b110), v(&[0, 1, 1]));
        assert_eq!(format!("{}", v(&[0, 1, 1])), "011");
    }

    #[test]
    fn echelon_reduction_is_canonical() {
        // span{e0+e1}: pivot at coordinate 1, so e1 reduces to e0.
        let basis = EchelonBasis::spanned_by(2, &[v(&[1, 1])]);
        assert_eq!(basis.reduce(&v(&[0, 1])), v(&[1, 0]));
        assert_eq!(basis.reduce(&v(&[1, 0])), v(&[1, 0]));
        assert_eq!(basis.free_positions(), vec![0]);
        assert_eq!(basis.coset_representatives(), vec![v(&[0, 0]), v(&[1, 0])]);
    }

    fn arb_matrix() -> impl Strategy<Value = BitMatrix> {
        (1usize..9, 1usize..80).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
                .prop_map(|e| BitMatrix::from_nested(&e))
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(a in arb_matrix()) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
            prop_assert_eq!(a.rank(), a.rref().pivots.len());
        }

        #[test]
        fn rank_nullity(a in arb_matrix()) {
            let kernel = a.kernel_basis();
            prop_assert_eq!(a.ncols(), a.rank() + kernel.len());
            for k in &kernel {
                prop_assert!(a.mul_vec(k).is_zero());
            }
            prop_assert_eq!(BitMatrix::from_rows(kernel.clone(), a.ncols()).rank(), kernel.len());
        }

        #[test]
        fn solve_is_exact(a in arb_matrix(), seed in any::<u64>()) {
            // b in the column space is always solvable; the answer must satisfy the system.
            let x0 = BitVec::from_bits((0..a.ncols()).map(|i| (seed >> (i % 64)) & 1 == 1));
            let b = a.mul_vec(&x0);
            let x = a.solve(&b).expect("consistent system");
            prop_assert_eq!(a.mul_vec(&x), b.clone());
            prop_assert_eq!(a.solve(&b), Some(x));
        }

        #[test]
        fn coset_reduction_respects_span(a in arb_matrix(), seed in any::<u64>()) {
            let basis = EchelonBasis::spanned_by(a.ncols(), a.rows());
            let w = BitVec::from_bits((0..a.ncols()).map(|i| (seed >> (i % 64)) & 1 == 1));
            let red = basis.reduce(&w);
            prop_assert!(basis.contains(&red.xor(&w)));
            for p in basis.pivots() {
                prop_assert!(!red.get(p));
            }
            prop_assert_eq!(basis.contains(&w), a.in_rowspace(&w));
        }
    }
}
