//! Matrices over GF(2^N) ([`ExtMatrix`]) and over GF(2) ([`BaseMatrix`]),
//! with the two rank notions used throughout: the ordinary rank over the
//! extension field and the column rank over the base field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Dense row-major matrix over GF(2^N).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for ExtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1))).finish()
    }
}

impl ExtMatrix {
    pub fn zeros(rows: usize, cols: usize) -> ExtMatrix {
        ExtMatrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(size: usize) -> ExtMatrix {
        let mut m = ExtMatrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> ExtMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExtMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<ExtMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows"));
        }
        Ok(ExtMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn row_vector(v: &[Elem]) -> ExtMatrix {
        ExtMatrix {
            rows: 1,
            cols: v.len(),
            data: v.to_vec(),
        }
    }

    pub fn random<R: RngCore + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> ExtMatrix {
        ExtMatrix::from_fn(rows, cols, |_, _| field.random(rng))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// True when every entry lies in GF(2).
    pub fn is_base(&self) -> bool {
        self.data.iter().all(|e| e.is_base())
    }

    pub fn transpose(&self) -> ExtMatrix {
        ExtMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Rows `start..end`.
    pub fn row_range(&self, start: usize, end: usize) -> ExtMatrix {
        ExtMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Columns `start..end`.
    pub fn column_range(&self, start: usize, end: usize) -> ExtMatrix {
        ExtMatrix::from_fn(self.rows, end - start, |r, c| self.get(r, start + c))
    }

    pub fn hstack(&self, right: &ExtMatrix) -> Result<ExtMatrix> {
        if self.rows != right.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ"));
        }
        Ok(ExtMatrix::from_fn(self.rows, self.cols + right.cols, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                right.get(r, c - self.cols)
            }
        }))
    }

    pub fn vstack(&self, below: &ExtMatrix) -> Result<ExtMatrix> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(ExtMatrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &ExtMatrix) -> Result<ExtMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum shapes differ"));
        }
        Ok(ExtMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        })
    }

    pub fn mul(&self, field: &Field, other: &ExtMatrix) -> Result<ExtMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("matrix product inner dimensions differ"));
        }
        let mut out = ExtMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for (j, &a) in self.row(r).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let src = other.row(j);
                let dst = out.row_mut(r);
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += field.mul(a, b);
                }
            }
        }
        Ok(out)
    }

    /// `self · p` for a base-field matrix `p`.
    pub fn mul_base(&self, p: &BaseMatrix) -> Result<ExtMatrix> {
        if self.cols != p.rows() {
            return Err(Error::DimensionMismatch("ext·base inner dimensions differ"));
        }
        let mut out = ExtMatrix::zeros(self.rows, p.cols());
        for r in 0..self.rows {
            let prod = vec_mul_base(self.row(r), p)?;
            out.row_mut(r).copy_from_slice(&prod);
        }
        Ok(out)
    }

    /// Entrywise `σ^i`.
    pub fn frobenius(&self, field: &Field, i: i64) -> ExtMatrix {
        ExtMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| field.frobenius(a, i)).collect(),
        }
    }

    /// Rank over GF(2^N).
    pub fn rank(&self, field: &Field) -> usize {
        let mut work = self.clone();
        work.reduce(field).len()
    }

    /// Basis of `{u : M·uᵀ = 0}` over GF(2^N). Empty iff full column rank.
    pub fn right_kernel(&self, field: &Field) -> Vec<Vec<Elem>> {
        let mut work = self.clone();
        let pivots = work.reduce(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Elem::ZERO; self.cols];
            v[free] = Elem::ONE;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = work.get(r, free);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self, field: &Field) -> Option<ExtMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&ExtMatrix::identity(n)).ok()?;
        let pivots = aug.reduce_columns(field, n);
        if pivots.len() != n {
            return None;
        }
        Some(aug.column_range(n, 2 * n))
    }

    /// One solution `x` of `M·xᵀ = bᵀ` (free variables set to zero), or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, field: &Field, b: &[Elem]) -> Option<Vec<Elem>> {
        if b.len() != self.rows {
            return None;
        }
        let column = ExtMatrix {
            rows: self.rows,
            cols: 1,
            data: b.to_vec(),
        };
        let mut aug = self.hstack(&column).ok()?;
        let pivots = aug.reduce_columns(field, self.cols);
        for r in pivots.len()..self.rows {
            if !aug.get(r, self.cols).is_zero() {
                return None;
            }
        }
        let mut x = vec![Elem::ZERO; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols);
        }
        Some(x)
    }

    /// In-place reduced row echelon form; returns pivot columns.
    fn reduce(&mut self, field: &Field) -> Vec<usize> {
        let cols = self.cols;
        self.reduce_columns(field, cols)
    }

    /// Reduced row echelon form pivoting only on the first `limit` columns.
    fn reduce_columns(&mut self, field: &Field, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..limit {
            if next == self.rows {
                break;
            }
            let Some(found) = (next..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(next, found);
            let inv = field.inv(self.get(next, c)).expect("pivot is nonzero");
            for v in self.row_mut(next) {
                *v = field.mul(*v, inv);
            }
            let pivot_row = self.row(next).to_vec();
            for r in 0..self.rows {
                if r == next {
                    continue;
                }
                let factor = self.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for (v, &p) in self.row_mut(r).iter_mut().zip(&pivot_row) {
                    *v += field.mul(factor, p);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Row vector times matrix.
pub fn vec_mul(field: &Field, v: &[Elem], m: &ExtMatrix) -> Result<Vec<Elem>> {
    if v.len() != m.rows() {
        return Err(Error::DimensionMismatch("vector length differs from matrix rows"));
    }
    let mut out = vec![Elem::ZERO; m.cols()];
    for (j, &a) in v.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (o, &b) in out.iter_mut().zip(m.row(j)) {
            *o += field.mul(a, b);
        }
    }
    Ok(out)
}

/// Row vector over GF(2^N) times a base-field matrix.
pub fn vec_mul_base(v: &[Elem], p: &BaseMatrix) -> Result<Vec<Elem>> {
    if v.len() != p.rows() {
        return Err(Error::DimensionMismatch("vector length differs from matrix rows"));
    }
    let mut out = vec![Elem::ZERO; p.cols()];
    for (j, &a) in v.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (c, o) in out.iter_mut().enumerate() {
            if p.get(j, c) {
                *o += a;
            }
        }
    }
    Ok(out)
}

/// Base-field matrix times a column vector over GF(2^N).
pub fn base_mul_vec(p: &BaseMatrix, v: &[Elem]) -> Result<Vec<Elem>> {
    if v.len() != p.cols() {
        return Err(Error::DimensionMismatch("vector length differs from matrix columns"));
    }
    Ok((0..p.rows())
        .map(|r| {
            (0..p.cols())
                .filter(|&c| p.get(r, c))
                .fold(Elem::ZERO, |acc, c| acc + v[c])
        })
        .collect())
}

/// Dense bit matrix over GF(2), rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BaseMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl fmt::Debug for BaseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for r in 0..self.rows {
            let bits: Vec<u8> = (0..self.cols).map(|c| self.get(r, c) as u8).collect();
            list.entry(&bits);
        }
        list.finish()
    }
}

impl BaseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BaseMatrix {
        let words = cols.div_ceil(64);
        BaseMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(size: usize) -> BaseMatrix {
        let mut m = BaseMatrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> BaseMatrix {
        let mut m = BaseMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<BaseMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows"));
        }
        Ok(BaseMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c]))
    }

    pub fn random<R: RngCore + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> BaseMatrix {
        let mut m = BaseMatrix::zeros(rows, cols);
        let tail = cols % 64;
        for r in 0..rows {
            for w in 0..m.words {
                let mut word = rng.next_u64();
                if w == m.words - 1 && tail != 0 {
                    word &= (1u64 << tail) - 1;
                }
                m.data[r * m.words + w] = word;
            }
        }
        m
    }

    /// Random invertible matrix by rejection sampling, returned with its
    /// inverse.
    pub fn random_invertible<R: RngCore + ?Sized>(size: usize, rng: &mut R) -> (BaseMatrix, BaseMatrix) {
        loop {
            let m = BaseMatrix::random(size, size, rng);
            if let Some(inv) = m.inverse() {
                return (m, inv);
            }
        }
    }

    /// Random `rows × cols` matrix of rank exactly `rank`, as a product of
    /// full-rank factors.
    pub fn random_of_rank<R: RngCore + ?Sized>(rows: usize, cols: usize, rank: usize, rng: &mut R) -> Result<BaseMatrix> {
        if rank > rows.min(cols) {
            return Err(Error::InvalidParameters("rank exceeds matrix dimensions"));
        }
        let left = loop {
            let m = BaseMatrix::random(rows, rank, rng);
            if m.rank() == rank {
                break m;
            }
        };
        let right = loop {
            let m = BaseMatrix::random(rank, cols, rng);
            if m.rank() == rank {
                break m;
            }
        };
        left.mul(&right)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row_bits(&self, r: usize) -> Vec<bool> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        (0..self.rows).map(|r| self.row_bits(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.data[r * self.words..(r + 1) * self.words].iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BaseMatrix {
        BaseMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn vstack(&self, below: &BaseMatrix) -> Result<BaseMatrix> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(BaseMatrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            words: self.words,
            data,
        })
    }

    pub fn mul(&self, other: &BaseMatrix) -> Result<BaseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("matrix product inner dimensions differ"));
        }
        let mut out = BaseMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for j in (0..self.cols).filter(|&j| self.get(r, j)) {
                for w in 0..out.words {
                    out.data[r * out.words + w] ^= other.data[j * other.words + w];
                }
            }
        }
        Ok(out)
    }

    /// Embeds the matrix into GF(2^N).
    pub fn to_ext(&self) -> ExtMatrix {
        ExtMatrix::from_fn(self.rows, self.cols, |r, c| Elem::from_bit(self.get(r, c)))
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.reduce(self.cols).len()
    }

    pub fn inverse(&self) -> Option<BaseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = BaseMatrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c)
            } else {
                c - n == r
            }
        });
        if aug.reduce(n).len() != n {
            return None;
        }
        Some(BaseMatrix::from_fn(n, n, |r, c| aug.get(r, n + c)))
    }

    /// Right kernel over GF(2); the rows of the result form a basis.
    pub fn kernel(&self) -> BaseMatrix {
        let mut work = self.clone();
        let pivots = work.reduce(self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = BaseMatrix::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            basis.set(i, f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if work.get(r, f) {
                    basis.set(i, p, true);
                }
            }
        }
        basis
    }

    /// One solution of `M·xᵀ = bᵀ`, or `None` if inconsistent.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        if b.len() != self.rows {
            return None;
        }
        let mut aug = BaseMatrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                b[r]
            }
        });
        let pivots = aug.reduce(self.cols);
        if (pivots.len()..self.rows).any(|r| aug.get(r, self.cols)) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols);
        }
        Some(x)
    }

    fn reduce(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..limit {
            if next == self.rows {
                break;
            }
            let Some(found) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            if found != next {
                for w in 0..self.words {
                    self.data.swap(next * self.words + w, found * self.words + w);
                }
            }
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    for w in 0..self.words {
                        let p = self.data[next * self.words + w];
                        self.data[r * self.words + w] ^= p;
                    }
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }
}

/// Expands every column into its `rows·N` base-field coordinates; row `c` of
/// the result is column `c` of `m`, entry `(r, b)` mapping to bit `r·N + b`.
pub fn base_expansion(field: &Field, m: &ExtMatrix) -> BaseMatrix {
    let n = field.degree() as usize;
    let mut out = BaseMatrix::zeros(m.cols(), m.rows() * n);
    for c in 0..m.cols() {
        for r in 0..m.rows() {
            let e = m.get(r, c);
            for b in 0..n {
                if e.bit(b as u32) {
                    out.set(c, r * n + b, true);
                }
            }
        }
    }
    out
}

/// Number of columns of `m` that are linearly independent over GF(2).
pub fn column_rank_base(field: &Field, m: &ExtMatrix) -> usize {
    base_expansion(field, m).rank()
}

/// Rank norm of a vector: the GF(2)-dimension spanned by its coordinates.
pub fn rank_norm(field: &Field, v: &[Elem]) -> usize {
    column_rank_base(field, &ExtMatrix::row_vector(v))
}

/// Rank distance `rank_norm(x − y)`.
pub fn rank_distance(field: &Field, x: &[Elem], y: &[Elem]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch("vectors differ in length"));
    }
    let diff: Vec<Elem> = x.iter().zip(y).map(|(&a, &b)| a - b).collect();
    Ok(rank_norm(field, &diff))
}

/// Random nonsingular `k × k` matrix over GF(2^N) with its inverse.
pub fn random_nonsingular_ext<R: RngCore + ?Sized>(field: &Field, k: usize, rng: &mut R) -> (ExtMatrix, ExtMatrix) {
    loop {
        let m = ExtMatrix::random(field, k, k, rng);
        if let Some(inv) = m.inverse(field) {
            return (m, inv);
        }
    }
}

/// Random vector of length `n` whose coordinates span a GF(2)-space of
/// dimension `len`.
pub fn random_independent<R: RngCore + ?Sized>(field: &Field, len: usize, rng: &mut R) -> Result<Vec<Elem>> {
    if len > field.degree() as usize {
        return Err(Error::InvalidParameters("more independent elements than the extension degree"));
    }
    loop {
        let v: Vec<Elem> = (0..len).map(|_| field.random(rng)).collect();
        if rank_norm(field, &v) == len {
            return Ok(v);
        }
    }
}

/// Random length-`n` vector of rank norm exactly `r`, formed as `x·Y` with
/// `x` a rank-`r` vector and `Y` an `r × n` base-field matrix of rank `r`.
pub fn random_vector_of_rank<R: RngCore + ?Sized>(field: &Field, n: usize, r: usize, rng: &mut R) -> Result<Vec<Elem>> {
    if r > n.min(field.degree() as usize) {
        return Err(Error::InvalidParameters("error rank exceeds min(n, N)"));
    }
    if r == 0 {
        return Ok(vec![Elem::ZERO; n]);
    }
    let x = random_independent(field, r, rng)?;
    let y = BaseMatrix::random_of_rank(r, n, r, rng)?;
    let e = vec_mul_base(&x, &y)?;
    debug_assert_eq!(rank_norm(field, &e), r);
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f() -> Field {
        Field::gf256()
    }

    fn bits(rows: &[&str]) -> ExtMatrix {
        ExtMatrix::from_fn(rows.len(), rows[0].len(), |r, c| {
            Elem::from_bit(rows[r].as_bytes()[c] == b'1')
        })
    }

    #[test]
    fn rank_examples() {
        let f = f();
        assert_eq!(bits(&["1100", "0011", "1100"]).rank(&f), 2);
        assert_eq!(ExtMatrix::identity(5).rank(&f), 5);
        assert_eq!(ExtMatrix::zeros(3, 4).rank(&f), 0);
    }

    #[test]
    fn column_rank_examples() {
        let f = f();
        let m = ExtMatrix::row_vector(&[f.alpha_pow(3), f.alpha_pow(5), f.alpha_pow(6), f.alpha_pow(2)]);
        assert_eq!(column_rank_base(&f, &m), 4);
        assert_eq!(column_rank_base(&f, &ExtMatrix::zeros(4, 4)), 0);
    }

    #[test]
    fn rank_norm_examples() {
        let f = f();
        assert_eq!(rank_norm(&f, &[f.alpha(), f.alpha_pow(2), Elem::ZERO]), 2);
        assert_eq!(rank_norm(&f, &[Elem::ZERO; 5]), 0);
        // α + α^2 lies in the span of the first two
        assert_eq!(rank_norm(&f, &[f.alpha(), f.alpha_pow(2), f.alpha() + f.alpha_pow(2)]), 2);
    }

    #[test]
    fn kernel_examples() {
        let f = f();
        assert!(ExtMatrix::identity(4).right_kernel(&f).is_empty());
        let k = ExtMatrix::row_vector(&[Elem::ONE, Elem::ONE]).right_kernel(&f);
        assert_eq!(k, vec![vec![Elem::ONE, Elem::ONE]]);
    }

    #[test]
    fn rank_nullity_on_random_matrices() {
        let f = f();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for i in 0..100 {
            let rows = 1 + i % 6;
            let cols = 1 + (i * 7) % 8;
            let rank = (rng.next_u32() as usize) % (rows.min(cols) + 1);
            let m = ExtMatrix::random(&f, rows, rank, &mut rng)
                .mul(&f, &ExtMatrix::random(&f, rank, cols, &mut rng))
                .unwrap();
            let kernel = m.right_kernel(&f);
            assert_eq!(kernel.len() + m.rank(&f), cols);
            for u in &kernel {
                let prod = vec_mul(&f, u, &m.transpose()).unwrap();
                assert!(prod.iter().all(|e| e.is_zero()));
            }
        }
    }

    #[test]
    fn invertible_base_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (one, one_inv) = BaseMatrix::random_invertible(1, &mut rng);
        assert_eq!(one, BaseMatrix::identity(1));
        assert_eq!(one_inv, BaseMatrix::identity(1));
        for i in 0..50 {
            let size = 1 + i % 12;
            let (p, p_inv) = BaseMatrix::random_invertible(size, &mut rng);
            assert_eq!(p.mul(&p_inv).unwrap(), BaseMatrix::identity(size));
            assert_eq!(p.rank(), size);
        }
    }

    #[test]
    fn nonsingular_ext_matrices() {
        let f = f();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for k in 1..8 {
            let (s, s_inv) = random_nonsingular_ext(&f, k, &mut rng);
            assert_eq!(s.mul(&f, &s_inv).unwrap(), ExtMatrix::identity(k));
            assert_eq!(s.rank(&f), k);
        }
        assert!(ExtMatrix::zeros(2, 2).inverse(&f).is_none());
    }

    #[test]
    fn vectors_of_prescribed_rank() {
        let f = f();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        assert_eq!(random_vector_of_rank(&f, 6, 0, &mut rng).unwrap(), vec![Elem::ZERO; 6]);
        for i in 0..200 {
            let r = 1 + i % 2;
            let e = random_vector_of_rank(&f, 8, r, &mut rng).unwrap();
            assert_eq!(rank_norm(&f, &e), r);
        }
        assert!(random_vector_of_rank(&f, 3, 4, &mut rng).is_err());
        assert!(random_vector_of_rank(&f, 12, 9, &mut rng).is_err());
    }

    #[test]
    fn base_field_scrambling_preserves_rank_norm() {
        let f = f();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for i in 0..100 {
            let r = i % 4;
            let e = random_vector_of_rank(&f, 10, r, &mut rng).unwrap();
            let (p, _) = BaseMatrix::random_invertible(10, &mut rng);
            assert_eq!(rank_norm(&f, &vec_mul_base(&e, &p).unwrap()), r);
        }
    }

    #[test]
    fn frobenius_of_matrices() {
        let f = f();
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let p = BaseMatrix::random(5, 7, &mut rng).to_ext();
        assert_eq!(p.frobenius(&f, 1), p);
        for _ in 0..50 {
            let a = ExtMatrix::random(&f, 3, 4, &mut rng);
            let b = ExtMatrix::random(&f, 4, 2, &mut rng);
            assert_eq!(a.frobenius(&f, 8), a);
            assert_eq!(
                a.mul(&f, &b).unwrap().frobenius(&f, 1),
                a.frobenius(&f, 1).mul(&f, &b.frobenius(&f, 1)).unwrap()
            );
        }
    }

    #[test]
    fn solve_returns_consistent_solutions() {
        let f = f();
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..50 {
            let a = ExtMatrix::random(&f, 5, 3, &mut rng);
            let x = [f.random(&mut rng), f.random(&mut rng), f.random(&mut rng)];
            let b = vec_mul(&f, &x, &a.transpose()).unwrap();
            let got = a.solve(&f, &b).unwrap();
            assert_eq!(vec_mul(&f, &got, &a.transpose()).unwrap(), b);
        }
        // x + y = 1 and x + y = 0 are inconsistent
        let a = ExtMatrix::from_rows(&[vec![Elem::ONE, Elem::ONE], vec![Elem::ONE, Elem::ONE]]).unwrap();
        assert!(a.solve(&f, &[Elem::ONE, Elem::ZERO]).is_none());
    }

    #[test]
    fn base_kernel_and_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let m = BaseMatrix::random(6, 9, &mut rng);
            let kernel = m.kernel();
            assert_eq!(kernel.rows() + m.rank(), 9);
            assert!(m.mul(&kernel.transpose()).unwrap().is_zero());
            let x: Vec<bool> = (0..9).map(|_| rng.next_u32() & 1 == 1).collect();
            let b: Vec<bool> = (0..6)
                .map(|r| (0..9).filter(|&c| m.get(r, c) && x[c]).count() % 2 == 1)
                .collect();
            let got = m.solve(&b).unwrap();
            let check: Vec<bool> = (0..6)
                .map(|r| (0..9).filter(|&c| m.get(r, c) && got[c]).count() % 2 == 1)
                .collect();
            assert_eq!(check, b);
        }
    }

    #[test]
    fn wide_base_matrices_span_multiple_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let m = BaseMatrix::random_of_rank(70, 130, 65, &mut rng).unwrap();
        assert_eq!(m.rank(), 65);
        assert_eq!(m.transpose().rank(), 65);
    }
}
