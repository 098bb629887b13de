//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors and matrix rows are stored as `u64` words; addition is XOR.
//! Every reduction in this module uses the same pivot rule (lowest column
//! index first, pivot rows moved to the lowest free row), so echelon forms,
//! kernels, quotients and solutions are reproducible bit for bit.

use std::fmt;
use std::ops::{Add, AddAssign};

use thiserror::Error;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("subspace is not contained in the ambient subspace")]
    SubspaceNotContained,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Vector {
    words: Vec<u64>,
    len: usize,
}

impl GF2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    /// Low `len` bits of `mask`, bit `i` of the mask becoming coordinate `i`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            let keep = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = mask & keep;
        }
        v
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse_bits(s: &str) -> Option<Self> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        bits.map(|b| Self::from_bools(&b))
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
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &GF2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &GF2Vector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn lowest_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn highest_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(k * WORD + (WORD - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }

    pub fn iter_ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Bits as a `u64` mask; only valid for `len <= 64`.
    pub fn to_mask(&self) -> u64 {
        assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    /// Coordinates in reverse order: bit `i` moves to `len - 1 - i`.
    pub fn reversed(&self) -> GF2Vector {
        GF2Vector::from_indices(self.len, self.iter_ones().map(|i| self.len - 1 - i))
    }

    /// Sub-vector `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> GF2Vector {
        assert!(start + len <= self.len);
        GF2Vector::from_indices(
            len,
            self.iter_ones()
                .filter(|&i| i >= start && i < start + len)
                .map(|i| i - start),
        )
    }

    pub fn concat(&self, other: &GF2Vector) -> GF2Vector {
        let mut v = GF2Vector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            v.set(i, true);
        }
        for i in other.iter_ones() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Copies `other` into `self` starting at `offset`, XOR-ing into existing bits.
    pub fn xor_at(&mut self, offset: usize, other: &GF2Vector) {
        for i in other.iter_ones() {
            self.flip(offset + i);
        }
    }
}

impl fmt::Debug for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Vector({self})")
    }
}

impl fmt::Display for GF2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Add<&GF2Vector> for &GF2Vector {
    type Output = GF2Vector;
    fn add(self, rhs: &GF2Vector) -> GF2Vector {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl Add for GF2Vector {
    type Output = GF2Vector;
    fn add(mut self, rhs: GF2Vector) -> GF2Vector {
        self.xor_assign(&rhs);
        self
    }
}

impl AddAssign<&GF2Vector> for GF2Vector {
    fn add_assign(&mut self, rhs: &GF2Vector) {
        self.xor_assign(rhs);
    }
}

/// Iterator over the indices of set bits, ascending.
pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + tz);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

/// Row-major bit-packed matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[GF2Vector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols);
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[GF2Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for r in v.iter_ones() {
                m.set(r, c, true);
            }
        }
        m
    }

    /// Parses rows written as `0`/`1` strings.
    pub fn parse_rows(rows: &[&str]) -> Option<Self> {
        let vs: Option<Vec<GF2Vector>> = rows.iter().map(|r| GF2Vector::parse_bits(r)).collect();
        let vs = vs?;
        let cols = vs.first().map_or(0, |v| v.len());
        if vs.iter().any(|v| v.len() != cols) {
            return None;
        }
        Some(Self::from_rows(cols, &vs))
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
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> GF2Vector {
        GF2Vector {
            words: self.row_words(r).to_vec(),
            len: self.cols,
        }
    }

    pub fn column(&self, c: usize) -> GF2Vector {
        GF2Vector::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn columns(&self) -> Vec<GF2Vector> {
        let t = self.transpose();
        (0..t.rows).map(|r| t.row(r)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..dst * s + s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..src * s + s])
        };
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x ^= *y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn mul_vec(&self, v: &GF2Vector) -> GF2Vector {
        assert_eq!(v.len(), self.cols);
        let mut out = GF2Vector::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.row_words(r).iter().zip(v.words()) {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &GF2Matrix) -> GF2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = GF2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.row(r).iter_ones() {
                let src = other.row_words(k);
                let dst = &mut out.data[r * out.stride..(r + 1) * out.stride];
                for (x, y) in dst.iter_mut().zip(src) {
                    *x ^= *y;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &GF2Matrix) -> GF2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x ^= *y;
        }
        out
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut t = GF2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Reduced row-echelon form in place; returns the pivot column of each
    /// nonzero row (rows `0..rank`).
    fn rref_in_place(&mut self, pivot_limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..pivot_limit.min(self.cols) {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            self.swap_rows(next, p);
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_rows(r, next);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (GF2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut echelon = Echelon::new(self.cols);
        for r in 0..self.rows {
            echelon.insert(self.row(r));
        }
        echelon.rank()
    }

    /// Canonical basis of `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        kernel_of_rows(self.cols, (0..self.rows).map(|r| self.row(r)))
    }

    /// Canonical basis of the column space.
    pub fn image_basis(&self) -> Subspace {
        Subspace::from_spanning(self.rows, self.columns())
    }

    /// One solution of `M x = rhs` (free variables zero), or `None`.
    pub fn solve(&self, rhs: &GF2Vector) -> Option<GF2Vector> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = GF2Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in self.row(r).iter_ones() {
                aug.set(r, c, true);
            }
            if rhs.get(r) {
                aug.set(r, self.cols, true);
            }
        }
        let pivots = aug.rref_in_place(self.cols);
        for r in pivots.len()..self.rows {
            if aug.get(r, self.cols) {
                return None;
            }
        }
        let mut x = GF2Vector::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            if aug.get(r, self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GF2Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Incrementally maintained reduced row-echelon basis.
///
/// Every stored row has a distinct pivot (its lowest set bit) and is zero in
/// the pivot columns of all other rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<GF2Vector>,
    row_of_pivot: Vec<usize>,
}

const NO_ROW: usize = usize::MAX;

impl Echelon {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            row_of_pivot: vec![NO_ROW; width],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// `v` minus its projection onto the current span along pivot columns.
    pub fn reduce(&self, v: &GF2Vector) -> GF2Vector {
        let mut out = v.clone();
        for b in v.iter_ones() {
            let r = self.row_of_pivot[b];
            if r != NO_ROW {
                out.xor_assign(&self.rows[r]);
            }
        }
        out
    }

    /// Adds `v` to the span; returns `true` if the rank grew.
    pub fn insert(&mut self, v: GF2Vector) -> bool {
        assert_eq!(v.len(), self.width);
        let v = self.reduce(&v);
        let Some(p) = v.lowest_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        self.row_of_pivot[p] = self.rows.len();
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: &GF2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn into_subspace(self) -> Subspace {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.lowest_one());
        Subspace::from_canonical(self.width, rows)
    }
}

/// Canonical kernel of the system whose equations are `rows`.
///
/// Rows are reduced with reversed column order, which makes the free-column
/// kernel vectors come out directly in canonical (lowest pivot) echelon form.
pub fn kernel_of_rows<I: IntoIterator<Item = GF2Vector>>(width: usize, rows: I) -> Subspace {
    let mut echelon = Echelon::new(width);
    for r in rows {
        echelon.insert(r.reversed());
    }
    let mut basis = Vec::with_capacity(width - echelon.rank());
    // Reversed coordinates: pivot columns are bound, others are free.
    for f in 0..width {
        if echelon.row_of_pivot[f] != NO_ROW {
            continue;
        }
        let mut v = GF2Vector::zeros(width);
        v.set(width - 1 - f, true);
        for row in &echelon.rows {
            if row.get(f) {
                let p = row.lowest_one().expect("nonzero row");
                v.set(width - 1 - p, true);
            }
        }
        basis.push(v);
    }
    basis.reverse();
    Subspace::from_canonical(width, basis)
}

/// A linear subspace of GF(2)^n held in canonical reduced echelon form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<GF2Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn from_canonical(ambient_dim: usize, basis: Vec<GF2Vector>) -> Self {
        let pivots = basis
            .iter()
            .map(|b| b.lowest_one().expect("basis vectors are nonzero"))
            .collect();
        Self {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_canonical(ambient_dim, Vec::new())
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_canonical(
            ambient_dim,
            (0..ambient_dim)
                .map(|i| GF2Vector::unit(ambient_dim, i))
                .collect(),
        )
    }

    pub fn from_spanning<I: IntoIterator<Item = GF2Vector>>(ambient_dim: usize, vectors: I) -> Self {
        let mut echelon = Echelon::new(ambient_dim);
        for v in vectors {
            echelon.insert(v);
        }
        echelon.into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GF2Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduction of `v` modulo this subspace; zero exactly on members.
    pub fn reduce(&self, v: &GF2Vector) -> GF2Vector {
        let mut out = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v.get(p) {
                out.xor_assign(b);
            }
        }
        out
    }

    pub fn contains(&self, v: &GF2Vector) -> bool {
        v.len() == self.ambient_dim && self.reduce(v).is_zero()
    }

    /// Coordinates of a member with respect to [`Self::basis`].
    pub fn coordinates(&self, v: &GF2Vector) -> Option<GF2Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(GF2Vector::from_indices(
            self.dim(),
            self.pivots
                .iter()
                .enumerate()
                .filter(|(_, &p)| v.get(p))
                .map(|(k, _)| k),
        ))
    }

    /// Member with the given coordinates.
    pub fn combine(&self, coords: &GF2Vector) -> GF2Vector {
        let mut out = GF2Vector::zeros(self.ambient_dim);
        for k in coords.iter_ones() {
            out.xor_assign(&self.basis[k]);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    /// Basis vectors as matrix columns.
    pub fn to_columns(&self) -> GF2Matrix {
        GF2Matrix::from_columns(self.ambient_dim, &self.basis)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_spanning(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }
}

/// `Z / B` with canonical coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    base: Subspace,
    representatives: Vec<GF2Vector>,
    rep_pivots: Vec<usize>,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[GF2Vector] {
        &self.representatives
    }

    /// Coordinates of the class of `v` (which must lie in `Z`).
    pub fn class_coordinates(&self, v: &GF2Vector) -> GF2Vector {
        let r = self.base.reduce(v);
        GF2Vector::from_indices(
            self.dim(),
            self.rep_pivots
                .iter()
                .enumerate()
                .filter(|(_, &p)| r.get(p))
                .map(|(k, _)| k),
        )
    }

    /// Canonical representative (reduced modulo `B`) of the class with these
    /// coordinates.
    pub fn lift(&self, coords: &GF2Vector) -> GF2Vector {
        let mut out = GF2Vector::zeros(self.base.ambient_dim());
        for k in coords.iter_ones() {
            out.xor_assign(&self.representatives[k]);
        }
        out
    }

    pub fn base(&self) -> &Subspace {
        &self.base
    }
}

/// Quotient of `z` by `b`; representatives are reduced modulo `b` and then
/// put in reduced echelon form, so they vanish on every pivot column of `b`.
pub fn quotient(z: &Subspace, b: &Subspace) -> Result<Quotient, Gf2Error> {
    if z.ambient_dim != b.ambient_dim {
        return Err(Gf2Error::DimensionMismatch {
            expected: z.ambient_dim,
            got: b.ambient_dim,
        });
    }
    if !b.is_subspace_of(z) {
        return Err(Gf2Error::SubspaceNotContained);
    }
    let mut echelon = Echelon::new(z.ambient_dim);
    for v in &z.basis {
        echelon.insert(b.reduce(v));
    }
    let reps = echelon.into_subspace();
    debug_assert_eq!(reps.dim(), z.dim() - b.dim());
    Ok(Quotient {
        base: b.clone(),
        rep_pivots: reps.pivots.clone(),
        representatives: reps.basis,
    })
}

pub fn rank(m: &GF2Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &GF2Matrix) -> Subspace {
    m.kernel_basis()
}

pub fn image_basis(m: &GF2Matrix) -> Subspace {
    m.image_basis()
}

pub fn solve(m: &GF2Matrix, rhs: &GF2Vector) -> Option<GF2Vector> {
    m.solve(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> GF2Matrix {
        GF2Matrix::parse_rows(rows).unwrap()
    }

    fn v(bits: &str) -> GF2Vector {
        GF2Vector::parse_bits(bits).unwrap()
    }

    /// All vectors of GF(2)^n.
    fn all_vectors(n: usize) -> Vec<GF2Vector> {
        (0..1u64 << n).map(|mask| GF2Vector::from_mask(n, mask)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(GF2Matrix::identity(3).rank(), 3);
        assert_eq!(GF2Matrix::zeros(4, 7).rank(), 0);
        // 110 + 011 = 101, so two independent rows; check by enumerating combinations.
        let a = m(&["110", "011", "101"]);
        let rows: Vec<_> = (0..3).map(|r| a.row(r)).collect();
        let span: std::collections::HashSet<_> = (0..8u32)
            .map(|mask| {
                let mut acc = GF2Vector::zeros(3);
                for (k, r) in rows.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        acc += r;
                    }
                }
                acc
            })
            .collect();
        assert_eq!(span.len(), 4);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(GF2Matrix::identity(4).kernel_basis().dim(), 0);
        assert_eq!(GF2Matrix::zeros(2, 3).kernel_basis(), Subspace::full(3));
        let k = m(&["11"]).kernel_basis();
        let brute: Vec<_> = all_vectors(2)
            .into_iter()
            .filter(|x| !x.is_zero() && !m(&["11"]).mul_vec(x).get(0))
            .collect();
        assert_eq!(brute, vec![v("11")]);
        assert_eq!(k.basis(), &[v("11")]);
    }

    #[test]
    fn image_examples() {
        assert_eq!(GF2Matrix::identity(3).image_basis(), Subspace::full(3));
        assert_eq!(GF2Matrix::zeros(3, 2).image_basis().dim(), 0);
        let img = m(&["11", "11"]).image_basis();
        assert_eq!(img.basis(), &[v("11")]);
    }

    #[test]
    fn quotient_examples() {
        let full = Subspace::full(2);
        let q = quotient(&full, &full).unwrap();
        assert_eq!(q.dim(), 0);
        let q = quotient(&full, &Subspace::zero(2)).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.representatives(), &[v("10"), v("01")]);
        let b = Subspace::from_spanning(2, [v("11")]);
        let q = quotient(&full, &b).unwrap();
        assert_eq!(q.dim(), 1);
        // Cosets of span{11}: {00,11} and {10,01}.
        assert!(!b.contains(&q.representatives()[0]));
        let line = Subspace::from_spanning(2, [v("10")]);
        assert_eq!(
            quotient(&line, &b).unwrap_err(),
            Gf2Error::SubspaceNotContained
        );
    }

    #[test]
    fn solve_examples() {
        assert_eq!(GF2Matrix::identity(3).solve(&v("100")), Some(v("100")));
        assert_eq!(GF2Matrix::zeros(2, 2).solve(&v("01")), None);
        // Both (1,0) and (0,1) solve (1 1)x = 1; free variable x2 is set to zero.
        assert_eq!(m(&["11"]).solve(&v("1")), Some(v("10")));
    }

    #[test]
    fn kernel_of_rows_is_canonical() {
        let a = m(&["1100", "0110"]);
        let k = a.kernel_basis();
        let again = Subspace::from_spanning(4, k.basis().to_vec());
        assert_eq!(k, again);
        for b in k.basis() {
            assert!(a.mul_vec(b).is_zero());
        }
    }

    #[test]
    fn vector_helpers() {
        let x = v("0010110");
        assert_eq!(x.iter_ones().collect::<Vec<_>>(), vec![2, 4, 5]);
        assert_eq!(x.lowest_one(), Some(2));
        assert_eq!(x.highest_one(), Some(5));
        assert_eq!(x.reversed(), v("0110100"));
        assert_eq!(x.slice(2, 3), v("101"));
        let long = GF2Vector::unit(200, 130);
        assert_eq!(long.iter_ones().collect::<Vec<_>>(), vec![130]);
        assert_eq!(long.highest_one(), Some(130));
    }
}
