//! Linear algebra over Z/2 with bit-packed rows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::num::Lattice;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn unit(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(k, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (k, &b) in bits.iter().enumerate() {
            v.set(k, b);
        }
        v
    }

    pub fn from_support(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for k in ones {
            v.flip(k);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, k: usize) -> bool {
        debug_assert!(k < self.len);
        (self.words[k / 64] >> (k % 64)) & 1 == 1
    }

    pub fn set(&mut self, k: usize, b: bool) {
        debug_assert!(k < self.len);
        let m = 1u64 << (k % 64);
        if b {
            self.words[k / 64] |= m;
        } else {
            self.words[k / 64] &= !m;
        }
    }

    pub fn flip(&mut self, k: usize) {
        self.words[k / 64] ^= 1u64 << (k % 64);
    }

    pub fn xor_assign(&mut self, o: &Gf2Vector) {
        assert_eq!(self.len, o.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, o: &Gf2Vector) -> Gf2Vector {
        let mut v = self.clone();
        v.xor_assign(o);
        v
    }

    pub fn and(&self, o: &Gf2Vector) -> Gf2Vector {
        assert_eq!(self.len, o.len, "length mismatch");
        Gf2Vector { len: self.len, words: self.words.iter().zip(&o.words).map(|(a, b)| a & b).collect() }
    }

    pub fn dot(&self, o: &Gf2Vector) -> bool {
        assert_eq!(self.len, o.len, "length mismatch");
        self.words.iter().zip(&o.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&k| self.get(k))
    }

    /// `true` iff every set bit of `self` is set in `o`.
    pub fn is_subset_of(&self, o: &Gf2Vector) -> bool {
        self.words.iter().zip(&o.words).all(|(a, b)| a & !b == 0)
    }

    fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|k| if self.get(k) { '1' } else { '0' }).collect();
        write!(f, "[{s}]")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Matrix {
    rows: Vec<Gf2Vector>,
    cols: usize,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix { rows: vec![Gf2Vector::zeros(cols); rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix { rows: (0..n).map(|k| Gf2Vector::unit(n, k)).collect(), cols: n }
    }

    pub fn from_rows(cols: usize, rows: Vec<Gf2Vector>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Gf2Matrix { rows, cols }
    }

    pub fn from_bits(bits: &[Vec<bool>]) -> Self {
        let cols = bits.first().map_or(0, |r| r.len());
        Self::from_rows(cols, bits.iter().map(|r| Gf2Vector::from_bits(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &Gf2Vector {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.rows[r].set(c, b)
    }

    pub fn mul_vec(&self, v: &Gf2Vector) -> Gf2Vector {
        Gf2Vector::from_bits(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }

    /// Reduced row echelon form and pivot columns, lowest column first.
    fn rref(&self) -> (Vec<Gf2Vector>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&k| rows[k].get(c)) else { continue };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k != r && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Gf2Subspace {
        let (rows, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = Gf2Vector::unit(self.cols, free);
            for (row, &pc) in rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        debug_assert_eq!(pivots.len() + basis.len(), self.cols);
        Gf2Subspace { ambient_dim: self.cols, basis }
    }
}

/// A linear subspace of `Z_2^n` given by an independent basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Subspace {
    pub ambient_dim: usize,
    pub basis: Vec<Gf2Vector>,
}

impl Gf2Subspace {
    pub fn full(n: usize) -> Self {
        Gf2Subspace { ambient_dim: n, basis: (0..n).map(|k| Gf2Vector::unit(n, k)).collect() }
    }

    /// Subspace spanned by `gens`; dependent generators are dropped.
    pub fn span(n: usize, gens: impl IntoIterator<Item = Gf2Vector>) -> Self {
        let mut echelon: Vec<Gf2Vector> = Vec::new();
        let mut basis = Vec::new();
        for g in gens {
            if let Some(r) = reduce(&echelon, g.clone()) {
                echelon.push(r);
                basis.push(g);
            }
        }
        Gf2Subspace { ambient_dim: n, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        let mut echelon = Vec::new();
        for b in &self.basis {
            if let Some(r) = reduce(&echelon, b.clone()) {
                echelon.push(r);
            }
        }
        reduce(&echelon, v.clone()).is_none()
    }

    pub fn is_independent(&self) -> bool {
        Gf2Subspace::span(self.ambient_dim, self.basis.iter().cloned()).dim() == self.basis.len()
    }

    pub fn element(&self, coeffs: &[bool]) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.ambient_dim);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c {
                v.xor_assign(b);
            }
        }
        v
    }
}

/// Reduces `v` against an echelon list (distinct lowest ones); `None` if it
/// reduces to zero, otherwise the reduced vector.
fn reduce(echelon: &[Gf2Vector], mut v: Gf2Vector) -> Option<Gf2Vector> {
    loop {
        let low = v.lowest_one()?;
        match echelon.iter().find(|e| e.lowest_one() == Some(low)) {
            Some(e) => v.xor_assign(e),
            None => return Some(v),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineFlat {
    pub origin: Gf2Vector,
    pub direction: Gf2Subspace,
}

impl AffineFlat {
    pub fn dim(&self) -> usize {
        self.direction.dim()
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        self.direction.contains(&v.xor(&self.origin))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Solution {
    Empty,
    Linear(Gf2Subspace),
    Affine(AffineFlat),
}

impl Solution {
    pub fn dim(&self) -> Option<usize> {
        match self {
            Solution::Empty => None,
            Solution::Linear(s) => Some(s.dim()),
            Solution::Affine(a) => Some(a.dim()),
        }
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        match self {
            Solution::Empty => false,
            Solution::Linear(s) => s.contains(v),
            Solution::Affine(a) => a.contains(v),
        }
    }
}

/// Solves `{ x : a·x = b }` for the given constraint list.
pub fn solve_affine(ambient_dim: usize, constraints: &[(Gf2Vector, bool)]) -> Solution {
    // Augment each row with the right-hand side as an extra column.
    let n = ambient_dim;
    let rows: Vec<Gf2Vector> = constraints
        .iter()
        .map(|(a, b)| {
            assert_eq!(a.len(), n, "constraint length mismatch");
            let mut r = Gf2Vector::zeros(n + 1);
            for k in a.ones() {
                r.set(k, true);
            }
            r.set(n, *b);
            r
        })
        .collect();
    let aug = Gf2Matrix::from_rows(n + 1, rows);
    let (red, pivots) = aug.rref();
    if pivots.contains(&n) {
        return Solution::Empty;
    }
    let mut origin = Gf2Vector::zeros(n);
    for (row, &pc) in red.iter().zip(&pivots) {
        if row.get(n) {
            origin.set(pc, true);
        }
    }
    let lin = Gf2Matrix::from_rows(n, constraints.iter().map(|(a, _)| a.clone()).collect());
    let direction = if constraints.is_empty() { Gf2Subspace::full(n) } else { lin.kernel() };
    if origin.is_zero() {
        Solution::Linear(direction)
    } else {
        Solution::Affine(AffineFlat { origin, direction })
    }
}

/// An element of (Z/2)², used for symmetries ε and for directions mod 2.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Z2Pair(u8);

impl Z2Pair {
    pub const ZERO: Z2Pair = Z2Pair(0);
    pub const ALL: [Z2Pair; 4] = [Z2Pair(0), Z2Pair(1), Z2Pair(2), Z2Pair(3)];

    pub fn new(a: bool, b: bool) -> Self {
        Z2Pair(a as u8 | ((b as u8) << 1))
    }

    pub fn from_lattice(v: Lattice) -> Self {
        Z2Pair::new(v.i.rem_euclid(2) == 1, v.j.rem_euclid(2) == 1)
    }

    pub fn first(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn second(self) -> bool {
        self.0 & 2 == 2
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Parity of `ε · v`.
    pub fn pairing(self, v: Lattice) -> bool {
        (self.first() && v.i.rem_euclid(2) == 1) ^ (self.second() && v.j.rem_euclid(2) == 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn bits(self) -> [u8; 2] {
        [self.0 & 1, (self.0 >> 1) & 1]
    }
}

impl std::ops::Add for Z2Pair {
    type Output = Z2Pair;
    fn add(self, o: Z2Pair) -> Z2Pair {
        Z2Pair(self.0 ^ o.0)
    }
}

impl fmt::Debug for Z2Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0 & 1, self.0 >> 1)
    }
}

impl fmt::Display for Z2Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A one-dimensional affine line `{ε, ε + d}` in (Z/2)².
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PhaseLine {
    rep: Z2Pair,
    dir: Z2Pair,
}

impl PhaseLine {
    /// Normalizes so that the representative is the smaller element.
    pub fn new(eps: Z2Pair, dir: Z2Pair) -> Self {
        assert!(!dir.is_zero(), "phase line direction must be non-zero");
        let other = eps + dir;
        PhaseLine { rep: eps.min(other), dir }
    }

    pub fn from_pair(a: Z2Pair, b: Z2Pair) -> Self {
        PhaseLine::new(a, a + b)
    }

    pub fn rep(self) -> Z2Pair {
        self.rep
    }

    pub fn dir(self) -> Z2Pair {
        self.dir
    }

    pub fn elements(self) -> [Z2Pair; 2] {
        [self.rep, self.rep + self.dir]
    }

    pub fn contains(self, e: Z2Pair) -> bool {
        e == self.rep || e == self.rep + self.dir
    }

    pub fn translate(self, t: Z2Pair) -> Self {
        PhaseLine::new(self.rep + t, self.dir)
    }
}

impl fmt::Display for PhaseLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.elements();
        write!(f, "{{{a}, {b}}}")
    }
}
