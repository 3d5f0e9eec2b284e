//! Exact integer and rational linear algebra.
//!
//! Hermite and Smith normal forms, integer kernels, saturation of sublattices,
//! rational solving and a small exact feasibility solver used for convex-hull
//! membership tests.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn rat_of(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Input(format!("cannot parse rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[Rat]) -> Int {
    v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

/// The positive primitive integer vector on the ray spanned by `v`.
pub fn primitive_integer(v: &[Rat]) -> Vec<Int> {
    let den = common_denominator(v);
    let scaled: Vec<Int> = v.iter().map(|x| (x * rat_of(&den)).to_integer()).collect();
    let g = scaled.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return scaled;
    }
    scaled.into_iter().map(|x| x / &g).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn vsub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vadd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vscale(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

pub fn to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(rat_of).collect()
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let big: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_big_rows(&big, rows.first().map_or(0, |r| r.len()))
    }

    pub fn from_big_rows(rows: &[Vec<Int>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned());
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Int::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Rat::zero(), |acc, j| acc + rat_of(self.get(i, j)) * &v[j]))
            .collect()
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(rat_of).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn trace(&self) -> Int {
        (0..self.rows.min(self.cols)).fold(Int::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Int {
        self.to_rat().det().to_integer()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rat>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned());
        }
        RatMatrix { rows: rows.len(), cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Rat::zero(), |acc, j| acc + self.get(i, j) * &v[j]))
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let k = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &k * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Rat::zero() };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let k = m.get(i, c) / &piv;
                for j in c..n {
                    let v = m.get(i, j) - &k * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Solution set of a rational linear system: a particular solution plus a
/// basis of the homogeneous solutions.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution {
    pub particular: Vec<Rat>,
    pub directions: Vec<Vec<Rat>>,
}

/// Solves `A x = b` over the rationals.
pub fn solve_rational(a: &RatMatrix, b: &[Rat]) -> Option<AffineSolution> {
    assert_eq!(a.rows, b.len());
    let mut aug = RatMatrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut particular = vec![Rat::zero(); a.cols];
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = r.get(i, a.cols).clone();
    }
    Some(AffineSolution { particular, directions: a.nullspace() })
}

/// Hermite normal form `H = U M` (row style).
///
/// Pivots are positive; entries above a pivot lie in `[0, pivot)`. Zero rows
/// sit at the bottom of `H`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn hnf(m: &IntMatrix) -> Hnf {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pr = 0;
    let mut pivots = Vec::new();
    for c in 0..m.cols {
        if pr == m.rows {
            break;
        }
        loop {
            let best = (pr..m.rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()));
            let Some(k) = best else { break };
            h.swap_rows(k, pr);
            u.swap_rows(k, pr);
            let mut done = true;
            for i in pr + 1..m.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = -h.get(i, c).div_floor(h.get(pr, c));
                h.add_row(i, pr, &q);
                u.add_row(i, pr, &q);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(pr, c).is_zero() {
            continue;
        }
        if h.get(pr, c).is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        for i in 0..pr {
            let q = -h.get(i, c).div_floor(h.get(pr, c));
            h.add_row(i, pr, &q);
            u.add_row(i, pr, &q);
        }
        pivots.push(c);
        pr += 1;
    }
    Hnf { h, u, rank: pr, pivots }
}

/// Smith normal form `D = U M V` with `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<Int>,
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn snf(m: &IntMatrix) -> Snf {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    let mut diag = Vec::new();
    'outer: for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    if d.get(i, j).is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| d.get(i, j).abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'outer };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..m.rows {
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..m.cols {
                let q = -d.get(t, j).div_floor(d.get(t, t));
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let piv = d.get(t, t).clone();
            let bad = (t + 1..m.rows).find(|&i| (t + 1..m.cols).any(|j| !d.get(i, j).is_multiple_of(&piv)));
            if let Some(i) = bad {
                d.add_row(t, i, &Int::one());
                u.add_row(t, i, &Int::one());
                continue;
            }
            break;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        diag.push(d.get(t, t).clone());
    }
    Snf { diag, d, u, v }
}

/// Z-basis of `{x in Z^n : A x = 0}` as rows.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<Int>> {
    let t = a.transpose();
    let h = hnf(&t);
    (h.rank..t.rows).map(|i| h.u.row(i)).collect()
}

/// A sublattice of `Z^n` given by linearly independent rows in Hermite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub ambient: usize,
    pub rows: Vec<Vec<Int>>,
}

impl LatticeBasis {
    /// Lattice generated by the given integer vectors.
    pub fn generated_by(ambient: usize, gens: &[Vec<Int>]) -> Self {
        if gens.is_empty() {
            return LatticeBasis { ambient, rows: Vec::new() };
        }
        let m = IntMatrix::from_big_rows(gens, ambient);
        let h = hnf(&m);
        LatticeBasis { ambient, rows: (0..h.rank).map(|i| h.h.row(i)).collect() }
    }

    pub fn standard(n: usize) -> Self {
        Self::generated_by(n, &IntMatrix::identity(n).row_vecs())
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_big_rows(&self.rows, self.ambient)
    }

    /// Coordinates of `x` in this basis, if `x` lies in the rational span.
    pub fn coords(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        if self.rows.is_empty() {
            return if x.iter().all(|v| v.is_zero()) { Some(Vec::new()) } else { None };
        }
        let bt = self.matrix().transpose().to_rat();
        let sol = solve_rational(&bt, x)?;
        Some(sol.particular)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.coords(x).is_some_and(|c| is_integral(&c))
    }

    /// `Z^n` intersected with the rational span of this lattice.
    pub fn saturation(&self) -> LatticeBasis {
        if self.rows.is_empty() {
            return self.clone();
        }
        let perp = integer_kernel(&self.matrix());
        if perp.is_empty() {
            return LatticeBasis::standard(self.ambient);
        }
        let sat = integer_kernel(&IntMatrix::from_big_rows(&perp, self.ambient));
        LatticeBasis::generated_by(self.ambient, &sat)
    }
}

/// Index of a lattice inside another one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

/// `[sup : sub]`; fails with `NotASublattice` if `sub` is not contained in `sup`.
pub fn lattice_index(sub: &LatticeBasis, sup: &LatticeBasis) -> Result<LatticeIndex> {
    if sub.ambient != sup.ambient {
        return Err(Error::DimensionMismatch("lattices in different ambient spaces".into()));
    }
    let mut coords = Vec::new();
    for r in &sub.rows {
        let c = sup
            .coords(&to_rat_vec(r))
            .filter(|c| is_integral(c))
            .ok_or_else(|| Error::NotASublattice(format!("generator {r:?} is not in the larger lattice")))?;
        coords.push(c.iter().map(|x| x.to_integer()).collect::<Vec<_>>());
    }
    if sub.rank() < sup.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    if sub.rank() == 0 {
        return Ok(LatticeIndex::Finite(Int::one()));
    }
    let m = IntMatrix::from_big_rows(&coords, sup.rank());
    Ok(LatticeIndex::Finite(snf(&m).diag.iter().product::<Int>().abs()))
}

/// An integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    let s = snf(a);
    let ub = s.u.mul_vec(b);
    let mut y = vec![Int::zero(); a.cols];
    for (i, val) in ub.iter().enumerate() {
        match s.diag.get(i) {
            Some(di) if !di.is_zero() => {
                if !val.is_multiple_of(di) {
                    return None;
                }
                y[i] = val / di;
            }
            _ => {
                if !val.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(s.v.mul_vec(&y))
}

/// A nonnegative solution of `A x = b`, found by a phase-one simplex method
/// with Bland's rule.
pub fn nonnegative_solution(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.rows;
    let n = a.cols;
    let width = n + m + 1;
    let mut t = vec![vec![Rat::zero(); width]; m + 1];
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            let v = a.get(i, j).clone();
            t[i][j] = if flip { -v } else { v };
        }
        t[i][n + i] = Rat::one();
        t[i][width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
    }
    for j in 0..width {
        if j >= n && j < n + m {
            continue;
        }
        let s = (0..m).fold(Rat::zero(), |acc, i| acc + &t[i][j]);
        t[m][j] = -s;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) else { break };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let lr = &t[l][width - 1] / &t[l][enter];
                    if ratio < lr || (ratio == lr && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        let Some(r) = leave else { break };
        let piv = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &piv;
        }
        for i in 0..=m {
            if i == r || t[i][enter].is_zero() {
                continue;
            }
            let k = t[i][enter].clone();
            for j in 0..width {
                let v = &k * &t[r][j];
                t[i][j] -= v;
            }
        }
        basis[r] = enter;
    }
    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

/// Is `x` a convex combination of `points`?
pub fn in_convex_hull(points: &[Vec<Rat>], x: &[Rat]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = x.len();
    let mut a = RatMatrix::zeros(d + 1, points.len());
    for (j, p) in points.iter().enumerate() {
        for i in 0..d {
            a.set(i, j, p[i].clone());
        }
        a.set(d, j, Rat::one());
    }
    let mut b = x.to_vec();
    b.push(Rat::one());
    nonnegative_solution(&a, &b).is_some()
}

/// Rank of the affine span of the points (`-1` encoded as `None` when empty).
pub fn affine_rank(points: &[Vec<Rat>]) -> Option<usize> {
    let first = points.first()?;
    let rows: Vec<Vec<Rat>> = points[1..].iter().map(|p| vsub(p, first)).collect();
    if rows.is_empty() {
        return Some(0);
    }
    Some(RatMatrix::from_rows(&rows, first.len()).rank())
}

pub fn to_i64_vec(v: &[Int]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}
