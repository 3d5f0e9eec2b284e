//! Finite groups of affine lattice automorphisms.
//!
//! An affine map `x -> A x + b` on `Z^d` is stored as the `(d+1) x (d+1)`
//! matrix `[[A, b], [0, 1]]`, i.e. its linear extension to `Z^d + Z`.

use crate::error::{Error, Result};
use crate::exactlin::{int, rat_of, solve_rational, Int, IntMatrix, Rat, RatMatrix};
use crate::poly::Poly;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

pub const DEFAULT_MAX_ORDER: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    m: IntMatrix,
}

impl AffineMap {
    pub fn from_extended(m: IntMatrix) -> Result<Self> {
        let n = m.rows;
        if n == 0 || m.cols != n {
            return Err(Error::DimensionMismatch("extended matrix must be square".into()));
        }
        for j in 0..n {
            let want = if j == n - 1 { Int::one() } else { Int::zero() };
            if *m.get(n - 1, j) != want {
                return Err(Error::Input("last row of an extended matrix must be (0,...,0,1)".into()));
            }
        }
        let det = m.det();
        if det.abs() != Int::one() {
            return Err(Error::NotInvertible(format!("determinant {det}")));
        }
        Ok(AffineMap { m })
    }

    pub fn new(linear: &IntMatrix, translation: &[Int]) -> Result<Self> {
        let d = linear.rows;
        if linear.cols != d || translation.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "linear part {}x{} with translation of length {}",
                linear.rows,
                linear.cols,
                translation.len()
            )));
        }
        let mut m = IntMatrix::zeros(d + 1, d + 1);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, linear.get(i, j).clone());
            }
            m.set(i, d, translation[i].clone());
        }
        m.set(d, d, Int::one());
        Self::from_extended(m)
    }

    pub fn linear_only(linear: &IntMatrix) -> Result<Self> {
        Self::new(linear, &vec![Int::zero(); linear.rows])
    }

    pub fn from_rows(linear: &[Vec<i64>], translation: &[i64]) -> Result<Self> {
        let t: Vec<Int> = translation.iter().map(|&x| int(x)).collect();
        Self::new(&IntMatrix::from_rows(linear), &t)
    }

    pub fn identity(d: usize) -> Self {
        AffineMap { m: IntMatrix::identity(d + 1) }
    }

    /// Dimension of the lattice acted on.
    pub fn dim(&self) -> usize {
        self.m.rows - 1
    }

    pub fn extended(&self) -> &IntMatrix {
        &self.m
    }

    pub fn linear(&self) -> IntMatrix {
        let d = self.dim();
        let mut a = IntMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                a.set(i, j, self.m.get(i, j).clone());
            }
        }
        a
    }

    pub fn translation(&self) -> Vec<Int> {
        let d = self.dim();
        (0..d).map(|i| self.m.get(i, d).clone()).collect()
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).fold(rat_of(self.m.get(i, d)), |acc, j| acc + rat_of(self.m.get(i, j)) * &x[j]))
            .collect()
    }

    /// Action on the extended lattice `Z^d + Z`.
    pub fn apply_extended(&self, x: &[Rat]) -> Vec<Rat> {
        self.m.mul_rat_vec(x)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap { m: self.m.mul(&other.m) }
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = self.m.to_rat().inverse().ok_or_else(|| Error::NotInvertible("singular".into()))?;
        if !inv.data.iter().all(|x| x.is_integer()) {
            return Err(Error::NotInvertible("inverse is not integral".into()));
        }
        let data = inv.data.iter().map(|x| x.to_integer()).collect();
        Ok(AffineMap { m: IntMatrix { rows: inv.rows, cols: inv.cols, data } })
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    /// `det(I - g t)` for the extended matrix.
    pub fn det_series(&self) -> Poly {
        char_poly(&self.m).reversed()
    }

    /// Determinant of the linear part.
    pub fn det_linear(&self) -> Int {
        self.linear().det()
    }

    /// Characteristic polynomial of the extended matrix as a product of
    /// cyclotomic polynomials.
    pub fn char_poly_tilde(&self) -> Result<CycloFactorization> {
        let chi = char_poly(&self.m);
        let f = factor_cyclotomic(&chi).ok_or(Error::NotFiniteOrder)?;
        let l = f.mult.keys().fold(1usize, |acc, &k| acc.lcm(&k));
        if !matrix_pow(&self.m, l).is_identity() {
            return Err(Error::NotFiniteOrder);
        }
        Ok(f)
    }

    /// The affine subspace of fixed points.
    pub fn fixed_locus(&self) -> Option<FixedLocus> {
        let d = self.dim();
        let a = self.linear();
        let mut ia = RatMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let delta = if i == j { Int::one() } else { Int::zero() };
                ia.set(i, j, rat_of(&(delta - a.get(i, j))));
            }
        }
        let b: Vec<Rat> = self.translation().iter().map(rat_of).collect();
        let sol = solve_rational(&ia, &b)?;
        Some(FixedLocus { point: sol.particular, directions: sol.directions })
    }

    /// The unique fixed point, if the fixed locus is a single point.
    pub fn fixed_point(&self) -> Option<Vec<Rat>> {
        self.fixed_locus().filter(|l| l.directions.is_empty()).map(|l| l.point)
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        self.m.row_vecs()
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedLocus {
    pub point: Vec<Rat>,
    pub directions: Vec<Vec<Rat>>,
}

impl FixedLocus {
    /// Least `m` with `m * point` integral (unique fixed points only).
    pub fn denominator(&self) -> Int {
        self.point.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
    }
}

/// `{m : multiplicity of Phi_m}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CycloFactorization {
    pub mult: BTreeMap<usize, usize>,
}

impl CycloFactorization {
    pub fn poly(&self) -> Poly {
        self.mult.iter().fold(Poly::one(), |acc, (&m, &e)| &acc * &cyclotomic_poly(m).pow(e))
    }

    /// Order of any finite-order matrix with this characteristic polynomial.
    pub fn order(&self) -> usize {
        self.mult.keys().fold(1usize, |acc, &k| acc.lcm(&k))
    }
}

impl fmt::Display for CycloFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .mult
            .iter()
            .map(|(m, e)| if *e == 1 { format!("Phi_{m}") } else { format!("Phi_{m}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: usize) -> Poly {
    let mut p = &Poly::monomial(Rat::one(), m) - &Poly::one();
    for d in 1..m {
        if m % d == 0 {
            p = p.div_exact(&cyclotomic_poly(d)).expect("cyclotomic divisibility");
        }
    }
    p
}

fn factor_cyclotomic(chi: &Poly) -> Option<CycloFactorization> {
    let n = chi.degree().unwrap_or(0);
    let mut rest = chi.monic();
    let mut mult = BTreeMap::new();
    let mut m = 1;
    // phi(m) >= sqrt(m / 2), so no cyclotomic factor has index above 2 n^2
    while rest.degree().unwrap_or(0) > 0 {
        if m > 2 * n * n {
            return None;
        }
        if euler_phi(m) > n {
            m += 1;
            continue;
        }
        let phi = cyclotomic_poly(m);
        while let Some(q) = rest.div_exact(&phi) {
            rest = q;
            *mult.entry(m).or_insert(0) += 1;
        }
        m += 1;
    }
    Some(CycloFactorization { mult })
}

/// Cycle lengths of a permutation, in decreasing order.
pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for i in 0..perm.len() {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// `det(x I - M)` by the Faddeev-LeVerrier recursion.
pub fn char_poly(m: &IntMatrix) -> Poly {
    let n = m.rows;
    let a = m.to_rat();
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = Rat::one();
    let mut mk = RatMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&mk);
        for i in 0..n {
            let v = next.get(i, i) + &c[n - k + 1];
            next.set(i, i, v);
        }
        let am = a.mul(&next);
        let tr = (0..n).fold(Rat::zero(), |acc, i| acc + am.get(i, i));
        c[n - k] = -tr / Rat::from_integer(Int::from(k));
        mk = next;
    }
    Poly::new(c)
}

fn matrix_pow(m: &IntMatrix, e: usize) -> IntMatrix {
    let mut out = IntMatrix::identity(m.rows);
    for _ in 0..e {
        out = out.mul(m);
    }
    out
}

/// A finite group of affine maps, closed under composition.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    dim: usize,
    elements: Vec<AffineMap>,
    index: HashMap<IntMatrix, usize>,
    generators: Vec<usize>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    orders: Vec<usize>,
}

impl FiniteGroup {
    pub fn generate(dim: usize, gens: &[AffineMap]) -> Result<Self> {
        Self::generate_bounded(dim, gens, DEFAULT_MAX_ORDER)
    }

    pub fn trivial(dim: usize) -> Self {
        Self::generate(dim, &[]).expect("trivial group")
    }

    pub fn generate_bounded(dim: usize, gens: &[AffineMap], max_order: usize) -> Result<Self> {
        for g in gens {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch(format!("generator acts on Z^{} not Z^{dim}", g.dim())));
            }
        }
        let id = AffineMap::identity(dim);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id.m.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let h = g.compose(&elements[i]);
                if !index.contains_key(&h.m) {
                    if elements.len() >= max_order {
                        return Err(Error::OrderExceeded(max_order));
                    }
                    index.insert(h.m.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = index[&elements[i].compose(&elements[j]).m];
            }
        }
        let inverses: Vec<usize> = (0..n).map(|i| (0..n).find(|&j| table[i][j] == 0).unwrap()).collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut cl: Vec<usize> = (0..n).map(|x| table[table[x][g]][inverses[x]]).collect();
            cl.sort_unstable();
            cl.dedup();
            for &c in &cl {
                class_of[c] = classes.len();
            }
            classes.push(cl);
        }
        let orders = (0..n)
            .map(|g| {
                let mut k = 1;
                let mut x = g;
                while x != 0 {
                    x = table[g][x];
                    k += 1;
                }
                k
            })
            .collect();
        let generators = gens.iter().map(|g| index[&g.m]).collect();
        Ok(FiniteGroup { dim, elements, index, generators, table, inverses, classes, class_of, orders })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[AffineMap] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &AffineMap {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, g: &AffineMap) -> Option<usize> {
        self.index.get(&g.m).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1usize, |acc, &o| acc.lcm(&o))
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.elements.len()
    }

    /// Evaluates a word in the generators (indices into `generators()`).
    pub fn word(&self, w: &[usize]) -> Result<usize> {
        let mut x = 0;
        for &i in w {
            let g = *self.generators.get(i).ok_or_else(|| Error::Input(format!("generator {i} out of range")))?;
            x = self.mul(x, g);
        }
        Ok(x)
    }

    /// A shortest word in the generators evaluating to `x`.
    pub fn word_for(&self, x: usize) -> Vec<usize> {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.order()];
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(y) = queue.pop_front() {
            if y == x {
                break;
            }
            for (i, &g) in self.generators.iter().enumerate() {
                let z = self.mul(y, g);
                if !seen[z] {
                    seen[z] = true;
                    prev[z] = Some((y, i));
                    queue.push_back(z);
                }
            }
        }
        let mut w = Vec::new();
        let mut y = x;
        while let Some((p, i)) = prev[y] {
            w.push(i);
            y = p;
        }
        w.reverse();
        w
    }

    pub fn orbit(&self, x: &[Rat]) -> Vec<Vec<Rat>> {
        let mut out: Vec<Vec<Rat>> = Vec::new();
        for g in &self.elements {
            let y = g.apply(x);
            if !out.contains(&y) {
                out.push(y);
            }
        }
        out.sort();
        out
    }

    /// Elements fixing `x`.
    pub fn stabilizer_of_point(&self, x: &[Rat]) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.elements[g].apply(x) == x).collect()
    }

    /// Checks that the given elements form a subgroup.
    pub fn check_subgroup(&self, h: &[usize]) -> Result<()> {
        if !h.contains(&0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for &a in h {
            if a >= self.order() {
                return Err(Error::NotASubgroup(format!("element {a} out of range")));
            }
            for &b in h {
                if !h.contains(&self.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("not closed: {a}*{b}")));
                }
            }
        }
        Ok(())
    }

    /// Elements of the cyclic subgroup generated by `g`.
    pub fn powers(&self, g: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut x = g;
        while x != 0 {
            out.push(x);
            x = self.mul(g, x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, rat, rat_vec};

    fn swap() -> AffineMap {
        AffineMap::from_rows(&[vec![0, 1], vec![1, 0]], &[0, 0]).unwrap()
    }

    fn klein() -> FiniteGroup {
        let s = AffineMap::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]], &[0, 0, 0]).unwrap();
        let t = AffineMap::from_rows(&[vec![0, -1, 0], vec![-1, 0, 0], vec![0, 0, -1]], &[0, 0, 0]).unwrap();
        FiniteGroup::generate(3, &[s, t]).unwrap()
    }

    #[test]
    fn swap_group() {
        let g = FiniteGroup::generate(2, &[swap()]).unwrap();
        assert_eq!(g.order(), 2);
        let f = swap().char_poly_tilde().unwrap();
        assert_eq!(f.mult, BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(swap().det_series(), Poly::from_ints(&[1, -1, -1, 1]));
    }

    #[test]
    fn order_six_rotation_factors() {
        // phi(5) = 4 exceeds the degree before Phi_6 is reached
        let r = AffineMap::from_rows(&[vec![1, -1], vec![1, 0]], &[0, 0]).unwrap();
        assert_eq!(r.char_poly_tilde().unwrap().mult, BTreeMap::from([(1, 1), (6, 1)]));
        assert_eq!(cycle_type(&[1, 2, 0, 4, 3, 5]), vec![3, 2, 1]);
    }

    #[test]
    fn klein_group_classes_and_orbit() {
        let g = klein();
        assert_eq!(g.order(), 4);
        assert_eq!(g.num_classes(), 4);
        let orb = g.orbit(&rat_vec(&[1, 1, 1]));
        let mut want: Vec<Vec<Rat>> =
            [[1, 1, 1], [1, 1, -1], [-1, -1, 1], [-1, -1, -1]].iter().map(|p| rat_vec(p)).collect();
        want.sort();
        assert_eq!(orb, want);
    }

    #[test]
    fn order_bound_and_invertibility() {
        let s = AffineMap::from_rows(&[vec![0, 1], vec![1, 0]], &[0, 0]).unwrap();
        let r = AffineMap::from_rows(&[vec![0, -1], vec![1, 0]], &[0, 0]).unwrap();
        assert_eq!(FiniteGroup::generate_bounded(2, &[s, r], 4).unwrap_err(), Error::OrderExceeded(4));
        assert!(matches!(AffineMap::from_rows(&[vec![2, 0], vec![0, 1]], &[0, 0]), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn infinite_order_detected() {
        let shear = AffineMap::from_rows(&[vec![1, 1], vec![0, 1]], &[0, 0]).unwrap();
        assert_eq!(shear.char_poly_tilde().unwrap_err(), Error::NotFiniteOrder);
    }

    #[test]
    fn five_cycle_factorization() {
        // cyclic shift on Z^5 / Z(1,...,1) in the basis e1..e4
        let a = vec![vec![0, 0, 0, -1], vec![1, 0, 0, -1], vec![0, 1, 0, -1], vec![0, 0, 1, -1]];
        let g = AffineMap::from_rows(&a, &[0, 0, 0, 0]).unwrap();
        assert_eq!(g.char_poly_tilde().unwrap().mult, BTreeMap::from([(1, 1), (5, 1)]));
    }

    #[test]
    fn quarter_turn_fixed_point() {
        let r = AffineMap::from_rows(&[vec![0, -1], vec![1, 0]], &[1, 0]).unwrap();
        assert_eq!(r.fixed_point().unwrap(), vec![frac(1, 2), frac(1, 2)]);
        assert_eq!(r.apply(&[rat(0), rat(0)]), rat_vec(&[1, 0]));
    }
}
