//! Rational polytopes: convex hulls, faces, fixed polytopes and lattice points.

use crate::error::{Error, Result};
use crate::exactlin::{
    dot, in_convex_hull, is_integral, primitive_integer, rat, rat_of, to_rat_vec, vsub, Int, LatticeBasis, Rat,
    RatMatrix,
};
use crate::group_action::{AffineMap, FiniteGroup};
use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeSet, HashMap};

/// Affine coordinates on the affine hull of a point set.
#[derive(Clone, Debug)]
pub struct Chart {
    pub origin: Vec<Rat>,
    pub basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    sub_inv: RatMatrix,
}

impl Chart {
    pub fn new(points: &[Vec<Rat>]) -> Self {
        let origin = points[0].clone();
        let n = origin.len();
        let mut basis: Vec<Vec<Rat>> = Vec::new();
        for p in &points[1..] {
            let d = vsub(p, &origin);
            let mut trial = basis.clone();
            trial.push(d.clone());
            if RatMatrix::from_rows(&trial, n).rank() == trial.len() {
                basis = trial;
            }
        }
        let k = basis.len();
        let (pivots, sub_inv) = if k == 0 {
            (Vec::new(), RatMatrix::zeros(0, 0))
        } else {
            let pivots = RatMatrix::from_rows(&basis, n).rref().1;
            let mut sub = RatMatrix::zeros(k, k);
            for (i, &p) in pivots.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    sub.set(i, j, b[p].clone());
                }
            }
            (pivots, sub.inverse().expect("chart pivots are independent"))
        };
        Chart { origin, basis, pivots, sub_inv }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a point of the affine hull.
    pub fn coords(&self, x: &[Rat]) -> Vec<Rat> {
        let d: Vec<Rat> = self.pivots.iter().map(|&p| &x[p] - &self.origin[p]).collect();
        self.sub_inv.mul_vec(&d)
    }

    pub fn point(&self, y: &[Rat]) -> Vec<Rat> {
        let mut x = self.origin.clone();
        for (c, b) in y.iter().zip(&self.basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += c * bi;
            }
        }
        x
    }

    /// Ambient linear functional `a` with `a.x - a.o = n.coords(x)` on the hull.
    fn lift_functional(&self, n: &[Rat]) -> Vec<Rat> {
        let mut a = vec![Rat::zero(); self.origin.len()];
        let k = self.dim();
        for (i, &p) in self.pivots.iter().enumerate() {
            a[p] = (0..k).fold(Rat::zero(), |acc, j| acc + &n[j] * self.sub_inv.get(j, i));
        }
        a
    }

    /// Equations `e.x = c` cutting out the affine hull.
    pub fn equations(&self) -> Vec<(Vec<Rat>, Rat)> {
        let n = self.origin.len();
        let perp = if self.basis.is_empty() {
            RatMatrix::identity(n).data.chunks(n).map(|r| r.to_vec()).collect()
        } else {
            RatMatrix::from_rows(&self.basis, n).nullspace()
        };
        perp.into_iter()
            .map(|e| {
                let e = to_rat_vec(&primitive_integer(&e));
                let c = dot(&e, &self.origin);
                (e, c)
            })
            .collect()
    }
}

/// A facet inequality `normal . x <= offset`, valid on the affine hull.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub normal: Vec<Rat>,
    pub offset: Rat,
    pub vertices: Vec<usize>,
}

/// Convex hull of finitely many rational points.
#[derive(Clone, Debug)]
pub struct Polytope {
    vertices: Vec<Vec<Rat>>,
    chart: Chart,
    equations: Vec<(Vec<Rat>, Rat)>,
    facets: Vec<Facet>,
    faces: Vec<Vec<usize>>,
    face_dims: Vec<usize>,
}

impl Polytope {
    pub fn hull(points: &[Vec<Rat>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Input("empty point set".into()));
        }
        let n = points[0].len();
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::DimensionMismatch("points of different lengths".into()));
        }
        let mut pts: Vec<Vec<Rat>> = points.to_vec();
        pts.sort();
        pts.dedup();
        let mut vertices = Vec::new();
        for (i, p) in pts.iter().enumerate() {
            let others: Vec<Vec<Rat>> = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
            if !in_convex_hull(&others, p) {
                vertices.push(p.clone());
            }
        }
        Ok(Self::from_vertices_unchecked(vertices))
    }

    /// Builds the polytope assuming every point is a vertex (sorted, distinct).
    pub(crate) fn from_vertices_unchecked(vertices: Vec<Vec<Rat>>) -> Self {
        let chart = Chart::new(&vertices);
        let equations = chart.equations();
        let k = chart.dim();
        let local: Vec<Vec<Rat>> = vertices.iter().map(|v| chart.coords(v)).collect();
        let mut facets = Vec::new();
        for (n, off, on) in local_facets(&local, k) {
            let a = chart.lift_functional(&n);
            let b = &off + dot(&a, &chart.origin);
            let mut all = a.clone();
            all.push(b.clone());
            let den = all.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
            let g = all.iter().fold(Int::zero(), |acc, x| acc.gcd(&(x * rat_of(&den)).to_integer()));
            let s = rat_of(&den) / rat_of(&g);
            let normal: Vec<Rat> = a.iter().map(|x| x * &s).collect();
            facets.push(Facet { normal, offset: b * &s, vertices: on });
        }
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        faces.insert((0..vertices.len()).collect());
        let mut frontier: Vec<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
        while let Some(f) = frontier.pop() {
            if !faces.insert(f.clone()) {
                continue;
            }
            for fac in &facets {
                let inter: Vec<usize> = f.iter().copied().filter(|i| fac.vertices.contains(i)).collect();
                if !inter.is_empty() && !faces.contains(&inter) {
                    frontier.push(inter);
                }
            }
        }
        let mut faces: Vec<Vec<usize>> = faces.into_iter().collect();
        let dim_of = |f: &Vec<usize>| {
            let pts: Vec<Vec<Rat>> = f.iter().map(|&i| local[i].clone()).collect();
            crate::exactlin::affine_rank(&pts).unwrap()
        };
        faces.sort_by_key(|f| (std::cmp::Reverse(dim_of(f)), f.clone()));
        let face_dims = faces.iter().map(dim_of).collect();
        Polytope { vertices, chart, equations, facets, faces, face_dims }
    }

    pub fn ambient_dim(&self) -> usize {
        self.chart.origin.len()
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equations(&self) -> &[(Vec<Rat>, Rat)] {
        &self.equations
    }

    /// All nonempty faces as sorted vertex index sets, by decreasing dimension.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_dim(&self, i: usize) -> usize {
        self.face_dims[i]
    }

    pub fn face_dim_of(&self, f: &[usize]) -> Option<usize> {
        self.faces.iter().position(|g| g == f).map(|i| self.face_dims[i])
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| is_integral(v))
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim() + 1
    }

    pub fn vertex_index(&self, x: &[Rat]) -> Option<usize> {
        self.vertices.iter().position(|v| v == x)
    }

    fn on_hull(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|(e, c)| dot(e, x) == *c)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.on_hull(x) && self.facets.iter().all(|f| dot(&f.normal, x) <= f.offset)
    }

    /// Membership in the relative interior.
    pub fn contains_relint(&self, x: &[Rat]) -> bool {
        if self.dim() == 0 {
            return x == self.vertices[0].as_slice();
        }
        self.on_hull(x) && self.facets.iter().all(|f| dot(&f.normal, x) < f.offset)
    }

    pub fn barycenter(&self) -> Vec<Rat> {
        let n = rat(self.vertices.len() as i64);
        let mut c = vec![Rat::zero(); self.ambient_dim()];
        for v in &self.vertices {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci += vi;
            }
        }
        c.iter().map(|x| x / &n).collect()
    }

    pub fn image(&self, g: &AffineMap) -> Result<Polytope> {
        let pts: Vec<Vec<Rat>> = self.vertices.iter().map(|v| g.apply(v)).collect();
        Polytope::hull(&pts)
    }

    pub fn scaled(&self, k: &Rat) -> Polytope {
        let mut pts: Vec<Vec<Rat>> = self.vertices.iter().map(|v| v.iter().map(|x| x * k).collect()).collect();
        pts.sort();
        Self::from_vertices_unchecked(pts)
    }

    /// Permutation of the vertices induced by `g`, if `g` preserves the polytope.
    pub fn vertex_permutation(&self, g: &AffineMap) -> Result<Vec<usize>> {
        self.vertices
            .iter()
            .map(|v| {
                let w = g.apply(v);
                self.vertex_index(&w).ok_or_else(|| Error::NotInvariant(format!("image {w:?} is not a vertex")))
            })
            .collect()
    }

    pub fn check_invariant(&self, group: &FiniteGroup) -> Result<()> {
        for &g in group.generators() {
            self.vertex_permutation(group.element(g))?;
        }
        Ok(())
    }

    /// `P^g`, the hull of the `<g>`-orbit averages of the vertices.
    pub fn fixed_polytope(&self, group: &FiniteGroup, g: usize) -> Result<Polytope> {
        let perm = self.vertex_permutation(group.element(g))?;
        let mut pts = Vec::new();
        for i in 0..self.vertices.len() {
            let mut orbit = vec![i];
            let mut j = perm[i];
            while j != i {
                orbit.push(j);
                j = perm[j];
            }
            let k = rat(orbit.len() as i64);
            let mut avg = vec![Rat::zero(); self.ambient_dim()];
            for &o in &orbit {
                for (a, v) in avg.iter_mut().zip(&self.vertices[o]) {
                    *a += v;
                }
            }
            pts.push(avg.iter().map(|x| x / &k).collect());
        }
        Polytope::hull(&pts)
    }

    /// Facets of a face (given by index into `faces()`), as face indices.
    pub fn facets_of_face(&self, f: usize) -> Vec<usize> {
        let d = self.face_dims[f];
        if d == 0 {
            return Vec::new();
        }
        let verts = &self.faces[f];
        (0..self.faces.len())
            .filter(|&g| self.face_dims[g] + 1 == d && self.faces[g].iter().all(|v| verts.contains(v)))
            .collect()
    }

    /// Pulling triangulation using only the vertices; simplices as vertex sets.
    pub fn triangulate(&self) -> Vec<Vec<usize>> {
        let mut memo: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
        self.triangulate_face(0, &mut memo)
    }

    fn triangulate_face(&self, f: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if let Some(t) = memo.get(&f) {
            return t.clone();
        }
        let verts = &self.faces[f];
        let out = if verts.len() == self.face_dims[f] + 1 {
            vec![verts.clone()]
        } else {
            let apex = verts[0];
            let mut out = Vec::new();
            for g in self.facets_of_face(f) {
                if self.faces[g].contains(&apex) {
                    continue;
                }
                for mut s in self.triangulate_face(g, memo) {
                    s.push(apex);
                    s.sort_unstable();
                    out.push(s);
                }
            }
            out
        };
        memo.insert(f, out.clone());
        out
    }

    /// Integer points `x` with `x / m` in the polytope (relative interior if asked).
    pub fn lattice_points(&self, m: u64, interior: bool) -> Vec<Vec<Int>> {
        let mr = Rat::from_integer(Int::from(m));
        let n = self.ambient_dim();
        if m == 0 {
            let origin_in = self.vertices.len() == 1 || !interior;
            return if origin_in { vec![vec![Int::zero(); n]] } else { Vec::new() };
        }
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for i in 0..n {
            let vals: Vec<Rat> = self.vertices.iter().map(|v| &v[i] * &mr).collect();
            lo.push(vals.iter().min().unwrap().ceil().to_integer());
            hi.push(vals.iter().max().unwrap().floor().to_integer());
        }
        let mut out = Vec::new();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return out;
        }
        let mut x = lo.clone();
        loop {
            let xr: Vec<Rat> = x.iter().map(|v| Rat::new(v.clone(), Int::from(m))).collect();
            let ok = if interior { self.contains_relint(&xr) } else { self.contains(&xr) };
            if ok {
                out.push(x.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                if x[i] < hi[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = lo[i].clone();
                i += 1;
            }
        }
    }

    pub fn count_lattice_points(&self, m: u64) -> usize {
        self.lattice_points(m, false).len()
    }

    pub fn count_interior_points(&self, m: u64) -> usize {
        self.lattice_points(m, true).len()
    }

    /// Smallest `m >= 1` such that `mP` has an interior lattice point.
    pub fn codegree(&self) -> Result<u64> {
        if !self.is_lattice() {
            return Err(Error::NotLattice("codegree is defined for lattice polytopes".into()));
        }
        (1..=(self.dim() as u64 + 1))
            .find(|&m| self.count_interior_points(m) > 0)
            .ok_or_else(|| Error::CheckFailed("no interior point up to dim+1".into()))
    }

    /// Normalized volume with respect to `Z^n` restricted to the affine hull.
    pub fn normalized_volume(&self) -> Int {
        let k = self.dim();
        if k == 0 {
            return Int::one();
        }
        let dirs: Vec<Vec<Int>> = self.chart.basis.iter().map(|b| primitive_integer(b)).collect();
        let lat = LatticeBasis::generated_by(self.ambient_dim(), &dirs).saturation();
        let mut total = Int::zero();
        for s in self.triangulate() {
            let base = &self.vertices[s[0]];
            let rows: Vec<Vec<Rat>> =
                s[1..].iter().map(|&i| lat.coords(&vsub(&self.vertices[i], base)).expect("edge in span")).collect();
            let det = RatMatrix::from_rows(&rows, k).det().abs();
            total += det.to_integer();
        }
        total
    }

    /// Normalized volume in the ambient lattice; the polytope must be full-dimensional.
    pub fn normalized_volume_full(&self) -> Result<Int> {
        if self.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "polytope of dimension {} in Z^{}",
                self.dim(),
                self.ambient_dim()
            )));
        }
        Ok(self.normalized_volume())
    }
}

/// Facets of a full-dimensional point configuration in `Q^k`, as
/// (normal, offset, indices on the facet) with `normal . y <= offset`.
fn local_facets(pts: &[Vec<Rat>], k: usize) -> Vec<(Vec<Rat>, Rat, Vec<usize>)> {
    let mut out: Vec<(Vec<Rat>, Rat, Vec<usize>)> = Vec::new();
    if k == 0 {
        return out;
    }
    if k == 1 {
        let vals: Vec<&Rat> = pts.iter().map(|p| &p[0]).collect();
        let lo = (*vals.iter().min().unwrap()).clone();
        let hi = (*vals.iter().max().unwrap()).clone();
        out.push((vec![-Rat::one()], -lo.clone(), (0..pts.len()).filter(|&i| *vals[i] == lo).collect()));
        out.push((vec![Rat::one()], hi.clone(), (0..pts.len()).filter(|&i| *vals[i] == hi).collect()));
        return out;
    }
    for combo in (0..pts.len()).combinations(k) {
        if out.iter().any(|(_, _, on)| combo.iter().all(|c| on.contains(c))) {
            continue;
        }
        let base = &pts[combo[0]];
        let rows: Vec<Vec<Rat>> = combo[1..].iter().map(|&i| vsub(&pts[i], base)).collect();
        let ns = RatMatrix::from_rows(&rows, k).nullspace();
        if ns.len() != 1 {
            continue;
        }
        let mut n = ns[0].clone();
        let mut off = dot(&n, base);
        let s: Vec<Rat> = pts.iter().map(|p| dot(&n, p) - &off).collect();
        let pos = s.iter().any(|x| x.is_positive());
        let neg = s.iter().any(|x| x.is_negative());
        if pos && neg {
            continue;
        }
        if pos {
            n = n.iter().map(|x| -x).collect();
            off = -off;
        }
        let on = (0..pts.len()).filter(|&i| s[i].is_zero()).collect();
        out.push((n, off, on));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, rat_vec};

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rat>> {
        v.iter().map(|p| rat_vec(p)).collect()
    }

    #[test]
    fn square_structure() {
        let p = Polytope::hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[1, 0]])).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.faces().len(), 9);
        assert_eq!(p.normalized_volume(), Int::from(2));
        assert_eq!(p.count_lattice_points(2), 9);
        assert_eq!(p.count_interior_points(2), 1);
        assert_eq!(p.codegree().unwrap(), 2);
    }

    #[test]
    fn permutahedron_points() {
        let verts: Vec<Vec<Rat>> =
            (0..3).permutations(3).map(|p| p.iter().map(|&x| rat(x as i64 + 1)).collect()).collect();
        let p = Polytope::hull(&verts).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.count_lattice_points(1), 7);
        assert_eq!(p.facets().len(), 6);
        assert_eq!(p.normalized_volume(), Int::from(6));
    }

    #[test]
    fn fixed_polytope_of_swap() {
        let sq = Polytope::hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let s = AffineMap::from_rows(&[vec![0, 1], vec![1, 0]], &[0, 0]).unwrap();
        let g = FiniteGroup::generate(2, &[s]).unwrap();
        let swap = (0..2).find(|&i| !g.element(i).is_identity()).unwrap();
        let f = sq.fixed_polytope(&g, swap).unwrap();
        assert_eq!(f.dim(), 1);
        assert_eq!(f.vertices(), &pts(&[&[0, 0], &[1, 1]])[..]);
        assert_eq!(f.count_lattice_points(3), 4);
        assert!(f.contains(&[frac(1, 2), frac(1, 2)]));
        let bad = AffineMap::from_rows(&[vec![1, 0], vec![0, 1]], &[1, 0]).unwrap();
        let gb = FiniteGroup::generate_bounded(2, &[bad], 10);
        assert!(gb.is_err());
        assert!(matches!(sq.vertex_permutation(&AffineMap::from_rows(&[vec![-1, 0], vec![0, 1]], &[0, 0]).unwrap()), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn dimension_mismatch_for_full_volume() {
        let seg = Polytope::hull(&pts(&[&[0, 0], &[2, 2]])).unwrap();
        assert_eq!(seg.normalized_volume(), Int::from(2));
        assert!(matches!(seg.normalized_volume_full(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn cube_triangulation_volume() {
        let cube: Vec<Vec<Rat>> = (0..8).map(|i| rat_vec(&[i & 1, (i >> 1) & 1, (i >> 2) & 1])).collect();
        let p = Polytope::hull(&cube).unwrap();
        assert_eq!(p.faces().len(), 27);
        assert_eq!(p.normalized_volume(), Int::from(6));
        assert_eq!(p.triangulate().len(), 6);
    }
}
