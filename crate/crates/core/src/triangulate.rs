//! Polyhedral subdivisions: regular refinements, pulling, invariant
//! triangulations, translativity and obstructions.

use crate::error::{Error, Result};
use crate::exactlin::{
    dot, in_convex_hull, is_integral, nonnegative_solution, rat, solve_integer, vsub, Int, IntMatrix, Rat,
    RatMatrix,
};
use crate::group_action::FiniteGroup;
use crate::polytope::{Chart, Polytope};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A polyhedral complex given by its maximal cells as vertex index sets.
///
/// When `heights` is present, the complex is the regular subdivision induced
/// by the lexicographic height vectors (`w_0 + eps w_1 + eps^2 w_2 + ...`).
#[derive(Clone, Debug)]
pub struct PolyComplex {
    points: Vec<Vec<Rat>>,
    index: BTreeMap<Vec<Rat>, usize>,
    cells: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
    heights: Option<Vec<Vec<Rat>>>,
}

fn sign_lex<'a>(v: impl Iterator<Item = &'a Rat>) -> i32 {
    for x in v {
        if x.is_positive() {
            return 1;
        }
        if x.is_negative() {
            return -1;
        }
    }
    0
}

/// Affine interpolation of layered heights through affinely independent points
/// (given in local coordinates, `k + 1` of them for dimension `k`).
fn interpolate(local: &[Vec<Rat>], h: &[&Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let k = local.len();
    let rows: Vec<Vec<Rat>> = local
        .iter()
        .map(|x| {
            let mut r = x.clone();
            r.push(Rat::one());
            r
        })
        .collect();
    let inv = RatMatrix::from_rows(&rows, k).inverse()?;
    let layers = h.first().map_or(0, |v| v.len());
    Some(
        (0..layers)
            .map(|l| {
                let col: Vec<Rat> = h.iter().map(|v| v[l].clone()).collect();
                inv.mul_vec(&col)
            })
            .collect(),
    )
}

fn evaluate(coef: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    coef.iter()
        .map(|c| {
            let k = x.len();
            dot(&c[..k], x) + &c[k]
        })
        .collect()
}

/// Lower faces of the lifted configuration `(local[i], h[i])` in `Q^k`:
/// index sets of points lying on a lower facet.
fn lower_facets(local: &[Vec<Rat>], h: &[Vec<Rat>], k: usize) -> Vec<Vec<usize>> {
    let n = local.len();
    if k == 0 {
        return vec![(0..n).collect()];
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    for combo in (0..n).combinations(k + 1) {
        if found.iter().any(|f| combo.iter().all(|i| f.contains(i))) {
            continue;
        }
        let pts: Vec<Vec<Rat>> = combo.iter().map(|&i| local[i].clone()).collect();
        let hs: Vec<&Vec<Rat>> = combo.iter().map(|&i| &h[i]).collect();
        let Some(coef) = interpolate(&pts, &hs) else { continue };
        let mut tied = Vec::new();
        let mut ok = true;
        for i in 0..n {
            let psi = evaluate(&coef, &local[i]);
            let diff: Vec<Rat> = h[i].iter().zip(&psi).map(|(a, b)| a - b).collect();
            match sign_lex(diff.iter()) {
                -1 => {
                    ok = false;
                    break;
                }
                0 => tied.push(i),
                _ => {}
            }
        }
        if ok {
            found.push(tied);
        }
    }
    found
}

/// Sorted vertex positions of a point set (positions into `pts`).
fn vertex_positions(pts: &[Vec<Rat>]) -> Vec<usize> {
    if affine_independent(pts) {
        return (0..pts.len()).collect();
    }
    (0..pts.len())
        .filter(|&i| {
            let others: Vec<Vec<Rat>> =
                pts.iter().enumerate().filter(|&(j, q)| j != i && q != &pts[i]).map(|(_, q)| q.clone()).collect();
            !in_convex_hull(&others, &pts[i])
        })
        .collect()
}

fn affine_independent(pts: &[Vec<Rat>]) -> bool {
    crate::exactlin::affine_rank(pts).is_some_and(|r| r + 1 == pts.len())
}

impl PolyComplex {
    /// The trivial subdivision of `p`.
    pub fn trivial(p: &Polytope) -> Self {
        let points = p.vertices().to_vec();
        let n = points.len();
        let heights = Some(vec![Vec::new(); n]);
        Self::build(points, vec![(0..n).collect()], heights)
    }

    /// A complex from explicit maximal cells (for instance a non-regular fixture).
    pub fn from_cells(points: Vec<Vec<Rat>>, cells: Vec<Vec<usize>>) -> Result<Self> {
        for c in &cells {
            if c.iter().any(|&i| i >= points.len()) {
                return Err(Error::Input("cell index out of range".into()));
            }
            let pts: Vec<Vec<Rat>> = c.iter().map(|&i| points[i].clone()).collect();
            if vertex_positions(&pts).len() != pts.len() {
                return Err(Error::Input(format!("cell {c:?} lists a non-vertex")));
            }
        }
        Ok(Self::build(points, cells, None))
    }

    fn build(points: Vec<Vec<Rat>>, cells: Vec<Vec<usize>>, heights: Option<Vec<Vec<Rat>>>) -> Self {
        let index = points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut cells: Vec<Vec<usize>> = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        cells.sort();
        cells.dedup();
        let mut out = PolyComplex { points, index, cells, faces: Vec::new(), heights };
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &out.cells {
            for f in out.cell_faces(c) {
                faces.insert(f);
            }
        }
        out.faces = faces.into_iter().collect();
        out
    }

    /// Nonempty faces of one cell, as global index sets.
    fn cell_faces(&self, cell: &[usize]) -> Vec<Vec<usize>> {
        let pts: Vec<Vec<Rat>> = cell.iter().map(|&i| self.points[i].clone()).collect();
        if affine_independent(&pts) {
            return (1..=cell.len()).flat_map(|k| cell.iter().copied().combinations(k)).collect();
        }
        let (poly, map) = self.cell_polytope(cell);
        poly.faces().iter().map(|f| f.iter().map(|&v| map[v]).sorted().collect()).collect()
    }

    /// The cell as a polytope, with polytope vertex position to global index.
    pub fn cell_polytope(&self, cell: &[usize]) -> (Polytope, Vec<usize>) {
        let mut order: Vec<usize> = cell.to_vec();
        order.sort_by(|&a, &b| self.points[a].cmp(&self.points[b]));
        let pts: Vec<Vec<Rat>> = order.iter().map(|&i| self.points[i].clone()).collect();
        (Polytope::from_vertices_unchecked(pts), order)
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[Rat] {
        &self.points[i]
    }

    pub fn point_index(&self, x: &[Rat]) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Maximal cells, sorted.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// All nonempty faces, sorted.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn heights(&self) -> Option<&[Vec<Rat>]> {
        self.heights.as_deref()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points.first().map_or(0, |p| p.len())
    }

    pub fn face_dim(&self, f: &[usize]) -> usize {
        let pts: Vec<Vec<Rat>> = f.iter().map(|&i| self.points[i].clone()).collect();
        crate::exactlin::affine_rank(&pts).unwrap_or(0)
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(|c| self.face_dim(c)).max().unwrap_or(0)
    }

    /// Indices of points that are vertices of some cell.
    pub fn vertices(&self) -> Vec<usize> {
        self.cells.iter().flatten().copied().sorted().dedup().collect()
    }

    pub fn is_simplex(&self, f: &[usize]) -> bool {
        self.face_dim(f) + 1 == f.len()
    }

    pub fn is_triangulation(&self) -> bool {
        self.cells.iter().all(|c| self.is_simplex(c))
    }

    /// Every vertex lies in `(1/n) Z^d`.
    pub fn is_lattice(&self, n: u64) -> bool {
        let nr = Rat::from_integer(Int::from(n));
        self.vertices().iter().all(|&i| is_integral(&self.points[i].iter().map(|x| x * &nr).collect::<Vec<_>>()))
    }

    /// Global indices of the points lying in a cell.
    fn points_in(&self, poly: &Polytope) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| poly.contains(&self.points[i])).collect()
    }

    /// Adds a point of the support, interpolating the existing heights so
    /// that the subdivision is unchanged.
    pub fn add_point(&mut self, x: &[Rat]) -> Result<usize> {
        if let Some(i) = self.point_index(x) {
            return Ok(i);
        }
        let host = self
            .cells
            .iter()
            .find(|c| self.cell_polytope(c).0.contains(x))
            .cloned()
            .ok_or_else(|| Error::PreconditionFailed(format!("point {x:?} is outside the support")))?;
        if let Some(h) = &self.heights {
            let pts: Vec<Vec<Rat>> = host.iter().map(|&i| self.points[i].clone()).collect();
            let chart = Chart::new(&pts);
            let basis = independent_subset(&pts);
            let local: Vec<Vec<Rat>> = basis.iter().map(|&i| chart.coords(&pts[i])).collect();
            let hs: Vec<&Vec<Rat>> = basis.iter().map(|&i| &h[host[i]]).collect();
            let coef = interpolate(&local, &hs).expect("independent subset");
            let value = evaluate(&coef, &chart.coords(x));
            self.heights.as_mut().unwrap().push(value);
        }
        let i = self.points.len();
        self.points.push(x.to_vec());
        self.index.insert(x.to_vec(), i);
        Ok(i)
    }

    /// Regular refinement by new height layers (`omega[i]` for every point,
    /// all of the same length), keeping the heights as a certificate.
    pub fn refine(&self, omega: &[Vec<Rat>]) -> Self {
        let mut cells = Vec::new();
        for c in &self.cells {
            let (poly, _) = self.cell_polytope(c);
            let inside = self.points_in(&poly);
            let chart = poly.chart();
            let local: Vec<Vec<Rat>> = inside.iter().map(|&i| chart.coords(&self.points[i])).collect();
            let h: Vec<Vec<Rat>> = inside.iter().map(|&i| omega[i].clone()).collect();
            for tied in lower_facets(&local, &h, poly.dim()) {
                let pts: Vec<Vec<Rat>> = tied.iter().map(|&t| local[t].clone()).collect();
                cells.push(vertex_positions(&pts).iter().map(|&v| inside[tied[v]]).collect());
            }
        }
        let heights = self.heights.as_ref().map(|old| {
            old.iter()
                .zip(omega)
                .map(|(a, b)| {
                    let mut v = a.clone();
                    v.extend(b.iter().cloned());
                    v
                })
                .collect()
        });
        Self::build(self.points.clone(), cells, heights)
    }

    /// Pulling refinement by a finite set `J` of points of the support.
    pub fn pull(&self, j: &[Vec<Rat>]) -> Result<Self> {
        let mut s = self.clone();
        let mut ids = BTreeSet::new();
        for x in j {
            ids.insert(s.add_point(x)?);
        }
        let omega: Vec<Vec<Rat>> =
            (0..s.points.len()).map(|i| vec![if ids.contains(&i) { rat(-1) } else { Rat::zero() }]).collect();
        Ok(s.refine(&omega))
    }

    /// Pulling at one point by the local rule: a cell containing `u` is
    /// replaced by the joins of `u` with its facets avoiding `u`.
    pub fn pull_local(&self, u: &[Rat]) -> Result<Self> {
        let mut s = self.clone();
        let ui = s.add_point(u)?;
        let mut cells = Vec::new();
        for c in &s.cells {
            let (poly, map) = s.cell_polytope(c);
            if !poly.contains(u) {
                cells.push(c.clone());
                continue;
            }
            if poly.dim() == 0 {
                cells.push(c.clone());
                continue;
            }
            for f in poly.facets() {
                let on: Vec<usize> = f.vertices.iter().map(|&v| map[v]).collect();
                if dot(&f.normal, u) == f.offset {
                    continue;
                }
                let mut cell = on;
                cell.push(ui);
                cells.push(cell);
            }
        }
        let heights = s.heights.as_ref().map(|h| {
            h.iter()
                .enumerate()
                .map(|(i, v)| {
                    let mut v = v.clone();
                    v.push(if i == ui { rat(-1) } else { Rat::zero() });
                    v
                })
                .collect()
        });
        Ok(Self::build(s.points, cells, heights))
    }

    /// Checks the height certificate: every cell is exactly the set where the
    /// lifted points touch the affine function interpolating the cell.
    pub fn certify_regular(&self) -> Result<()> {
        let h = self.heights.as_ref().ok_or_else(|| Error::CheckFailed("no height certificate".into()))?;
        let full = self.dim();
        for c in &self.cells {
            let (poly, _) = self.cell_polytope(c);
            let pts: Vec<Vec<Rat>> = c.iter().map(|&i| self.points[i].clone()).collect();
            let basis = independent_subset(&pts);
            let chart = poly.chart();
            let local: Vec<Vec<Rat>> = basis.iter().map(|&i| chart.coords(&pts[i])).collect();
            let hs: Vec<&Vec<Rat>> = basis.iter().map(|&i| &h[c[i]]).collect();
            let coef = interpolate(&local, &hs).expect("independent subset");
            for (i, x) in self.points.iter().enumerate() {
                if poly.dim() < full && !poly.contains(x) {
                    continue;
                }
                if poly.dim() == full && !poly.equations().iter().all(|(e, k)| dot(e, x) == *k) {
                    continue;
                }
                let psi = evaluate(&coef, &chart.coords(x));
                let diff: Vec<Rat> = h[i].iter().zip(&psi).map(|(a, b)| a - b).collect();
                let s = sign_lex(diff.iter());
                let inside = poly.contains(x);
                if s < 0 || (s == 0) != inside {
                    return Err(Error::CheckFailed(format!("cell {c:?} is not a lower face at point {i}")));
                }
            }
        }
        Ok(())
    }

    /// The complex restricted to the points lying in `q`: faces contained in `q`.
    pub fn restrict_faces(&self, q: &Polytope) -> Vec<Vec<usize>> {
        self.faces.iter().filter(|f| f.iter().all(|&i| q.contains(&self.points[i]))).cloned().collect()
    }

    /// Maximal faces among those contained in `q`.
    pub fn restrict_cells(&self, q: &Polytope) -> Vec<Vec<usize>> {
        let inside = self.restrict_faces(q);
        inside
            .iter()
            .filter(|f| !inside.iter().any(|g| g.len() > f.len() && f.iter().all(|x| g.contains(x))))
            .cloned()
            .collect()
    }

    /// Image of a face under a group element, if all its points are known.
    pub fn image_of(&self, group: &FiniteGroup, g: usize, f: &[usize]) -> Option<Vec<usize>> {
        let el = group.element(g);
        let mut out = Vec::with_capacity(f.len());
        for &i in f {
            out.push(self.point_index(&el.apply(&self.points[i]))?);
        }
        out.sort_unstable();
        Some(out)
    }

    pub fn check_invariant(&self, group: &FiniteGroup) -> Result<()> {
        let cells: BTreeSet<&Vec<usize>> = self.cells.iter().collect();
        for &g in group.generators() {
            for c in &self.cells {
                match self.image_of(group, g, c) {
                    Some(img) if cells.contains(&img) => {}
                    _ => return Err(Error::NotInvariant(format!("cell {c:?} is not mapped to a cell"))),
                }
            }
        }
        Ok(())
    }

    /// Keeps only the points used as vertices, renumbering the cells.
    pub fn compact(&self) -> Self {
        let used = self.vertices();
        let renum: BTreeMap<usize, usize> = used.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let points = used.iter().map(|&i| self.points[i].clone()).collect();
        let cells = self.cells.iter().map(|c| c.iter().map(|i| renum[i]).collect()).collect();
        let heights = self.heights.as_ref().map(|h| used.iter().map(|&i| h[i].clone()).collect());
        Self::build(points, cells, heights)
    }
}

/// Positions of a maximal affinely independent subset.
fn independent_subset(pts: &[Vec<Rat>]) -> Vec<usize> {
    let mut chosen = vec![0];
    for i in 1..pts.len() {
        let mut trial: Vec<Vec<Rat>> = chosen.iter().map(|&j| pts[j].clone()).collect();
        trial.push(pts[i].clone());
        if affine_independent(&trial) {
            chosen.push(i);
        }
    }
    chosen
}

/// A subcomplex of the boundary of `p` given by maximal faces, with zero
/// heights (its trivial subdivision).
pub fn face_complex(p: &Polytope, faces: &[Vec<usize>]) -> PolyComplex {
    let points = p.vertices().to_vec();
    let heights = Some(vec![Vec::new(); points.len()]);
    let used: BTreeSet<usize> = faces.iter().flatten().copied().collect();
    let mut c = PolyComplex::build(points, faces.to_vec(), heights);
    // drop unused vertices so that the support is exactly the union of faces
    if used.len() < c.points.len() {
        c = c.compact();
    }
    c
}

/// Do two polytopes (given by points) intersect?
pub fn hulls_meet(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    let d = a[0].len();
    let mut m = RatMatrix::zeros(d + 2, a.len() + b.len());
    for (j, p) in a.iter().enumerate() {
        for i in 0..d {
            m.set(i, j, p[i].clone());
        }
        m.set(d, j, Rat::one());
    }
    for (j, p) in b.iter().enumerate() {
        for i in 0..d {
            m.set(i, a.len() + j, -p[i].clone());
        }
        m.set(d + 1, a.len() + j, Rat::one());
    }
    let mut rhs = vec![Rat::zero(); d + 2];
    rhs[d] = Rat::one();
    rhs[d + 1] = Rat::one();
    nonnegative_solution(&m, &rhs).is_some()
}

/// Faces of `p` disjoint from `q`, maximal ones only.
pub fn faces_avoiding(p: &Polytope, q: &Polytope) -> Vec<Vec<usize>> {
    let avoid: Vec<Vec<usize>> = p
        .faces()
        .iter()
        .filter(|f| {
            let pts: Vec<Vec<Rat>> = f.iter().map(|&i| p.vertices()[i].clone()).collect();
            !hulls_meet(&pts, q.vertices())
        })
        .cloned()
        .collect();
    avoid
        .iter()
        .filter(|f| !avoid.iter().any(|g| g.len() > f.len() && f.iter().all(|x| g.contains(x))))
        .cloned()
        .collect()
}

fn scaled_points(poly: &Polytope, n: u64, interior: bool) -> Vec<Vec<Rat>> {
    let nn = Int::from(n);
    poly.lattice_points(n, interior)
        .into_iter()
        .map(|x| x.into_iter().map(|c| Rat::new(c, nn.clone())).collect())
        .collect()
}

fn in_lattice(x: &[Rat], n: u64) -> bool {
    let nr = Rat::from_integer(Int::from(n));
    is_integral(&x.iter().map(|c| c * &nr).collect::<Vec<_>>())
}

fn average(pts: &[Vec<Rat>]) -> Vec<Rat> {
    let k = rat(pts.len() as i64);
    let mut s = vec![Rat::zero(); pts[0].len()];
    for p in pts {
        for (a, b) in s.iter_mut().zip(p) {
            *a += b;
        }
    }
    s.iter().map(|x| x / &k).collect()
}

fn polys_of(s: &PolyComplex) -> Vec<Polytope> {
    s.faces
        .iter()
        .map(|f| {
            let mut pts: Vec<Vec<Rat>> = f.iter().map(|&i| s.points[i].clone()).collect();
            pts.sort();
            Polytope::from_vertices_unchecked(pts)
        })
        .collect()
}

/// Pulls `S` successively by the orbits `G.u_1, ..., G.u_r`, after checking
/// that every face of `S` avoiding the earlier orbits meets the next orbit at
/// most once, that `u_i` lies in the support of those faces, and that the faces
/// avoiding all orbits are simplices.
pub fn orbit_pull_triangulate(s: &PolyComplex, group: &FiniteGroup, seq: &[Vec<Rat>]) -> Result<PolyComplex> {
    let polys = polys_of(s);
    let mut removed: Vec<Vec<Rat>> = Vec::new();
    let avoiding = |removed: &Vec<Vec<Rat>>| -> Vec<usize> {
        (0..polys.len()).filter(|&f| !removed.iter().any(|x| polys[f].contains(x))).collect()
    };
    for (i, u) in seq.iter().enumerate() {
        let step = i + 1;
        let t = avoiding(&removed);
        if !t.iter().any(|&f| polys[f].contains(u)) {
            return Err(Error::HypothesisViolated {
                step,
                face: Vec::new(),
                reason: format!("point {} is outside the faces avoiding the earlier orbits", fmt_point(u)),
            });
        }
        let orbit = group.orbit(u);
        for &f in &t {
            let meet = orbit.iter().filter(|x| polys[f].contains(x)).count();
            if meet > 1 {
                return Err(Error::HypothesisViolated {
                    step,
                    face: s.faces[f].clone(),
                    reason: format!("face contains {meet} points of the orbit of {}", fmt_point(u)),
                });
            }
        }
        removed.extend(orbit);
    }
    for f in avoiding(&removed) {
        if !s.is_simplex(&s.faces[f]) {
            return Err(Error::HypothesisViolated {
                step: seq.len(),
                face: s.faces[f].clone(),
                reason: "a face avoiding every orbit is not a simplex".into(),
            });
        }
    }
    let mut out = s.clone();
    for u in seq {
        out = out.pull(&group.orbit(u))?;
    }
    Ok(out)
}

pub fn fmt_point(x: &[Rat]) -> String {
    format!("({})", x.iter().map(crate::exactlin::fmt_rat).join(", "))
}

/// Vertex averages of the faces of positive dimension, one per orbit, by
/// decreasing dimension. Pulling these orbits gives the barycentric subdivision.
pub fn barycentric_sequence(p: &Polytope, group: &FiniteGroup) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = Vec::new();
    let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for (i, f) in p.faces().iter().enumerate() {
        if p.face_dim(i) == 0 {
            continue;
        }
        let mut c = vec![Rat::zero(); p.ambient_dim()];
        for &v in f {
            for (a, b) in c.iter_mut().zip(&p.vertices()[v]) {
                *a += b;
            }
        }
        let c: Vec<Rat> = c.iter().map(|x| x / Rat::from_integer(Int::from(f.len()))).collect();
        if seen.insert(c.clone()) {
            seen.extend(group.orbit(&c));
            out.push(c);
        }
    }
    out
}

/// Chooses the points `u_1, ..., u_r` for an invariant triangulation with
/// vertices in `(1/n) M`, breaking ties lexicographically. Without `strict`,
/// missing fixed points are replaced by the lexicographically least available
/// point so that the orbit-pull checks report the failure.
pub fn triangulation_sequence(p: &Polytope, group: &FiniteGroup, n: u64, strict: bool) -> Vec<Vec<Rat>> {
    let verts = p.vertices();
    let polys: Vec<Polytope> = p
        .faces()
        .iter()
        .map(|f| Polytope::from_vertices_unchecked(f.iter().map(|&i| verts[i].clone()).collect()))
        .collect();
    let mut seq = Vec::new();
    let first = average(&group.orbit(&verts[0]));
    let u1 = if in_lattice(&first, n) {
        first
    } else {
        let pts = scaled_points(p, n, false);
        let fixed = pts.iter().find(|x| group.orbit(x).len() == 1).cloned();
        fixed.unwrap_or_else(|| pts[0].clone())
    };
    let mut removed = group.orbit(&u1);
    seq.push(u1);
    for _ in 0..=polys.len() {
        let t: Vec<usize> = (0..polys.len()).filter(|&f| !removed.iter().any(|x| polys[f].contains(x))).collect();
        if t.is_empty() {
            break;
        }
        let u = t
            .iter()
            .filter(|&&f| p.faces()[f].len() == 1)
            .map(|&f| verts[p.faces()[f][0]].clone())
            .min()
            .expect("a face avoiding the orbits has a vertex avoiding them");
        let orbit = group.orbit(&u);
        let meet = |f: usize| -> Vec<usize> {
            p.faces()[f].iter().copied().filter(|&v| orbit.contains(&verts[v])).collect()
        };
        let m = t.iter().map(|&f| meet(f).len()).max().unwrap();
        let mut best: Option<(Vec<Vec<Rat>>, usize, Vec<usize>)> = None;
        for &f in t.iter().filter(|&&f| meet(f).len() == m) {
            let hit = meet(f);
            let smallest = (0..polys.len())
                .filter(|&g| hit.iter().all(|v| p.faces()[g].contains(v)))
                .min_by_key(|&g| p.faces()[g].len())
                .unwrap();
            let key: Vec<Vec<Rat>> = p.faces()[smallest].iter().map(|&v| verts[v].clone()).collect();
            if best.as_ref().is_none_or(|b| key < b.0) {
                best = Some((key, smallest, hit));
            }
        }
        let (_, q, hit) = best.unwrap();
        let hit_pts: Vec<Vec<Rat>> = hit.iter().map(|&v| verts[v].clone()).collect();
        let qverts = &p.faces()[q];
        let stab: Vec<usize> = (0..group.order())
            .filter(|&g| {
                qverts.iter().all(|&v| {
                    let w = group.element(g).apply(&verts[v]);
                    qverts.iter().any(|&x| verts[x] == w)
                })
            })
            .collect();
        let avg = average(&hit_pts);
        let ui = if in_lattice(&avg, n) {
            avg
        } else {
            let mut fixed_pts: Vec<Vec<Rat>> = hit_pts
                .iter()
                .map(|y| {
                    let orb: Vec<Vec<Rat>> = stab.iter().map(|&g| group.element(g).apply(y)).collect();
                    average(&orb)
                })
                .collect();
            fixed_pts.sort();
            fixed_pts.dedup();
            let s_fixed = Polytope::hull(&fixed_pts).expect("nonempty");
            let cand = scaled_points(&s_fixed, n, true).into_iter().min();
            match cand {
                Some(c) => c,
                None if strict => panic!("no stabilizer-fixed interior point at denominator {n}"),
                None => scaled_points(&polys[q], n, true)
                    .into_iter()
                    .min()
                    .or_else(|| scaled_points(&polys[q], n, false).into_iter().min())
                    .expect("the face has lattice vertices"),
            }
        };
        removed.extend(group.orbit(&ui));
        seq.push(ui);
    }
    seq
}

/// A `G`-invariant regular triangulation of `p` with vertices in `(1/n) M`;
/// requires `|G|` to divide `n`.
pub fn invariant_triangulation(p: &Polytope, group: &FiniteGroup, n: u64) -> Result<PolyComplex> {
    if n == 0 || n % group.order() as u64 != 0 {
        return Err(Error::PreconditionFailed(format!("|G| = {} does not divide N = {n}", group.order())));
    }
    let seq = triangulation_sequence(p, group, n, true);
    let t = orbit_pull_triangulate(&PolyComplex::trivial(p), group, &seq)
        .unwrap_or_else(|e| panic!("invariant triangulation construction failed: {e}"));
    Ok(t)
}

/// Runs the same construction for any `n`, reporting the first violated
/// hypothesis when `|G|` does not divide `n`.
pub fn forced_invariant_triangulation(p: &Polytope, group: &FiniteGroup, n: u64) -> Result<PolyComplex> {
    let seq = triangulation_sequence(p, group, n, false);
    orbit_pull_triangulate(&PolyComplex::trivial(p), group, &seq)
}

/// Searches for an invariant triangulation with vertices in `(1/n) M` by
/// pulling orbits of `(1/n) M`-points in a few fixed orders.
pub fn lattice_orbit_triangulation(p: &Polytope, group: &FiniteGroup, n: u64) -> Option<PolyComplex> {
    let mut orbits: Vec<Vec<Vec<Rat>>> = Vec::new();
    for x in scaled_points(p, n, false) {
        let o = group.orbit(&x);
        if !orbits.contains(&o) {
            orbits.push(o);
        }
    }
    let mut orders: Vec<Vec<Vec<Vec<Rat>>>> = Vec::new();
    let mut by_size = orbits.clone();
    by_size.sort_by_key(|o| o.len());
    orders.push(by_size);
    orders.push(orbits.clone());
    let mut desc = orbits.clone();
    desc.sort_by_key(|o| std::cmp::Reverse(o.len()));
    orders.push(desc);
    for order in orders {
        let mut s = PolyComplex::trivial(p);
        for o in &order {
            if s.is_triangulation() {
                break;
            }
            s = s.pull(o).ok()?;
        }
        for _ in 0..order.len() {
            if s.is_triangulation() {
                break;
            }
            let before = s.cells.clone();
            for o in &order {
                let touches = s.cells.iter().any(|c| {
                    !s.is_simplex(c) && o.iter().any(|x| s.point_index(x).is_some_and(|i| c.contains(&i)))
                });
                if touches {
                    s = s.pull(o).ok()?;
                }
            }
            if s.cells == before {
                break;
            }
        }
        if s.is_triangulation() && check_triangulation(&s, p, group, n).is_ok() {
            return Some(s);
        }
    }
    None
}

/// A pair of orbit-related vertices in a common cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslativeWitness {
    pub vertex: usize,
    pub element: usize,
    pub facet: Vec<usize>,
}

/// Tests whether every vertex orbit meets every maximal cell at most once.
pub fn is_translative(s: &PolyComplex, group: &FiniteGroup) -> Result<Option<TranslativeWitness>> {
    s.check_invariant(group)?;
    for c in &s.cells {
        for &u in c {
            for g in 1..group.order() {
                let w = group.element(g).apply(&s.points[u]);
                if w != s.points[u] && s.point_index(&w).is_some_and(|j| c.contains(&j)) {
                    return Ok(Some(TranslativeWitness { vertex: u, element: g, facet: c.clone() }));
                }
            }
        }
    }
    Ok(None)
}

fn vertex_orbits(s: &PolyComplex, group: &FiniteGroup, among: &[usize]) -> Vec<Vec<Vec<Rat>>> {
    let mut out: Vec<Vec<Vec<Rat>>> = Vec::new();
    let mut sorted: Vec<usize> = among.to_vec();
    sorted.sort_by(|&a, &b| s.points[a].cmp(&s.points[b]));
    for i in sorted {
        let o = group.orbit(&s.points[i]);
        if !out.contains(&o) {
            out.push(o);
        }
    }
    out
}

/// Pulls orbits of vertices of non-simplex cells until a triangulation is
/// reached; vertices are taken from `allowed` in lexicographic order.
fn refine_by_vertex_orbits(mut s: PolyComplex, group: &FiniteGroup, allowed: &[usize]) -> Result<PolyComplex> {
    let allowed_pts: Vec<Vec<Rat>> = allowed.iter().map(|&i| s.points[i].clone()).collect();
    for _ in 0..=allowed.len() {
        let Some(cell) = s.cells.iter().find(|c| !s.is_simplex(c)).cloned() else {
            return Ok(s);
        };
        let candidates: Vec<usize> = cell.iter().copied().filter(|&i| allowed_pts.contains(&s.points[i])).collect();
        let Some(orbit) = vertex_orbits(&s, group, &candidates).into_iter().next() else {
            return Err(Error::CheckFailed(format!("cell {cell:?} has no admissible vertex to pull")));
        };
        s = s.pull(&orbit)?;
    }
    Err(Error::CheckFailed("pulling did not reach a triangulation".into()))
}

/// Refines a translative invariant regular lattice subdivision to a
/// triangulation with the same vertices, keeping every simplex.
pub fn translative_refine(s: &PolyComplex, group: &FiniteGroup) -> Result<PolyComplex> {
    if let Some(w) = is_translative(s, group)? {
        return Err(Error::NotTranslative { vertex: w.vertex, element: w.element, facet: w.facet });
    }
    let verts = s.vertices();
    refine_by_vertex_orbits(s.clone(), group, &verts)
}

/// Glues invariant regular lattice triangulations `s_q` of `q` and `s_k` of
/// the faces of `p` avoiding `q` into one of `p`, provided one of the two is
/// translative.
pub fn glue(
    p: &Polytope,
    q: &Polytope,
    s_q: &PolyComplex,
    s_k: &PolyComplex,
    group: &FiniteGroup,
) -> Result<PolyComplex> {
    let pre = |m: &str| Error::PreconditionFailed(m.to_string());
    if !q.vertices().iter().all(|v| p.contains(v)) {
        return Err(pre("Q is not contained in P"));
    }
    for (name, c) in [("S_Q", s_q), ("S_K", s_k)] {
        if !c.is_triangulation() {
            return Err(pre(&format!("{name} is not a triangulation")));
        }
        if c.heights.is_none() {
            return Err(pre(&format!("{name} has no height certificate")));
        }
        if !c.is_lattice(1) {
            return Err(pre(&format!("{name} is not a lattice triangulation")));
        }
        c.check_invariant(group).map_err(|e| pre(&format!("{name}: {e}")))?;
    }
    let k_faces = faces_avoiding(p, q);
    let k_polys: Vec<Polytope> = k_faces
        .iter()
        .map(|f| Polytope::from_vertices_unchecked(f.iter().map(|&i| p.vertices()[i].clone()).collect()))
        .collect();
    let in_k = |x: &[Rat]| k_polys.iter().any(|f| f.contains(x));
    if !s_q.points.iter().all(|x| q.contains(x)) || !s_k.points.iter().all(|x| in_k(x)) {
        return Err(pre("triangulations are not supported on Q and K"));
    }
    let q_trans = is_translative(s_q, group)?.is_none();
    let k_trans = is_translative(s_k, group)?.is_none();
    if !q_trans && !k_trans {
        return Err(pre("neither S_Q nor S_K is translative"));
    }
    let mut t = PolyComplex::trivial(p).pull(q.vertices())?;
    for x in s_q.points.iter().chain(&s_k.points) {
        t.add_point(x)?;
    }
    for side in [s_q, s_k] {
        let h = side.heights.as_ref().unwrap();
        let layers = h.first().map_or(0, |v| v.len());
        if layers == 0 {
            continue;
        }
        let omega: Vec<Vec<Rat>> = t
            .points
            .iter()
            .map(|x| side.point_index(x).map_or_else(|| vec![Rat::zero(); layers], |i| h[i].clone()))
            .collect();
        t = t.refine(&omega);
    }
    let allowed: Vec<usize> = t
        .points
        .iter()
        .enumerate()
        .filter(|(_, x)| (q_trans && s_q.point_index(x).is_some()) || (k_trans && s_k.point_index(x).is_some()))
        .map(|(i, _)| i)
        .collect();
    let t = refine_by_vertex_orbits(t, group, &allowed)?;
    for (name, side, region) in [("Q", s_q, None), ("K", s_k, Some(&k_polys))] {
        let mut got: BTreeSet<Vec<Vec<Rat>>> = BTreeSet::new();
        for f in &t.faces {
            let pts: Vec<Vec<Rat>> = f.iter().map(|&i| t.points[i].clone()).sorted().collect();
            let inside = match region {
                None => pts.iter().all(|x| q.contains(x)),
                Some(ks) => ks.iter().any(|k| pts.iter().all(|x| k.contains(x))),
            };
            if inside {
                got.insert(pts);
            }
        }
        let want: BTreeSet<Vec<Vec<Rat>>> = side
            .faces
            .iter()
            .map(|f| f.iter().map(|&i| side.points[i].clone()).sorted().collect())
            .collect();
        if got != want {
            return Err(Error::CheckFailed(format!("restriction to {name} differs from the given triangulation")));
        }
    }
    Ok(t)
}

/// A unit-square face with two disjoint edges whose endpoints are orbit-related.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareWitness {
    pub face: Vec<usize>,
    pub edges: [[usize; 2]; 2],
}

/// Searches the 2-faces of an invariant lattice subdivision for a lattice
/// unit square whose two opposite edges each join points of one orbit.
pub fn square_obstruction(s: &PolyComplex, group: &FiniteGroup) -> Option<SquareWitness> {
    let same_orbit = |a: usize, b: usize| group.orbit(&s.points[a]).contains(&s.points[b]);
    for f in &s.faces {
        if f.len() != 4 || s.face_dim(f) != 2 {
            continue;
        }
        let (poly, map) = s.cell_polytope(f);
        if poly.normalized_volume() != Int::from(2) || poly.count_lattice_points(1) != 4 {
            continue;
        }
        let edges: Vec<[usize; 2]> = poly
            .faces()
            .iter()
            .enumerate()
            .filter(|&(i, e)| poly.face_dim(i) == 1 && e.len() == 2)
            .map(|(_, e)| {
                let mut pair = [map[e[0]], map[e[1]]];
                pair.sort_unstable();
                pair
            })
            .collect();
        for (a, b) in edges.iter().tuple_combinations() {
            if a.iter().any(|x| b.contains(x)) {
                continue;
            }
            if same_orbit(a[0], a[1]) && same_orbit(b[0], b[1]) {
                return Some(SquareWitness { face: f.clone(), edges: [*a, *b] });
            }
        }
    }
    None
}

/// The two forbidden kinds of elements in rank two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ForbiddenKind {
    /// Order 4 with its fixed point outside the lattice.
    QuarterTurn,
    /// A reflection whose fixed line misses the lattice.
    OffsetReflection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dim2Classification {
    pub triangulable: bool,
    pub offending: Option<(usize, ForbiddenKind)>,
}

/// Decides, for a rank-two affine action, whether invariant lattice
/// triangulations exist.
pub fn dim2_classify(group: &FiniteGroup) -> Result<Dim2Classification> {
    if group.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("rank {} action", group.dim())));
    }
    for g in 1..group.order() {
        let el = group.element(g);
        let ord = group.element_order(g);
        if ord == 4 {
            if let Some(c) = el.fixed_point() {
                if !is_integral(&c) {
                    return Ok(Dim2Classification { triangulable: false, offending: Some((g, ForbiddenKind::QuarterTurn)) });
                }
            }
        }
        if ord == 2 && el.det_linear() == Int::from(-1) {
            let a = el.linear();
            let mut m = IntMatrix::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    let v = a.get(i, j) - if i == j { Int::one() } else { Int::zero() };
                    m.set(i, j, v);
                }
            }
            let b: Vec<Int> = el.translation().iter().map(|x| -x).collect();
            if solve_integer(&m, &b).is_none() {
                return Ok(Dim2Classification {
                    triangulable: false,
                    offending: Some((g, ForbiddenKind::OffsetReflection)),
                });
            }
        }
    }
    Ok(Dim2Classification { triangulable: true, offending: None })
}

/// Normalized volume of a full-dimensional simplex given by points.
fn simplex_volume(pts: &[Vec<Rat>]) -> Rat {
    let rows: Vec<Vec<Rat>> = pts[1..].iter().map(|x| vsub(x, &pts[0])).collect();
    RatMatrix::from_rows(&rows, pts[0].len()).det().abs()
}

/// Is the intersection of two simplices the hull of their common vertices?
fn proper_intersection(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    let d = a[0].len();
    for i in 0..d {
        let amax = a.iter().map(|x| &x[i]).max().unwrap();
        let amin = a.iter().map(|x| &x[i]).min().unwrap();
        let bmax = b.iter().map(|x| &x[i]).max().unwrap();
        let bmin = b.iter().map(|x| &x[i]).min().unwrap();
        if amax < bmin || bmax < amin {
            return true;
        }
    }
    let cols = a.len() + b.len();
    for (i, x) in a.iter().enumerate() {
        if b.contains(x) {
            continue;
        }
        let mut m = RatMatrix::zeros(d + 2, cols);
        for (j, p) in a.iter().enumerate() {
            for r in 0..d {
                m.set(r, j, p[r].clone());
            }
            m.set(d, j, Rat::one());
        }
        for (j, p) in b.iter().enumerate() {
            for r in 0..d {
                m.set(r, a.len() + j, -p[r].clone());
            }
            m.set(d, a.len() + j, -Rat::one());
        }
        m.set(d + 1, i, Rat::one());
        let mut rhs = vec![Rat::zero(); d + 2];
        rhs[d + 1] = Rat::one();
        if nonnegative_solution(&m, &rhs).is_some() {
            return false;
        }
        let _ = x;
    }
    true
}

/// Checks that `t` is a `G`-invariant triangulation of `p` with vertices in
/// `(1/n) M`: invariance, simplicial cells, volume and pairwise intersections.
pub fn check_triangulation(t: &PolyComplex, p: &Polytope, group: &FiniteGroup, n: u64) -> Result<()> {
    t.check_invariant(group)?;
    let d = p.dim();
    for c in &t.cells {
        if c.len() != d + 1 || !t.is_simplex(c) {
            return Err(Error::CheckFailed(format!("cell {c:?} is not a {d}-simplex")));
        }
    }
    if !t.is_lattice(n) {
        return Err(Error::CheckFailed(format!("a vertex lies outside (1/{n})M")));
    }
    let pts = |c: &Vec<usize>| -> Vec<Vec<Rat>> { c.iter().map(|&i| t.points[i].clone()).collect() };
    if !t.cells.iter().all(|c| pts(c).iter().all(|x| p.contains(x))) {
        return Err(Error::CheckFailed("a cell leaves the polytope".into()));
    }
    let vol: Rat = t.cells.iter().map(|c| simplex_volume(&pts(c))).sum();
    if d == p.ambient_dim() && vol != Rat::from_integer(p.normalized_volume()) {
        return Err(Error::CheckFailed(format!("cell volumes sum to {vol}, not {}", p.normalized_volume())));
    }
    for (a, b) in t.cells.iter().tuple_combinations() {
        if !proper_intersection(&pts(a), &pts(b)) {
            return Err(Error::CheckFailed(format!("cells {a:?} and {b:?} overlap improperly")));
        }
    }
    Ok(())
}

/// JSON form of a subdivision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub dimension: usize,
    pub denominator: u64,
    pub points: Vec<Vec<crate::instance::Q>>,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heights: Option<Vec<Vec<crate::instance::Q>>>,
}

impl PolyComplex {
    /// Orbit label of each cell (index of the first cell in its orbit).
    pub fn cell_orbits(&self, group: &FiniteGroup) -> Vec<usize> {
        (0..self.cells.len())
            .map(|i| {
                (0..=i)
                    .find(|&j| {
                        (0..group.order()).any(|g| self.image_of(group, g, &self.cells[j]).as_ref() == Some(&self.cells[i]))
                    })
                    .unwrap()
            })
            .collect()
    }

    /// Smallest `n` with every vertex in `(1/n) Z^d`.
    pub fn denominator(&self) -> u64 {
        (1..).find(|&n| self.is_lattice(n)).unwrap()
    }

    pub fn to_json(&self, group: Option<&FiniteGroup>) -> ComplexJson {
        let c = self.compact();
        ComplexJson {
            dimension: c.dim(),
            denominator: c.denominator(),
            points: c.points.iter().map(|p| crate::instance::qvec(p)).collect(),
            facets: c.cells.clone(),
            orbits: group.map(|g| c.cell_orbits(g)),
            heights: c.heights.as_ref().map(|h| h.iter().map(|v| crate::instance::qvec(v)).collect()),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        let points: Vec<Vec<Rat>> = j.points.iter().map(|p| p.iter().map(|q| q.0.clone()).collect()).collect();
        let mut c = Self::from_cells(points, j.facets.clone())?;
        c.heights = j.heights.as_ref().map(|h| h.iter().map(|v| v.iter().map(|q| q.0.clone()).collect()).collect());
        Ok(c)
    }

    /// Plain-text listing: header, points, then cells.
    pub fn to_off(&self) -> String {
        let c = self.compact();
        let mut s = format!("OFF {} {}\n", c.points.len(), c.cells.len());
        for p in &c.points {
            s.push_str(&p.iter().map(crate::exactlin::fmt_rat).join(" "));
            s.push('\n');
        }
        for cell in &c.cells {
            s.push_str(&format!("{} {}\n", cell.len(), cell.iter().join(" ")));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactlin::{frac, rat_vec};
    use crate::instance::Instance;

    fn square() -> Polytope {
        Polytope::hull(&[rat_vec(&[0, 0]), rat_vec(&[1, 0]), rat_vec(&[0, 1]), rat_vec(&[1, 1])]).unwrap()
    }

    fn cell_points(s: &PolyComplex) -> BTreeSet<BTreeSet<Vec<Rat>>> {
        s.cells().iter().map(|c| c.iter().map(|&i| s.point(i).to_vec()).collect()).collect()
    }

    fn load(r: crate::instance::RawInstance) -> Instance {
        Instance::from_raw(r).unwrap()
    }

    #[test]
    fn pull_square_at_center_is_a_fan() {
        let c = vec![frac(1, 2), frac(1, 2)];
        let s = PolyComplex::trivial(&square()).pull(&[c.clone()]).unwrap();
        assert_eq!(s.cells().len(), 4);
        assert!(s.is_triangulation());
        assert!(s.cells().iter().all(|cell| cell.contains(&s.point_index(&c).unwrap())));
        s.certify_regular().unwrap();
    }

    #[test]
    fn local_rule_agrees_with_heights() {
        let t = PolyComplex::trivial(&square());
        for u in [rat_vec(&[0, 0]), rat_vec(&[1, 1]), vec![frac(1, 2), frac(1, 2)], vec![frac(1, 2), rat(0)]] {
            let a = t.pull(&[u.clone()]).unwrap();
            let b = t.pull_local(&u).unwrap();
            assert_eq!(cell_points(&a), cell_points(&b));
            b.certify_regular().unwrap();
        }
    }

    #[test]
    fn corner_height_gives_two_triangles() {
        let t = PolyComplex::trivial(&square());
        let omega: Vec<Vec<Rat>> = t.points().iter().map(|p| vec![if p == &rat_vec(&[1, 0]) { rat(-1) } else { rat(0) }]).collect();
        let s = t.refine(&omega);
        assert_eq!(s.cells().len(), 2);
        assert!(s.is_triangulation());
    }

    #[test]
    fn pulling_a_simplex_vertex_changes_nothing() {
        let p = Polytope::hull(&[rat_vec(&[0, 0, 0]), rat_vec(&[1, 0, 0]), rat_vec(&[0, 1, 0]), rat_vec(&[0, 0, 1])]).unwrap();
        let t = PolyComplex::trivial(&p);
        let s = t.pull(&[rat_vec(&[0, 1, 0])]).unwrap();
        assert_eq!(cell_points(&s), cell_points(&t));
    }

    #[test]
    fn bipyramid_pulled_at_apexes() {
        let i = load(corpus::bipyramid());
        let ab = corpus::intrinsic(&i, &corpus::bipyramid_apexes()).unwrap();
        let s = PolyComplex::trivial(&i.polytope).pull(&ab).unwrap();
        assert_eq!(s.cells().len(), 4);
        assert!(s.is_triangulation());
        check_triangulation(&s, &i.polytope, &i.group, 1).unwrap();
    }

    #[test]
    fn swap_square_is_not_translative() {
        let i = load(corpus::square_swap());
        let w = is_translative(&PolyComplex::trivial(&i.polytope), &i.group).unwrap().unwrap();
        assert_eq!(w.element, 1);
        assert_eq!(w.facet.len(), 4);
    }

    #[test]
    fn octahedron_glue() {
        let i = load(corpus::octahedron());
        let q = Polytope::hull(&corpus::intrinsic(&i, &corpus::octahedron_diagonal()).unwrap()).unwrap();
        let k = face_complex(&i.polytope, &faces_avoiding(&i.polytope, &q));
        assert!(is_translative(&k, &i.group).unwrap().is_none());
        let s = glue(&i.polytope, &q, &PolyComplex::trivial(&q), &k, &i.group).unwrap();
        check_triangulation(&s, &i.polytope, &i.group, 1).unwrap();
        assert_eq!(s.cells().len(), 4);
    }

    #[test]
    fn dim2_forbidden_types() {
        let cat = corpus::dim2_catalog();
        let get = |n: &str| load(cat.iter().find(|r| r.name == n).unwrap().clone());
        assert!(dim2_classify(&get("square-swap").group).unwrap().triangulable);
        let q = dim2_classify(&get("d2-quarter-turn").group).unwrap();
        assert!(!q.triangulable);
        assert_eq!(q.offending.unwrap().1, ForbiddenKind::QuarterTurn);
        let r = dim2_classify(&get("d2-offset-reflection").group).unwrap();
        assert_eq!(r.offending.unwrap().1, ForbiddenKind::OffsetReflection);
        assert!(dim2_classify(&get("d2-half-turn").group).unwrap().triangulable);
        assert!(matches!(dim2_classify(&load(corpus::octahedron()).group), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn z3_prism_at_denominator_three() {
        let i = load(corpus::z3_prism());
        let t = invariant_triangulation(&i.polytope, &i.group, 3).unwrap();
        check_triangulation(&t, &i.polytope, &i.group, 3).unwrap();
        t.certify_regular().unwrap();
        assert!(matches!(invariant_triangulation(&i.polytope, &i.group, 2), Err(Error::PreconditionFailed(_))));
        assert!(lattice_orbit_triangulation(&i.polytope, &i.group, 1).is_none());
    }

    #[test]
    fn cube_obstructions() {
        let i = load(corpus::klein_cube());
        let w = square_obstruction(&PolyComplex::trivial(&i.polytope), &i.group).unwrap();
        let t = PolyComplex::trivial(&i.polytope);
        for e in w.edges {
            assert!(i.group.orbit(t.point(e[0])).contains(&t.point(e[1]).to_vec()));
        }
        match forced_invariant_triangulation(&i.polytope, &i.group, 1) {
            Err(Error::HypothesisViolated { step, .. }) => assert_eq!(step, 1),
            other => panic!("expected a hypothesis violation, got {other:?}"),
        }
    }

    #[test]
    fn simplex_has_no_square() {
        let p = Polytope::hull(&[rat_vec(&[0, 0]), rat_vec(&[1, 0]), rat_vec(&[0, 1])]).unwrap();
        assert!(square_obstruction(&PolyComplex::trivial(&p), &FiniteGroup::trivial(2)).is_none());
    }

    #[test]
    fn detects_overlapping_cells() {
        let pts = vec![rat_vec(&[0, 0]), rat_vec(&[1, 0]), rat_vec(&[0, 1]), rat_vec(&[1, 1])];
        let bad = PolyComplex::from_cells(pts, vec![vec![0, 1, 2], vec![0, 1, 3], vec![1, 2, 3]]).unwrap();
        assert!(check_triangulation(&bad, &square(), &FiniteGroup::trivial(2), 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let i = load(corpus::square_swap());
        let t = invariant_triangulation(&i.polytope, &i.group, 2).unwrap();
        let j = t.to_json(Some(&i.group));
        let back = PolyComplex::from_json(&j).unwrap();
        assert_eq!(cell_points(&back), cell_points(&t.compact()));
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(serde_json::from_str::<ComplexJson>(&text).unwrap(), j);
        assert!(t.to_off().starts_with("OFF "));
    }
}
