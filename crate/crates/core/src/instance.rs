//! Problem instances: a lattice polytope with a finite affine group action.
//!
//! Inputs may live in a quotient lattice `Z^n / Z v`, in an affine sublattice
//! `o + span_Z(B)`, or both; the polytope may be lower dimensional. All of
//! this is converted to intrinsic coordinates where the lattice is `Z^d` and
//! the polytope is full dimensional.

use crate::error::{Error, Result};
use crate::exactlin::{
    fmt_rat, hnf, is_integral, parse_rat, rat_of, to_rat_vec, vsub, Int, IntMatrix, LatticeBasis, Rat, RatMatrix,
};
use crate::group_action::{AffineMap, FiniteGroup};
use crate::polytope::Polytope;
use crate::repr_ring::{CharacterTable, ClassFunction, Cyclo};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// A rational number in JSON: an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rat);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_integer().to_i64() {
            Some(i) if self.0.is_integer() => s.serialize_i64(i),
            _ => s.serialize_str(&fmt_rat(&self.0)),
        }
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::I(i) => Ok(Q(Rat::from_integer(Int::from(i)))),
            Raw::S(s) => parse_rat(&s).map(Q).map_err(serde::de::Error::custom),
        }
    }
}

pub fn qvec(v: &[Rat]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

pub fn qints(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| Q(Rat::from_integer(Int::from(x)))).collect()
}

fn unq(v: &[Q]) -> Vec<Rat> {
    v.iter().map(|q| q.0.clone()).collect()
}

fn unq_int(v: &[Q]) -> Result<Vec<Int>> {
    v.iter()
        .map(|q| {
            if q.0.is_integer() {
                Ok(q.0.to_integer())
            } else {
                Err(Error::Input(format!("expected an integer, got {}", fmt_rat(&q.0))))
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RawMap {
    pub linear: Vec<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub translation: Vec<Q>,
}

impl RawMap {
    pub fn from_rows(linear: &[Vec<i64>], translation: &[i64]) -> Self {
        RawMap { linear: linear.iter().map(|r| qints(r)).collect(), translation: qints(translation) }
    }

    pub fn permutation(p: &[usize]) -> Self {
        let n = p.len();
        let mut rows = vec![vec![0i64; n]; n];
        for (i, &j) in p.iter().enumerate() {
            rows[j][i] = 1;
        }
        Self::from_rows(&rows, &[])
    }

    pub fn from_affine(g: &AffineMap) -> Self {
        let a = g.linear();
        RawMap {
            linear: a.row_vecs().iter().map(|r| r.iter().map(|x| Q(rat_of(x))).collect()).collect(),
            translation: g.translation().iter().map(|x| Q(rat_of(x))).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RawLattice {
    pub origin: Vec<Q>,
    pub basis: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RawCharacter {
    pub name: String,
    /// Per class, coefficients of `1, z, z^2, ...` with `z` a primitive root of
    /// unity of order `conductor`.
    pub values: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RawTable {
    pub conductor: usize,
    /// A word in the generators for each column.
    pub classes: Vec<Vec<usize>>,
    /// Checked against the group when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_sizes: Option<Vec<usize>>,
    pub characters: Vec<RawCharacter>,
}

impl RawTable {
    /// Columns are class representatives written as shortest words.
    pub fn from_table(g: &FiniteGroup, t: &CharacterTable) -> Self {
        let conductor = t.chars.iter().flat_map(|c| c.values.iter()).fold(1usize, |e, v| e.lcm(&v.conductor()));
        let characters = t
            .names
            .iter()
            .zip(&t.chars)
            .map(|(name, c)| RawCharacter {
                name: name.clone(),
                values: c
                    .values
                    .iter()
                    .map(|v| if v.is_zero() { vec![Q(Rat::zero())] } else { qvec(v.lift(conductor).coeffs()) })
                    .collect(),
            })
            .collect();
        RawTable {
            conductor,
            classes: (0..g.num_classes()).map(|c| g.word_for(g.class_rep(c))).collect(),
            class_sizes: Some(g.class_sizes()),
            characters,
        }
    }
}

/// Serialized form of an instance.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RawInstance {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub vertices: Vec<Vec<Q>>,
    #[serde(default)]
    pub generators: Vec<RawMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<RawLattice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_table: Option<RawTable>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, serde_json::Value>,
}

impl RawInstance {
    pub fn new(name: &str, vertices: Vec<Vec<i64>>, generators: Vec<RawMap>) -> Self {
        RawInstance {
            name: name.into(),
            description: String::new(),
            vertices: vertices.iter().map(|v| qints(v)).collect(),
            generators,
            quotient: None,
            lattice: None,
            character_table: None,
            labels: BTreeMap::new(),
        }
    }

    pub fn with_description(mut self, d: &str) -> Self {
        self.description = d.into();
        self
    }

    pub fn with_quotient(mut self, v: &[i64]) -> Self {
        self.quotient = Some(qints(v));
        self
    }

    pub fn with_lattice(mut self, origin: &[i64], basis: &[Vec<i64>]) -> Self {
        self.lattice = Some(RawLattice { origin: qints(origin), basis: basis.iter().map(|b| qints(b)).collect() });
        self
    }

    pub fn with_label(mut self, k: &str, v: serde_json::Value) -> Self {
        self.labels.insert(k.into(), v);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))
    }
}

/// An affine map given by a rational translation, before integrality is known.
#[derive(Clone, Debug)]
struct LooseMap {
    a: IntMatrix,
    b: Vec<Rat>,
}

impl LooseMap {
    fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        let ax = self.a.mul_rat_vec(x);
        ax.iter().zip(&self.b).map(|(p, q)| p + q).collect()
    }
}

/// Re-expresses points and maps in coordinates `y` with `x = origin + sum y_i basis_i`.
fn change_chart(
    points: &[Vec<Rat>],
    maps: &[LooseMap],
    origin: &[Rat],
    basis: &[Vec<Rat>],
) -> Result<(Vec<Vec<Rat>>, Vec<LooseMap>)> {
    let n = origin.len();
    let k = basis.len();
    let bt = RatMatrix::from_rows(basis, n).transpose();
    let coords = |x: &[Rat]| -> Result<Vec<Rat>> {
        let d = vsub(x, origin);
        let sol = crate::exactlin::solve_rational(&bt, &d)
            .ok_or_else(|| Error::Input(format!("point {x:?} is outside the affine lattice's span")))?;
        Ok(sol.particular)
    };
    let pts = points.iter().map(|p| coords(p)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for m in maps {
        let mut a = IntMatrix::zeros(k, k);
        for (j, bj) in basis.iter().enumerate() {
            let img = m.a.mul_rat_vec(bj);
            let c = crate::exactlin::solve_rational(&bt, &img)
                .ok_or_else(|| Error::NotInvariant("linear part does not preserve the lattice's span".into()))?
                .particular;
            if !is_integral(&c) {
                return Err(Error::NotInvariant("linear part does not preserve the lattice".into()));
            }
            for i in 0..k {
                a.set(i, j, c[i].to_integer());
            }
        }
        let b = coords(&m.apply(origin))?;
        out.push(LooseMap { a, b });
    }
    Ok((pts, out))
}

/// Intrinsic coordinates of the vertices and of `extra`, with the maps.
fn chart(raw: &RawInstance, extra: &[Vec<Rat>]) -> Result<(Vec<Vec<Rat>>, Vec<Vec<Rat>>, Vec<LooseMap>)> {
    if raw.vertices.is_empty() {
        return Err(Error::Input("no vertices".into()));
    }
    let nv = raw.vertices.len();
    let mut points: Vec<Vec<Rat>> = raw.vertices.iter().map(|v| unq(v)).collect();
    points.extend(extra.iter().cloned());
    let n = points[0].len();
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::DimensionMismatch("points of different lengths".into()));
    }
    let mut maps = Vec::new();
    for g in &raw.generators {
        let rows = g.linear.iter().map(|r| unq_int(r)).collect::<Result<Vec<_>>>()?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("generator is not {n}x{n}")));
        }
        let b = if g.translation.is_empty() { vec![Rat::zero(); n] } else { unq(&g.translation) };
        if b.len() != n {
            return Err(Error::DimensionMismatch("translation length".into()));
        }
        maps.push(LooseMap { a: IntMatrix::from_big_rows(&rows, n), b });
    }
    if let Some(v) = &raw.quotient {
        let v = unq_int(v)?;
        (points, maps) = quotient_chart(&points, &maps, &v)?;
    }
    if let Some(l) = &raw.lattice {
        let origin = unq(&l.origin);
        let basis: Vec<Vec<Rat>> = l.basis.iter().map(|b| unq(b)).collect();
        let m = points[0].len();
        if origin.len() != m || basis.iter().any(|b| b.len() != m) {
            return Err(Error::DimensionMismatch("lattice origin or basis length".into()));
        }
        if RatMatrix::from_rows(&basis, m).rank() != basis.len() {
            return Err(Error::Input("lattice basis is not independent".into()));
        }
        (points, maps) = change_chart(&points, &maps, &origin, &basis)?;
    }
    if let Some(p) = points[..nv].iter().find(|p| !is_integral(p)) {
        return Err(Error::NotLattice(format!("vertex {p:?} is not a lattice point")));
    }
    // restrict to the affine lattice spanned by the polytope
    let mut sorted = points[..nv].to_vec();
    sorted.sort();
    let base = sorted[0].clone();
    let m = base.len();
    let diffs: Vec<Vec<Int>> =
        sorted[1..].iter().map(|p| vsub(p, &base).iter().map(|x| x.to_integer()).collect()).collect();
    let lat = LatticeBasis::generated_by(m, &diffs).saturation();
    let basis: Vec<Vec<Rat>> = lat.rows.iter().map(|r| to_rat_vec(r)).collect();
    (points, maps) = change_chart(&points, &maps, &base, &basis)?;
    let rest = points.split_off(nv);
    Ok((points, rest, maps))
}

/// A lattice polytope, full dimensional in `Z^d`, with a finite affine group.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub polytope: Polytope,
    pub group: FiniteGroup,
    pub table: Option<CharacterTable>,
    pub raw: RawInstance,
}

impl Instance {
    pub fn from_raw(raw: RawInstance) -> Result<Self> {
        let (points, _, maps) = chart(&raw, &[])?;
        let d = points[0].len();
        let mut gens = Vec::new();
        for lm in &maps {
            if !is_integral(&lm.b) {
                return Err(Error::NotInvariant("translation is not integral in the polytope's lattice".into()));
            }
            let b: Vec<Int> = lm.b.iter().map(|x| x.to_integer()).collect();
            gens.push(AffineMap::new(&lm.a, &b)?);
        }
        let polytope = Polytope::hull(&points)?;
        if polytope.vertices().len() != {
            let mut s = points.clone();
            s.sort();
            s.dedup();
            s.len()
        } {
            return Err(Error::Input("some listed vertices are not vertices of their hull".into()));
        }
        let group = FiniteGroup::generate(d, &gens)?;
        polytope.check_invariant(&group)?;
        let table = match &raw.character_table {
            Some(t) => Some(table_from_raw(&group, t)?),
            None => CharacterTable::for_group(&group).ok(),
        };
        Ok(Instance { name: raw.name.clone(), polytope, group, table, raw })
    }

    /// Intrinsic coordinates of points given in the raw coordinates.
    pub fn to_intrinsic(&self, pts: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
        Ok(chart(&self.raw, pts)?.1)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_raw(RawInstance::from_json(s)?)
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn num_classes(&self) -> usize {
        self.group.num_classes()
    }

    pub fn fixed_polytope(&self, class: usize) -> Result<Polytope> {
        self.polytope.fixed_polytope(&self.group, self.group.class_rep(class))
    }

    fn from_intrinsic(name: &str, vertices: Vec<Vec<Rat>>, gens: Vec<RawMap>, description: &str) -> Result<Self> {
        let raw = RawInstance {
            name: name.into(),
            description: description.into(),
            vertices: vertices.iter().map(|v| qvec(v)).collect(),
            generators: gens,
            quotient: None,
            lattice: None,
            character_table: None,
            labels: BTreeMap::new(),
        };
        Self::from_raw(raw)
    }

    fn generator_maps(&self) -> Vec<AffineMap> {
        self.group.generators().iter().map(|&g| self.group.element(g).clone()).collect()
    }

    /// `Pyr(P)`: the hull of `P x {1}` and the origin, acted on linearly.
    pub fn pyramid(&self) -> Result<Instance> {
        let d = self.dim();
        let mut verts: Vec<Vec<Rat>> = self
            .polytope
            .vertices()
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.push(Rat::one());
                w
            })
            .collect();
        verts.push(vec![Rat::zero(); d + 1]);
        let gens = self
            .generator_maps()
            .iter()
            .map(|g| RawMap {
                linear: g.extended().row_vecs().iter().map(|r| r.iter().map(|x| Q(rat_of(x))).collect()).collect(),
                translation: Vec::new(),
            })
            .collect();
        Self::from_intrinsic(&format!("pyr({})", self.name), verts, gens, "pyramid")
    }

    /// Free join, with `G1 x G2` generated by the two generator lists.
    pub fn free_join(a: &Instance, b: &Instance) -> Result<Instance> {
        let (d1, d2) = (a.dim() + 1, b.dim() + 1);
        let mut verts = Vec::new();
        for v in a.polytope.vertices() {
            let mut w = v.clone();
            w.push(Rat::one());
            w.extend(vec![Rat::zero(); d2]);
            verts.push(w);
        }
        for v in b.polytope.vertices() {
            let mut w = vec![Rat::zero(); d1];
            w.extend(v.iter().cloned());
            w.push(Rat::one());
            verts.push(w);
        }
        let mut gens = Vec::new();
        for g in a.generator_maps() {
            gens.push(block_map(&block_diag(g.extended(), &IntMatrix::identity(d2))));
        }
        for g in b.generator_maps() {
            gens.push(block_map(&block_diag(&IntMatrix::identity(d1), g.extended())));
        }
        Self::from_intrinsic(&format!("join({},{})", a.name, b.name), verts, gens, "free join")
    }

    /// The same polytope viewed in the lattice `(1/N) M`, i.e. scaled by `N`.
    pub fn dilate(&self, n: u64) -> Result<Instance> {
        let k = Rat::from_integer(Int::from(n));
        let verts = self.polytope.vertices().iter().map(|v| v.iter().map(|x| x * &k).collect()).collect();
        let gens = self
            .generator_maps()
            .iter()
            .map(|g| {
                let mut r = RawMap::from_affine(g);
                r.translation = r.translation.iter().map(|t| Q(&t.0 * &k)).collect();
                r
            })
            .collect();
        let mut out = Self::from_intrinsic(&format!("{}x{}", n, self.name), verts, gens, "dilate")?;
        out.table = self.table.clone();
        Ok(out)
    }

    /// Element of the free join group acting as `g1` on the first factor and
    /// `g2` on the second.
    pub fn join_element(join: &Instance, a: &Instance, b: &Instance, g1: usize, g2: usize) -> Option<usize> {
        let na = a.polytope.vertices().len();
        let pa = a.polytope.vertex_permutation(a.group.element(g1)).ok()?;
        let pb = b.polytope.vertex_permutation(b.group.element(g2)).ok()?;
        let total = na + b.polytope.vertices().len();
        let perm: Vec<usize> = (0..total).map(|i| if i < na { pa[i] } else { na + pb[i - na] }).collect();
        let pos: Vec<usize> = (0..total).map(|i| join_vertex_position(join, a, b, i)).collect::<Option<Vec<_>>>()?;
        let jv = join.polytope.vertices();
        (0..join.group.order()).find(|&e| {
            let g = join.group.element(e);
            (0..total).all(|i| g.apply(&jv[pos[i]]) == jv[pos[perm[i]]])
        })
    }
}

fn join_vertex_lifts(a: &Instance, b: &Instance) -> Vec<Vec<Rat>> {
    let (d1, d2) = (a.dim() + 1, b.dim() + 1);
    let mut out = Vec::new();
    for v in a.polytope.vertices() {
        let mut w = v.clone();
        w.push(Rat::one());
        w.extend(vec![Rat::zero(); d2]);
        out.push(w);
    }
    for v in b.polytope.vertices() {
        let mut w = vec![Rat::zero(); d1];
        w.extend(v.iter().cloned());
        w.push(Rat::one());
        out.push(w);
    }
    out
}

/// Position in the join's vertex list of the `i`-th lifted vertex.
fn join_vertex_position(join: &Instance, a: &Instance, b: &Instance, i: usize) -> Option<usize> {
    let lifted = join_vertex_lifts(a, b);
    let mut sorted = lifted.clone();
    sorted.sort();
    let base = sorted[0].clone();
    let m = base.len();
    let diffs: Vec<Vec<Int>> =
        sorted[1..].iter().map(|p| vsub(p, &base).iter().map(|x| x.to_integer()).collect()).collect();
    let lat = LatticeBasis::generated_by(m, &diffs).saturation();
    let y = lat.coords(&vsub(&lifted[i], &base))?;
    join.polytope.vertex_index(&y)
}

fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.rows + b.rows;
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..a.rows {
        for j in 0..a.cols {
            m.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..b.rows {
        for j in 0..b.cols {
            m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
        }
    }
    m
}

fn block_map(m: &IntMatrix) -> RawMap {
    RawMap { linear: m.row_vecs().iter().map(|r| r.iter().map(|x| Q(rat_of(x))).collect()).collect(), translation: Vec::new() }
}

/// Coordinates on `Z^n / Z v` for a primitive `v`.
fn quotient_chart(points: &[Vec<Rat>], maps: &[LooseMap], v: &[Int]) -> Result<(Vec<Vec<Rat>>, Vec<LooseMap>)> {
    let n = v.len();
    if points[0].len() != n {
        return Err(Error::DimensionMismatch("quotient vector length".into()));
    }
    let col = IntMatrix::from_big_rows(&v.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>(), 1);
    let h = hnf(&col);
    if *h.h.get(0, 0) != Int::one() {
        return Err(Error::Input("quotient vector must be primitive".into()));
    }
    let u = h.u;
    let uinv = u.to_rat().inverse().expect("unimodular");
    let proj = |x: &[Rat]| -> Vec<Rat> { u.mul_rat_vec(x)[1..].to_vec() };
    let vr = to_rat_vec(v);
    let mut out = Vec::new();
    for m in maps {
        let av = m.a.mul_rat_vec(&vr);
        let neg: Vec<Rat> = vr.iter().map(|x| -x).collect();
        if av != vr && av != neg {
            return Err(Error::NotInvariant("map does not preserve the quotient line".into()));
        }
        let conj = u.to_rat().mul(&m.a.to_rat()).mul(&uinv);
        let mut a = IntMatrix::zeros(n - 1, n - 1);
        for i in 1..n {
            for j in 1..n {
                a.set(i - 1, j - 1, conj.get(i, j).to_integer());
            }
        }
        out.push(LooseMap { a, b: proj(&m.b) });
    }
    Ok((points.iter().map(|p| proj(p)).collect(), out))
}

fn table_from_raw(g: &FiniteGroup, t: &RawTable) -> Result<CharacterTable> {
    let r = g.num_classes();
    if t.classes.len() != r {
        return Err(Error::TableInvalid(format!("{} columns for {r} classes", t.classes.len())));
    }
    let mut col_of_class = vec![usize::MAX; r];
    for (col, w) in t.classes.iter().enumerate() {
        let c = g.class_of(g.word(w)?);
        if col_of_class[c] != usize::MAX {
            return Err(Error::TableInvalid(format!("two columns name class {c}")));
        }
        col_of_class[c] = col;
    }
    if let Some(sizes) = &t.class_sizes {
        if (0..r).any(|c| sizes.get(col_of_class[c]) != Some(&g.class_sizes()[c])) {
            return Err(Error::TableInvalid("class sizes do not match the group".into()));
        }
    }
    let mut names = Vec::new();
    let mut chars = Vec::new();
    for ch in &t.characters {
        if ch.values.len() != r {
            return Err(Error::TableInvalid(format!("character {} has the wrong length", ch.name)));
        }
        let vals: Vec<Cyclo> =
            (0..r).map(|c| Cyclo::from_coeffs(t.conductor.max(1), unq(&ch.values[col_of_class[c]]))).collect();
        names.push(ch.name.clone());
        chars.push(ClassFunction { values: vals });
    }
    CharacterTable::from_values(g, names, chars)
}
