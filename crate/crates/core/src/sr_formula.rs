//! h* from an invariant lattice triangulation through box points of the
//! fan over its faces and Stanley-Reisner rings of stars.

use crate::ehrhart_engine::box_points;
use crate::error::{Error, Result};
use crate::exactlin::{rat_of, Int, Rat};
use crate::group_action::FiniteGroup;
use crate::hstar::HStarSeries;
use crate::instance::Instance;
use crate::poly::{Poly, RatFunc};
use crate::repr_ring::induce_values;
use crate::triangulate::PolyComplex;
use num_traits::{One, ToPrimitive};
use std::collections::{BTreeMap, BTreeSet};

/// An orbit of points in the open boxes of the cones over the faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxOrbit {
    /// Lex-least point of the orbit, in `M x Z`.
    pub point: Vec<Int>,
    /// Face whose cone contains `point` in its open box (empty for the origin).
    pub cone: Vec<usize>,
    pub height: usize,
    /// Elements fixing `point`.
    pub stabilizer: Vec<usize>,
    pub size: usize,
}

fn lift(x: &[Rat]) -> Vec<Int> {
    let mut v: Vec<Int> = x.iter().map(|c| c.to_integer()).collect();
    v.push(Int::one());
    v
}

fn act(group: &FiniteGroup, g: usize, u: &[Int]) -> Vec<Int> {
    let x: Vec<Rat> = u.iter().map(rat_of).collect();
    group.element(g).apply_extended(&x).iter().map(|c| c.to_integer()).collect()
}

fn check_lattice_triangulation(t: &PolyComplex, group: &FiniteGroup) -> Result<()> {
    if !t.is_triangulation() {
        return Err(Error::NotSimplicial("subdivision has non-simplex cells".into()));
    }
    if !t.is_lattice(1) {
        return Err(Error::NotLattice("triangulation has non-lattice vertices".into()));
    }
    t.check_invariant(group)
}

/// Every point of every open box, with the face it belongs to.
fn all_box_points(t: &PolyComplex) -> Result<Vec<(Vec<Int>, Vec<usize>)>> {
    let d1 = t.ambient_dim() + 1;
    let mut out = vec![(vec![Int::from(0); d1], Vec::new())];
    for f in t.faces() {
        let gens: Vec<Vec<Int>> = f.iter().map(|&i| lift(t.point(i))).collect();
        for bp in box_points(&gens, true)? {
            out.push((bp.point, f.clone()));
        }
    }
    Ok(out)
}

/// Orbits of box points of the fan over the faces of `t`.
pub fn box_orbits(t: &PolyComplex, group: &FiniteGroup) -> Result<Vec<BoxOrbit>> {
    check_lattice_triangulation(t, group)?;
    let pts = all_box_points(t)?;
    let cone_of: BTreeMap<Vec<Int>, Vec<usize>> = pts.iter().cloned().collect();
    let mut seen: BTreeSet<Vec<Int>> = BTreeSet::new();
    let mut out = Vec::new();
    for (u, _) in &pts {
        if seen.contains(u) {
            continue;
        }
        let orbit: BTreeSet<Vec<Int>> = (0..group.order()).map(|g| act(group, g, u)).collect();
        let rep = orbit.iter().next().unwrap().clone();
        let stabilizer: Vec<usize> = (0..group.order()).filter(|&g| act(group, g, &rep) == rep).collect();
        let height = rep.last().unwrap().to_usize().expect("nonnegative height");
        let cone = cone_of
            .get(&rep)
            .cloned()
            .ok_or_else(|| Error::NotInvariant("box points are not permuted by the group".into()))?;
        out.push(BoxOrbit { point: rep, cone, height, stabilizer, size: orbit.len() });
        seen.extend(orbit);
    }
    out.sort_by(|a, b| (a.height, &a.point).cmp(&(b.height, &b.point)));
    Ok(out)
}

/// Vertex permutation of element `g`.
fn vertex_perm(t: &PolyComplex, group: &FiniteGroup, g: usize) -> Vec<usize> {
    (0..t.points().len())
        .map(|i| t.point_index(&group.element(g).apply(t.point(i))).expect("invariant vertex set"))
        .collect()
}

/// Faces of the star of `cone`: subsets of cells containing it.
fn star_faces(t: &PolyComplex, cone: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for c in t.cells().iter().filter(|c| cone.iter().all(|i| c.contains(i))) {
        for mask in 0u64..(1 << c.len()) {
            out.insert(c.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect());
        }
    }
    out
}

/// Character value at `g` of the Hilbert series of the Stanley-Reisner ring of
/// the star of the cone over `cone`: a sum over `g`-stable faces of products of
/// `t^s / (1 - t^s)` over the `g`-orbits of rays.
pub fn link_hilbert_at_g(t: &PolyComplex, group: &FiniteGroup, cone: &[usize], g: usize) -> Result<RatFunc> {
    let perm = vertex_perm(t, group, g);
    let mut img: Vec<usize> = cone.iter().map(|&i| perm[i]).collect();
    img.sort();
    let mut sorted = cone.to_vec();
    sorted.sort();
    if img != sorted {
        return Err(Error::NotStabilized(format!("element {g} moves face {cone:?}")));
    }
    let mut num = Poly::zero();
    let mut terms: Vec<Vec<usize>> = Vec::new();
    for f in star_faces(t, cone) {
        let mut im: Vec<usize> = f.iter().map(|&i| perm[i]).collect();
        im.sort();
        if im != f {
            continue;
        }
        let mut left: BTreeSet<usize> = f.iter().copied().collect();
        let mut sizes = Vec::new();
        while let Some(&s) = left.iter().next() {
            let mut k = 0;
            let mut x = s;
            loop {
                left.remove(&x);
                k += 1;
                x = perm[x];
                if x == s {
                    break;
                }
            }
            sizes.push(k);
        }
        sizes.sort();
        terms.push(sizes);
    }
    // common denominator: product over the largest multiset of each orbit size
    let mut den_count: BTreeMap<usize, usize> = BTreeMap::new();
    for s in &terms {
        let mut c: BTreeMap<usize, usize> = BTreeMap::new();
        for &k in s {
            *c.entry(k).or_default() += 1;
        }
        for (k, m) in c {
            let e = den_count.entry(k).or_default();
            *e = (*e).max(m);
        }
    }
    let den = den_count.iter().fold(Poly::one(), |acc, (&k, &m)| &acc * &Poly::one_minus_t_pow(k).pow(m));
    for s in terms {
        let mut term = Poly::monomial(Rat::one(), s.iter().sum());
        let mut c: BTreeMap<usize, usize> = BTreeMap::new();
        for &k in &s {
            *c.entry(k).or_default() += 1;
        }
        for (&k, &m) in &den_count {
            let have = c.get(&k).copied().unwrap_or(0);
            term = &term * &Poly::one_minus_t_pow(k).pow(m - have);
        }
        num = &num + &term;
    }
    Ok(RatFunc::new(num, den))
}

/// Character value at `g` of the Hilbert series of the star's Stanley-Reisner
/// ring modulo the linear system of parameters, as a polynomial.
fn quotient_at_g(t: &PolyComplex, group: &FiniteGroup, cone: &[usize], g: usize) -> Result<Poly> {
    let h = link_hilbert_at_g(t, group, cone, g)?.mul_poly(&group.element(g).det_series());
    h.reduced()
        .as_polynomial()
        .ok_or_else(|| Error::CheckFailed(format!("quotient series of face {cone:?} at element {g} is not a polynomial")))
}

fn series(inst: &Instance, per_class: Vec<Poly>) -> HStarSeries {
    HStarSeries { n: 1, dim: inst.dim(), per_class: per_class.into_iter().map(RatFunc::poly).collect() }
}

/// h* as a sum over box orbits of induced characters of link quotients.
pub fn hstar_via_triangulation(inst: &Instance, t: &PolyComplex) -> Result<HStarSeries> {
    let group = &inst.group;
    let mut total = vec![Poly::zero(); group.num_classes()];
    for o in box_orbits(t, group)? {
        let vals: Vec<Poly> =
            o.stabilizer.iter().map(|&h| quotient_at_g(t, group, &o.cone, h)).collect::<Result<_>>()?;
        let ind = induce_values(group, &o.stabilizer, |i| vals[i].clone(), Poly::zero(), |p, r| p.scale(r))?;
        for (acc, v) in total.iter_mut().zip(ind) {
            *acc = &*acc + &v.shift(o.height);
        }
    }
    Ok(series(inst, total))
}

/// The same sum evaluated as a trace: at each class representative `g`, only
/// box points fixed by `g` contribute.
pub fn hstar_via_fixed_box_points(inst: &Instance, t: &PolyComplex) -> Result<HStarSeries> {
    let group = &inst.group;
    check_lattice_triangulation(t, group)?;
    let pts = all_box_points(t)?;
    let mut out = Vec::new();
    for c in 0..group.num_classes() {
        let g = group.class_rep(c);
        let mut acc = Poly::zero();
        for (u, cone) in &pts {
            if act(group, g, u) != *u {
                continue;
            }
            let h = u.last().unwrap().to_usize().unwrap();
            acc = &acc + &quotient_at_g(t, group, cone, g)?.shift(h);
        }
        out.push(acc);
    }
    Ok(series(inst, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exactlin::rat_vec;
    use crate::hstar::hstar;
    use crate::polytope::Polytope;
    use crate::triangulate::invariant_triangulation;

    fn load(r: crate::instance::RawInstance) -> Instance {
        Instance::from_raw(r).unwrap()
    }

    #[test]
    fn unimodular_has_only_origin() {
        let i = load(corpus::square_swap());
        let t = PolyComplex::trivial(&i.polytope).pull(&[rat_vec(&[0, 0])]).unwrap();
        let t = t.pull(&[rat_vec(&[1, 1])]).unwrap();
        let o = box_orbits(&t, &i.group).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].height, 0);
        let h = hstar_via_triangulation(&i, &t).unwrap();
        assert_eq!(h.per_class, hstar(&i).unwrap().per_class);
    }

    #[test]
    fn segment_of_length_two() {
        let p = Polytope::hull(&[rat_vec(&[0]), rat_vec(&[2])]).unwrap();
        let t = PolyComplex::trivial(&p);
        let o = box_orbits(&t, &FiniteGroup::trivial(1)).unwrap();
        let heights: Vec<usize> = o.iter().map(|b| b.height).collect();
        assert_eq!(heights, vec![0, 1]);
    }

    #[test]
    fn swap_of_two_rays() {
        let i = load(crate::instance::RawInstance::new(
            "segment",
            vec![vec![-1], vec![1]],
            vec![crate::instance::RawMap::from_rows(&[vec![-1]], &[])],
        ));
        let t = PolyComplex::trivial(&i.polytope);
        let cell = t.cells()[0].clone();
        let s = link_hilbert_at_g(&t, &i.group, &cell, 1).unwrap();
        assert_eq!(s.series(7), rat_vec(&[1, 0, 1, 0, 1, 0, 1]));
        assert!(matches!(link_hilbert_at_g(&t, &i.group, &[cell[0]], 1), Err(Error::NotStabilized(_))));
    }

    #[test]
    fn identity_matches_face_ring() {
        // boundary star of a unit triangle coned: identity gives the classical face-ring series
        let p = Polytope::hull(&[rat_vec(&[0, 0]), rat_vec(&[1, 0]), rat_vec(&[0, 1])]).unwrap();
        let t = PolyComplex::trivial(&p);
        let g = FiniteGroup::trivial(2);
        let s = link_hilbert_at_g(&t, &g, &[], 0).unwrap();
        assert_eq!(s.reduced(), RatFunc::new(Poly::one(), Poly::one_minus_t_pow(1).pow(3)).reduced());
    }

    #[test]
    fn bipyramid_routes_agree() {
        let i = load(corpus::bipyramid());
        let ab = corpus::intrinsic(&i, &corpus::bipyramid_apexes()).unwrap();
        let t = PolyComplex::trivial(&i.polytope).pull(&ab).unwrap();
        let direct = hstar(&i).unwrap().per_class;
        assert_eq!(hstar_via_triangulation(&i, &t).unwrap().per_class, direct);
        assert_eq!(hstar_via_fixed_box_points(&i, &t).unwrap().per_class, direct);
        let i = load(corpus::z3_prism());
        let t = invariant_triangulation(&i.polytope, &i.group, 3).unwrap();
        assert!(matches!(hstar_via_triangulation(&i, &t), Err(Error::NotLattice(_))));
    }
}
