//! Ehrhart series of rational polytopes from fundamental parallelepipeds.

use crate::error::{Error, Result};
use crate::exactlin::{
    primitive_integer, rat_of, snf, to_rat_vec, Int, IntMatrix, LatticeBasis, Rat, RatMatrix,
};
use crate::poly::{Poly, RatFunc};
use crate::polytope::Polytope;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A point of a fundamental parallelepiped with its coefficients on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxPoint {
    pub point: Vec<Int>,
    pub lambda: Vec<Rat>,
}

/// Box points in the coordinates of a lattice where the generators form the
/// columns of `u` (square, nonsingular).
fn box_points_local(u: &IntMatrix) -> Vec<BoxPoint> {
    let k = u.rows;
    if k == 0 {
        return vec![BoxPoint { point: Vec::new(), lambda: Vec::new() }];
    }
    let s = snf(u);
    let pinv = s.u.to_rat().inverse().expect("unimodular");
    let uinv = u.to_rat().inverse().expect("nonsingular");
    let mut out = Vec::new();
    let mut v = vec![Int::zero(); k];
    loop {
        let w = pinv.mul_vec(&to_rat_vec(&v));
        let lambda: Vec<Rat> = uinv.mul_vec(&w).iter().map(|x| x - x.floor()).collect();
        let point: Vec<Int> = u.to_rat().mul_vec(&lambda).iter().map(|x| x.to_integer()).collect();
        out.push(BoxPoint { point, lambda });
        let mut i = 0;
        loop {
            if i == k {
                out.sort_by(|a, b| a.point.cmp(&b.point));
                return out;
            }
            v[i] += 1;
            if v[i] < s.diag[i] {
                break;
            }
            v[i] = Int::zero();
            i += 1;
        }
    }
}

/// Lattice points `sum lambda_j u_j` with `0 <= lambda_j < 1` (or `0 < lambda_j < 1`
/// when `open`), for linearly independent integer generators in `Z^n`. The
/// lattice is `Z^n` restricted to the span of the generators.
pub fn box_points(gens: &[Vec<Int>], open: bool) -> Result<Vec<BoxPoint>> {
    let Some(first) = gens.first() else {
        return Ok(vec![BoxPoint { point: Vec::new(), lambda: Vec::new() }]);
    };
    let n = first.len();
    let lat = LatticeBasis::generated_by(n, gens).saturation();
    if lat.rank() != gens.len() {
        return Err(Error::NotSimplicial(format!("{} generators span rank {}", gens.len(), lat.rank())));
    }
    let k = gens.len();
    let mut u = IntMatrix::zeros(k, k);
    for (j, g) in gens.iter().enumerate() {
        let c = lat.coords(&to_rat_vec(g)).expect("generator in its own span");
        for i in 0..k {
            u.set(i, j, c[i].to_integer());
        }
    }
    let b = lat.matrix();
    let mut out = Vec::new();
    for bp in box_points_local(&u) {
        if open && bp.lambda.iter().any(|l| l.is_zero()) {
            continue;
        }
        let point = (0..n).map(|c| (0..k).fold(Int::zero(), |acc, r| acc + &bp.point[r] * b.get(r, c))).collect();
        out.push(BoxPoint { point, lambda: bp.lambda });
    }
    out.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(out)
}

/// The cone over a rational polytope with its generators in intrinsic lattice
/// coordinates.
struct ConeData {
    lat: LatticeBasis,
    gens: Vec<Vec<Int>>,
    heights: Vec<Int>,
    height_form: Vec<Int>,
}

fn cone_data(p: &Polytope) -> ConeData {
    let lifted: Vec<Vec<Int>> = p
        .vertices()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(Rat::one());
            primitive_integer(&w)
        })
        .collect();
    let n1 = p.ambient_dim() + 1;
    let lat = LatticeBasis::generated_by(n1, &lifted).saturation();
    let height_form: Vec<Int> = lat.rows.iter().map(|r| r[n1 - 1].clone()).collect();
    let mut gens = Vec::new();
    let mut heights = Vec::new();
    for w in &lifted {
        let c = lat.coords(&to_rat_vec(w)).expect("in span");
        let u = primitive_integer(&c);
        let h = u.iter().zip(&height_form).fold(Int::zero(), |acc, (a, b)| acc + a * b);
        gens.push(u);
        heights.push(h);
    }
    ConeData { lat, gens, heights, height_form }
}

/// Ehrhart series `sum_m #(mQ cap Z^n) t^m` of a rational simplex.
pub fn simplex_ehr_series(q: &Polytope) -> Result<RatFunc> {
    if !q.is_simplex() {
        return Err(Error::NotSimplex(format!("{} vertices in dimension {}", q.vertices().len(), q.dim())));
    }
    polytope_ehr_series(q)
}

fn sign_lex(vals: impl Iterator<Item = Rat>) -> i32 {
    for v in vals {
        if v.is_positive() {
            return 1;
        }
        if v.is_negative() {
            return -1;
        }
    }
    0
}

/// Ehrhart series of a rational polytope in `Z^n`, as `num / (1 - t^K)^(dim+1)`
/// where `K` is the least common height of the vertex rays.
///
/// Uses a pulling triangulation and a half-open decomposition with respect to
/// the interior point `sum u_i + eps e_1 + eps^2 e_2 + ...`.
pub fn polytope_ehr_series(p: &Polytope) -> Result<RatFunc> {
    let cd = cone_data(p);
    let k1 = cd.lat.rank();
    let kk = cd.heights.iter().fold(Int::one(), |acc, h| acc.lcm(h));
    let kk_us = kk.to_usize().ok_or_else(|| Error::Input("denominator too large".into()))?;
    let mut q0 = vec![Int::zero(); k1];
    for g in &cd.gens {
        for (a, b) in q0.iter_mut().zip(g) {
            *a += b;
        }
    }
    let mut num = Poly::zero();
    for s in p.triangulate() {
        let mut u = IntMatrix::zeros(k1, k1);
        for (j, &vi) in s.iter().enumerate() {
            for i in 0..k1 {
                u.set(i, j, cd.gens[vi][i].clone());
            }
        }
        let uinv: RatMatrix = u.to_rat().inverse().ok_or_else(|| Error::NotSimplicial("degenerate simplex".into()))?;
        let excluded: Vec<bool> = (0..k1)
            .map(|j| {
                let first = (0..k1).fold(Rat::zero(), |acc, r| acc + uinv.get(j, r) * rat_of(&q0[r]));
                let rest = (0..k1).map(|r| uinv.get(j, r).clone());
                sign_lex(std::iter::once(first).chain(rest)) < 0
            })
            .collect();
        let mut box_poly = Poly::zero();
        for bp in box_points_local(&u) {
            let mut pt = bp.point.clone();
            for j in 0..k1 {
                if excluded[j] && bp.lambda[j].is_zero() {
                    for i in 0..k1 {
                        pt[i] += u.get(i, j);
                    }
                }
            }
            let h = pt.iter().zip(&cd.height_form).fold(Int::zero(), |acc, (a, b)| acc + a * b);
            let h = h.to_usize().expect("nonnegative height");
            box_poly = &box_poly + &Poly::monomial(Rat::one(), h);
        }
        let mut term = box_poly;
        for &vi in &s {
            let h = cd.heights[vi].to_usize().unwrap();
            term = &term * &Poly::geometric(kk_us / h).subs_power(h);
        }
        num = &num + &term;
    }
    let den = Poly::one_minus_t_pow(kk_us).pow(k1);
    Ok(RatFunc::new(num, den))
}

/// Lattice point counts `#(mP cap Z^n)` for `m = 0..count` read off the series.
pub fn ehrhart_counts(p: &Polytope, count: usize) -> Result<Vec<Int>> {
    Ok(polytope_ehr_series(p)?.series(count).iter().map(|x| x.to_integer()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, int, rat_vec};

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rat>> {
        v.iter().map(|p| rat_vec(p)).collect()
    }

    #[test]
    fn segment_box_point() {
        let b = box_points(&[vec![int(0), int(1)], vec![int(2), int(1)]], false).unwrap();
        let pts: Vec<Vec<Int>> = b.iter().map(|x| x.point.clone()).collect();
        assert_eq!(pts, vec![vec![int(0), int(0)], vec![int(1), int(1)]]);
        let open = box_points(&[vec![int(0), int(1)], vec![int(2), int(1)]], true).unwrap();
        assert_eq!(open.len(), 1);
        assert_eq!(open[0].lambda, vec![frac(1, 2), frac(1, 2)]);
        assert!(matches!(box_points(&[vec![int(1), int(1)], vec![int(2), int(2)]], false), Err(Error::NotSimplicial(_))));
    }

    #[test]
    fn unit_square_series() {
        let p = Polytope::hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let s = polytope_ehr_series(&p).unwrap();
        assert_eq!(s, RatFunc::with_cyclotomic_den(Poly::from_ints(&[1, 1]), &[1, 1, 1]));
    }

    #[test]
    fn rational_segment_series() {
        // [0, 1/2] in Z: counts floor(m/2) + 1
        let p = Polytope::hull(&[vec![rat(0)], vec![frac(1, 2)]]).unwrap();
        let s = polytope_ehr_series(&p).unwrap();
        let c: Vec<Rat> = s.series(6);
        assert_eq!(c, rat_vec(&[1, 1, 2, 2, 3, 3]));
        assert!(matches!(simplex_ehr_series(&Polytope::hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap()), Err(Error::NotSimplex(_))));
    }

    use crate::exactlin::rat;

    #[test]
    fn matches_brute_force_on_hexagon() {
        let p = Polytope::hull(&pts(&[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1], &[1, -1]])).unwrap();
        let s = polytope_ehr_series(&p).unwrap().series(6);
        for m in 0..6 {
            assert_eq!(s[m], rat(p.count_lattice_points(m as u64) as i64));
        }
    }
}
