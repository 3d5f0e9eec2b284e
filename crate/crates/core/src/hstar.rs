//! Equivariant h*-series, their polynomiality and effectiveness.

use crate::ehrhart_engine::polytope_ehr_series;
use crate::error::{Error, Result};
use crate::exactlin::{rat, Int, Rat, RatMatrix};
use crate::instance::Instance;
use crate::poly::{Poly, RatFunc};
use crate::polytope::Polytope;
use crate::repr_ring::{decompose, ClassFunction};
use num_traits::{Signed, Zero};

pub const TRUNCATE_ENV: &str = "EQEHRHART_TRUNCATE";

/// Number of coefficients inspected for non-polynomial series: `2(d+1)`
/// unless overridden by the environment.
pub fn default_truncation(dim: usize) -> usize {
    std::env::var(TRUNCATE_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(2 * (dim + 1))
}

/// `Ehr(P^g; t)` for one representative per conjugacy class.
pub fn equivariant_ehr(inst: &Instance) -> Result<Vec<RatFunc>> {
    (0..inst.num_classes()).map(|c| polytope_ehr_series(&inst.fixed_polytope(c)?)).collect()
}

/// `L(P, rho; m)`: the number of lattice points of `mP` fixed by each class.
pub fn equivariant_l(inst: &Instance, m: u64) -> Result<ClassFunction> {
    let mut v = Vec::new();
    for c in 0..inst.num_classes() {
        v.push(rat(inst.fixed_polytope(c)?.count_lattice_points(m) as i64));
    }
    Ok(ClassFunction::from_rationals(&v))
}

/// `L(P deg, rho; m)` for the relative interior.
pub fn equivariant_l_interior(inst: &Instance, m: u64) -> Result<ClassFunction> {
    let mut v = Vec::new();
    for c in 0..inst.num_classes() {
        v.push(rat(inst.fixed_polytope(c)?.count_interior_points(m) as i64));
    }
    Ok(ClassFunction::from_rationals(&v))
}

/// `h*_N` per class, as a rational function in `s = t^(1/N)`. `N = 1` gives h*.
#[derive(Clone, Debug)]
pub struct HStarSeries {
    pub n: usize,
    pub dim: usize,
    pub per_class: Vec<RatFunc>,
}

/// `h*(P, rho; t) = det(I - M t) Ehr(P, rho; t)`.
pub fn hstar(inst: &Instance) -> Result<HStarSeries> {
    hstar_n(inst, 1)
}

/// `h*_N(P, rho; t) = det(I - M t) Ehr(P, rho; t^(1/N))`.
pub fn hstar_n(inst: &Instance, n: usize) -> Result<HStarSeries> {
    if n == 0 {
        return Err(Error::Input("N must be positive".into()));
    }
    let ehr = equivariant_ehr(inst)?;
    let per_class = ehr
        .iter()
        .enumerate()
        .map(|(c, e)| {
            let det = inst.group.element(inst.group.class_rep(c)).det_series().subs_power(n);
            e.mul_poly(&det).reduced()
        })
        .collect();
    Ok(HStarSeries { n, dim: inst.dim(), per_class })
}

impl HStarSeries {
    pub fn is_polynomial(&self) -> bool {
        self.per_class.iter().all(|f| f.is_polynomial())
    }

    pub fn polynomials(&self) -> Option<Vec<Poly>> {
        self.per_class.iter().map(|f| f.as_polynomial()).collect()
    }

    /// Coefficients as class functions; entry `j` sits at exponent `j/N`.
    /// Exact when polynomial, otherwise the first `terms` coefficients.
    pub fn coefficients(&self, terms: usize) -> Vec<ClassFunction> {
        let cols: Vec<Vec<Rat>> = match self.polynomials() {
            Some(ps) => {
                let len = ps.iter().map(|p| p.coeffs().len()).max().unwrap_or(0).max(1);
                ps.iter().map(|p| (0..len).map(|k| p.coeff(k)).collect()).collect()
            }
            None => self.per_class.iter().map(|f| f.series(terms)).collect(),
        };
        let len = cols.first().map_or(0, |c| c.len());
        (0..len).map(|k| ClassFunction::from_rationals(&cols.iter().map(|c| c[k].clone()).collect::<Vec<_>>())).collect()
    }

    /// Power series coefficients in `s` for every class.
    pub fn series(&self, terms: usize) -> Vec<Vec<Rat>> {
        self.per_class.iter().map(|f| f.series(terms)).collect()
    }
}

/// Result of deciding polynomiality and effectiveness.
#[derive(Clone, Debug)]
pub struct Classification {
    pub polynomial: bool,
    /// `None` when no character table is available.
    pub effective: Option<bool>,
    /// Number of coefficients inspected.
    pub checked_terms: usize,
    pub coefficients: Vec<ClassFunction>,
    pub multiplicities: Option<Vec<Vec<Int>>>,
    /// Effective but not polynomial, or polynomial but not effective.
    pub discrepancy: bool,
}

pub fn classify(inst: &Instance, h: &HStarSeries, truncation: Option<usize>) -> Result<Classification> {
    let polynomial = h.is_polynomial();
    let terms = truncation.unwrap_or_else(|| default_truncation(h.dim)) * h.n;
    let coefficients = h.coefficients(terms);
    let checked_terms = coefficients.len();
    let (effective, multiplicities) = match &inst.table {
        Some(t) => {
            let mut mults = Vec::new();
            for c in &coefficients {
                mults.push(decompose(&inst.group, t, c)?);
            }
            let eff = mults.iter().all(|m| m.iter().all(|x| !x.is_negative()));
            (Some(eff), Some(mults))
        }
        None => (None, None),
    };
    let discrepancy = effective.is_some_and(|e| e != polynomial);
    Ok(Classification { polynomial, effective, checked_terms, coefficients, multiplicities, discrepancy })
}

/// Checks Ehrhart reciprocity class by class: the series
/// `s^(N(d+1)) h*_N(1/s) / det(I - M s^N)` must count fixed interior points
/// of dilates, and for polynomial h* its degree and top coefficient are
/// determined by the codegree.
pub fn reciprocity_check(inst: &Instance, h: &HStarSeries, terms: usize) -> Result<()> {
    let d = inst.dim() as i64;
    let n = h.n;
    for (c, f) in h.per_class.iter().enumerate() {
        let g = inst.group.element(inst.group.class_rep(c));
        let det = g.det_series().subs_power(n);
        let rhs = f.reciprocal_times_power(n as i64 * (d + 1));
        let rhs = RatFunc::new(rhs.num, &rhs.den * &det);
        if rhs.den.coeff(0).is_zero() {
            return Err(Error::CheckFailed(format!("class {c}: reciprocal series has a pole at 0")));
        }
        let s = rhs.series(terms * n + 1);
        let fixed = inst.fixed_polytope(c)?;
        for m in 0..=terms {
            let want = if m == 0 { 0 } else { fixed.count_interior_points(m as u64) as i64 };
            if s[m * n] != rat(want) {
                return Err(Error::CheckFailed(format!(
                    "class {c}, m = {m}: reciprocity gives {} but {want} interior points are fixed",
                    s[m * n]
                )));
            }
            for j in 1..n {
                if m * n + j < s.len() && !s[m * n + j].is_zero() {
                    return Err(Error::CheckFailed(format!("class {c}: fractional exponent {}/{n}", m * n + j)));
                }
            }
        }
    }
    if n == 1 {
        if let Some(ps) = h.polynomials() {
            let codeg = inst.polytope.codegree()? as usize;
            let top = inst.dim() + 1 - codeg;
            let lead = equivariant_l_interior(inst, codeg as u64)?;
            for (c, p) in ps.iter().enumerate() {
                if p.degree().unwrap_or(0) > top {
                    return Err(Error::CheckFailed(format!("class {c}: degree exceeds d + 1 - codeg = {top}")));
                }
                let want = lead.values[c].to_rational().unwrap();
                if p.coeff(top) != want {
                    return Err(Error::CheckFailed(format!(
                        "class {c}: coefficient of t^{top} is {} but L(P°; {codeg}) = {want}",
                        p.coeff(top)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Keeps the terms with integral exponent: coefficient list in `t^(1/N)` to one in `t`.
pub fn psi_int(coeffs: &[Rat], n: usize) -> Vec<Rat> {
    coeffs.iter().step_by(n).cloned().collect()
}

/// Sends `t^(j/N)` to `t^ceil(j/N)`.
pub fn psi_ceil(coeffs: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); coeffs.len().div_ceil(n) + 1];
    for (j, c) in coeffs.iter().enumerate() {
        out[j.div_ceil(n)] += c;
    }
    while out.len() > 1 && out.last().is_some_and(|x| x.is_zero()) {
        out.pop();
    }
    out
}

/// Closed form for `G = Z/p` acting with a unique fixed point `c`:
/// `h* = ((h*(P) - S^e) / p) chi_reg + S^e` with `S = 1 + t + ... + t^(p-1)`
/// and `e = (d + 1 - deg c) / (p - 1)`. Returns one polynomial per class.
pub fn prime_fixed_closed_form(inst: &Instance) -> Result<Vec<Poly>> {
    let g = &inst.group;
    let p = g.order();
    let is_prime = p >= 2 && (2..p).all(|k| p % k != 0);
    if !is_prime || g.num_classes() != p {
        return Err(Error::HypothesisFailed(format!("group of order {p} is not cyclic of prime order")));
    }
    let gen = (0..p).find(|&x| x != 0).unwrap();
    let c = g
        .element(gen)
        .fixed_point()
        .ok_or_else(|| Error::HypothesisFailed("the generator has no unique fixed point".into()))?;
    let deg_c = if c.iter().all(|x| x.is_integer()) { 1 } else { p };
    let d = inst.dim();
    if (d + 1 < deg_c) || (d + 1 - deg_c) % (p - 1) != 0 {
        return Err(Error::HypothesisFailed("p - 1 does not divide d + 1 - deg c".into()));
    }
    let e = (d + 1 - deg_c) / (p - 1);
    let s = Poly::geometric(p).pow(e);
    let ehr = polytope_ehr_series(&inst.polytope)?;
    let det = g.element(0).det_series();
    let classical = ehr
        .mul_poly(&det)
        .as_polynomial()
        .ok_or_else(|| Error::CheckFailed("classical h* is not a polynomial".into()))?;
    let id_class = g.class_of(0);
    Ok((0..p)
        .map(|cl| if cl == id_class { classical.clone() } else { s.clone() })
        .collect())
}

/// `(1 - t)(1 + sum_i l_i t^l_i / (1 - t^l_i))` for a permutation of the
/// simplex vertices with cycle lengths `l_i`, the value of h* of the
/// prism over the standard simplex at that permutation.
pub fn prism_closed_form(cycle_lengths: &[usize]) -> RatFunc {
    let one = RatFunc::new(Poly::constant(rat(1)), Poly::constant(rat(1)));
    let mut sum = one.clone();
    for &l in cycle_lengths {
        let num = Poly::monomial(rat(l as i64), l);
        let den = &Poly::constant(rat(1)) - &Poly::monomial(rat(1), l);
        sum = &sum + &RatFunc::new(num, den);
    }
    (&RatFunc::new(Poly::from_ints(&[1, -1]), Poly::constant(rat(1))) * &sum).reduced()
}

/// Characteristic polynomial of a rational matrix.
fn rat_char_poly(m: &RatMatrix) -> Poly {
    let n = m.rows;
    let mut c = vec![Rat::zero(); n + 1];
    c[n] = rat(1);
    let mut mk = RatMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            let v = next.get(i, i) + &c[n - k + 1];
            next.set(i, i, v);
        }
        let am = m.mul(&next);
        let tr = (0..n).fold(Rat::zero(), |acc, i| acc + am.get(i, i));
        c[n - k] = -tr / rat(k as i64);
        mk = next;
    }
    Poly::new(c)
}

/// `h*(Q, rho_Q)` for an invariant subpolytope `Q` of the instance, as a
/// function on the classes of the full group.
pub fn subpolytope_hstar(inst: &Instance, q: &Polytope) -> Result<Vec<RatFunc>> {
    let lifted: Vec<Vec<Rat>> = q
        .vertices()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(rat(1));
            w
        })
        .collect();
    let n = lifted[0].len();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for w in &lifted {
        let mut trial = basis.clone();
        trial.push(w.clone());
        if RatMatrix::from_rows(&trial, n).rank() == trial.len() {
            basis = trial;
        }
    }
    let k = basis.len();
    let bt = RatMatrix::from_rows(&basis, n).transpose();
    let mut out = Vec::new();
    for c in 0..inst.num_classes() {
        let gi = inst.group.class_rep(c);
        let g = inst.group.element(gi);
        q.vertex_permutation(g)?;
        let mut a = RatMatrix::zeros(k, k);
        for (j, b) in basis.iter().enumerate() {
            let img = g.apply_extended(b);
            let coords = crate::exactlin::solve_rational(&bt, &img)
                .ok_or_else(|| Error::NotInvariant("subpolytope cone is not invariant".into()))?
                .particular;
            for i in 0..k {
                a.set(i, j, coords[i].clone());
            }
        }
        let det = rat_char_poly(&a).reversed();
        let fixed = q.fixed_polytope(&inst.group, gi)?;
        out.push(polytope_ehr_series(&fixed)?.mul_poly(&det).reduced());
    }
    Ok(out)
}

/// `h*(P) - h*(Q)` coefficientwise, decomposed into irreducibles; true when
/// every multiplicity is nonnegative.
pub fn monotonicity_check(inst: &Instance, q: &Polytope) -> Result<bool> {
    let table = inst.table.as_ref().ok_or_else(|| Error::TableInvalid("no character table".into()))?;
    let hp = hstar(inst)?
        .polynomials()
        .ok_or_else(|| Error::HypothesisFailed("h*(P) is not a polynomial".into()))?;
    let hq: Vec<Poly> = subpolytope_hstar(inst, q)?
        .iter()
        .map(|f| f.as_polynomial())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::HypothesisFailed("h*(Q) is not a polynomial".into()))?;
    let len = hp.iter().chain(&hq).map(|p| p.coeffs().len()).max().unwrap_or(0);
    for k in 0..len {
        let diff: Vec<Rat> = hp.iter().zip(&hq).map(|(a, b)| a.coeff(k) - b.coeff(k)).collect();
        let m = decompose(&inst.group, table, &ClassFunction::from_rationals(&diff))?;
        if m.iter().any(|x| x.is_negative()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{RawInstance, RawMap};

    fn square_swap() -> Instance {
        let raw = RawInstance::new("sq", vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]], vec![RawMap::permutation(&[1, 0])]);
        Instance::from_raw(raw).unwrap()
    }

    fn hexagon_rotation() -> Instance {
        let raw = RawInstance::new(
            "hex",
            vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![-1, 0], vec![0, -1], vec![1, -1]],
            vec![RawMap::from_rows(&[vec![-1, -1], vec![1, 0]], &[0, 0])],
        );
        Instance::from_raw(raw).unwrap()
    }

    #[test]
    fn square_swap_is_trivial_times_one_plus_t() {
        let inst = square_swap();
        let h = hstar(&inst).unwrap();
        for p in h.polynomials().unwrap() {
            assert_eq!(p, Poly::from_ints(&[1, 1]));
        }
        let cl = classify(&inst, &h, None).unwrap();
        assert!(cl.polynomial);
        assert_eq!(cl.effective, Some(true));
        assert!(!cl.discrepancy);
        reciprocity_check(&inst, &h, 6).unwrap();
    }

    #[test]
    fn ehr_series_counts_fixed_points() {
        let inst = hexagon_rotation();
        let ehr = equivariant_ehr(&inst).unwrap();
        for m in 0..=6u64 {
            let l = equivariant_l(&inst, m).unwrap();
            for (c, e) in ehr.iter().enumerate() {
                assert_eq!(e.series(7)[m as usize], l.values[c].to_rational().unwrap());
            }
        }
    }

    #[test]
    fn prime_closed_form_matches() {
        let inst = hexagon_rotation();
        let direct = hstar(&inst).unwrap().polynomials().unwrap();
        assert_eq!(prime_fixed_closed_form(&inst).unwrap(), direct);
        // Z/2 swapping coordinates fixes a whole line
        assert!(matches!(prime_fixed_closed_form(&square_swap()), Err(Error::HypothesisFailed(_))));
    }

    #[test]
    fn psi_operators() {
        let c: Vec<Rat> = [1, 2, 3, 4, 5].iter().map(|&x| rat(x)).collect();
        assert_eq!(psi_int(&c, 2), vec![rat(1), rat(3), rat(5)]);
        assert_eq!(psi_ceil(&c, 2), vec![rat(1), rat(5), rat(9)]);
    }

    #[test]
    fn h_star_n_projects_to_dilate() {
        let inst = square_swap();
        let hn = hstar_n(&inst, 2).unwrap();
        let dil = hstar(&inst.dilate(2).unwrap()).unwrap();
        let a = hn.series(20);
        let b = dil.series(10);
        for c in 0..inst.num_classes() {
            assert_eq!(psi_int(&a[c], 2), b[c]);
        }
    }
}
