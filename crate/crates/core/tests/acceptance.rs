//! Acceptance criteria, one PASS/FAIL line each.

use eqehrhart::cli::{fmt_series, verify_instance, Status};
use eqehrhart::corpus;
use eqehrhart::exactlin::{rat, Int, Rat};
use eqehrhart::group_action::cycle_type;
use eqehrhart::hstar::{
    classify, equivariant_ehr, hstar, hstar_n, monotonicity_check, prism_closed_form, subpolytope_hstar, HStarSeries,
};
use eqehrhart::instance::Instance;
use eqehrhart::poly::Poly;
use eqehrhart::polytope::Polytope;
use eqehrhart::repr_ring::ClassFunction;
use eqehrhart::sr_formula::{hstar_via_fixed_box_points, hstar_via_triangulation};
use eqehrhart::triangulate::{
    barycentric_sequence, check_triangulation, dim2_classify, forced_invariant_triangulation, invariant_triangulation,
    lattice_orbit_triangulation, orbit_pull_triangulate, square_obstruction, ForbiddenKind, PolyComplex,
};
use eqehrhart::Error;
use num_traits::{One, Zero};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: eqehrhart::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn load(raw: eqehrhart::instance::RawInstance) -> Result<Instance, String> {
    ok(Instance::from_raw(raw))
}

fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

/// `want(c)` is the expected polynomial at class `c`.
fn hstar_is(inst: &Instance, h: &HStarSeries, want: impl Fn(usize) -> Poly) -> Result<(), String> {
    let polys = h.polynomials().ok_or_else(|| format!("{}: h* is not a polynomial", inst.name))?;
    for (c, got) in polys.iter().enumerate() {
        ensure!(*got == want(c), "{} class {c}: h* = {got}, expected {}", inst.name, want(c));
    }
    Ok(())
}

fn identity_class(inst: &Instance) -> usize {
    inst.group.class_of(0)
}

fn det3(m: &[Vec<Rat>]) -> Rat {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn c1_square() -> Outcome {
    let inst = load(corpus::square_swap())?;
    let h = ok(hstar(&inst))?;
    hstar_is(&inst, &h, |_| p(&[1, 1]))?;
    let table = inst.table.as_ref().ok_or("no character table")?;
    let sign = table.chars.iter().find(|ch| **ch != ClassFunction::trivial(&inst.group)).ok_or("no sign character")?;
    for c in 0..inst.num_classes() {
        let chi = sign.values[c].to_integer().ok_or("sign character is not integral")?;
        let chi = chi.to_string().parse::<i64>().unwrap();
        let want = p(&[1, -(2 + chi), 1 + 2 * chi, -chi]);
        let e = inst.group.element(inst.group.class_rep(c));
        ensure!(e.det_series() == want, "class {c}: det(I - M~t) = {}, expected {want}", e.det_series());
        // independent evaluation of the 3x3 determinant at t = 0..4
        let rows = e.to_rows();
        for t in 0..5i64 {
            let m: Vec<Vec<Rat>> = (0..3)
                .map(|i| (0..3).map(|j| rat((i == j) as i64) - rat(t) * Rat::from_integer(rows[i][j].clone())).collect())
                .collect();
            ensure!(det3(&m) == want.eval(&rat(t)), "class {c}: determinant at t = {t} disagrees");
        }
    }
    Ok("h* = 1 + t, det(I - M~t) = 1 - (2+chi)t + (1+2chi)t^2 - chi t^3".into())
}

fn c2_cube() -> Outcome {
    let inst = load(corpus::klein_cube())?;
    let (pt, g) = (&inst.polytope, &inst.group);
    let id = identity_class(&inst);
    let h = ok(hstar(&inst))?;
    hstar_is(&inst, &h, |c| if c == id { p(&[1, 4, 1]) } else { p(&[1, 0, 1]) })?;
    let c = ok(classify(&inst, &h, None))?;
    ensure!(c.polynomial && c.effective == Some(true), "not polynomial and effective");
    ensure!(c.coefficients[1] == ClassFunction::regular(g), "linear coefficient is not chi_reg");
    let shown = fmt_series(&inst, &c.coefficients, 1);
    ensure!(shown == "1 + chi_reg*t + t^2", "rendered as {shown}");

    let trivial = PolyComplex::trivial(pt);
    let w = square_obstruction(&trivial, g).ok_or("no square obstruction on the trivial subdivision")?;
    let face = ok(corpus::intrinsic(&inst, &[vec![1, 1, 1], vec![1, 1, -1], vec![1, -1, 1], vec![1, -1, -1]]))?;
    let mut got: Vec<Vec<Rat>> = w.face.iter().map(|&i| trivial.point(i).to_vec()).collect();
    got.sort();
    // witnesses are found up to symmetry: accept the orbit of the face x = 1
    let on_orbit = g.elements().iter().any(|e| {
        let mut img: Vec<Vec<Rat>> = face.iter().map(|v| e.apply(v)).collect();
        img.sort();
        img == got
    });
    ensure!(on_orbit, "witness on {got:?}, not in the orbit of the face x = 1");

    let t = ok(invariant_triangulation(pt, g, 4))?;
    ok(check_triangulation(&t, pt, g, 4))?;
    match forced_invariant_triangulation(pt, g, 1) {
        Err(Error::HypothesisViolated { .. }) => {}
        other => return Err(format!("forced N = 1 gave {:?}", other.map(|t| t.cells().len()))),
    }
    Ok(format!("h* = {shown}, witness on a side face in the orbit of x = 1, N = 4 gives {} cells, N = 1 refused", t.cells().len()))
}

fn c3_p5() -> Outcome {
    let inst = load(corpus::p5_reflexive())?;
    let id = identity_class(&inst);
    let h = ok(hstar(&inst))?;
    // 1 + t + ... + t^4 + t(1 + 2t + t^2) chi_reg
    hstar_is(&inst, &h, |c| if c == id { p(&[1, 6, 11, 6, 1]) } else { p(&[1, 1, 1, 1, 1]) })?;
    let t = ok(corpus::p5_fixture(&inst))?;
    ok(check_triangulation(&t, &inst.polytope, &inst.group, 1))?;
    let induced = ok(hstar_via_triangulation(&inst, &t))?;
    let traced = ok(hstar_via_fixed_box_points(&inst, &t))?;
    ensure!(induced.per_class == h.per_class, "induced box-orbit formula differs from h*");
    ensure!(traced.per_class == h.per_class, "fixed box point formula differs from h*");
    Ok(format!("h* exact, fixture with {} cells passes checks and both SR routes", t.cells().len()))
}

fn c4_z3_prism() -> Outcome {
    let inst = load(corpus::z3_prism())?;
    let (pt, g) = (&inst.polytope, &inst.group);
    let id = identity_class(&inst);
    let h = ok(hstar(&inst))?;
    // 1 + (1 + chi_reg)(t + t^2)
    hstar_is(&inst, &h, |c| if c == id { p(&[1, 4, 4]) } else { p(&[1, 1, 1]) })?;
    let top = ok(corpus::intrinsic(&inst, &[vec![0, 0, 0, 1]]))?;
    let pulled = ok(PolyComplex::trivial(pt).pull(&top))?;
    ensure!(pulled.cells().len() == 4, "pulling at e4 gave {} cells", pulled.cells().len());
    ensure!(square_obstruction(&pulled, g).is_some(), "no square obstruction after pulling at e4");
    let t = ok(invariant_triangulation(pt, g, 3))?;
    ok(check_triangulation(&t, pt, g, 3))?;
    Ok(format!("h* exact, square witness found, N = 3 gives {} cells", t.cells().len()))
}

fn c5_circuits() -> Outcome {
    let odd = load(corpus::circuit(&[1, 1, 1]))?;
    let h = ok(hstar(&odd))?;
    let id = identity_class(&odd);
    hstar_is(&odd, &h, |c| if c == id { p(&[1, 1, 1]) } else { p(&[1, -1, 1]) })?;
    let c = ok(classify(&odd, &h, None))?;
    let m = c.multiplicities.ok_or("no multiplicities")?;
    ensure!(m[1][0].is_zero(), "trivial character appears in the linear coefficient");
    ensure!(odd.polytope.normalized_volume() == Int::from(3), "volume of the (1,1,1) circuit is not 3");

    let even = load(corpus::circuit(&[1, 1, 2]))?;
    let he = ok(hstar(&even))?;
    ensure!(!he.is_polynomial(), "(1,1,2) circuit has polynomial h*");
    ensure!(even.polytope.normalized_volume() == Int::from(4), "volume of the (1,1,2) circuit is not 4");
    Ok("(1,1,1): h* = 1 + chi t + t^2, no trivial summand in degree 1; (1,1,2): volume 4 is even and h* is not polynomial".into())
}

fn c6_sym_prisms() -> Outcome {
    let mut classes = 0;
    for d in [3, 4] {
        let inst = load(corpus::sym_prism(d))?;
        let g = &inst.group;
        let h = ok(hstar(&inst))?;
        let hs: Vec<HStarSeries> = (1..=6).map(|n| ok(hstar_n(&inst, n))).collect::<Result<_, _>>()?;
        for c in 0..inst.num_classes() {
            let perm = ok(inst.polytope.vertex_permutation(g.element(g.class_rep(c))))?;
            let lengths: Vec<usize> = cycle_type(&perm).chunks(2).map(|p| p[0]).collect();
            ensure!(prism_closed_form(&lengths) == h.per_class[c].reduced(), "d = {d}, cycle type {lengths:?}: closed form differs");
            for n in 1..=6 {
                let want = lengths.iter().all(|l| n % l == 0);
                let got = hs[n - 1].per_class[c].is_polynomial();
                ensure!(want == got, "d = {d}, cycle type {lengths:?}, N = {n}: polynomial {got}");
            }
            classes += 1;
        }
    }
    Ok(format!("closed form and divisibility rule hold on {classes} cycle types"))
}

fn c7_permutahedron() -> Outcome {
    for d in 1..=3 {
        let inst = load(corpus::permutahedron(d))?;
        let poly = ok(hstar(&inst))?.is_polynomial();
        ensure!(poly == (d <= 2), "d = {d}: polynomial {poly}");
    }
    let inst = load(corpus::permutahedron(3))?;
    let (pt, g) = (&inst.polytope, &inst.group);
    let t = ok(orbit_pull_triangulate(&PolyComplex::trivial(pt), g, &barycentric_sequence(pt, g)))?;
    ok(check_triangulation(&t, pt, g, 2))?;
    ensure!(t.denominator() == 2, "vertices in (1/{})M", t.denominator());
    let c = ok(classify(&inst, &ok(hstar_n(&inst, 2))?, None))?;
    ensure!(c.polynomial && c.effective == Some(true), "h*_2: polynomial {}, effective {:?}", c.polynomial, c.effective);
    Ok(format!("polynomial iff d <= 2; d = 3 has a {}-cell invariant triangulation in (1/2)M, h*_2 effective", t.cells().len()))
}

/// Points `x` of the box around `mP` with `x/m` in `P` and fixed by `g`.
fn brute_fixed(pt: &Polytope, e: &eqehrhart::group_action::AffineMap, m: i64) -> usize {
    let d = pt.ambient_dim();
    let lo: Vec<i64> = (0..d).map(|i| pt.vertices().iter().map(|v| (&v[i] * rat(m)).floor().to_integer()).min().unwrap().to_string().parse().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|i| pt.vertices().iter().map(|v| (&v[i] * rat(m)).ceil().to_integer()).max().unwrap().to_string().parse().unwrap()).collect();
    let mut count = 0;
    let mut x = lo.clone();
    loop {
        let y: Vec<Rat> = x.iter().map(|&v| Rat::new(v.into(), m.into())).collect();
        if pt.contains(&y) && e.apply(&y) == y {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == d {
                return count;
            }
            x[i] += 1;
            if x[i] <= hi[i] {
                break;
            }
            x[i] = lo[i];
            i += 1;
        }
    }
}

fn c8_oracle() -> Outcome {
    let mut compared = 0;
    for raw in corpus::full_corpus() {
        let inst = load(raw)?;
        let ehr = ok(equivariant_ehr(&inst))?;
        for c in 0..inst.num_classes() {
            let e = inst.group.element(inst.group.class_rep(c));
            let series = ehr[c].series(7);
            ensure!(series[0] == Rat::one(), "{} class {c}: constant term {}", inst.name, series[0]);
            for m in 1..=6 {
                let want = brute_fixed(&inst.polytope, e, m);
                ensure!(series[m as usize] == rat(want as i64), "{} class {c}, m = {m}: series {} vs {want} fixed points", inst.name, series[m as usize]);
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} coefficients equal brute-force fixed-point counts"))
}

const IDENTITIES: [&str; 8] = ["pyramid", "free-join", "psi-int-2", "psi-ceil-2", "psi-int-3", "psi-ceil-3", "reciprocity", "prime-closed-form"];

fn c9_identities() -> Outcome {
    let randoms = corpus::random_corpus();
    ensure!(randoms.len() == 20, "{} random instances", randoms.len());
    let mut prime_passes = 0;
    let mut passes = 0;
    let mut instances = 0;
    for raw in corpus::full_corpus() {
        let inst = load(raw)?;
        if inst.name.starts_with("random-") {
            ensure!(inst.dim() <= 3 && inst.group.order() <= 8, "{} is not small", inst.name);
        }
        instances += 1;
        for check in verify_instance(&inst).into_iter().filter(|c| IDENTITIES.contains(&c.name)) {
            match (&check.status, check.name) {
                (Status::Pass, "prime-closed-form") => prime_passes += 1,
                (Status::Pass, _) => passes += 1,
                (Status::Skip(_), "prime-closed-form") => {}
                (Status::Skip(why), name) => return Err(format!("{} {name} skipped: {why}", inst.name)),
                (Status::Fail(why), name) => return Err(format!("{} {name}: {why}", inst.name)),
            }
        }
    }
    ensure!(passes == instances * (IDENTITIES.len() - 1), "{passes} identity checks passed on {instances} instances");
    ensure!(prime_passes > 0, "the prime closed form never applied");
    Ok(format!("{instances} instances, {passes} identities exact, prime closed form on {prime_passes}"))
}

fn c10_dim2() -> Outcome {
    let cat = corpus::dim2_catalog();
    ensure!(cat.len() >= 10, "catalog has {} actions", cat.len());
    let (mut quarter, mut offset) = (false, false);
    for raw in cat.iter().cloned() {
        let inst = load(raw)?;
        let c = ok(dim2_classify(&inst.group))?;
        let poly = ok(hstar(&inst))?.is_polynomial();
        ensure!(c.triangulable == poly, "{}: classify {} but polynomial {poly}", inst.name, c.triangulable);
        let found = lattice_orbit_triangulation(&inst.polytope, &inst.group, 1).is_some();
        ensure!(found == c.triangulable, "{}: classify {} but search {found}", inst.name, c.triangulable);
        match c.offending {
            Some((_, ForbiddenKind::QuarterTurn)) => quarter = true,
            Some((_, ForbiddenKind::OffsetReflection)) => offset = true,
            None => {}
        }
    }
    ensure!(quarter && offset, "catalog misses a forbidden type");
    Ok(format!("{} actions, both forbidden types, classification matches polynomiality", cat.len()))
}

fn c11_monotonicity() -> Outcome {
    let inst = load(corpus::octahedron())?;
    let q = ok(Polytope::hull(&ok(corpus::intrinsic(&inst, &corpus::octahedron_diagonal()))?))?;
    ok(q.check_invariant(&inst.group))?;
    ensure!(ok(monotonicity_check(&inst, &q))?, "monotonicity check failed");
    let hq = HStarSeries { n: 1, dim: inst.dim(), per_class: ok(subpolytope_hstar(&inst, &q))? };
    let mp = ok(classify(&inst, &ok(hstar(&inst))?, None))?.multiplicities.ok_or("no multiplicities")?;
    let mq = ok(classify(&inst, &hq, None))?.multiplicities.ok_or("no multiplicities")?;
    for (i, row) in mq.iter().enumerate() {
        for (k, a) in row.iter().enumerate() {
            let b = mp.get(i).map_or(Int::zero(), |r| r[k].clone());
            ensure!(*a <= b, "degree {i}, irreducible {k}: {a} > {b}");
        }
    }
    Ok("h*(Q) <= h*(P) in every irreducible multiplicity".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<u64>); 11] = [
        ("square with swap", c1_square, Some(1)),
        ("Klein four cube", c2_cube, Some(5)),
        ("p = 5 reflexive polytope", c3_p5, Some(10)),
        ("Z/3 prism", c4_z3_prism, Some(5)),
        ("circuits", c5_circuits, Some(5)),
        ("symmetric prisms", c6_sym_prisms, Some(30)),
        ("permutahedra", c7_permutahedron, Some(60)),
        ("oracle agreement", c8_oracle, None),
        ("structural identities", c9_identities, None),
        ("dimension 2 classification", c10_dim2, Some(10)),
        ("monotonicity", c11_monotonicity, None),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let res = match (res, budget) {
            (Ok(_), Some(b)) if took > Duration::from_secs(*b) => Err(format!("took {took:.1?}, budget {b} s")),
            (r, _) => r,
        };
        match res {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({took:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({took:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
