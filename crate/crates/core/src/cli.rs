//! Command-line front end and the per-instance verification ledger.

use crate::corpus;
use crate::error::{Error, Result};
use crate::exactlin::{rat, Int, Rat};
use crate::group_action::char_poly;
use crate::hstar::{
    classify, default_truncation, equivariant_ehr, equivariant_l, hstar, hstar_n, monotonicity_check,
    prime_fixed_closed_form, psi_ceil, psi_int, reciprocity_check, HStarSeries,
};
use crate::instance::{qvec, Instance, RawInstance, RawMap, Q};
use crate::poly::{Poly, RatFunc};
use crate::polytope::Polytope;
use crate::repr_ring::{decompose, ClassFunction};
use crate::sr_formula::{hstar_via_fixed_box_points, hstar_via_triangulation};
use crate::triangulate::{
    check_triangulation, face_complex, faces_avoiding, forced_invariant_triangulation, glue,
    invariant_triangulation, is_translative, lattice_orbit_triangulation, square_obstruction, translative_refine,
    PolyComplex,
};
use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::ffi::OsString;
use std::path::Path;

#[derive(Parser, Debug)]
#[command(name = "eqehrhart", version, about = "Equivariant Ehrhart theory with exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Fixed lattice point counts of dilates, decomposed into irreducibles.
    Ehrhart {
        /// Instance file (JSON) or the name of a built-in instance.
        instance: String,
        #[arg(long, default_value_t = 4)]
        dilates: u64,
    },
    /// The equivariant h*-series (or h*_N with --N).
    Hstar {
        instance: String,
        #[arg(short = 'N', long = "N", default_value_t = 1)]
        n: usize,
        /// Coefficients inspected when the series is not a polynomial.
        #[arg(long)]
        truncate: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// An invariant triangulation with a certificate.
    Triangulate {
        instance: String,
        /// Denominator of the vertices (defaults to the group order).
        #[arg(short = 'N', long = "N")]
        n: Option<u64>,
        #[arg(long, value_enum, default_value_t = Mode::OrbitPull)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the triangulation here instead of standard output.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Runs every implemented identity on an instance or a corpus.
    Verify {
        instance: Option<String>,
        /// paper, dim2, random, full, or a directory of instance files.
        #[arg(long)]
        corpus: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    OrbitPull,
    Lattice,
    Translative,
    Glue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Off,
}

/// Parses arguments, runs the command and returns the exit code:
/// 0 success, 1 verification failure or refusal, 2 invalid input.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let res = match cli.cmd {
        Cmd::Ehrhart { instance, dilates } => cmd_ehrhart(&instance, dilates),
        Cmd::Hstar { instance, n, truncate, json } => cmd_hstar(&instance, n, truncate, json),
        Cmd::Triangulate { instance, n, mode, format, out } => cmd_triangulate(&instance, n, mode, format, out.as_deref()),
        Cmd::Verify { instance, corpus } => cmd_verify(instance.as_deref(), corpus.as_deref()),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Reads an instance file, or looks up a built-in instance by name.
pub fn load_instance(arg: &str) -> Result<Instance> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{arg}: {e}")))?;
        return Instance::from_json(&text);
    }
    Instance::from_raw(corpus::by_name(arg)?)
}

fn class_label(inst: &Instance, c: usize) -> String {
    let g = &inst.group;
    let rep = g.class_rep(c);
    let cycles = match inst.polytope.vertex_permutation(g.element(rep)) {
        Ok(perm) => cycle_notation(&perm),
        Err(_) => "?".into(),
    };
    format!("class {c} {cycles} (order {}, size {})", g.element_order(rep), g.class_sizes()[c])
}

/// Nontrivial cycles of a vertex permutation, vertices numbered from 1.
fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for i in 0..perm.len() {
        if seen[i] || perm[i] == i {
            continue;
        }
        let mut cyc = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            cyc.push((j + 1).to_string());
            j = perm[j];
        }
        out += &format!("({})", cyc.join(" "));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn fmt_int_coef(k: &Int, name: &str) -> String {
    if k.is_one() {
        name.to_string()
    } else {
        format!("{k}*{name}")
    }
}

/// A virtual character written in irreducibles, with `chi_reg` for multiples
/// of the regular character.
pub fn fmt_character(inst: &Instance, chi: &ClassFunction) -> String {
    let Some(table) = &inst.table else {
        return format!("[{}]", chi.values.iter().join(", "));
    };
    let Ok(m) = decompose(&inst.group, table, chi) else {
        return format!("[{}]", chi.values.iter().join(", "));
    };
    let dims = table.dims(&inst.group);
    if m.iter().all(|x| x.is_zero()) {
        return "0".into();
    }
    if dims.len() > 1 && m[0].is_positive() && m.iter().zip(&dims).all(|(a, d)| a == &(&m[0] * d)) {
        return fmt_int_coef(&m[0], "chi_reg");
    }
    let mut parts: Vec<String> = Vec::new();
    let triv = ClassFunction::trivial(&inst.group);
    for ((k, name), ch) in m.iter().zip(&table.names).zip(&table.chars) {
        if k.is_zero() {
            continue;
        }
        let trivial = *ch == triv;
        let body = if trivial { k.abs().to_string() } else { fmt_int_coef(&k.abs(), name) };
        let sign = if k.is_negative() { "-" } else { "+" };
        if parts.is_empty() {
            parts.push(if k.is_negative() { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{sign} {body}"));
        }
    }
    parts.join(" ")
}

fn fmt_power(j: usize, n: usize) -> String {
    if n == 1 {
        match j {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{j}"),
        }
    } else if j % n == 0 {
        match j / n {
            0 => String::new(),
            1 => "t".into(),
            k => format!("t^{k}"),
        }
    } else {
        let g = num_integer::gcd(j, n);
        format!("t^({}/{})", j / g, n / g)
    }
}

/// `1 + chi_reg*t + t^2` style rendering of coefficient characters.
pub fn fmt_series(inst: &Instance, coeffs: &[ClassFunction], n: usize) -> String {
    let mut terms = Vec::new();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = fmt_character(inst, c);
        let p = fmt_power(j, n);
        let term = if p.is_empty() {
            s
        } else if s == "1" {
            p
        } else if s.contains(' ') {
            format!("({s})*{p}")
        } else {
            format!("{s}*{p}")
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// JSON form of an h*-series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub instance: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub dimension: usize,
    pub classes: Vec<ClassSeriesJson>,
    pub polynomial: bool,
    /// Coefficient characters, all of them when polynomial, else up to the truncation.
    pub coefficients: Vec<ClassFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effective: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characters: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassSeriesJson {
    pub representative: usize,
    pub order: usize,
    pub size: usize,
    pub numerator: Vec<Q>,
    pub denominator: Vec<Q>,
}

impl SeriesJson {
    pub fn new(inst: &Instance, h: &HStarSeries, truncation: Option<usize>) -> Result<Self> {
        let c = classify(inst, h, truncation)?;
        let g = &inst.group;
        let classes = h
            .per_class
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let f = f.reduced();
                ClassSeriesJson {
                    representative: g.class_rep(k),
                    order: g.element_order(g.class_rep(k)),
                    size: g.class_sizes()[k],
                    numerator: qvec(f.num.coeffs()),
                    denominator: qvec(f.den.coeffs()),
                }
            })
            .collect();
        Ok(SeriesJson {
            instance: inst.name.clone(),
            n: h.n,
            dimension: h.dim,
            classes,
            polynomial: c.polynomial,
            coefficients: c.coefficients.clone(),
            effective: c.effective,
            characters: inst.table.as_ref().map(|t| t.names.clone()),
            multiplicities: c
                .multiplicities
                .map(|m| m.iter().map(|row| row.iter().map(|x| Q(Rat::from_integer(x.clone()))).collect()).collect()),
        })
    }

    pub fn to_series(&self) -> HStarSeries {
        let unq = |v: &[Q]| Poly::new(v.iter().map(|q| q.0.clone()).collect());
        HStarSeries {
            n: self.n,
            dim: self.dimension,
            per_class: self.classes.iter().map(|c| RatFunc::new(unq(&c.numerator), unq(&c.denominator))).collect(),
        }
    }
}

fn cmd_ehrhart(arg: &str, dilates: u64) -> Result<i32> {
    let inst = load_instance(arg)?;
    println!("{}: dimension {}, group of order {}", inst.name, inst.dim(), inst.group.order());
    for m in 0..=dilates {
        let l = equivariant_l(&inst, m)?;
        println!("L({m}) = {}    values [{}]", fmt_character(&inst, &l), l.values.iter().join(", "));
    }
    Ok(0)
}

fn cmd_hstar(arg: &str, n: usize, truncate: Option<usize>, json: bool) -> Result<i32> {
    let inst = load_instance(arg)?;
    let h = hstar_n(&inst, n)?;
    if json {
        let j = SeriesJson::new(&inst, &h, truncate)?;
        println!("{}", serde_json::to_string_pretty(&j).expect("serializable"));
        return Ok(0);
    }
    let c = classify(&inst, &h, truncate)?;
    let name = if n == 1 { "h*".to_string() } else { format!("h*_{n}") };
    println!("{}: dimension {}, group of order {}", inst.name, inst.dim(), inst.group.order());
    for (k, f) in h.per_class.iter().enumerate() {
        println!("  {}: {}", class_label(&inst, k), f.reduced());
    }
    let mut flags = Vec::new();
    if c.polynomial {
        flags.push("polynomial".to_string());
        println!("{name} = {}", fmt_series(&inst, &c.coefficients, n));
    } else {
        let bad: Vec<String> =
            h.per_class.iter().enumerate().filter(|(_, f)| !f.is_polynomial()).map(|(k, _)| class_label(&inst, k)).collect();
        flags.push(format!("not polynomial at {}", bad.join(", ")));
        println!("{name} = {} + ... (first {} terms)", fmt_series(&inst, &c.coefficients, n), c.checked_terms);
    }
    match c.effective {
        Some(true) if c.polynomial => flags.push("effective".into()),
        Some(true) => flags.push(format!("effective up to {} terms", c.checked_terms)),
        Some(false) => flags.push("not effective".into()),
        None => flags.push("effectiveness unknown (no character table)".into()),
    }
    println!("{}", flags.join("; "));
    Ok(0)
}

fn barycenter_or_orbit(inst: &Instance) -> Polytope {
    let c = inst.polytope.barycenter();
    if c.iter().all(|x| x.is_integer()) {
        return Polytope::hull(&[c]).expect("a point");
    }
    let v = inst.polytope.vertices()[0].clone();
    Polytope::hull(&inst.group.orbit(&v)).expect("orbit hull")
}

fn cmd_triangulate(arg: &str, n: Option<u64>, mode: Mode, format: Format, out: Option<&Path>) -> Result<i32> {
    let inst = load_instance(arg)?;
    let (p, g) = (&inst.polytope, &inst.group);
    let n = n.unwrap_or(g.order() as u64);
    let built = match mode {
        Mode::OrbitPull if n % g.order() as u64 == 0 => invariant_triangulation(p, g, n),
        Mode::OrbitPull => forced_invariant_triangulation(p, g, n),
        Mode::Lattice => lattice_orbit_triangulation(p, g, n)
            .ok_or_else(|| Error::CheckFailed(format!("no invariant triangulation found by orbit pulls at N = {n}"))),
        Mode::Translative => {
            let c = p.barycenter();
            PolyComplex::trivial(p).pull(&[c]).and_then(|s| translative_refine(&s, g))
        }
        Mode::Glue => {
            let q = barycenter_or_orbit(&inst);
            let k = face_complex(p, &faces_avoiding(p, &q));
            let k = match is_translative(&k, g)? {
                None => translative_refine(&k, g)?,
                Some(_) => k,
            };
            glue(p, &q, &PolyComplex::trivial(&q), &k, g)
        }
    };
    let t = match built {
        Ok(t) => t,
        Err(e) => {
            eprintln!("refused: {e}");
            if let Some(w) = square_obstruction(&PolyComplex::trivial(p), g) {
                let t = PolyComplex::trivial(p);
                let pts = |e: [usize; 2]| format!("[{}, {}]", crate::triangulate::fmt_point(t.point(e[0])), crate::triangulate::fmt_point(t.point(e[1])));
                eprintln!(
                    "square obstruction: face {:?} with orbit-related edges {} and {}",
                    w.face,
                    pts(w.edges[0]),
                    pts(w.edges[1])
                );
            }
            return Ok(1);
        }
    };
    let denom = t.denominator();
    let check = check_triangulation(&t, p, g, denom.max(1));
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&t.to_json(Some(g))).expect("serializable"),
        Format::Off => t.to_off(),
    };
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| Error::Input(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    let orbits = t.cell_orbits(g).iter().unique().count();
    eprintln!("cells {} in {} orbits, vertices in (1/{denom})M", t.cells().len(), orbits);
    eprintln!("regular: {}", if t.certify_regular().is_ok() { "certified by heights" } else { "not certified" });
    match check {
        Ok(()) => {
            eprintln!("checks: invariant, simplices, vertices, containment, volume, intersections: ok");
            Ok(0)
        }
        Err(e) => {
            eprintln!("checks failed: {e}");
            Ok(1)
        }
    }
}

/// Outcome of one identity on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
}

fn status_of(r: Result<bool>, what: &str) -> Status {
    match r {
        Ok(true) => Status::Pass,
        Ok(false) => Status::Fail(what.into()),
        Err(Error::HypothesisFailed(m)) => Status::Skip(m),
        Err(e) => Status::Fail(e.to_string()),
    }
}

/// Element of `dst` acting on the images of the vertices of `src` as `g` does.
fn transport(src: &Instance, dst: &Instance, images: &[Vec<Rat>], g: usize) -> Option<usize> {
    let verts = src.polytope.vertices();
    let perm = src.polytope.vertex_permutation(src.group.element(g)).ok()?;
    (0..dst.group.order()).find(|&e| {
        let h = dst.group.element(e);
        (0..verts.len()).all(|i| h.apply(&images[i]) == images[perm[i]])
    })
}

fn series_head(f: &RatFunc, k: usize) -> Vec<Rat> {
    f.series(k)
}

fn compare_transported(
    src: &Instance,
    dst: &Instance,
    raw_images: Vec<Vec<Rat>>,
    lhs: impl Fn(usize) -> Vec<Rat>,
    rhs: &[RatFunc],
    terms: usize,
) -> Result<bool> {
    let images = dst.to_intrinsic(&raw_images)?;
    for c in 0..src.num_classes() {
        let g = src.group.class_rep(c);
        let e = transport(src, dst, &images, g).ok_or_else(|| Error::CheckFailed("no matching element".into()))?;
        if lhs(c) != series_head(&rhs[dst.group.class_of(e)], terms) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn scaled(v: &[Rat], k: u64) -> Vec<Rat> {
    v.iter().map(|x| x * rat(k as i64)).collect()
}

fn pyramid_check(inst: &Instance, h: &HStarSeries, terms: usize, n: u64) -> Result<bool> {
    let pyr = inst.pyramid()?.dilate(n)?;
    let hp = hstar(&pyr)?;
    let imgs = inst.polytope.vertices().iter().map(|v| {
        let mut w = v.clone();
        w.push(Rat::one());
        scaled(&w, n)
    });
    let hn = if n == 1 { h.clone() } else { hstar_n(inst, n as usize)? };
    let k = n as usize;
    compare_transported(inst, &pyr, imgs.collect(), |c| {
        let s = hn.per_class[c].series(terms * k + 1);
        let mut v = if k == 1 { s } else { psi_ceil(&s, k) };
        v.resize(terms, Rat::zero());
        v.truncate(terms);
        v
    }, &hp.per_class, terms)
}

fn psi_int_check(inst: &Instance, n: u64, terms: usize) -> Result<bool> {
    let dil = inst.dilate(n)?;
    let hd = hstar(&dil)?;
    let hn = hstar_n(inst, n as usize)?;
    let imgs = inst.polytope.vertices().iter().map(|v| scaled(v, n)).collect();
    compare_transported(inst, &dil, imgs, |c| {
        let mut v = psi_int(&hn.per_class[c].series(terms * n as usize), n as usize);
        v.truncate(terms);
        v
    }, &hd.per_class, terms)
}

fn segment_reflection() -> Instance {
    Instance::from_raw(RawInstance::new("segment", vec![vec![0], vec![1]], vec![RawMap::from_rows(&[vec![-1]], &[1])]))
        .expect("segment")
}

/// `h*(A * B)(g, h) = h*(A)(g) h*(B)(h)` at every pair of class representatives.
pub fn free_join_check(a: &Instance, b: &Instance) -> Result<bool> {
    let j = Instance::free_join(a, b)?;
    let hj = hstar(&j)?;
    let (ha, hb) = (hstar(a)?, hstar(b)?);
    for ca in 0..a.num_classes() {
        for cb in 0..b.num_classes() {
            let e = Instance::join_element(&j, a, b, a.group.class_rep(ca), b.group.class_rep(cb))
                .ok_or_else(|| Error::CheckFailed("no matching join element".into()))?;
            let lhs = hj.per_class[j.group.class_of(e)].reduced();
            let rhs = RatFunc::new(&ha.per_class[ca].num * &hb.per_class[cb].num, &ha.per_class[ca].den * &hb.per_class[cb].den)
                .reduced();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An invariant lattice triangulation known for the instance, if any.
pub fn known_lattice_triangulation(inst: &Instance) -> Option<PolyComplex> {
    match inst.name.as_str() {
        "p5-reflexive" => corpus::p5_fixture(inst).ok(),
        "bipyramid" => {
            let ab = corpus::intrinsic(inst, &corpus::bipyramid_apexes()).ok()?;
            PolyComplex::trivial(&inst.polytope).pull(&ab).ok()
        }
        _ if inst.dim() <= 3 && inst.polytope.vertices().len() <= 12 => {
            lattice_orbit_triangulation(&inst.polytope, &inst.group, 1)
        }
        _ => None,
    }
}

fn monotonicity_pair(inst: &Instance) -> Option<Polytope> {
    match inst.name.as_str() {
        "octahedron" => Polytope::hull(&corpus::intrinsic(inst, &corpus::octahedron_diagonal()).ok()?).ok(),
        _ => None,
    }
}

/// Every identity implemented by the library, evaluated on one instance.
pub fn verify_instance(inst: &Instance) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut push = |name: &'static str, status: Status| out.push(CheckResult { name, status });
    let g = &inst.group;
    let h = match hstar(inst) {
        Ok(h) => h,
        Err(e) => {
            push("hstar", Status::Fail(e.to_string()));
            return out;
        }
    };
    let terms = default_truncation(inst.dim());

    // det(I - M~ t) = (1 - t) det(I - M t), pole order = dim P^g + 1
    let det = (0..inst.num_classes()).all(|c| {
        let e = g.element(g.class_rep(c));
        let lin = char_poly(&e.linear()).reversed();
        e.det_series() == &Poly::from_ints(&[1, -1]) * &lin && e.det_series().coeff(0) == Rat::one()
    });
    push("det-identity", if det { Status::Pass } else { Status::Fail("det(I - M~t) != (1-t)det(I - Mt)".into()) });
    let poles = (0..inst.num_classes()).try_fold(true, |ok, c| -> Result<bool> {
        let f = g.element(g.class_rep(c)).char_poly_tilde()?;
        Ok(ok && f.mult.get(&1).copied().unwrap_or(0) == inst.fixed_polytope(c)?.dim() + 1)
    });
    push("pole-order", status_of(poles, "multiplicity of 1 differs from dim P^g + 1"));

    let oracle = (|| -> Result<bool> {
        let ehr = equivariant_ehr(inst)?;
        for m in 0..=6u64 {
            let pts = inst.polytope.lattice_points(m, false);
            for c in 0..inst.num_classes() {
                let e = g.element(g.class_rep(c));
                let fixed = pts
                    .iter()
                    .filter(|x| {
                        let y: Vec<Rat> = x.iter().map(|v| Rat::new(v.clone(), Int::from(m.max(1)))).collect();
                        m == 0 || e.apply(&y) == y
                    })
                    .count();
                let want = if m == 0 { 1 } else { fixed };
                if ehr[c].series(7)[m as usize] != rat(want as i64) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })();
    push("ehr-oracle", status_of(oracle, "series coefficient differs from a fixed-point count"));

    push(
        "reciprocity",
        match reciprocity_check(inst, &h, terms) {
            Ok(()) => Status::Pass,
            Err(e) => Status::Fail(e.to_string()),
        },
    );
    push("pyramid", status_of(pyramid_check(inst, &h, terms, 1), "h*(Pyr P) != h*(P)"));
    let small = inst.dim() <= 3 && inst.polytope.vertices().len() <= 24;
    for (n, iname, cname) in [(2u64, "psi-int-2", "psi-ceil-2"), (3, "psi-int-3", "psi-ceil-3")] {
        push(iname, status_of(psi_int_check(inst, n, terms), "Psi_Int(h*_N) != h*(P, rho_N)"));
        push(cname, status_of(pyramid_check(inst, &h, terms, n), "Psi_Ceil(h*_N) != h*(Pyr P, rho_N)"));
    }
    push("free-join", status_of(free_join_check(inst, &segment_reflection()), "h* of the join is not the product"));
    push(
        "prime-closed-form",
        status_of(
            prime_fixed_closed_form(inst).map(|cf| cf.iter().zip(&h.per_class).all(|(a, b)| b.as_polynomial().as_ref() == Some(a))),
            "closed form differs from h*",
        ),
    );
    if inst.table.is_some() {
        let hn = hstar_n(inst, g.order()).and_then(|s| classify(inst, &s, None));
        push(
            "hstar-N-order",
            match hn {
                Ok(c) if c.polynomial && c.effective == Some(true) => Status::Pass,
                Ok(c) => Status::Fail(format!("h*_|G|: polynomial {}, effective {:?}", c.polynomial, c.effective)),
                Err(e) => Status::Fail(e.to_string()),
            },
        );
    }
    if small {
        let t = invariant_triangulation(&inst.polytope, g, g.order() as u64)
            .and_then(|t| check_triangulation(&t, &inst.polytope, g, g.order() as u64));
        push("invariant-triangulation", status_of(t.map(|_| true), ""));
    }
    match known_lattice_triangulation(inst) {
        Some(t) => {
            let c = classify(inst, &h, None);
            push(
                "lattice-triangulation-implies-effective",
                match c {
                    Ok(c) if c.polynomial && c.effective != Some(false) => Status::Pass,
                    Ok(c) => Status::Fail(format!("polynomial {}, effective {:?}", c.polynomial, c.effective)),
                    Err(e) => Status::Fail(e.to_string()),
                },
            );
            let sr = hstar_via_triangulation(inst, &t).map(|s| s.per_class == h.per_class);
            push("sr-induced", status_of(sr, "box-orbit formula differs from h*"));
            let fx = hstar_via_fixed_box_points(inst, &t).map(|s| s.per_class == h.per_class);
            push("sr-fixed-points", status_of(fx, "fixed box point sum differs from h*"));
        }
        None => push("lattice-triangulation-implies-effective", Status::Skip("no invariant lattice triangulation at hand".into())),
    }
    if inst.dim() == 2 {
        let d2 = crate::triangulate::dim2_classify(g).map(|c| c.triangulable == h.is_polynomial());
        push("dim2-classify", status_of(d2, "classification disagrees with polynomiality"));
    }
    if let Some(q) = monotonicity_pair(inst) {
        push("monotonicity", status_of(monotonicity_check(inst, &q), "h*(Q) exceeds h*(P)"));
    }
    if let Some(w) = square_obstruction(&PolyComplex::trivial(&inst.polytope), g) {
        // a square witness on a regular subdivision rules out regular invariant lattice triangulations
        let regular = lattice_triangulation_is_regular(inst);
        push(
            "square-obstruction",
            if regular { Status::Fail(format!("witness {:?} but a regular lattice triangulation exists", w.face)) } else { Status::Pass },
        );
    }
    out
}

fn lattice_triangulation_is_regular(inst: &Instance) -> bool {
    inst.dim() <= 3
        && inst.polytope.vertices().len() <= 12
        && lattice_orbit_triangulation(&inst.polytope, &inst.group, 1).is_some_and(|t| t.certify_regular().is_ok())
}

fn corpus_instances(which: &str) -> Result<Vec<RawInstance>> {
    Ok(match which {
        "paper" => corpus::paper_corpus(),
        "dim2" => corpus::dim2_catalog(),
        "random" => corpus::random_corpus(),
        "full" => corpus::full_corpus(),
        dir => {
            let mut files: Vec<_> = std::fs::read_dir(dir)
                .map_err(|e| Error::Input(format!("{dir}: {e}")))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            files
                .iter()
                .map(|p| {
                    let text = std::fs::read_to_string(p).map_err(|e| Error::Input(format!("{}: {e}", p.display())))?;
                    RawInstance::from_json(&text)
                })
                .collect::<Result<_>>()?
        }
    })
}

fn print_ledger(name: &str, checks: &[CheckResult]) -> bool {
    let mut ok = true;
    for c in checks {
        match &c.status {
            Status::Pass => println!("PASS {name} {}", c.name),
            Status::Skip(why) => println!("SKIP {name} {}: {why}", c.name),
            Status::Fail(why) => {
                ok = false;
                println!("FAIL {name} {}: {why}", c.name)
            }
        }
    }
    ok
}

fn cmd_verify(instance: Option<&str>, which: Option<&str>) -> Result<i32> {
    let raws = match (instance, which) {
        (Some(arg), None) => {
            let inst = load_instance(arg)?;
            let ok = print_ledger(&inst.name, &verify_instance(&inst));
            return Ok(if ok { 0 } else { 1 });
        }
        (None, Some(w)) => corpus_instances(w)?,
        (None, None) => corpus::paper_corpus(),
        (Some(_), Some(_)) => return Err(Error::Input("give an instance or --corpus, not both".into())),
    };
    let mut ok = true;
    for r in raws {
        let name = r.name.clone();
        match Instance::from_raw(r) {
            Ok(inst) => ok &= print_ledger(&name, &verify_instance(&inst)),
            Err(e) => {
                ok = false;
                println!("FAIL {name} load: {e}");
            }
        }
    }
    Ok(if ok { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(r: RawInstance) -> Instance {
        Instance::from_raw(r).unwrap()
    }

    #[test]
    fn cube_renders_with_regular_character() {
        let i = load(corpus::klein_cube());
        let c = classify(&i, &hstar(&i).unwrap(), None).unwrap();
        assert_eq!(fmt_series(&i, &c.coefficients, 1), "1 + chi_reg*t + t^2");
        assert_eq!(fmt_character(&i, &equivariant_l(&i, 1).unwrap()), "2*chi_reg");
    }

    #[test]
    fn z3_prism_renders_compound_coefficients() {
        let i = load(corpus::z3_prism());
        let c = classify(&i, &hstar(&i).unwrap(), None).unwrap();
        let s = fmt_series(&i, &c.coefficients, 1);
        assert!(s.starts_with("1 + (2 + chi1 + chi2)*t"), "{s}");
    }

    #[test]
    fn series_json_round_trip() {
        let i = load(corpus::sym_prism(3));
        let h = hstar(&i).unwrap();
        let j = SeriesJson::new(&i, &h, None).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back: SeriesJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        let s = back.to_series();
        for (a, b) in s.per_class.iter().zip(&h.per_class) {
            assert_eq!(a.reduced(), b.reduced());
        }
        assert!(!j.polynomial);
    }

    #[test]
    fn square_swap_ledger_passes() {
        let i = load(corpus::square_swap());
        let checks = verify_instance(&i);
        assert!(checks.iter().all(|c| !matches!(c.status, Status::Fail(_))), "{checks:?}");
        assert!(checks.iter().any(|c| c.name == "sr-induced" && c.status == Status::Pass));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["eqehrhart", "hstar", "square-swap"]), 0);
        assert_eq!(run(["eqehrhart", "hstar", "no-such-instance"]), 2);
        assert_eq!(run(["eqehrhart", "frobnicate"]), 2);
        assert_eq!(run(["eqehrhart", "triangulate", "klein-cube", "-N", "1", "--out", "/dev/null"]), 1);
    }
}
