//! Builders for the instances used by the examples, tests and `verify`.

use crate::error::{Error, Result};
use crate::exactlin::{rat_vec, Rat};
use crate::group_action::{AffineMap, FiniteGroup};
use crate::instance::{Instance, RawInstance, RawMap};
use crate::polytope::Polytope;
use crate::triangulate::PolyComplex;
use itertools::Itertools;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Permutation matrix of `p` on the first `p.len()` of `n` coordinates.
fn perm_on(n: usize, p: &[usize]) -> RawMap {
    let mut full: Vec<usize> = (0..n).collect();
    full[..p.len()].copy_from_slice(p);
    RawMap::permutation(&full)
}

fn cycle(k: usize) -> Vec<usize> {
    (0..k).map(|i| (i + 1) % k).collect()
}

fn transposition(k: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..k).collect();
    p.swap(0, 1);
    p
}

/// The unit square with the coordinate swap.
pub fn square_swap() -> RawInstance {
    RawInstance::new("square-swap", vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]], vec![RawMap::permutation(&[1, 0])])
        .with_description("unit square, Z/2 swapping coordinates")
}

/// `[-1,1]^3` in the affine lattice `(1,1,1) + 2Z^3` with a Klein four group of
/// signed permutations.
pub fn klein_cube() -> RawInstance {
    let verts = (0..3).map(|_| [-1i64, 1]).multi_cartesian_product().map(|v| v.to_vec()).collect();
    let sigma = RawMap::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]], &[]);
    let tau = RawMap::from_rows(&[vec![0, -1, 0], vec![-1, 0, 0], vec![0, 0, -1]], &[]);
    RawInstance::new("klein-cube", verts, vec![sigma, tau])
        .with_lattice(&[1, 1, 1], &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]])
        .with_description("cube [-1,1]^3, Klein four group of signed permutations")
}

/// The face of the cube with first coordinate 1, in raw coordinates.
pub fn klein_cube_face() -> Vec<Vec<i64>> {
    vec![vec![1, -1, -1], vec![1, -1, 1], vec![1, 1, -1], vec![1, 1, 1]]
}

fn p5_raw_points() -> Vec<Vec<i64>> {
    let e: Vec<Vec<i64>> = (0..5).map(|i| unit(5, i)).collect();
    let f: Vec<Vec<i64>> = (0..5).map(|i| add(&e[i], &e[(i + 1) % 5])).collect();
    e.into_iter().chain(f).collect()
}

/// Reflexive 4-polytope in `Z^5 / Z(1,1,1,1,1)` with vertices `e_i` and
/// `e_i + e_{i+1}` under the cyclic shift.
pub fn p5_reflexive() -> RawInstance {
    RawInstance::new("p5-reflexive", p5_raw_points(), vec![perm_on(5, &cycle(5))])
        .with_quotient(&[1, 1, 1, 1, 1])
        .with_description("reflexive 4-polytope with Z/5 cyclic shift")
}

/// The invariant non-regular lattice triangulation of the reflexive polytope,
/// coned from the interior point over the boundary triangulation determined by
/// the diagonal `[e_1, f_2]`.
pub fn p5_fixture(inst: &Instance) -> Result<PolyComplex> {
    let mut raw: Vec<Vec<Rat>> = p5_raw_points().iter().map(|p| rat_vec(p)).collect();
    raw.push(rat_vec(&[0; 5]));
    let points = inst.to_intrinsic(&raw)?;
    // indices: e_i -> i - 1, f_i -> i + 4, origin -> 10
    let e = |i: usize| (i - 1) % 5;
    let f = |i: usize| 5 + (i - 1) % 5;
    let reps = [
        [e(1), f(2), e(3), f(3)],
        [e(1), f(2), f(1), f(3)],
        [e(1), f(2), e(3), f(5)],
        [e(1), f(2), f(1), f(5)],
        [e(1), e(3), f(3), f(5)],
    ];
    let shift = |i: usize, k: usize| if i < 5 { (i + k) % 5 } else { 5 + (i - 5 + k) % 5 };
    let mut cells = Vec::new();
    for r in &reps {
        for k in 0..5 {
            let mut c: Vec<usize> = r.iter().map(|&i| shift(i, k)).collect();
            c.push(10);
            c.sort();
            cells.push(c);
        }
    }
    PolyComplex::from_cells(points, cells)
}

/// Triangle with an interior point times a segment, with `Z/3` rotating the triangle.
pub fn z3_prism() -> RawInstance {
    let mut verts = Vec::new();
    for h in 0..2 {
        for i in 0..3 {
            let mut v = unit(4, i);
            v[3] = h;
            verts.push(v);
        }
    }
    RawInstance::new("z3-prism", verts, vec![perm_on(4, &cycle(3))])
        .with_quotient(&[1, 1, 1, 0])
        .with_description("prism over a triangle in Z^3/Z(1,1,1), Z/3 rotation")
}

/// Circuit polytope: `e_i, f_i` in `Z^{2r} / Z(a, -a)` with `Z/2` swapping `e_i` and `f_i`.
pub fn circuit(a: &[i64]) -> RawInstance {
    let r = a.len();
    let verts = (0..2 * r).map(|i| unit(2 * r, i)).collect();
    let p: Vec<usize> = (0..2 * r).map(|i| (i + r) % (2 * r)).collect();
    let mut q = a.to_vec();
    q.extend(a.iter().map(|x| -x));
    let name = format!("circuit-{}", a.iter().join("-"));
    RawInstance::new(&name, verts, vec![RawMap::permutation(&p)])
        .with_quotient(&q)
        .with_description(&format!("circuit polytope with a = ({}), swap e_i <-> f_i", a.iter().join(",")))
}

/// Simplex `conv(e_1..e_d)` times a segment, with `Sym_d` permuting the simplex.
pub fn sym_prism(d: usize) -> RawInstance {
    let n = d + 1;
    let mut verts = Vec::new();
    for i in 0..d {
        verts.push(unit(n, i));
        verts.push(add(&unit(n, i), &unit(n, d)));
    }
    let mut gens = vec![perm_on(n, &transposition(d))];
    if d > 2 {
        gens.push(perm_on(n, &cycle(d)));
    }
    RawInstance::new(&format!("sym{d}-prism"), verts, gens)
        .with_description(&format!("prism over the standard {}-simplex, Sym_{d}", d - 1))
}

fn permutahedron_vertices(d: usize) -> Vec<Vec<i64>> {
    (1..=(d as i64 + 1)).permutations(d + 1).collect()
}

/// Permutahedron of dimension `d` with `Sym_{d+1}` permuting coordinates.
pub fn permutahedron(d: usize) -> RawInstance {
    let n = d + 1;
    let mut gens = vec![RawMap::permutation(&transposition(n))];
    if n > 2 {
        gens.push(RawMap::permutation(&cycle(n)));
    }
    RawInstance::new(&format!("permutahedron-{d}"), permutahedron_vertices(d), gens)
        .with_description(&format!("permutahedron of dimension {d}, Sym_{n}"))
}

/// Permutahedron of dimension `d` with the cyclic group of order `d+1`.
pub fn permutahedron_cyclic(d: usize) -> RawInstance {
    let n = d + 1;
    RawInstance::new(&format!("permutahedron-{d}-cyclic"), permutahedron_vertices(d), vec![RawMap::permutation(&cycle(n))])
        .with_description(&format!("permutahedron of dimension {d}, Z/{n}"))
}

/// Octahedron `conv(+-e_i)` in `Z^3` with the central symmetry.
pub fn octahedron() -> RawInstance {
    let mut verts = Vec::new();
    for i in 0..3 {
        verts.push(unit(3, i));
        verts.push(unit(3, i).iter().map(|x| -x).collect());
    }
    RawInstance::new("octahedron", verts, vec![RawMap::from_rows(&[vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]], &[])])
        .with_description("octahedron with the central symmetry")
}

/// The invariant diagonal `[e_1, -e_1]` of the octahedron, in raw coordinates.
pub fn octahedron_diagonal() -> Vec<Vec<i64>> {
    vec![vec![1, 0, 0], vec![-1, 0, 0]]
}

/// Bipyramid over a unit square with apexes on a reflection hyperplane.
pub fn bipyramid() -> RawInstance {
    let verts = vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1], vec![1, 1, -1]];
    let sigma = RawMap::from_rows(&[vec![-1, 0, -1], vec![0, 1, 0], vec![0, 0, 1]], &[1, 0, 0]);
    RawInstance::new("bipyramid", verts, vec![sigma]).with_description("bipyramid over a square, reflection in 2x + z = 1")
}

/// Apexes of the bipyramid, in raw coordinates.
pub fn bipyramid_apexes() -> Vec<Vec<i64>> {
    vec![vec![0, 0, 1], vec![1, 1, -1]]
}

fn square(k: i64) -> Vec<Vec<i64>> {
    vec![vec![0, 0], vec![k, 0], vec![0, k], vec![k, k]]
}

fn sym_square(k: i64) -> Vec<Vec<i64>> {
    vec![vec![-k, -k], vec![k, -k], vec![-k, k], vec![k, k]]
}

fn map2(rows: [[i64; 2]; 2], t: [i64; 2]) -> RawMap {
    RawMap::from_rows(&[rows[0].to_vec(), rows[1].to_vec()], &t)
}

/// Rank-2 actions, each with an invariant lattice polygon.
pub fn dim2_catalog() -> Vec<RawInstance> {
    let hexagon = vec![vec![1, 0], vec![0, 1], vec![-1, 1], vec![-1, 0], vec![0, -1], vec![1, -1]];
    vec![
        square_swap(),
        RawInstance::new("d2-quarter-turn", square(1), vec![map2([[0, -1], [1, 0]], [1, 0])])
            .with_description("unit square, rotation by 90 degrees about its center"),
        RawInstance::new("d2-offset-reflection", square(1), vec![map2([[-1, 0], [0, 1]], [1, 0])])
            .with_description("unit square, reflection in x = 1/2"),
        RawInstance::new("d2-tall-offset-reflection", vec![vec![0, 0], vec![1, 0], vec![0, 2], vec![1, 2]], vec![map2([[-1, 0], [0, 1]], [1, 0])])
            .with_description("1x2 rectangle, reflection in x = 1/2"),
        RawInstance::new("d2-dihedral-unit", square(1), vec![map2([[0, -1], [1, 0]], [1, 0]), map2([[0, 1], [1, 0]], [0, 0])])
            .with_description("unit square, full dihedral group of order 8"),
        RawInstance::new("d2-half-turn", square(1), vec![map2([[-1, 0], [0, -1]], [1, 1])])
            .with_description("unit square, rotation by 180 degrees about its center"),
        RawInstance::new("d2-reflection", vec![vec![-1, 0], vec![1, 0], vec![-1, 1], vec![1, 1]], vec![map2([[-1, 0], [0, 1]], [0, 0])])
            .with_description("2x1 rectangle, reflection in x = 0"),
        RawInstance::new("d2-central", sym_square(1), vec![map2([[-1, 0], [0, -1]], [0, 0])])
            .with_description("square [-1,1]^2, central symmetry"),
        RawInstance::new("d2-quarter-turn-big", square(2), vec![map2([[0, -1], [1, 0]], [2, 0])])
            .with_description("square [0,2]^2, rotation by 90 degrees about (1,1)"),
        RawInstance::new("d2-dihedral-big", sym_square(1), vec![map2([[0, -1], [1, 0]], [0, 0]), map2([[0, 1], [1, 0]], [0, 0])])
            .with_description("square [-1,1]^2, dihedral group of order 8"),
        RawInstance::new("d2-hexagon-z6", hexagon.clone(), vec![map2([[0, -1], [1, 1]], [0, 0])])
            .with_description("hexagon, rotation of order 6"),
        RawInstance::new("d2-hexagon-z3", hexagon, vec![map2([[-1, -1], [1, 0]], [0, 0])])
            .with_description("hexagon, rotation of order 3"),
        RawInstance::new("d2-triangle-z3", vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![map2([[0, -1], [1, -1]], [0, 0])])
            .with_description("reflexive triangle, rotation of order 3"),
        RawInstance::new("d2-unit-triangle-z3", vec![vec![0, 0], vec![1, 0], vec![0, 1]], vec![map2([[-1, -1], [1, 0]], [1, 0])])
            .with_description("unit triangle, cyclic permutation of its vertices"),
    ]
}

/// The instances taken from worked examples.
pub fn paper_corpus() -> Vec<RawInstance> {
    vec![
        square_swap(),
        klein_cube(),
        p5_reflexive(),
        z3_prism(),
        circuit(&[1, 1, 1]),
        circuit(&[1, 1, 2]),
        sym_prism(3),
        sym_prism(4),
        permutahedron(1),
        permutahedron(2),
        permutahedron(3),
        octahedron(),
        bipyramid(),
    ]
}

fn linear_pool(d: usize) -> Vec<Vec<Vec<i64>>> {
    match d {
        1 => vec![vec![vec![-1]]],
        2 => vec![
            vec![vec![0, -1], vec![1, 0]],
            vec![vec![0, -1], vec![1, 1]],
            vec![vec![-1, -1], vec![1, 0]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![-1, 0], vec![0, 1]],
            vec![vec![-1, 0], vec![0, -1]],
        ],
        _ => vec![
            vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
            vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]],
            vec![vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]],
            vec![vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]],
        ],
    }
}

fn mat_vec(a: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    a.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

/// A random small invariant lattice polytope of dimension at most 3 with a
/// group of order at most 8, determined by `seed`.
pub fn random_instance(seed: u64) -> RawInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let d = rng.gen_range(1..=3usize);
        let pool = linear_pool(d);
        let k = rng.gen_range(1..=2usize.min(pool.len()));
        let lin: Vec<Vec<Vec<i64>>> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let center: Vec<i64> = (0..d).map(|_| rng.gen_range(-1..=1)).collect();
        let gens: Vec<AffineMap> = lin
            .iter()
            .map(|a| {
                let t: Vec<i64> = center.iter().zip(mat_vec(a, &center)).map(|(c, ac)| c - ac).collect();
                AffineMap::from_rows(a, &t).expect("invertible")
            })
            .collect();
        let Ok(group) = FiniteGroup::generate_bounded(d, &gens, 8) else { continue };
        let orbits = rng.gen_range(1..=2usize);
        let mut pts = Vec::new();
        for _ in 0..orbits {
            let x: Vec<i64> = center.iter().map(|c| c + rng.gen_range(-2..=2)).collect();
            pts.extend(group.orbit(&rat_vec(&x)));
        }
        let Ok(p) = Polytope::hull(&pts) else { continue };
        if p.dim() != d {
            continue;
        }
        let verts = p.vertices().iter().map(|v| v.iter().map(|x| x.to_integer().to_i64().unwrap()).collect()).collect();
        let raw_gens = gens.iter().map(RawMap::from_affine).collect();
        return RawInstance::new(&format!("random-{seed:02}"), verts, raw_gens)
            .with_description(&format!("seeded random instance, dimension {d}, group of order {}", group.order()))
            .with_label("seed", serde_json::json!(seed));
    }
}

/// Twenty seeded random instances.
pub fn random_corpus() -> Vec<RawInstance> {
    (0..20).map(random_instance).collect()
}

/// Worked examples, the rank-2 catalog and the random instances, without duplicates.
pub fn full_corpus() -> Vec<RawInstance> {
    let mut out = paper_corpus();
    for r in dim2_catalog().into_iter().chain(random_corpus()) {
        if !out.iter().any(|o| o.name == r.name) {
            out.push(r);
        }
    }
    out
}

/// The instances written to `corpus/`: the named examples and the dimension 2 catalog.
pub fn shipped_corpus() -> Vec<RawInstance> {
    let mut out = paper_corpus();
    out.extend([permutahedron_cyclic(2), permutahedron_cyclic(3)]);
    for r in dim2_catalog() {
        if !out.iter().any(|o| o.name == r.name) {
            out.push(r);
        }
    }
    out
}

/// Looks up a built-in instance by name.
pub fn by_name(name: &str) -> Result<RawInstance> {
    full_corpus()
        .into_iter()
        .chain([permutahedron_cyclic(2), permutahedron_cyclic(3)])
        .find(|r| r.name == name)
        .ok_or_else(|| Error::Input(format!("unknown instance {name}")))
}

/// Converts raw points to the intrinsic coordinates of `inst`.
pub fn intrinsic(inst: &Instance, pts: &[Vec<i64>]) -> Result<Vec<Vec<Rat>>> {
    inst.to_intrinsic(&pts.iter().map(|p| rat_vec(p)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_instances_load() {
        for r in full_corpus() {
            let name = r.name.clone();
            let inst = Instance::from_raw(r).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(inst.group.order() <= 120, "{name}");
        }
    }

    #[test]
    fn dimensions_and_orders() {
        let cases = [
            (klein_cube(), 3, 4),
            (p5_reflexive(), 4, 5),
            (z3_prism(), 3, 3),
            (circuit(&[1, 1, 1]), 4, 2),
            (sym_prism(4), 4, 24),
            (permutahedron(3), 3, 24),
            (bipyramid(), 3, 2),
        ];
        for (r, d, n) in cases {
            let i = Instance::from_raw(r).unwrap();
            assert_eq!((i.dim(), i.group.order()), (d, n), "{}", i.name);
        }
    }

    #[test]
    fn cube_has_eight_lattice_points() {
        let i = Instance::from_raw(klein_cube()).unwrap();
        assert_eq!(i.polytope.count_lattice_points(1), 8);
    }

    #[test]
    fn random_instances_are_small_and_reproducible() {
        for s in 0..20 {
            let a = random_instance(s);
            assert_eq!(a, random_instance(s));
            let i = Instance::from_raw(a).unwrap();
            assert!(i.dim() <= 3 && i.group.order() <= 8);
        }
    }

    #[test]
    fn p5_fixture_is_a_triangulation() {
        let i = Instance::from_raw(p5_reflexive()).unwrap();
        let t = p5_fixture(&i).unwrap();
        assert_eq!(t.cells().len(), 25);
        assert!(t.is_triangulation());
    }
}
