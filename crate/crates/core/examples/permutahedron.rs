//! Permutahedra with the symmetric group permuting coordinates. In dimension
//! 3, h* is not a polynomial, but pulling face barycenters gives an invariant
//! triangulation with vertices in (1/2)M, and h*_2 is a polynomial.
//!
//! cargo run --release --example permutahedron

use eqehrhart::cli::{fmt_series, load_instance};
use eqehrhart::hstar::{classify, hstar, hstar_n};
use eqehrhart::triangulate::{barycentric_sequence, check_triangulation, orbit_pull_triangulate, PolyComplex};

fn main() -> eqehrhart::Result<()> {
    for d in 1..=3 {
        let inst = load_instance(&format!("permutahedron-{d}"))?;
        let h = hstar(&inst)?;
        println!("d = {d}: |G| = {}, h* polynomial: {}", inst.group.order(), h.is_polynomial());
    }

    let inst = load_instance("permutahedron-3")?;
    let (p, g) = (&inst.polytope, &inst.group);
    let seq = barycentric_sequence(p, g);
    let t = orbit_pull_triangulate(&PolyComplex::trivial(p), g, &seq)?;
    check_triangulation(&t, p, g, 2)?;
    println!("barycentric triangulation: {} cells, vertices in (1/{})M", t.cells().len(), t.denominator());

    let h2 = hstar_n(&inst, 2)?;
    let c = classify(&inst, &h2, None)?;
    println!("h*_2 = {}", fmt_series(&inst, &c.coefficients, 2));
    println!("polynomial {}, effective {:?}", c.polynomial, c.effective);
    Ok(())
}
