//! h* from an invariant lattice triangulation: box points, their stabilizers
//! and the Stanley-Reisner rings of their links, checked against the direct
//! computation.
//!
//! cargo run --example sr_formula

use eqehrhart::cli::{fmt_series, load_instance};
use eqehrhart::corpus;
use eqehrhart::hstar::{classify, hstar};
use eqehrhart::sr_formula::{box_orbits, hstar_via_fixed_box_points, hstar_via_triangulation};
use eqehrhart::triangulate::PolyComplex;

fn report(inst: &eqehrhart::instance::Instance, t: &PolyComplex) -> eqehrhart::Result<()> {
    println!("{}: {} cells", inst.name, t.cells().len());
    for o in box_orbits(t, &inst.group)? {
        println!("  box orbit of {:?}: height {}, orbit size {}, stabilizer order {}", o.point, o.height, o.size, o.stabilizer.len());
    }
    let direct = hstar(inst)?;
    let induced = hstar_via_triangulation(inst, t)?;
    let traced = hstar_via_fixed_box_points(inst, t)?;
    let c = classify(inst, &induced, None)?;
    println!("  h* = {}", fmt_series(inst, &c.coefficients, 1));
    println!("  induced route agrees: {}", induced.per_class == direct.per_class);
    println!("  fixed point route agrees: {}", traced.per_class == direct.per_class);
    Ok(())
}

fn main() -> eqehrhart::Result<()> {
    let p5 = load_instance("p5-reflexive")?;
    report(&p5, &corpus::p5_fixture(&p5)?)?;

    let bp = load_instance("bipyramid")?;
    let apexes = corpus::intrinsic(&bp, &corpus::bipyramid_apexes())?;
    report(&bp, &PolyComplex::trivial(&bp.polytope).pull(&apexes)?)?;
    Ok(())
}
