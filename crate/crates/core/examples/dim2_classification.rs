//! Rank two actions: which admit invariant lattice triangulations, compared
//! with a search for one and with polynomiality of h*.
//!
//! cargo run --example dim2_classification

use eqehrhart::corpus;
use eqehrhart::hstar::hstar;
use eqehrhart::instance::Instance;
use eqehrhart::triangulate::{dim2_classify, lattice_orbit_triangulation};

fn main() -> eqehrhart::Result<()> {
    println!("{:<26} {:>3} {:>12} {:>6} {:>10}  offending", "instance", "|G|", "triangulable", "found", "polynomial");
    for raw in corpus::dim2_catalog() {
        let inst = Instance::from_raw(raw)?;
        let c = dim2_classify(&inst.group)?;
        let found = lattice_orbit_triangulation(&inst.polytope, &inst.group, 1).is_some();
        let poly = hstar(&inst)?.is_polynomial();
        let why = c.offending.map(|(g, kind)| format!("element {g}: {kind:?}")).unwrap_or_default();
        println!("{:<26} {:>3} {:>12} {:>6} {:>10}  {why}", inst.name, inst.group.order(), c.triangulable, found, poly);
    }
    Ok(())
}
