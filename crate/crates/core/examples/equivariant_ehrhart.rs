//! Fixed-point counts of dilates and the per-class Ehrhart series.
//!
//! cargo run --example equivariant_ehrhart [INSTANCE]

use eqehrhart::cli::{fmt_character, load_instance};
use eqehrhart::hstar::{equivariant_ehr, equivariant_l, equivariant_l_interior};

fn main() -> eqehrhart::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "square-swap".into());
    let inst = load_instance(&name)?;
    println!("{}: dimension {}, |G| = {}", inst.name, inst.dim(), inst.group.order());

    let ehr = equivariant_ehr(&inst)?;
    for (c, f) in ehr.iter().enumerate() {
        let fixed = inst.fixed_polytope(c)?;
        println!("class {c}: P^g has dimension {}, Ehr = {}", fixed.dim(), f.reduced());
    }
    for m in 1..=4 {
        let l = equivariant_l(&inst, m)?;
        let li = equivariant_l_interior(&inst, m)?;
        println!("m = {m}: L = {:<14} interior = {}", fmt_character(&inst, &l), fmt_character(&inst, &li));
    }
    Ok(())
}
