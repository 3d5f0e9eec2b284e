//! Prisms over simplices with the symmetric group permuting the simplex:
//! h* against its closed form, and the N for which h*_N is a polynomial.
//!
//! cargo run --example symmetric_prisms [d]

use eqehrhart::cli::load_instance;
use eqehrhart::group_action::cycle_type;
use eqehrhart::hstar::{hstar, hstar_n, prism_closed_form};

fn main() -> eqehrhart::Result<()> {
    let d: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let inst = load_instance(&format!("sym{d}-prism"))?;
    let g = &inst.group;
    let h = hstar(&inst)?;
    let hs: Vec<_> = (1..=6).map(|n| hstar_n(&inst, n)).collect::<Result<_, _>>()?;
    for c in 0..inst.num_classes() {
        let perm = inst.polytope.vertex_permutation(g.element(g.class_rep(c)))?;
        // every cycle of the simplex appears on both ends of the prism
        let mut lengths = cycle_type(&perm);
        lengths = lengths.chunks(2).map(|p| p[0]).collect();
        let closed = prism_closed_form(&lengths);
        let poly_at: Vec<usize> = (1..=6).filter(|&n| hs[n - 1].per_class[c].is_polynomial()).collect();
        println!(
            "cycle type {lengths:?}: h* = {}, closed form agrees: {}, h*_N polynomial for N in {poly_at:?}",
            h.per_class[c].reduced(),
            closed == h.per_class[c].reduced()
        );
    }
    Ok(())
}
