//! An invariant subpolytope has coefficient-wise smaller h* in irreducible
//! multiplicities: the cross-polytope and one of its invariant diagonals.
//!
//! cargo run --example monotonicity

use eqehrhart::cli::{fmt_series, load_instance};
use eqehrhart::corpus;
use eqehrhart::hstar::{classify, hstar, monotonicity_check, subpolytope_hstar, HStarSeries};
use eqehrhart::polytope::Polytope;

fn main() -> eqehrhart::Result<()> {
    let inst = load_instance("octahedron")?;
    let q = Polytope::hull(&corpus::intrinsic(&inst, &corpus::octahedron_diagonal())?)?;
    let hp = hstar(&inst)?;
    let hq = HStarSeries { n: 1, dim: inst.dim(), per_class: subpolytope_hstar(&inst, &q)? };
    let cp = classify(&inst, &hp, None)?;
    let cq = classify(&inst, &hq, None)?;
    println!("h*(P) = {}", fmt_series(&inst, &cp.coefficients, 1));
    println!("h*(Q) = {}", fmt_series(&inst, &cq.coefficients, 1));
    println!("h*(Q) <= h*(P): {}", monotonicity_check(&inst, &q)?);
    Ok(())
}
