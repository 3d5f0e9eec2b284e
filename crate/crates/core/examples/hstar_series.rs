//! The equivariant h*-series: per-class rational functions, coefficient
//! characters, polynomiality, effectiveness and reciprocity.
//!
//! cargo run --example hstar_series [INSTANCE...]

use eqehrhart::cli::{fmt_series, load_instance};
use eqehrhart::hstar::{classify, default_truncation, hstar, reciprocity_check};

fn main() -> eqehrhart::Result<()> {
    let mut names: Vec<String> = std::env::args().skip(1).collect();
    if names.is_empty() {
        names = ["klein-cube", "z3-prism", "circuit-1-1-1", "circuit-1-1-2"].map(String::from).to_vec();
    }
    for name in names {
        let inst = load_instance(&name)?;
        let h = hstar(&inst)?;
        let c = classify(&inst, &h, None)?;
        println!("{}", inst.name);
        for (k, f) in h.per_class.iter().enumerate() {
            println!("  class {k}: {}", f.reduced());
        }
        let shown = fmt_series(&inst, &c.coefficients, 1);
        if c.polynomial {
            println!("  h* = {shown}");
        } else {
            println!("  h* = {shown} + ...");
        }
        println!("  polynomial {}, effective {:?}", c.polynomial, c.effective);
        match reciprocity_check(&inst, &h, default_truncation(inst.dim())) {
            Ok(()) => println!("  reciprocity holds"),
            Err(e) => println!("  reciprocity: {e}"),
        }
    }
    Ok(())
}
