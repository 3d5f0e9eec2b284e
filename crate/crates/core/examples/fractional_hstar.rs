//! h*_N in the variable t^(1/N), and the two ways of recovering integral
//! series from it: keeping integral exponents (the N-th dilate) or rounding
//! exponents up (the dilated pyramid).
//!
//! cargo run --example fractional_hstar [INSTANCE] [N]

use eqehrhart::cli::{fmt_series, free_join_check, load_instance};
use eqehrhart::hstar::{classify, hstar, hstar_n, psi_ceil, psi_int};

fn main() -> eqehrhart::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "z3-prism".into());
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let inst = load_instance(&name)?;

    for k in 1..=n {
        let h = hstar_n(&inst, k)?;
        let c = classify(&inst, &h, Some(4 * k))?;
        println!("h*_{k} = {}  (polynomial {}, effective {:?})", fmt_series(&inst, &c.coefficients, k), c.polynomial, c.effective);
    }

    let hn = hstar_n(&inst, n)?;
    let dilate = hstar(&inst.dilate(n as u64)?)?;
    let pyramid = hstar(&inst.pyramid()?.dilate(n as u64)?)?;
    let terms = 4;
    let identity = &hn.per_class[0].series(terms * n + 1);
    let mut lhs = psi_int(identity, n);
    lhs.truncate(terms);
    println!("identity class, Psi_Int(h*_{n})  = {}", lhs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    println!("identity class, h*({n}P)         = {}", dilate.per_class[0].series(terms).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    let mut lhs = psi_ceil(identity, n);
    lhs.truncate(terms);
    println!("identity class, Psi_Ceil(h*_{n}) = {}", lhs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    println!("identity class, h*({n} Pyr P)    = {}", pyramid.per_class[0].series(terms).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));

    let seg = load_instance("circuit-1-1-1")?;
    println!("h* of the free join with {} is the product: {}", seg.name, free_join_check(&inst, &seg)?);
    Ok(())
}
