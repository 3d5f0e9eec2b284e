//! Character tables, permutation characters, induction and the JSON form of
//! a table.
//!
//! cargo run --example character_tables

use eqehrhart::cli::{fmt_character, load_instance};
use eqehrhart::exactlin::Rat;
use eqehrhart::instance::RawTable;
use eqehrhart::repr_ring::{decompose, induce, inner_product, perm_character, restrict, Cyclo};

fn main() -> eqehrhart::Result<()> {
    let cube = load_instance("klein-cube")?;
    let verts = cube.polytope.vertices().to_vec();
    let chi = perm_character(&cube.group, &verts)?;
    println!("cube vertices: {chi} = {}", fmt_character(&cube, &chi));

    let prism = load_instance("sym4-prism")?;
    let (g, table) = (&prism.group, prism.table.as_ref().expect("built-in table"));
    println!("\n{} table ({}):", prism.name, table.source);
    for (name, ch) in table.names.iter().zip(&table.chars) {
        println!("  {name:<9} {ch}");
    }

    // Frobenius reciprocity for the stabilizer of a vertex
    let v = &prism.polytope.vertices()[0];
    let stab: Vec<usize> = (0..g.order()).filter(|&x| g.element(x).apply(v) == *v).collect();
    let ones = vec![Cyclo::one(); stab.len()];
    let ind = induce(g, &stab, &ones)?;
    println!("\nInd of the trivial character from a vertex stabilizer: {}", fmt_character(&prism, &ind));
    for (name, ch) in table.names.iter().zip(&table.chars) {
        let lhs = inner_product(g, &ind, ch);
        let res = restrict(g, &stab, ch)?;
        let rhs = res.iter().fold(Cyclo::zero(), |s, x| &s + x).scale(&Rat::new(1.into(), (stab.len() as i64).into()));
        println!("  <Ind 1, {name}> = {lhs} = <1, Res {name}> = {rhs}");
    }
    println!("multiplicities {:?}", decompose(g, table, &ind)?.iter().map(|k| k.to_string()).collect::<Vec<_>>());

    let raw = RawTable::from_table(g, table);
    println!("\n{}", serde_json::to_string(&raw).expect("serializable"));
    Ok(())
}
