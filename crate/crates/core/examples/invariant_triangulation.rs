//! Invariant triangulations by pulling vertex orbits, the square obstruction
//! and the JSON/OFF exports.
//!
//! cargo run --example invariant_triangulation [INSTANCE]

use eqehrhart::cli::load_instance;
use eqehrhart::triangulate::{
    check_triangulation, forced_invariant_triangulation, invariant_triangulation, is_translative, square_obstruction,
    translative_refine, ComplexJson, PolyComplex,
};

fn main() -> eqehrhart::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "klein-cube".into());
    let inst = load_instance(&name)?;
    let (p, g) = (&inst.polytope, &inst.group);
    let order = g.order() as u64;

    let t = invariant_triangulation(p, g, order)?;
    check_triangulation(&t, p, g, order)?;
    let orbits = t.cell_orbits(g);
    println!(
        "{}: {} cells in {} orbits with vertices in (1/{})M, regular: {}",
        inst.name,
        t.cells().len(),
        orbits.iter().max().map_or(0, |m| m + 1),
        t.denominator(),
        t.certify_regular().is_ok()
    );

    match forced_invariant_triangulation(p, g, 1) {
        Ok(t) => println!("lattice triangulation with {} cells", t.cells().len()),
        Err(e) => println!("N = 1 refused: {e}"),
    }
    let trivial = PolyComplex::trivial(p);
    if let Some(w) = square_obstruction(&trivial, g) {
        println!("square obstruction on face {:?}, edges {:?} and {:?}", w.face, w.edges[0], w.edges[1]);
    }

    if let Some(w) = is_translative(&trivial, g)? {
        println!("not translative: element {} moves vertex {} within {:?}", w.element, w.vertex, w.facet);
    }
    let oct = load_instance("octahedron")?;
    let coned = PolyComplex::trivial(&oct.polytope).pull(&[oct.polytope.barycenter()])?;
    let refined = translative_refine(&coned, &oct.group)?;
    println!("octahedron coned at its center: {} cells, refined to {}", coned.cells().len(), refined.cells().len());

    let json: ComplexJson = t.to_json(Some(g));
    let text = serde_json::to_string(&json).expect("serializable");
    let back = PolyComplex::from_json(&serde_json::from_str(&text).expect("valid JSON"))?;
    println!("JSON round trip preserves cells: {}", back.cells() == t.cells());
    println!("{}", t.to_off().lines().take(3).collect::<Vec<_>>().join("\n"));
    Ok(())
}
