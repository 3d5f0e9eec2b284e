//! Runs the verification ledger on a built-in corpus and tallies the results.
//!
//! cargo run --release --example verify_corpus [paper|dim2|random|full]

use eqehrhart::cli::{verify_instance, Status};
use eqehrhart::corpus;
use eqehrhart::instance::Instance;
use std::collections::BTreeMap;

fn main() -> eqehrhart::Result<()> {
    let which = std::env::args().nth(1).unwrap_or_else(|| "random".into());
    let raws = match which.as_str() {
        "paper" => corpus::paper_corpus(),
        "dim2" => corpus::dim2_catalog(),
        "full" => corpus::full_corpus(),
        _ => corpus::random_corpus(),
    };
    let mut tally: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for raw in raws {
        let inst = Instance::from_raw(raw)?;
        for c in verify_instance(&inst) {
            let slot = match &c.status {
                Status::Pass => 0,
                Status::Fail(why) => {
                    println!("FAIL {} {}: {why}", inst.name, c.name);
                    1
                }
                Status::Skip(_) => 2,
            };
            tally.entry(c.name).or_default()[slot] += 1;
        }
    }
    println!("{:<40} {:>5} {:>5} {:>5}", "check", "pass", "fail", "skip");
    for (name, [p, f, s]) in tally {
        println!("{name:<40} {p:>5} {f:>5} {s:>5}");
    }
    Ok(())
}
