//! Writes the built-in instances to `corpus/` as JSON files.
//!
//! cargo run --example export_corpus [DIR]

use eqehrhart::corpus;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus"));
    std::fs::create_dir_all(&dir)?;
    for raw in corpus::shipped_corpus() {
        let path = dir.join(format!("{}.json", raw.name));
        std::fs::write(&path, raw.to_json() + "\n")?;
        println!("{}", path.display());
    }
    Ok(())
}
