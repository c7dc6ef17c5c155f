//! Writes the bundled corpus as polygon documents.
//!
//! Usage: `cargo run --example write_corpus -- [DIR]` (default `corpus`).

use std::path::PathBuf;

use convex_division::corpus::standard_corpus;
use convex_division::io::PolygonDocument;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    std::fs::create_dir_all(&dir)?;
    for p in standard_corpus() {
        let doc = PolygonDocument::from_polygon(&p.name, &p.polygon);
        std::fs::write(dir.join(format!("{}.json", p.name)), doc.to_json())?;
    }
    Ok(())
}
