//! Regenerates `corpus/` from the builder programs in `hhtkit::corpus`.

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    hhtkit::corpus::write_all(&dir)?;
    println!("wrote {}", dir.display());
    Ok(())
}
