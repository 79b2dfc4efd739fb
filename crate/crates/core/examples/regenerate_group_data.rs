//! Rewrites the shipped group data files from their generator presentations.
//!
//! ```bash
//! cargo run -p ncmult --example regenerate_group_data
//! ```

use std::path::Path;

use ncmult::group::{presentation, shipped_file_name, SHIPPED_GROUPS};

fn main() -> ncmult::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/groups");
    for name in SHIPPED_GROUPS {
        let data = presentation(name).expect("shipped group has a presentation")?;
        let path = dir.join(shipped_file_name(name));
        std::fs::write(&path, data.to_json()?).map_err(|e| ncmult::Error::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        println!(
            "{name}: order {} irreps {:?} -> {}",
            data.order,
            data.irrep_dims(),
            path.display()
        );
    }
    Ok(())
}
