//! Writes the catalog rules as JSON rule files.
//!
//! ```text
//! cargo run --example export_rules -- crates/core/rules
//! ```

use qca_lab::ca::catalog;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "rules".into());
    std::fs::create_dir_all(&dir)?;
    let rules = [
        ("xor", catalog::xor()),
        ("identity", catalog::identity()),
        ("shift", catalog::shift()),
        ("negshift", catalog::negated_shift()),
        ("eca30", catalog::elementary(30)),
    ];
    for (file, rule) in rules {
        let path = format!("{dir}/{file}.json");
        std::fs::write(&path, rule.to_json() + "\n")?;
        println!("{path}");
    }
    Ok(())
}
