//! Reproduce the golden result tables: every headline value and verdict the
//! engine is built to deliver, checked row by row.
//!
//! Each table pins a family of expressions to frozen expected outputs — eta
//! sets, exotic verdicts, orientation covers with deck groups — and recomputes
//! them from scratch. A table is `ok` only when every row matches, so running
//! all seven targets is a complete self-check of the calculus. The same
//! documents back the `fourfold tables <target>` subcommand (exit code 3 on
//! any mismatch).
//!
//! Run with: `cargo run --example theorem_tables`

use fourfold::tables::ALL_TARGETS;
use fourfold::{pretty_json, reproduce, Result, Target, DEFAULT_ENUM_BOUND};

fn main() -> Result<()> {
    println!("== the seven targets ==");
    for &target in &ALL_TARGETS {
        let doc = reproduce(target, None)?;
        let status = if doc.ok { "ok  " } else { "FAIL" };
        println!(
            "[{status}] {:<10} {:>2} rows  {}",
            doc.target,
            doc.rows.len(),
            doc.title
        );
    }

    println!("\n== one table in full ==");
    let doc = reproduce(Target::LemValues, None)?;
    println!("{doc}");

    println!("\n== a single row, up close ==");
    let doc = reproduce(Target::ThmM, None)?;
    let row = &doc.rows[0];
    println!("table:    {}", doc.target);
    println!("item:     {}", row.item);
    println!("detail:   {}", row.detail);
    println!("expected: {}", row.expected);
    println!("actual:   {}", row.actual);
    println!("match:    {}", row.ok);

    println!("\n== rows can carry notes ==");
    let doc = reproduce(Target::ThmM, None)?;
    for row in doc.rows.iter().filter(|r| r.note.is_some()) {
        println!("{}: {}", row.item, row.note.as_deref().unwrap());
    }

    println!("\n== with the oracle cross-check enabled ==");
    let doc = reproduce(Target::PropComp, Some(DEFAULT_ENUM_BOUND))?;
    for row in &doc.rows {
        println!(
            "[{}] {:<16} {}",
            if row.ok { "ok " } else { "FAIL" },
            row.item,
            row.note.as_deref().unwrap_or(""),
        );
    }

    println!("\n== JSON rendering (first rows) ==");
    let doc = reproduce(Target::LemValues, None)?;
    let json = pretty_json(&doc);
    for line in json.lines().take(14) {
        println!("{line}");
    }
    println!("  ...");

    Ok(())
}
