//! Orientation double covers, and exotic pairs as inequivalent involutions.
//!
//! Every non-orientable expression has an orientable double cover, computed
//! by a traced rule chain (C0–C8). When an exotic pair shares its cover, the
//! two deck transformations are free orientation-reversing involutions on
//! one smooth orientable manifold that no equivariant diffeomorphism can
//! identify — `involution_report` packages that witness.
//!
//! Run with: `cargo run --example orientation_covers`

use fourfold::{
    involution_report, orientation_cover_traced, parse, Result,
};

fn show_cover(src: &str) -> Result<()> {
    let e = parse(src).expect("example expressions parse");
    let (cover, rules) = orientation_cover_traced(&e)?;
    println!("base:   {e}   (chi {}, pi1 {})", e.chi(), e.pi1());
    println!("cover:  {cover}   (chi {}, pi1 {})", cover.chi(), cover.pi1());
    println!("rules:  {}", rules.join(", "));
    assert_eq!(cover.chi(), 2 * e.chi());
    println!();
    Ok(())
}

fn main() -> Result<()> {
    println!("== covers of the atoms ==");
    show_cover("RP4")?; // S4
    show_cover("S2gR")?; // S2xS2
    show_cover("S3tS1")?; // S3xS1
    show_cover("KbxT2")?; // T2xT2

    println!("== covers of composites ==");
    show_cover("RP4 # S2gR")?;
    show_cover("csum(3, RP4)")?;
    show_cover("KbxS2 #s1 A")?;
    show_cover("twist(Q # S2xS2)")?; // the twist never changes the cover

    println!("== exotic pairs give inequivalent involutions ==");
    for (exotic, standard) in [
        ("twist(RP4 #s1 RP4)", "RP4 #s1 RP4"),
        ("gluck(S3tS1 # S2xS2)", "S3tS1 # S2xS2"),
        ("gluck(KbxS2 # S2xS2)", "KbxS2 # S2xS2"),
        ("Q # RP4", "RP4 # RP4"),
    ] {
        let left = parse(exotic).expect("example expressions parse");
        let right = parse(standard).expect("example expressions parse");
        let report = involution_report(&left, &right)?;
        println!("pair:   {}  vs  {}", report.left, report.right);
        println!("cover:  {}", report.cover);
        println!("group:  {}", report.group);
        println!(
            "        two free orientation-reversing involutions, eta {:?} vs {:?}",
            report.left_eta_nums, report.right_eta_nums
        );
        println!();
    }

    println!("== pairs the witness construction rejects ==");
    let left = parse("twist(S2gR) # CP2").unwrap();
    let right = parse("S2gR # CP2").unwrap();
    println!(
        "diffeomorphic pair: {}",
        involution_report(&left, &right).unwrap_err()
    );

    Ok(())
}
