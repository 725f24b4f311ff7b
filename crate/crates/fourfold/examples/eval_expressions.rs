//! Build manifold expressions — from the DSL or from constructors — and read
//! off their classical invariants.
//!
//! The expression language has eleven generator atoms and four constructions:
//! `#` (connected sum), `#s1` (circle sum along an orientation-reversing
//! loop), `bar(..)` (Pin+ structure reversal), and `twist(..)` / `gluck(..)`
//! (the two surgery operations). `csum(n, X)` abbreviates an n-fold circle
//! sum. Every expression normalizes to a canonical spelling, so two trees
//! denote the same manifold expression exactly when their canonical forms
//! coincide.
//!
//! Run with: `cargo run --example eval_expressions`

use fourfold::{atom, conn_sum, csum, parse, twist, AtomId, Result, ALL_ATOMS, GENERATORS};

fn main() -> Result<()> {
    println!("== the atom alphabet ==");
    println!(
        "{:<8} {:>4} {:>6} {:<12} {:>6} {:>8}",
        "atom", "chi", "h1", "pi1", "pin+", "w2 = 0"
    );
    for id in ALL_ATOMS {
        let e = atom(id);
        println!(
            "{:<8} {:>4} {:>6} {:<12} {:>6} {:>8}",
            id.name(),
            e.chi(),
            e.h1_dim(),
            e.pi1().to_string(),
            fourfold::pin_plus(&e),
            e.w2_zero(),
        );
    }
    println!(
        "\n{} of these are generators (the orientable covers S3xS1, T2xS2,",
        GENERATORS.len()
    );
    println!("T2xT2 only appear as outputs of the covering construction).");

    println!("\n== parsing and canonical forms ==");
    for src in [
        "RP4 # S2xS2 # RP4",
        "csum(3, RP4)",
        "twist(S2gR # Q)",
        "(KbxS2 #s1 A) # CP2",
        "bar(Q) # S4",
    ] {
        let e = parse(src).expect("example expressions parse");
        println!("{src:<24} ->  {e}");
    }

    println!("\n== the same expression two ways ==");
    let via_dsl = parse("S2gR # csum(2, RP4)").expect("example expressions parse");
    let via_api = conn_sum(
        csum(2, &atom(AtomId::RP4))?,
        atom(AtomId::S2gR),
    )?
    .normalize();
    println!("dsl:          {via_dsl}");
    println!("constructors: {via_api}");
    assert_eq!(via_dsl, via_api);
    println!("equal:        true");

    println!("\n== invariants of a composite ==");
    let e = parse("twist(S2gR) # Q # S2xS2").expect("example expressions parse");
    println!("expression:  {e}");
    println!("chi:         {}", e.chi());
    println!("sigma:       {}", e.sigma());
    println!("orientable:  {}", e.orientable());
    println!("pi1:         {}", e.pi1());
    println!("H^1 dim:     {}", e.h1_dim());
    println!("w2 = 0:      {}", e.w2_zero());

    println!("\n== constructions are checked eagerly ==");
    let err = twist(atom(AtomId::CP2)).unwrap_err();
    println!("twist(CP2):  {err}");
    let err = parse("S4 #s1 RP4").unwrap_err();
    println!("S4 #s1 RP4:  rejected at {}:{} ({})", err.line, err.col, err.message);

    Ok(())
}
