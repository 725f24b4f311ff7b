//! Compute exact eta-invariant profiles over all Pin+ structures.
//!
//! A Pin+ manifold with H^1(X; Z/2) of dimension d carries 2^d Pin+
//! structures, indexed by labels in {0,1}^d. The eta invariant of each
//! structure is an exact element of (1/16)Z / 2Z, stored as a numerator mod
//! 32 — no floating point anywhere. The profile determines the Z/32 bordism
//! class of each structure and collapses to the *eta set* {num mod 32},
//! which is the smooth invariant the comparison verdicts consume.
//!
//! Run with: `cargo run --example eta_profiles`

use fourfold::{eta_profile, eta_set, parse, structure_count, Result};

fn show(src: &str) -> Result<()> {
    let e = parse(src).expect("example expressions parse");
    let profile = eta_profile(&e)?;
    println!("expression: {e}");
    println!("structures: {}", structure_count(&e)?);
    for entry in profile.entries() {
        // The restriction bit is only meaningful on a non-orientable base:
        // it records the structure's restriction to the designated
        // orientation-reversing loop, the bit circle sums pair on.
        let restriction = if e.orientable() {
            ""
        } else if entry.restr {
            "  (loop restriction +)"
        } else {
            "  (loop restriction -)"
        };
        println!(
            "  {}  eta = {:<5} num = {:>2}  bordism class = {:>2}{}",
            entry.label,
            entry.value.fraction(),
            entry.value.num(),
            entry.value.bordism_class(),
            restriction,
        );
    }
    println!("  eta set: {}", profile.eta_set());
    println!();
    Ok(())
}

fn main() -> Result<()> {
    println!("== single atoms ==");
    show("RP4")?; // the two structures see +/- 1/8
    show("Q")?; // same homeomorphism type as RP4, different eta set
    show("A")?; // orientable but with a Pin+ profile: both values 1

    println!("== connected sums multiply the structure sets ==");
    show("RP4 # RP4")?;
    show("RP4 # S2gR")?;

    println!("== circle sums pair structures with equal loop restriction ==");
    show("RP4 #s1 RP4")?;
    show("csum(4, RP4)")?; // eta set {8, 24}: half the distance to zero

    println!("== sixteen-fold cancellation ==");
    let e = parse("csum(16, RP4)").expect("example expressions parse");
    println!("expression: {e}");
    println!("eta set:    {}", eta_set(&e)?);
    println!("(sixteen circle-summed copies of RP4 bound: every value is 0)");

    println!("\n== arithmetic on eta sets ==");
    let s = eta_set(&parse("RP4").expect("example expressions parse"))?;
    println!("S          = {s}");
    println!("S + 1      = {}", s.shift16());
    println!("-S         = {}", s.negated());
    println!("S + S      = {}", s.sumset(&s));
    println!("closed under negation: {}", s.closed_under_negation());

    println!("\n== non-Pin+ expressions have no profile ==");
    let e = parse("CP2").expect("example expressions parse");
    println!("expression: {e}");
    println!("pin+:       {}", fourfold::pin_plus(&e));
    println!("structures: {}", structure_count(&e)?);

    Ok(())
}
