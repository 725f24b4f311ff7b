//! Certify exotic pairs: homeomorphic manifolds with no diffeomorphism.
//!
//! `homeo` identifies two expressions by rewriting both to a common form and
//! returns the replayable chain; `smooth_compare` then separates them when
//! their eta sets are disjoint (the eta set is a diffeomorphism invariant, so
//! disjoint sets on a homeomorphic pair certify an exotic smooth structure).
//! When the sets overlap the verdict stays Unknown — the method is one-sided
//! — and `limits_report` shows the two-class ceiling behind that limit.
//!
//! Run with: `cargo run --example exotic_pairs`

use fourfold::{homeo, limits_report, parse, replay, smooth_compare, Homeo, Result, Smooth};

fn compare(left_src: &str, right_src: &str) -> Result<()> {
    let left = parse(left_src).expect("example expressions parse");
    let right = parse(right_src).expect("example expressions parse");
    println!("left:   {left}");
    println!("right:  {right}");

    let verdict = homeo(&left, &right)?;
    match &verdict {
        Homeo::Yes { common, chain } => {
            println!("homeomorphic: yes, common form {common}");
            for step in chain {
                println!("    {step}");
            }
            // Every chain re-checks: replay applies each step to the stated
            // input and verifies it lands on the stated output.
            replay(&left, &right, &verdict)?;
            println!("    (chain replayed and verified)");
        }
        Homeo::Unknown { reason } => println!("homeomorphic: unknown ({reason})"),
    }

    match smooth_compare(&left, &right)? {
        Smooth::Diffeomorphic { witness, .. } => {
            println!("smooth: diffeomorphic via {witness}");
        }
        Smooth::Exotic {
            left_etas,
            right_etas,
            ..
        } => {
            println!("smooth: EXOTIC — eta sets {left_etas} vs {right_etas} are disjoint");
        }
        Smooth::Unknown { reason } => println!("smooth: unknown ({reason})"),
    }
    println!();
    Ok(())
}

fn main() -> Result<()> {
    println!("== the twist produces exotic smooth structures ==");
    compare("twist(S2gR)", "S2gR")?;
    compare("twist(RP4 #s1 RP4)", "RP4 #s1 RP4")?;

    println!("== Q and RP4: homeomorphic atoms, exotic pair ==");
    compare("Q", "RP4")?;

    println!("== one CP2 summand dissolves the difference ==");
    compare("twist(S2gR) # CP2", "S2gR # CP2")?;
    compare("Q # CP2", "RP4 # CP2")?;

    println!("== the boundary of the method ==");
    // On csum(4, RP4) the eta set {8, 24} is its own +1 shift, so the twist
    // pair cannot be separated: at most two smooth structures are ever
    // distinguished within one homeomorphism type.
    compare("twist(csum(4, RP4))", "csum(4, RP4)")?;

    println!("== the two-class ceiling, explicitly ==");
    let family = [
        parse("S2gR").unwrap(),
        parse("twist(S2gR)").unwrap(),
        parse("twist(twist(S2gR))").unwrap(),
        parse("twist(twist(twist(S2gR)))").unwrap(),
    ];
    let report = limits_report(&family)?;
    println!("family of {} mutually homeomorphic expressions:", family.len());
    for class in &report.classes {
        println!("  eta set {}:", class.eta_fractions);
        for member in &class.members {
            println!("      {member}");
        }
    }
    println!(
        "classes: {} (two classes always differ by the +1 shift: {})",
        report.classes.len(),
        report.shift_between_classes,
    );

    Ok(())
}
