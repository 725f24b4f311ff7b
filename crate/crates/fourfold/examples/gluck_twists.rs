//! Gluck twists: surgery on an embedded 2-sphere that shifts every eta value
//! by exactly 1.
//!
//! `gluck(X # S2xS2)` regards the belt sphere of the S2xS2 summand as the
//! surgery sphere and rewrites the expression to `X #s1 A`. The result is
//! homeomorphic to the input, and its whole eta profile is the input's
//! shifted by 1 = 16/16 — so whenever the input's eta set is disjoint from
//! its own shift, the twist is certifiably exotic.
//!
//! Run with: `cargo run --example gluck_twists`

use fourfold::{
    conn_sum, csum, eta_set, gluck_twist, parse, smooth_compare, AtomId, Result, Smooth,
};

fn main() -> Result<()> {
    println!("== the rewrite ==");
    for src in ["RP4 # S2xS2", "KbxS2 # S2xS2", "Q # S2xS2 # S2xS2"] {
        let e = parse(src).expect("example expressions parse");
        let g = gluck_twist(&e)?;
        println!("gluck({src})  =  {g}");
    }

    println!("\n== the +1 shift on eta sets ==");
    for src in [
        "RP4 # S2xS2",
        "Q # S2xS2",
        "S2gR # S2xS2",
        "S3tS1 # S2xS2",
        "KbxS2 # S2xS2",
        "Xi3 # S2xS2",
        "KbxT2 # S2xS2",
    ] {
        let e = parse(src).expect("example expressions parse");
        let before = eta_set(&e)?;
        let after = eta_set(&gluck_twist(&e)?)?;
        let shifted = before.shift16() == after;
        println!("{src:<18} {before:<24} -> {after:<24} (+1 shift: {shifted})");
    }

    println!("\n== exotic families from one surgery ==");
    // Stabilizing S3tS1 # S2xS2 with extra spheres keeps the eta set at {1},
    // so each family member and its Gluck twist form an exotic pair.
    for k in 1..=3u32 {
        let mut e = conn_sum(
            fourfold::atom(AtomId::S3tS1),
            fourfold::atom(AtomId::S2xS2),
        )?;
        for _ in 1..k {
            e = conn_sum(e, fourfold::atom(AtomId::S2xS2))?;
        }
        let g = gluck_twist(&e)?;
        match smooth_compare(&g, &e)? {
            Smooth::Exotic {
                left_etas,
                right_etas,
                ..
            } => println!(
                "k = {k}: gluck({e}) vs the input — exotic, eta {left_etas} vs {right_etas}"
            ),
            other => println!("k = {k}: unexpected verdict {other:?}"),
        }
    }

    println!("\n== surgery spheres the construction rejects ==");
    let no_sphere = parse("RP4").unwrap();
    println!("gluck(RP4):        {}", gluck_twist(&no_sphere).unwrap_err());
    let orientable = parse("S4 # S2xS2").unwrap();
    println!("gluck(S4 # S2xS2): {}", gluck_twist(&orientable).unwrap_err());

    println!("\n== where the shift stops certifying ==");
    // csum(4, RP4) # S2xS2 has eta set {8, 24} = its own shift: the Gluck
    // pair is homeomorphic but the sets overlap, so the verdict is Unknown.
    let e = conn_sum(
        csum(4, &fourfold::atom(AtomId::RP4))?,
        fourfold::atom(AtomId::S2xS2),
    )?;
    let g = gluck_twist(&e)?;
    println!("input: {e}");
    println!("eta:   {} vs {}", eta_set(&e)?, eta_set(&g)?);
    match smooth_compare(&g, &e)? {
        Smooth::Unknown { reason } => println!("verdict: unknown ({reason})"),
        other => println!("verdict: {other:?}"),
    }

    Ok(())
}
