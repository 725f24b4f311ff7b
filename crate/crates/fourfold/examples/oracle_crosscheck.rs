//! Cross-validate the profile engine against an independent brute-force
//! oracle, and check the algebraic laws the calculus rests on.
//!
//! The oracle never looks at the engine's fusion rules: it enumerates every
//! Pin+ structure of an expression directly — one assignment per structure —
//! and evaluates the eta value of each from the atom data alone. Agreement
//! on the full multiset of values is therefore an independent check of the
//! connected-sum, circle-sum, bar, and twist rules at every composite.
//!
//! Run with: `cargo run --example oracle_crosscheck`

use fourfold::{
    agrees_with_profile, atom, brute_values, check_laws, conn_sum, eta_profile, parse, pin_plus,
    twist, Error, Result, DEFAULT_ENUM_BOUND, GENERATORS,
};

fn main() -> Result<()> {
    println!("== engine vs oracle on one expression ==");
    let e = parse("twist(RP4 # Q)").expect("example expressions parse");
    let mut engine = eta_profile(&e)?.values();
    engine.sort();
    let brute = brute_values(&e, DEFAULT_ENUM_BOUND)?;
    println!("expression: {e}");
    println!(
        "engine:     {:?}",
        engine.iter().map(|m| m.num()).collect::<Vec<_>>()
    );
    println!(
        "oracle:     {:?}",
        brute.iter().map(|m| m.num()).collect::<Vec<_>>()
    );
    println!("agree:      {}", engine == brute);

    println!("\n== every generator, and every generator pair ==");
    let mut checked = 0usize;
    for a in GENERATORS {
        if pin_plus(&atom(a)) {
            assert!(agrees_with_profile(&atom(a), DEFAULT_ENUM_BOUND)?);
            checked += 1;
        }
        for b in GENERATORS {
            let e = conn_sum(atom(a), atom(b))?;
            // CP2 summands kill the Pin+ structure set; there is nothing
            // for either side to compute on those pairs.
            if pin_plus(&e) {
                assert!(agrees_with_profile(&e, DEFAULT_ENUM_BOUND)?);
                checked += 1;
            }
        }
    }
    println!("checked {checked} expressions: all profiles agree");

    println!("\n== twisted composites ==");
    for src in [
        "twist(S2gR # S2gR)",
        "twist(KbxS2) #s1 RP4",
        "gluck(Xi3 # S2xS2) # RP4",
    ] {
        let e = parse(src).expect("example expressions parse");
        let ok = agrees_with_profile(&e, DEFAULT_ENUM_BOUND)?;
        println!("{src:<28} agree: {ok}");
    }

    println!("\n== the enumeration bound is a hard cap ==");
    // KbxT2 # KbxT2 has 2^8 = 256 structures; a bound of 100 refuses to run.
    let big = conn_sum(
        atom(fourfold::AtomId::KbxT2),
        atom(fourfold::AtomId::KbxT2),
    )?;
    match brute_values(&big, 100) {
        Err(Error::EnumerationBound { needed, bound }) => {
            println!("needs {needed} evaluations, bound was {bound}: refused")
        }
        other => println!("unexpected: {other:?}"),
    }
    let ok = agrees_with_profile(&big, DEFAULT_ENUM_BOUND)?;
    println!("with the default bound ({DEFAULT_ENUM_BOUND}): agree = {ok}");

    println!("\n== built-in law checks ==");
    let laws = check_laws(DEFAULT_ENUM_BOUND)?;
    println!("{laws}");
    assert!(laws.all_ok());

    // The oracle also backs the twist-shift law: recompute it directly.
    println!("\n== shift law, oracle-side ==");
    let base = parse("S2gR #s1 Q").expect("example expressions parse");
    let twisted = twist(base.clone())?;
    let base_vals = brute_values(&base, DEFAULT_ENUM_BOUND)?;
    let twist_vals = brute_values(&twisted, DEFAULT_ENUM_BOUND)?;
    let mut shifted: Vec<_> = base_vals.iter().map(|m| m.shift16()).collect();
    shifted.sort();
    println!("base values (nums):    {:?}", nums(&base_vals));
    println!("twisted values (nums): {:?}", nums(&twist_vals));
    println!("shift law holds:       {}", shifted == twist_vals);

    Ok(())
}

fn nums(values: &[fourfold::Mod32]) -> Vec<u8> {
    values.iter().map(|m| m.num()).collect()
}
