//! Independent brute-force evaluator.
//!
//! The engine computes eta profiles by structural fusion. This module
//! recomputes them the slow way — enumerate every joint choice of Pin+
//! structure over the leaves, filter the choices that glue across circle
//! sums, and read the value off each survivor — so the two paths can be
//! compared on any expression. Nothing here shares code with the fusion
//! rules in [`crate::invariants`].

use crate::error::{Error, Result};
use crate::expr::{atom, conn_sum, csum, AtomId, Expr, GENERATORS};
use crate::invariants::{EtaSet, Mod32};

/// Default ceiling on enumerated leaf assignments (2^20).
pub const DEFAULT_ENUM_BOUND: u64 = 1 << 20;

/// One leaf of the expression tree: the Pin+ choices it contributes.
/// `restr` is the restriction of the structure to the designated loop
/// (None when the leaf is orientable and carries no loop).
struct Leaf {
    entries: Vec<(Option<bool>, Mod32)>,
}

fn collect_leaves(e: &Expr, out: &mut Vec<Leaf>) {
    match e {
        Expr::Atom(a) => {
            let rec = a.record();
            let entries = rec
                .profile
                .entries()
                .iter()
                .map(|en| {
                    let restr = if rec.orientable { None } else { Some(en.restr) };
                    (restr, en.value)
                })
                .collect();
            out.push(Leaf { entries });
        }
        // The mapping torus: one loop, both restrictions available, and a
        // constant contribution of 1 either way.
        Expr::TwistToken => out.push(Leaf {
            entries: vec![(Some(false), Mod32::ONE), (Some(true), Mod32::ONE)],
        }),
        Expr::ConnSum(parts) => parts.iter().for_each(|p| collect_leaves(p, out)),
        Expr::CircleSum(x, y) => {
            collect_leaves(x, out);
            collect_leaves(y, out);
        }
        Expr::Bar(x) => collect_leaves(x, out),
    }
}

/// Evaluate one joint assignment. Returns the eta value and the loop
/// restriction of the subtree, or None when the assignment does not glue
/// across a circle sum.
fn eval(e: &Expr, leaves: &[Leaf], pick: &[usize], pos: &mut usize) -> Option<(Mod32, Option<bool>)> {
    match e {
        Expr::Atom(_) | Expr::TwistToken => {
            let (restr, value) = leaves[*pos].entries[pick[*pos]];
            *pos += 1;
            Some((value, restr))
        }
        Expr::Bar(x) => {
            let (v, r) = eval(x, leaves, pick, pos)?;
            Some((v.neg(), r))
        }
        Expr::ConnSum(parts) => {
            let mut v = Mod32::ZERO;
            let mut restr = None;
            for p in parts {
                let (pv, pr) = eval(p, leaves, pick, pos)?;
                v = v.add(pv);
                // the designated loop lives in the first non-orientable summand
                restr = restr.or(pr);
            }
            Some((v, restr))
        }
        Expr::CircleSum(x, y) => {
            let (vx, rx) = eval(x, leaves, pick, pos)?;
            let (vy, ry) = eval(y, leaves, pick, pos)?;
            // Gluing identifies the two loops, so the structures must agree
            // on them; both operands are non-orientable, so both carry one.
            let (Some(rx), Some(ry)) = (rx, ry) else {
                return None;
            };
            if rx != ry {
                return None;
            }
            Some((vx.add(vy), Some(rx)))
        }
    }
}

/// Enumerate all leaf assignments and return the surviving eta values,
/// sorted, one per Pin+ structure of the whole expression. Errors if the
/// assignment count exceeds `bound`.
///
/// Enumeration walks the canonical form, so the designated loop of a
/// connected sum is taken in its canonically first non-orientable summand —
/// the same convention the fusion engine uses.
pub fn brute_values(e: &Expr, bound: u64) -> Result<Vec<Mod32>> {
    e.validate()?;
    if !e.w2_zero() {
        return Err(Error::NoPinStructure(e.to_string()));
    }
    let e = &e.normalize();
    let mut leaves = Vec::new();
    collect_leaves(e, &mut leaves);
    let total: u128 = leaves.iter().map(|l| l.entries.len() as u128).product();
    if total > bound as u128 {
        return Err(Error::EnumerationBound { needed: total, bound });
    }

    let mut pick = vec![0usize; leaves.len()];
    let mut values = Vec::new();
    'outer: loop {
        let mut pos = 0;
        if let Some((v, _)) = eval(e, &leaves, &pick, &mut pos) {
            debug_assert_eq!(pos, leaves.len());
            values.push(v);
        }
        for i in 0..pick.len() {
            pick[i] += 1;
            if pick[i] < leaves[i].entries.len() {
                continue 'outer;
            }
            pick[i] = 0;
        }
        break;
    }

    let expected = 1u128 << e.h1_dim().min(127);
    if values.len() as u128 != expected {
        return Err(Error::Internal(format!(
            "oracle found {} structures on {e}, expected 2^{}",
            values.len(),
            e.h1_dim()
        )));
    }
    values.sort();
    Ok(values)
}

/// The set of eta values over all Pin+ structures, by brute enumeration.
pub fn brute_eta_set(e: &Expr, bound: u64) -> Result<EtaSet> {
    Ok(EtaSet::from_iter(brute_values(e, bound)?))
}

/// True when the fusion engine and the brute-force path produce the same
/// multiset of eta values on `e`.
pub fn agrees_with_profile(e: &Expr, bound: u64) -> Result<bool> {
    let brute = brute_values(e, bound)?;
    let mut engine = crate::invariants::eta_profile(e)?.values();
    engine.sort();
    Ok(brute == engine)
}

/// Outcome of the built-in law checks.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LawsReport {
    /// Z/32 arithmetic: commutative group with 16-torsion generator.
    pub group_laws: bool,
    /// Sixteen circle-summed copies of RP4 land on eta set {0}.
    pub sixteen_fold: bool,
    /// Connected sums of generator pairs realize exactly the value sums.
    pub conn_sum_sumset: bool,
    /// Structure reversal negates every value.
    pub bar_negation: bool,
    /// Number of individual checks performed.
    pub cases: usize,
}

impl LawsReport {
    pub fn all_ok(&self) -> bool {
        self.group_laws && self.sixteen_fold && self.conn_sum_sumset && self.bar_negation
    }
}

impl std::fmt::Display for LawsReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        writeln!(f, "group laws (Z/32):        {}", mark(self.group_laws))?;
        writeln!(f, "16-fold RP4 cancellation: {}", mark(self.sixteen_fold))?;
        writeln!(f, "connected-sum sumset:     {}", mark(self.conn_sum_sumset))?;
        writeln!(f, "bar negation:             {}", mark(self.bar_negation))?;
        write!(f, "cases checked:            {}", self.cases)
    }
}

/// Check the algebraic laws the whole calculus leans on, by enumeration.
pub fn check_laws(bound: u64) -> Result<LawsReport> {
    let mut cases = 0usize;

    // Z/32 group laws over every element (and every triple for associativity).
    let mut group_laws = true;
    for a in 0..32u8 {
        let x = Mod32::new(a as i64);
        group_laws &= x.add(Mod32::ZERO) == x;
        group_laws &= x.add(x.neg()) == Mod32::ZERO;
        group_laws &= x.neg().neg() == x;
        for b in 0..32u8 {
            let y = Mod32::new(b as i64);
            group_laws &= x.add(y) == y.add(x);
            for c in 0..32u8 {
                let z = Mod32::new(c as i64);
                group_laws &= x.add(y).add(z) == x.add(y.add(z));
                cases += 1;
            }
        }
    }

    // The order-16 relation: circle-summing sixteen copies of RP4 kills
    // every eta value.
    let sixteen = csum(16, &atom(AtomId::RP4))?;
    let sixteen_fold = brute_eta_set(&sixteen, bound)? == EtaSet::from_nums(&[0]);
    cases += 1;

    // eta(X # Y) ranges over exactly eta(X) + eta(Y), for every pair of
    // Pin+ generators.
    let pin_gens: Vec<AtomId> = GENERATORS
        .iter()
        .copied()
        .filter(|a| a.record().w2_zero)
        .collect();
    let mut conn_sum_sumset = true;
    for &ga in &pin_gens {
        for &gb in &pin_gens {
            let joined = brute_eta_set(&conn_sum(atom(ga), atom(gb))?, bound)?;
            let summed = brute_eta_set(&atom(ga), bound)?
                .sumset(&brute_eta_set(&atom(gb), bound)?);
            conn_sum_sumset &= joined == summed;
            cases += 1;
        }
    }

    // Reversing structures negates values, on atoms and on sums of pairs.
    let mut bar_negation = true;
    for &ga in &pin_gens {
        let plain = brute_eta_set(&atom(ga), bound)?;
        let barred = brute_eta_set(&crate::expr::bar(atom(ga))?, bound)?;
        bar_negation &= barred == plain.negated();
        cases += 1;
    }
    for &ga in &pin_gens {
        for &gb in &pin_gens {
            let sum = conn_sum(atom(ga), atom(gb))?;
            let barred = brute_eta_set(&crate::expr::bar(sum.clone())?, bound)?;
            bar_negation &= barred == brute_eta_set(&sum, bound)?.negated();
            cases += 1;
        }
    }

    Ok(LawsReport {
        group_laws,
        sixteen_fold,
        conn_sum_sumset,
        bar_negation,
        cases,
    })
}
