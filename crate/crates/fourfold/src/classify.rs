//! Homeomorphism and smooth-structure verdicts.
//!
//! The engine certifies sameness only through a fixed rewriting system, so a
//! homeomorphism verdict is `Yes` (with a replayable rule chain) or
//! `Unknown` — never "No". Smooth comparison layers the eta invariant on
//! top: a homeomorphic pair with disjoint eta sets is an exotic pair, and a
//! separate family of collapse rules witnesses that the difference dies
//! after one CP2 stabilization.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{atom, conn_sum, AtomId, Expr, GroupTag};
use crate::invariants::{eta_set, EtaSet};

/// A rewriting rule: its short id and the statement it implements.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RuleInfo {
    pub id: &'static str,
    pub statement: &'static str,
}

/// The homeomorphism rule base. R5 (congruence) never appears in chains;
/// it is the license to rewrite inside contexts.
pub const HOMEO_RULES: [RuleInfo; 7] = [
    RuleInfo {
        id: "R0",
        statement: "identical canonical forms",
    },
    RuleInfo {
        id: "R1",
        statement: "the twist is undone by a self-homeomorphism when the fundamental group is Z/2",
    },
    RuleInfo {
        id: "R2",
        statement: "circle-summing A onto a Pin+ manifold is topologically the S2xS2 stabilization",
    },
    RuleInfo {
        id: "R3",
        statement: "A is homeomorphic to S3tS1 # S2xS2",
    },
    RuleInfo {
        id: "R4",
        statement: "Q is homeomorphic to RP4",
    },
    RuleInfo {
        id: "R5",
        statement: "rewriting applies inside # and #s1 contexts",
    },
    RuleInfo {
        id: "R6",
        statement: "non-orientable manifolds with fundamental group Z, w2 = 0, the same Euler \
                    characteristic >= 6, and three S2xS2 stabilizations each are homeomorphic",
    },
];

/// The diffeomorphism collapse rules, valid in the presence of a CP2
/// connected summand.
pub const DIFFEO_RULES: [RuleInfo; 4] = [
    RuleInfo {
        id: "D0",
        statement: "identical canonical forms",
    },
    RuleInfo {
        id: "D1",
        statement: "next to a CP2 summand the twist is undone by a diffeomorphism",
    },
    RuleInfo {
        id: "D2",
        statement: "next to a CP2 summand the Gluck twist is undone: W #s1 A becomes W # S2xS2",
    },
    RuleInfo {
        id: "D3",
        statement: "next to a CP2 summand Q becomes RP4",
    },
];

fn rule(id: &'static str) -> &'static RuleInfo {
    HOMEO_RULES
        .iter()
        .chain(DIFFEO_RULES.iter())
        .find(|r| r.id == id)
        .expect("known rule id")
}

/// Which input a chain step was applied to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Both,
}

/// One replayable step of a verdict chain.
#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub side: Side,
    pub rule: &'static str,
    pub statement: &'static str,
    pub before: String,
    pub after: String,
}

impl std::fmt::Display for Step {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = match self.side {
            Side::Left => "left ",
            Side::Right => "right",
            Side::Both => "both ",
        };
        write!(f, "[{} {}] {}  =>  {}", self.rule, side, self.before, self.after)
    }
}

/// Homeomorphism verdict.
#[derive(Clone, Debug)]
pub enum Homeo {
    /// Both sides rewrite to `common`; `chain` is never empty.
    Yes { common: String, chain: Vec<Step> },
    /// The rule base neither identifies nor (being one-directional)
    /// separates the pair.
    Unknown { reason: String },
}

impl Homeo {
    pub fn is_yes(&self) -> bool {
        matches!(self, Homeo::Yes { .. })
    }
}

/// Smooth-comparison verdict.
#[derive(Clone, Debug)]
pub enum Smooth {
    /// A collapse chain connects the two expressions.
    Diffeomorphic { witness: String, chain: Vec<Step> },
    /// Homeomorphic with disjoint eta sets: no diffeomorphism can exist.
    Exotic {
        chain: Vec<Step>,
        left_etas: EtaSet,
        right_etas: EtaSet,
    },
    Unknown { reason: String },
}

// ---------------------------------------------------------------------------
// homeomorphism rewriting

/// Rewrite the first redex in pre-order (root before children, children left
/// to right). Root-first order makes the Gluck collapse R2 take priority
/// over expanding the A inside it with R3.
fn rewrite_once(e: &Expr) -> Option<(Expr, &'static RuleInfo)> {
    if let Expr::CircleSum(x, y) = e {
        if **y == Expr::TwistToken && x.pi1() == GroupTag::Z2 {
            return Some(((**x).clone(), rule("R1")));
        }
        if **y == Expr::Atom(AtomId::A) && x.w2_zero() {
            let next = conn_sum((**x).clone(), atom(AtomId::S2xS2))
                .expect("stabilizing a valid expression");
            return Some((next, rule("R2")));
        }
    }
    if *e == Expr::Atom(AtomId::A) {
        let next = conn_sum(atom(AtomId::S3tS1), atom(AtomId::S2xS2)).expect("atoms");
        return Some((next, rule("R3")));
    }
    if *e == Expr::Atom(AtomId::Q) {
        return Some((atom(AtomId::RP4), rule("R4")));
    }
    // congruence: recurse into the children
    match e {
        Expr::ConnSum(parts) => {
            for (i, p) in parts.iter().enumerate() {
                if let Some((next, r)) = rewrite_once(p) {
                    let mut parts = parts.clone();
                    parts[i] = next;
                    return Some((Expr::ConnSum(parts), r));
                }
            }
            None
        }
        Expr::CircleSum(x, y) => {
            if let Some((next, r)) = rewrite_once(x) {
                return Some((Expr::CircleSum(Box::new(next), y.clone()), r));
            }
            if let Some((next, r)) = rewrite_once(y) {
                return Some((Expr::CircleSum(x.clone(), Box::new(next)), r));
            }
            None
        }
        Expr::Bar(x) => {
            rewrite_once(x).map(|(next, r)| (Expr::Bar(Box::new(next)), r))
        }
        Expr::Atom(_) | Expr::TwistToken => None,
    }
}

/// Reduce to a rewriting normal form, recording each step. Terminates:
/// every rule strictly decreases the number of A, Q and twist tokens.
fn reduce(e: &Expr, side: Side) -> (Expr, Vec<Step>) {
    let mut cur = e.normalize();
    let mut steps = Vec::new();
    while let Some((next, info)) = rewrite_once(&cur) {
        let next = next.normalize();
        steps.push(Step {
            side,
            rule: info.id,
            statement: info.statement,
            before: cur.to_string(),
            after: next.to_string(),
        });
        cur = next;
    }
    (cur, steps)
}

/// The stable identification: non-orientable, fundamental group Z, w2 = 0,
/// equal Euler characteristic of at least 6, and at least three S2xS2
/// summands on each side.
fn stably_identified(l: &Expr, r: &Expr) -> bool {
    !l.orientable()
        && !r.orientable()
        && l.pi1() == GroupTag::Z
        && r.pi1() == GroupTag::Z
        && l.w2_zero()
        && r.w2_zero()
        && l.chi() == r.chi()
        && l.chi() >= 6
        && l.count_atom(AtomId::S2xS2) >= 3
        && r.count_atom(AtomId::S2xS2) >= 3
}

/// Describe the first classical invariant on which the two expressions
/// disagree, if any.
fn invariant_mismatch(x: &Expr, y: &Expr) -> Option<String> {
    if x.orientable() != y.orientable() {
        return Some(format!(
            "orientability differs: {} vs {}",
            x.orientable(),
            y.orientable()
        ));
    }
    if x.pi1() != y.pi1() {
        return Some(format!(
            "fundamental groups differ: {} vs {}",
            x.pi1(),
            y.pi1()
        ));
    }
    if x.chi() != y.chi() {
        return Some(format!(
            "Euler characteristics differ: {} vs {}",
            x.chi(),
            y.chi()
        ));
    }
    if x.h1_dim() != y.h1_dim() {
        return Some(format!(
            "H^1 dimensions differ: {} vs {}",
            x.h1_dim(),
            y.h1_dim()
        ));
    }
    if x.w2_zero() != y.w2_zero() {
        return Some(format!(
            "w2 classes differ: w2 = 0 is {} vs {}",
            x.w2_zero(),
            y.w2_zero()
        ));
    }
    None
}

/// Homeomorphism verdict for a pair of expressions: reduce both sides under
/// the rule base, then compare normal forms (literal equality, or the stable
/// rule). Every `Yes` is cross-checked against the classical invariants.
pub fn homeo(x: &Expr, y: &Expr) -> Result<Homeo> {
    x.validate()?;
    y.validate()?;
    let (lx, mut chain) = reduce(x, Side::Left);
    let (ly, right_steps) = reduce(y, Side::Right);
    chain.extend(right_steps);

    let verdict = if lx == ly {
        if chain.is_empty() {
            let info = rule("R0");
            chain.push(Step {
                side: Side::Both,
                rule: info.id,
                statement: info.statement,
                before: lx.to_string(),
                after: ly.to_string(),
            });
        }
        Homeo::Yes {
            common: lx.to_string(),
            chain,
        }
    } else if stably_identified(&lx, &ly) {
        let info = rule("R6");
        chain.push(Step {
            side: Side::Both,
            rule: info.id,
            statement: info.statement,
            before: lx.to_string(),
            after: ly.to_string(),
        });
        Homeo::Yes {
            common: ly.to_string(),
            chain,
        }
    } else {
        let reason = match invariant_mismatch(x, y) {
            Some(m) => format!("invariant mismatch: {m}"),
            None => format!(
                "no rule connects the reduced forms {lx} and {ly}; \
                 all classical invariants agree"
            ),
        };
        return Ok(Homeo::Unknown { reason });
    };

    // a Yes verdict must be consistent with every classical invariant
    if let Some(m) = invariant_mismatch(x, y) {
        return Err(Error::Internal(format!(
            "rule chain identified expressions with distinct invariants ({m})"
        )));
    }
    Ok(verdict)
}

/// Re-execute a verdict's chain step by step and confirm it reproduces the
/// verdict. Errors indicate an engine bug.
pub fn replay(x: &Expr, y: &Expr, verdict: &Homeo) -> Result<()> {
    let Homeo::Yes { common, chain } = verdict else {
        return Ok(());
    };
    if chain.is_empty() {
        return Err(Error::Internal("empty rule chain on a Yes verdict".into()));
    }
    let mut left = x.normalize();
    let mut right = y.normalize();
    for step in chain {
        match step.rule {
            "R0" => {
                if left != right {
                    return Err(Error::Internal("R0 step on distinct forms".into()));
                }
            }
            "R6" => {
                if !stably_identified(&left, &right) {
                    return Err(Error::Internal("R6 step without its conditions".into()));
                }
            }
            _ => {
                let cur = match step.side {
                    Side::Left => &mut left,
                    Side::Right => &mut right,
                    Side::Both => {
                        return Err(Error::Internal(format!(
                            "rule {} cannot apply to both sides at once",
                            step.rule
                        )))
                    }
                };
                if cur.to_string() != step.before {
                    return Err(Error::Internal(format!(
                        "step expects {} but the side reads {cur}",
                        step.before
                    )));
                }
                let Some((next, info)) = rewrite_once(cur) else {
                    return Err(Error::Internal(format!("no redex in {cur}")));
                };
                if info.id != step.rule {
                    return Err(Error::Internal(format!(
                        "recorded rule {} but {} fires",
                        step.rule, info.id
                    )));
                }
                let next = next.normalize();
                if next.to_string() != step.after {
                    return Err(Error::Internal(format!(
                        "rule {} produced {next}, chain recorded {}",
                        step.rule, step.after
                    )));
                }
                *cur = next;
            }
        }
    }
    let last_is_r6 = chain.last().map(|s| s.rule) == Some("R6");
    if !last_is_r6 && left != right {
        return Err(Error::Internal(
            "chain replay did not join the two sides".into(),
        ));
    }
    if !last_is_r6 && left.to_string() != *common {
        return Err(Error::Internal(
            "chain replay reached a different common form".into(),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// diffeomorphism collapse next to a CP2 summand

fn d_rewrite_once(e: &Expr) -> Option<(Expr, &'static RuleInfo)> {
    if let Expr::CircleSum(x, y) = e {
        if **y == Expr::TwistToken {
            return Some(((**x).clone(), rule("D1")));
        }
        if **y == Expr::Atom(AtomId::A) {
            let next = conn_sum((**x).clone(), atom(AtomId::S2xS2)).expect("stabilization");
            return Some((next, rule("D2")));
        }
    }
    if *e == Expr::Atom(AtomId::Q) {
        return Some((atom(AtomId::RP4), rule("D3")));
    }
    match e {
        Expr::ConnSum(parts) => {
            for (i, p) in parts.iter().enumerate() {
                if let Some((next, r)) = d_rewrite_once(p) {
                    let mut parts = parts.clone();
                    parts[i] = next;
                    return Some((Expr::ConnSum(parts), r));
                }
            }
            None
        }
        Expr::CircleSum(x, y) => {
            if let Some((next, r)) = d_rewrite_once(x) {
                return Some((Expr::CircleSum(Box::new(next), y.clone()), r));
            }
            if let Some((next, r)) = d_rewrite_once(y) {
                return Some((Expr::CircleSum(x.clone(), Box::new(next)), r));
            }
            None
        }
        Expr::Bar(x) => d_rewrite_once(x).map(|(next, r)| (Expr::Bar(Box::new(next)), r)),
        Expr::Atom(_) | Expr::TwistToken => None,
    }
}

fn has_cp2_summand(e: &Expr) -> bool {
    match e {
        Expr::ConnSum(parts) => parts.contains(&Expr::Atom(AtomId::CP2)),
        _ => *e == Expr::Atom(AtomId::CP2),
    }
}

/// Collapse an expression with a top-level CP2 summand under the D-rules:
/// twists and Gluck twists are undone, Q becomes RP4. Returns the collapsed
/// form and the ids of the rules applied.
pub fn cp2_stabilize(x: &Expr) -> Result<(Expr, Vec<&'static str>)> {
    x.validate()?;
    let mut cur = x.normalize();
    if !has_cp2_summand(&cur) {
        return Err(Error::NoCp2Summand(x.to_string()));
    }
    let mut rules = Vec::new();
    while let Some((next, info)) = d_rewrite_once(&cur) {
        rules.push(info.id);
        cur = next.normalize();
    }
    Ok((cur, rules))
}

/// Smooth comparison. Identical canonical forms are diffeomorphic (D0);
/// pairs carrying a CP2 summand are compared after D-rule collapse; beyond
/// that, a homeomorphic pair with disjoint eta sets is exotic, and anything
/// else is unknown.
pub fn smooth_compare(x: &Expr, y: &Expr) -> Result<Smooth> {
    x.validate()?;
    y.validate()?;
    let nx = x.normalize();
    let ny = y.normalize();
    if nx == ny {
        let info = rule("D0");
        return Ok(Smooth::Diffeomorphic {
            witness: nx.to_string(),
            chain: vec![Step {
                side: Side::Both,
                rule: info.id,
                statement: info.statement,
                before: nx.to_string(),
                after: ny.to_string(),
            }],
        });
    }
    if has_cp2_summand(&nx) && has_cp2_summand(&ny) {
        let (dx, rx) = cp2_stabilize(&nx)?;
        let (dy, ry) = cp2_stabilize(&ny)?;
        if dx == dy {
            let mut chain = Vec::new();
            for (side, ids, src) in [(Side::Left, rx, &nx), (Side::Right, ry, &ny)] {
                let mut cur = src.clone();
                for id in ids {
                    let (next, info) = d_rewrite_once(&cur).expect("replays");
                    debug_assert_eq!(info.id, id);
                    let next = next.normalize();
                    chain.push(Step {
                        side,
                        rule: info.id,
                        statement: info.statement,
                        before: cur.to_string(),
                        after: next.to_string(),
                    });
                    cur = next;
                }
            }
            return Ok(Smooth::Diffeomorphic {
                witness: dx.to_string(),
                chain,
            });
        }
    }
    match homeo(x, y)? {
        Homeo::Unknown { reason } => Ok(Smooth::Unknown {
            reason: format!("homeomorphism unresolved: {reason}"),
        }),
        Homeo::Yes { chain, .. } => {
            if !x.w2_zero() {
                return Ok(Smooth::Unknown {
                    reason: "homeomorphic, but no Pin+ structure is available to compare".into(),
                });
            }
            let (ex, ey) = match (eta_set(x), eta_set(y)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    return Ok(Smooth::Unknown {
                        reason: format!("homeomorphic, but eta sets are unavailable: {e}"),
                    })
                }
            };
            if ex.is_disjoint(&ey) {
                Ok(Smooth::Exotic {
                    chain,
                    left_etas: ex,
                    right_etas: ey,
                })
            } else {
                Ok(Smooth::Unknown {
                    reason: format!(
                        "homeomorphic, but the eta sets {ex} and {ey} overlap, so the \
                         invariant does not separate the smooth structures"
                    ),
                })
            }
        }
    }
}

// ---------------------------------------------------------------------------
// the two-structure bound

/// One eta class of a family: the shared eta set and the member renderings.
#[derive(Clone, Debug, Serialize)]
pub struct LimitsClass {
    pub eta_nums: Vec<u8>,
    pub eta_fractions: String,
    pub members: Vec<String>,
}

/// Partition of a mutually homeomorphic Z/2 family by eta set.
#[derive(Clone, Debug, Serialize)]
pub struct LimitsReport {
    pub classes: Vec<LimitsClass>,
    /// When two classes exist, their sets differ exactly by the +1 shift.
    pub shift_between_classes: bool,
}

/// Partition a family of mutually homeomorphic fundamental-group-Z/2
/// expressions by eta set. At most two classes can occur, and two classes
/// always differ by the twist shift +1; violations are engine bugs.
pub fn limits_report(family: &[Expr]) -> Result<LimitsReport> {
    if family.is_empty() {
        return Err(Error::Precondition("empty family".into()));
    }
    for e in family {
        e.validate()?;
        if e.pi1() != GroupTag::Z2 {
            return Err(Error::Precondition(format!(
                "{e} has fundamental group {}, expected Z/2",
                e.pi1()
            )));
        }
    }
    for e in &family[1..] {
        if !homeo(&family[0], e)?.is_yes() {
            return Err(Error::Precondition(format!(
                "{} and {e} are not identified by the rule base",
                family[0]
            )));
        }
    }
    let mut classes: Vec<(EtaSet, Vec<String>)> = Vec::new();
    for e in family {
        let set = eta_set(e)?;
        match classes.iter_mut().find(|(s, _)| *s == set) {
            Some((_, members)) => members.push(e.to_string()),
            None => classes.push((set, vec![e.to_string()])),
        }
    }
    if classes.len() > 2 {
        return Err(Error::Internal(format!(
            "{} eta classes in a mutually homeomorphic Z/2 family",
            classes.len()
        )));
    }
    let shift_between_classes = match classes.as_slice() {
        [(a, _), (b, _)] => *b == a.shift16(),
        _ => true,
    };
    if !shift_between_classes {
        return Err(Error::Internal(
            "two eta classes that do not differ by the +1 shift".into(),
        ));
    }
    Ok(LimitsReport {
        classes: classes
            .into_iter()
            .map(|(set, members)| LimitsClass {
                eta_nums: set.nums(),
                eta_fractions: set.to_string(),
                members,
            })
            .collect(),
        shift_between_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{circle_sum, csum, gluck_twist, twist};
    use crate::invariants::EtaSet;

    fn a(id: AtomId) -> Expr {
        atom(id)
    }

    fn rules_of(h: &Homeo) -> Vec<&'static str> {
        match h {
            Homeo::Yes { chain, .. } => chain.iter().map(|s| s.rule).collect(),
            Homeo::Unknown { .. } => vec![],
        }
    }

    #[test]
    fn twist_of_z2_manifold_is_undone() {
        let x = a(AtomId::RP4);
        let h = homeo(&twist(x.clone()).unwrap(), &x).unwrap();
        assert_eq!(rules_of(&h), ["R1"]);
        replay(&twist(x.clone()).unwrap(), &x, &h).unwrap();
    }

    #[test]
    fn gluck_twist_is_a_stabilization_upstairs() {
        let base = conn_sum(a(AtomId::S3tS1), a(AtomId::S2xS2)).unwrap();
        let g = gluck_twist(&base).unwrap();
        let h = homeo(&g, &base).unwrap();
        assert_eq!(rules_of(&h), ["R2"]);
        replay(&g, &base, &h).unwrap();
    }

    #[test]
    fn q_and_a_expand() {
        let h = homeo(&a(AtomId::Q), &a(AtomId::RP4)).unwrap();
        assert_eq!(rules_of(&h), ["R4"]);
        let h = homeo(
            &a(AtomId::A),
            &conn_sum(a(AtomId::S3tS1), a(AtomId::S2xS2)).unwrap(),
        )
        .unwrap();
        assert_eq!(rules_of(&h), ["R3"]);
    }

    #[test]
    fn identical_forms_use_r0() {
        let e = conn_sum(a(AtomId::RP4), a(AtomId::S2xS2)).unwrap();
        let h = homeo(&e, &e).unwrap();
        assert_eq!(rules_of(&h), ["R0"]);
        replay(&e, &e, &h).unwrap();
    }

    #[test]
    fn gluck_priority_over_expanding_a() {
        // X #s1 A must collapse as one Gluck step, not by first expanding A
        let e = circle_sum(a(AtomId::KbxS2), a(AtomId::A)).unwrap();
        let target = conn_sum(a(AtomId::KbxS2), a(AtomId::S2xS2)).unwrap();
        let h = homeo(&e, &target).unwrap();
        assert_eq!(rules_of(&h), ["R2"]);
    }

    #[test]
    fn mismatch_notes_name_the_invariant() {
        match homeo(&a(AtomId::RP4), &a(AtomId::S3tS1)).unwrap() {
            Homeo::Unknown { reason } => assert!(reason.contains("fundamental groups differ")),
            other => panic!("expected Unknown, got {other:?}"),
        }
        match homeo(&a(AtomId::RP4), &a(AtomId::S2gR)).unwrap() {
            Homeo::Unknown { reason } => assert!(reason.contains("Euler characteristics")),
            other => panic!("expected Unknown, got {other:?}"),
        }
    }

    #[test]
    fn stable_rule_needs_three_spheres_and_chi_six() {
        let base = |k: usize| {
            let mut e = a(AtomId::S3tS1);
            for _ in 0..k {
                e = conn_sum(e, a(AtomId::S2xS2)).unwrap();
            }
            e
        };
        let h = homeo(&twist(base(3)).unwrap(), &base(3)).unwrap();
        assert_eq!(rules_of(&h), ["R6"]);
        replay(&twist(base(3)).unwrap(), &base(3), &h).unwrap();
        // chi = 4 < 6: outside the stable range
        match homeo(&twist(base(2)).unwrap(), &base(2)).unwrap() {
            Homeo::Unknown { reason } => assert!(reason.contains("no rule connects")),
            other => panic!("expected Unknown, got {other:?}"),
        }
    }

    #[test]
    fn smooth_identity_and_symmetry() {
        match smooth_compare(&a(AtomId::RP4), &a(AtomId::RP4)).unwrap() {
            Smooth::Diffeomorphic { chain, .. } => assert_eq!(chain[0].rule, "D0"),
            other => panic!("expected Diffeomorphic, got {other:?}"),
        }
        let x = twist(a(AtomId::S2gR)).unwrap();
        let y = a(AtomId::S2gR);
        let fwd = smooth_compare(&x, &y).unwrap();
        let bwd = smooth_compare(&y, &x).unwrap();
        assert!(matches!(fwd, Smooth::Exotic { .. }));
        assert!(matches!(bwd, Smooth::Exotic { .. }));
    }

    #[test]
    fn twist_pairs_are_exotic() {
        let x = a(AtomId::S2gR);
        match smooth_compare(&twist(x.clone()).unwrap(), &x).unwrap() {
            Smooth::Exotic {
                left_etas,
                right_etas,
                ..
            } => {
                assert_eq!(left_etas, EtaSet::from_nums(&[16]));
                assert_eq!(right_etas, EtaSet::from_nums(&[0]));
            }
            other => panic!("expected Exotic, got {other:?}"),
        }
        match smooth_compare(
            &circle_sum(a(AtomId::KbxS2), a(AtomId::A)).unwrap(),
            &conn_sum(a(AtomId::KbxS2), a(AtomId::S2xS2)).unwrap(),
        )
        .unwrap()
        {
            Smooth::Exotic {
                left_etas,
                right_etas,
                ..
            } => {
                assert_eq!(left_etas, EtaSet::from_nums(&[16]));
                assert_eq!(right_etas, EtaSet::from_nums(&[0]));
            }
            other => panic!("expected Exotic, got {other:?}"),
        }
    }

    #[test]
    fn four_copies_fall_outside_the_range() {
        // after four circle-summed copies the shift returns the set to
        // itself, so the invariant no longer separates the pair
        let x = csum(4, &a(AtomId::RP4)).unwrap();
        match smooth_compare(&twist(x.clone()).unwrap(), &x).unwrap() {
            Smooth::Unknown { reason } => assert!(reason.contains("overlap")),
            other => panic!("expected Unknown, got {other:?}"),
        }
    }

    #[test]
    fn cp2_collapse() {
        let pair = |e: Expr| conn_sum(e, a(AtomId::CP2)).unwrap();
        let (form, rules) = cp2_stabilize(&pair(twist(a(AtomId::S2gR)).unwrap())).unwrap();
        assert_eq!(form.to_string(), "S2gR # CP2");
        assert_eq!(rules, ["D1"]);
        let (form, rules) = cp2_stabilize(&pair(a(AtomId::Q))).unwrap();
        assert_eq!(form.to_string(), "RP4 # CP2");
        assert_eq!(rules, ["D3"]);
        assert!(matches!(
            cp2_stabilize(&a(AtomId::RP4)),
            Err(Error::NoCp2Summand(_))
        ));
    }

    #[test]
    fn exotic_pairs_merge_after_cp2() {
        let x = twist(a(AtomId::S2gR)).unwrap();
        let y = a(AtomId::S2gR);
        let sx = conn_sum(x, a(AtomId::CP2)).unwrap();
        let sy = conn_sum(y, a(AtomId::CP2)).unwrap();
        match smooth_compare(&sx, &sy).unwrap() {
            Smooth::Diffeomorphic { witness, chain } => {
                assert_eq!(witness, "S2gR # CP2");
                assert_eq!(chain.len(), 1);
                assert_eq!(chain[0].rule, "D1");
            }
            other => panic!("expected Diffeomorphic, got {other:?}"),
        }
    }

    #[test]
    fn limits_partitions() {
        let r = limits_report(&[a(AtomId::RP4), a(AtomId::Q)]).unwrap();
        assert_eq!(r.classes.len(), 2);
        assert!(r.shift_between_classes);
        let double_twist = twist(twist(a(AtomId::RP4)).unwrap()).unwrap();
        let r = limits_report(&[a(AtomId::RP4), double_twist]).unwrap();
        assert_eq!(r.classes.len(), 1);
        let r = limits_report(&[a(AtomId::S2gR), twist(a(AtomId::S2gR)).unwrap()]).unwrap();
        assert_eq!(r.classes.len(), 2);
        assert_eq!(r.classes[0].eta_nums, vec![0]);
        assert_eq!(r.classes[1].eta_nums, vec![16]);
    }

    #[test]
    fn limits_preconditions() {
        assert!(limits_report(&[a(AtomId::S3tS1)]).is_err());
        assert!(limits_report(&[a(AtomId::RP4), a(AtomId::S2gR)]).is_err());
    }
}
