//! Orientation double covers and exotic-involution reports.
//!
//! Every non-orientable manifold has an orientation double cover whose deck
//! transformation is a free orientation-reversing involution. For the
//! families in scope the smooth type of that cover is known and closed
//! under the combinators, so the engine rewrites cover expressions from a
//! fixed rule table instead of constructing covering spaces. When the two
//! members of an exotic pair share one cover, the two deck transformations
//! are inequivalent involutions on the same smooth manifold — the
//! involution report certifies exactly that configuration.

use serde::Serialize;

use crate::classify::{smooth_compare, Smooth};
use crate::error::{Error, Result};
use crate::expr::{atom, conn_sum_all, AtomId, Expr, GroupTag};
use crate::invariants::EtaSet;

/// One entry of the cover rule table: a pattern schema, the cover schema,
/// and the statement justifying it.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CoverRule {
    pub id: &'static str,
    pub pattern: &'static str,
    pub result: &'static str,
    pub statement: &'static str,
}

/// The static cover rule table. Applications always verify chi doubling,
/// orientability, vanishing signature, and the deck-kernel group tag.
pub const RULES: [CoverRule; 9] = [
    CoverRule {
        id: "C0",
        pattern: "S3tS1",
        result: "S3xS1",
        statement: "the orientation cover of the twisted S3-bundle is the product bundle",
    },
    CoverRule {
        id: "C1",
        pattern: "RP4 | Q",
        result: "S4",
        statement: "the orientation cover of RP4 (and of its twisted copy Q) is the 4-sphere",
    },
    CoverRule {
        id: "C2",
        pattern: "circle-sum chain of n pieces with fundamental group Z/2",
        result: "(n-1)(S2xS2) # S4",
        statement: "covers of Z/2 circle-sum chains are standard: one S2xS2 per gluing",
    },
    CoverRule {
        id: "C3",
        pattern: "A",
        result: "S3xS1 # 2(S2xS2)",
        statement: "the cover of A decomposes as two solid pieces glued along two sphere bundles",
    },
    CoverRule {
        id: "C4",
        pattern: "X # S2xS2",
        result: "cover(X) # 2(S2xS2)",
        statement: "each S2xS2 summand lifts to two copies in the double cover",
    },
    CoverRule {
        id: "C5",
        pattern: "KbxS2 | Xi3 | KbxT2",
        result: "T2xS2 | T2xS2 | T2xT2",
        statement: "Klein-bottle factors unwrap to torus factors in the orientation cover",
    },
    CoverRule {
        id: "C6",
        pattern: "X #s1 A",
        result: "cover(X) # 2(S2xS2)",
        statement: "the cut-and-paste along A acts on the cover as a double S2xS2 stabilization",
    },
    CoverRule {
        id: "C7",
        pattern: "twist(X)",
        result: "cover(X)",
        statement: "the mapping-torus twist changes the smooth structure candidate downstairs \
                    only; the cover stays standard",
    },
    CoverRule {
        id: "C8",
        pattern: "X # Y, both with fundamental group Z/2 and simply-connected covers",
        result: "S3xS1 # n(S2xS2), n fixed by chi doubling",
        statement: "the kernel of Z/2 * Z/2 -> Z/2 is Z, so the cover is an S3xS1 stabilization \
                    with the summand count forced by the Euler characteristic",
    },
];

fn rule(id: &'static str) -> &'static CoverRule {
    RULES.iter().find(|r| r.id == id).expect("known cover rule")
}

/// Weight of a circle-sum chain with fundamental group Z/2: projective
/// pieces count 1, the doubled piece S2gR counts 2, twists count 0.
fn chain_weight(e: &Expr) -> Option<i64> {
    match e {
        Expr::Atom(AtomId::RP4) | Expr::Atom(AtomId::Q) => Some(1),
        Expr::Atom(AtomId::S2gR) => Some(2),
        Expr::TwistToken => Some(0),
        Expr::Bar(x) => chain_weight(x),
        Expr::CircleSum(x, y) => Some(chain_weight(x)? + chain_weight(y)?),
        _ => None,
    }
}

/// `S3xS1`-free sphere stabilization: `base # n(S2xS2)`, normalized.
fn stabilized(base: Option<Expr>, n: i64) -> Expr {
    let mut parts = Vec::new();
    if let Some(b) = base {
        parts.push(b);
    }
    for _ in 0..n {
        parts.push(atom(AtomId::S2xS2));
    }
    if parts.is_empty() {
        return atom(AtomId::S4);
    }
    conn_sum_all(parts).expect("non-empty summand list").normalize()
}

fn cover_rec(e: &Expr, trace: &mut Vec<&'static str>) -> Result<Expr> {
    match e {
        Expr::Atom(a) => {
            let rec = a.record();
            if rec.cover.is_empty() {
                return Err(Error::NoCoverRule(e.to_string()));
            }
            trace.push(rec.cover_rule);
            Ok(conn_sum_all(rec.cover.iter().map(|&id| atom(id)).collect())?.normalize())
        }
        // reversing Pin+ structures does not change the underlying manifold
        Expr::Bar(x) => cover_rec(x, trace),
        Expr::CircleSum(x, y) if **y == Expr::TwistToken => {
            trace.push(rule("C7").id);
            cover_rec(x, trace)
        }
        Expr::CircleSum(x, y) if **y == Expr::Atom(AtomId::A) => {
            trace.push(rule("C6").id);
            let inner = cover_rec(x, trace)?;
            Ok(stabilized(Some(inner), 2))
        }
        Expr::CircleSum(..) => {
            let Some(n) = chain_weight(e) else {
                return Err(Error::NoCoverRule(e.to_string()));
            };
            trace.push(rule("C2").id);
            Ok(stabilized(None, n - 1))
        }
        Expr::ConnSum(parts) => {
            let mut spheres = 0i64;
            let mut non_orientable = Vec::new();
            for p in parts {
                if *p == Expr::Atom(AtomId::S2xS2) {
                    spheres += 1;
                } else if p.orientable() {
                    // no rule covers other orientable summands
                    return Err(Error::NoCoverRule(e.to_string()));
                } else {
                    non_orientable.push(p);
                }
            }
            match non_orientable.as_slice() {
                [x] => {
                    if spheres > 0 {
                        trace.push(rule("C4").id);
                    }
                    let inner = cover_rec(x, trace)?;
                    Ok(stabilized(Some(inner), 2 * spheres))
                }
                [x, y] if x.pi1() == GroupTag::Z2 && y.pi1() == GroupTag::Z2 => {
                    // both pieces must have simply-connected covers
                    let mut scratch = Vec::new();
                    for p in [x, y] {
                        if cover_rec(p, &mut scratch)?.pi1() != GroupTag::Trivial {
                            return Err(Error::NoCoverRule(e.to_string()));
                        }
                    }
                    trace.push(rule("C8").id);
                    let n = x.chi() + y.chi() + 2 * spheres - 2;
                    Ok(stabilized(Some(atom(AtomId::S3xS1)), n))
                }
                _ => Err(Error::NoCoverRule(e.to_string())),
            }
        }
        Expr::TwistToken => Err(Error::Malformed(
            "twist summand outside a circle sum".into(),
        )),
    }
}

/// Expected deck-kernel tag for a base group, where the table has an entry.
fn kernel_consistent(base: &Expr, cover: &Expr) -> bool {
    let tag = cover.pi1();
    match base.pi1() {
        GroupTag::Z2 => tag == GroupTag::Trivial,
        GroupTag::Z => tag == GroupTag::Z,
        GroupTag::Z2FreeZ2 => tag == GroupTag::Z,
        // the index-2 subgroups here fall outside the tag alphabet, exactly
        // like the stored cover atoms (T2xS2, T2xT2)
        GroupTag::ZSemiZ | GroupTag::Z3SemiZ => tag == GroupTag::Unknown,
        _ => true,
    }
}

/// Orientation double cover of a non-orientable expression, with the trace
/// of applied rule ids. Every application is checked: the result is
/// orientable with chi doubled, signature zero, and a deck-kernel group tag
/// consistent with the base.
pub fn orientation_cover_traced(x: &Expr) -> Result<(Expr, Vec<&'static str>)> {
    x.validate()?;
    if x.orientable() {
        return Err(Error::AlreadyOrientable(x.to_string()));
    }
    let n = x.normalize();
    let mut trace = Vec::new();
    let cover = cover_rec(&n, &mut trace)?.normalize();
    if !cover.orientable() {
        return Err(Error::Internal(format!("cover {cover} is not orientable")));
    }
    if cover.chi() != 2 * n.chi() {
        return Err(Error::Internal(format!(
            "cover {cover} has chi {}, expected {}",
            cover.chi(),
            2 * n.chi()
        )));
    }
    if cover.sigma() != 0 {
        return Err(Error::Internal(format!(
            "cover {cover} has nonzero signature {}",
            cover.sigma()
        )));
    }
    if !kernel_consistent(&n, &cover) {
        return Err(Error::Internal(format!(
            "cover group {} is inconsistent with base group {}",
            cover.pi1(),
            n.pi1()
        )));
    }
    Ok((cover, trace))
}

/// Orientation double cover (see [`orientation_cover_traced`]).
pub fn orientation_cover(x: &Expr) -> Result<Expr> {
    Ok(orientation_cover_traced(x)?.0)
}

/// Witness that an exotic pair carries inequivalent free orientation-
/// reversing involutions on one smooth manifold: the pair must compare as
/// Exotic and both orientation covers must agree canonically.
#[derive(Clone, Debug, Serialize)]
pub struct InvolutionReport {
    pub left: String,
    pub right: String,
    /// Shared orientation double cover, canonical form.
    pub cover: String,
    /// Deck group: the common fundamental group of the base pair.
    pub group: String,
    pub left_rules: Vec<&'static str>,
    pub right_rules: Vec<&'static str>,
    pub left_eta_nums: Vec<u8>,
    pub right_eta_nums: Vec<u8>,
}

pub fn involution_report(exotic: &Expr, standard: &Expr) -> Result<InvolutionReport> {
    let (left_etas, right_etas) = match smooth_compare(exotic, standard)? {
        Smooth::Exotic {
            left_etas,
            right_etas,
            ..
        } => (left_etas, right_etas),
        Smooth::Diffeomorphic { .. } => {
            return Err(Error::Precondition(format!(
                "{exotic} and {standard} are diffeomorphic, not an exotic pair"
            )))
        }
        Smooth::Unknown { reason } => {
            return Err(Error::Precondition(format!(
                "pair is not certified exotic: {reason}"
            )))
        }
    };
    let (left_cover, left_rules) = orientation_cover_traced(exotic)?;
    let (right_cover, right_rules) = orientation_cover_traced(standard)?;
    if left_cover != right_cover {
        return Err(Error::Precondition(format!(
            "orientation covers differ: {left_cover} vs {right_cover}"
        )));
    }
    Ok(InvolutionReport {
        left: exotic.canonical(),
        right: standard.canonical(),
        cover: left_cover.to_string(),
        group: exotic.pi1().to_string(),
        left_rules,
        right_rules,
        left_eta_nums: left_etas.nums(),
        right_eta_nums: right_etas.nums(),
    })
}

/// Convenience for reports: eta sets as an [`EtaSet`] pair.
pub fn involution_eta_sets(report: &InvolutionReport) -> (EtaSet, EtaSet) {
    (
        EtaSet::from_nums(&report.left_eta_nums),
        EtaSet::from_nums(&report.right_eta_nums),
    )
}
