//! Manifold expressions.
//!
//! Closed smooth 4-manifolds are described as terms over a fixed generator
//! set: connected sums (`#`), circle sums along orientation-reversing loops
//! (`#s1`), Pin+ structure reversal (`bar`), and the mapping-torus twist
//! (`twist` glues on the torus bundle whose monodromy has u = 1, v = 0; it
//! changes the smooth structure candidate while keeping every classical
//! invariant).

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::invariants::{Label, Mod32, PinProfile, ProfileEntry};

/// The built-in generators plus the three orientable manifolds that occur as
/// orientation double covers. Variant order fixes the canonical sort.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AtomId {
    /// Real projective 4-space.
    RP4,
    /// The twisted projective space: RP4 modified along an embedded loop by
    /// the mapping-torus twist. Homeomorphic but not diffeomorphic to RP4.
    Q,
    /// Sphere bundle S(2g + R) over RP2; equals RP4 #s1 bar(RP4).
    S2gR,
    /// Twisted S3-bundle over the circle.
    S3tS1,
    /// The twisted stabilization of S3tS1: homeomorphic to S3tS1 # S2xS2,
    /// carries eta = +-1.
    A,
    /// Klein bottle times the 2-sphere.
    KbxS2,
    /// The non-trivial w2-zero S2-bundle over the Klein bottle.
    Xi3,
    /// Klein bottle times the 2-torus.
    KbxT2,
    /// S3 x S1 (cover of S3tS1-type expressions).
    S3xS1,
    /// T2 x S2 (cover of KbxS2 and Xi3).
    T2xS2,
    /// T2 x T2 (cover of KbxT2).
    T2xT2,
    /// The 4-sphere, identity for connected sum.
    S4,
    /// S2 x S2, the stabilizer.
    S2xS2,
    /// Complex projective plane; w2 != 0, admitted only for the collapse
    /// rules that kill exotic pairs after one CP2 stabilization.
    CP2,
}

pub const ALL_ATOMS: [AtomId; 14] = [
    AtomId::RP4,
    AtomId::Q,
    AtomId::S2gR,
    AtomId::S3tS1,
    AtomId::A,
    AtomId::KbxS2,
    AtomId::Xi3,
    AtomId::KbxT2,
    AtomId::S3xS1,
    AtomId::T2xS2,
    AtomId::T2xT2,
    AtomId::S4,
    AtomId::S2xS2,
    AtomId::CP2,
];

/// The closed generator alphabet (everything except the cover-only atoms).
pub const GENERATORS: [AtomId; 11] = [
    AtomId::RP4,
    AtomId::Q,
    AtomId::S2gR,
    AtomId::S3tS1,
    AtomId::A,
    AtomId::KbxS2,
    AtomId::Xi3,
    AtomId::KbxT2,
    AtomId::S4,
    AtomId::S2xS2,
    AtomId::CP2,
];

impl AtomId {
    pub fn name(self) -> &'static str {
        match self {
            AtomId::RP4 => "RP4",
            AtomId::Q => "Q",
            AtomId::S2gR => "S2gR",
            AtomId::S3tS1 => "S3tS1",
            AtomId::A => "A",
            AtomId::KbxS2 => "KbxS2",
            AtomId::Xi3 => "Xi3",
            AtomId::KbxT2 => "KbxT2",
            AtomId::S3xS1 => "S3xS1",
            AtomId::T2xS2 => "T2xS2",
            AtomId::T2xT2 => "T2xT2",
            AtomId::S4 => "S4",
            AtomId::S2xS2 => "S2xS2",
            AtomId::CP2 => "CP2",
        }
    }

    pub fn from_name(name: &str) -> Option<AtomId> {
        ALL_ATOMS.iter().copied().find(|a| a.name() == name)
    }

    pub fn record(self) -> &'static AtomRecord {
        &table()[self as usize]
    }
}

impl fmt::Display for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fundamental-group tags recognized by the rules.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GroupTag {
    Trivial,
    Z,
    Z2,
    Z2FreeZ2,
    /// Klein bottle group Z x| Z.
    ZSemiZ,
    /// Z^3 x| Z, the Klein bottle group times Z^2.
    Z3SemiZ,
    FreeProduct(Vec<GroupTag>),
    Unknown,
}

impl GroupTag {
    /// Free product, normalized: nested products and Z/2 * Z/2 flatten,
    /// trivial factors drop, factors sort, singletons collapse, a pair of
    /// Z/2s folds back to the named tag. Any Unknown factor poisons the
    /// product.
    pub fn free_product(tags: Vec<GroupTag>) -> GroupTag {
        let mut flat = Vec::new();
        for t in tags {
            match t {
                GroupTag::Trivial => {}
                GroupTag::Z2FreeZ2 => {
                    flat.push(GroupTag::Z2);
                    flat.push(GroupTag::Z2);
                }
                GroupTag::FreeProduct(inner) => flat.extend(inner),
                GroupTag::Unknown => return GroupTag::Unknown,
                other => flat.push(other),
            }
        }
        flat.sort();
        match flat.len() {
            0 => GroupTag::Trivial,
            1 => flat.pop().unwrap(),
            2 if flat[0] == GroupTag::Z2 && flat[1] == GroupTag::Z2 => GroupTag::Z2FreeZ2,
            _ => GroupTag::FreeProduct(flat),
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::Trivial => write!(f, "1"),
            GroupTag::Z => write!(f, "Z"),
            GroupTag::Z2 => write!(f, "Z/2"),
            GroupTag::Z2FreeZ2 => write!(f, "Z/2 * Z/2"),
            GroupTag::ZSemiZ => write!(f, "Z : Z"),
            GroupTag::Z3SemiZ => write!(f, "Z^3 : Z"),
            GroupTag::FreeProduct(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " * ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            GroupTag::Unknown => write!(f, "unknown"),
        }
    }
}

/// Static facts about one atom.
pub struct AtomRecord {
    pub id: AtomId,
    pub orientable: bool,
    pub pi1: GroupTag,
    pub chi: i64,
    pub sigma: i64,
    pub h1_dim: u32,
    pub w2_zero: bool,
    pub profile: PinProfile,
    /// Orientation double cover as a connected-sum list; empty if orientable.
    pub cover: &'static [AtomId],
    /// Rule id justifying the cover entry (see [`crate::cover::RULES`]).
    pub cover_rule: &'static str,
}

fn table() -> &'static [AtomRecord; 14] {
    static TABLE: OnceLock<[AtomRecord; 14]> = OnceLock::new();
    TABLE.get_or_init(build_table)
}

/// Profile helper: 2^h1 entries, restriction = coordinate 0 of the label
/// (orientable atoms carry no loop and hold the bit at 0), constant value.
fn flat_profile(h1: u32, restricted: bool, value: Mod32) -> PinProfile {
    let entries = (0..1u32 << h1)
        .map(|bits| ProfileEntry {
            label: Label::new(bits, h1 as u8),
            restr: restricted && bits & 1 == 1,
            value,
        })
        .collect();
    PinProfile::new(entries)
}

fn two_profile(v0: u8, v1: u8) -> PinProfile {
    PinProfile::new(vec![
        ProfileEntry {
            label: Label::new(0, 1),
            restr: false,
            value: Mod32::new(v0 as i64),
        },
        ProfileEntry {
            label: Label::new(1, 1),
            restr: true,
            value: Mod32::new(v1 as i64),
        },
    ])
}

fn build_table() -> [AtomRecord; 14] {
    use AtomId::*;
    use GroupTag as G;
    let z = Mod32::ZERO;
    [
        AtomRecord {
            id: RP4,
            orientable: false,
            pi1: G::Z2,
            chi: 1,
            sigma: 0,
            h1_dim: 1,
            w2_zero: true,
            // label 0 carries +1/8; all set-level output is independent of
            // which sign goes first
            profile: two_profile(2, 30),
            cover: &[S4],
            cover_rule: "C1",
        },
        AtomRecord {
            id: Q,
            orientable: false,
            pi1: G::Z2,
            chi: 1,
            sigma: 0,
            h1_dim: 1,
            w2_zero: true,
            // labelwise equal to twist(RP4): -7/8 then +7/8
            profile: two_profile(18, 14),
            cover: &[S4],
            cover_rule: "C1",
        },
        AtomRecord {
            id: S2gR,
            orientable: false,
            pi1: G::Z2,
            chi: 2,
            sigma: 0,
            h1_dim: 1,
            w2_zero: true,
            profile: two_profile(0, 0),
            cover: &[S2xS2],
            cover_rule: "C2",
        },
        AtomRecord {
            id: S3tS1,
            orientable: false,
            pi1: G::Z,
            chi: 0,
            sigma: 0,
            h1_dim: 1,
            w2_zero: true,
            profile: two_profile(0, 0),
            cover: &[S3xS1],
            cover_rule: "C0",
        },
        AtomRecord {
            id: A,
            orientable: false,
            pi1: G::Z,
            chi: 2,
            sigma: 0,
            h1_dim: 1,
            w2_zero: true,
            profile: two_profile(16, 16),
            cover: &[S3xS1, S2xS2, S2xS2],
            cover_rule: "C3",
        },
        AtomRecord {
            id: KbxS2,
            orientable: false,
            pi1: G::ZSemiZ,
            chi: 0,
            sigma: 0,
            h1_dim: 2,
            w2_zero: true,
            profile: flat_profile(2, true, z),
            cover: &[T2xS2],
            cover_rule: "C5",
        },
        AtomRecord {
            id: Xi3,
            orientable: false,
            pi1: G::ZSemiZ,
            chi: 0,
            sigma: 0,
            h1_dim: 2,
            w2_zero: true,
            profile: flat_profile(2, true, z),
            cover: &[T2xS2],
            cover_rule: "C5",
        },
        AtomRecord {
            id: KbxT2,
            orientable: false,
            pi1: G::Z3SemiZ,
            chi: 0,
            sigma: 0,
            h1_dim: 4,
            w2_zero: true,
            profile: flat_profile(4, true, z),
            cover: &[T2xT2],
            cover_rule: "C5",
        },
        AtomRecord {
            id: S3xS1,
            orientable: true,
            pi1: G::Z,
            chi: 0,
            sigma: 0,
            h1_dim: 1,
            w2_zero: true,
            profile: flat_profile(1, false, z),
            cover: &[],
            cover_rule: "",
        },
        AtomRecord {
            id: T2xS2,
            orientable: true,
            // Z x Z has no tag of its own
            pi1: G::Unknown,
            chi: 0,
            sigma: 0,
            h1_dim: 2,
            w2_zero: true,
            profile: flat_profile(2, false, z),
            cover: &[],
            cover_rule: "",
        },
        AtomRecord {
            id: T2xT2,
            orientable: true,
            pi1: G::Unknown,
            chi: 0,
            sigma: 0,
            h1_dim: 4,
            w2_zero: true,
            profile: flat_profile(4, false, z),
            cover: &[],
            cover_rule: "",
        },
        AtomRecord {
            id: S4,
            orientable: true,
            pi1: G::Trivial,
            chi: 2,
            sigma: 0,
            h1_dim: 0,
            w2_zero: true,
            profile: flat_profile(0, false, z),
            cover: &[],
            cover_rule: "",
        },
        AtomRecord {
            id: S2xS2,
            orientable: true,
            pi1: G::Trivial,
            chi: 4,
            sigma: 0,
            h1_dim: 0,
            w2_zero: true,
            profile: flat_profile(0, false, z),
            cover: &[],
            cover_rule: "",
        },
        AtomRecord {
            id: CP2,
            orientable: true,
            pi1: G::Trivial,
            chi: 3,
            sigma: 1,
            h1_dim: 0,
            w2_zero: false,
            profile: PinProfile::new(vec![]),
            cover: &[],
            cover_rule: "",
        },
    ]
}

/// A manifold expression. Build through the constructors ([`atom`],
/// [`conn_sum`], [`circle_sum`], [`bar`], [`twist`], [`gluck_twist`]) so the
/// operand preconditions are checked; [`Expr::validate`] re-checks a
/// hand-assembled tree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Expr {
    Atom(AtomId),
    /// n-ary connected sum, length >= 2 once normalized.
    ConnSum(Vec<Expr>),
    /// Circle sum along orientation-reversing loops; the right slot may hold
    /// [`Expr::TwistToken`].
    CircleSum(Box<Expr>, Box<Expr>),
    /// Same manifold, every Pin+ structure replaced by its reverse.
    Bar(Box<Expr>),
    /// The mapping-torus summand of a twist. Only valid as the right child
    /// of a CircleSum.
    TwistToken,
}

pub fn atom(id: AtomId) -> Expr {
    Expr::Atom(id)
}

pub fn atom_by_name(name: &str) -> Result<Expr> {
    AtomId::from_name(name)
        .map(Expr::Atom)
        .ok_or_else(|| Error::UnknownAtom(name.to_string()))
}

/// Connected sum. Nested sums flatten immediately.
pub fn conn_sum(x: Expr, y: Expr) -> Result<Expr> {
    conn_sum_all(vec![x, y])
}

/// n-ary connected sum of one or more summands.
pub fn conn_sum_all(parts: Vec<Expr>) -> Result<Expr> {
    if parts.is_empty() {
        return Err(Error::Precondition("connected sum needs a summand".into()));
    }
    let mut flat = Vec::with_capacity(parts.len());
    for p in parts {
        if p == Expr::TwistToken {
            return Err(Error::Malformed(
                "twist summand outside a circle sum".into(),
            ));
        }
        match p {
            Expr::ConnSum(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    Ok(if flat.len() == 1 {
        flat.pop().unwrap()
    } else {
        Expr::ConnSum(flat)
    })
}

/// Circle sum along designated orientation-reversing loops. Both operands
/// must be non-orientable; the right slot may be the twist token.
pub fn circle_sum(x: Expr, y: Expr) -> Result<Expr> {
    if x == Expr::TwistToken {
        return Err(Error::Malformed("twist summand on the left of #s1".into()));
    }
    if x.orientable() {
        return Err(Error::OrientableOperand(x.to_string()));
    }
    if y != Expr::TwistToken && y.orientable() {
        return Err(Error::OrientableOperand(y.to_string()));
    }
    Ok(Expr::CircleSum(Box::new(x), Box::new(y)))
}

/// Left-nested circle sum of `n` copies of `e`.
pub fn csum(n: usize, e: &Expr) -> Result<Expr> {
    if n == 0 {
        return Err(Error::Precondition("csum needs at least one copy".into()));
    }
    let mut acc = e.clone();
    for _ in 1..n {
        acc = circle_sum(acc, e.clone())?;
    }
    Ok(acc)
}

/// Reverse every Pin+ structure. Requires a structure to exist.
pub fn bar(x: Expr) -> Result<Expr> {
    if x == Expr::TwistToken {
        return Err(Error::Malformed("bar of a twist summand".into()));
    }
    if !x.w2_zero() {
        return Err(Error::NoPinStructure(x.to_string()));
    }
    Ok(Expr::Bar(Box::new(x)))
}

/// Twist: circle-sum the mapping torus onto `x`. Homeomorphism type, chi,
/// pi1, H^1 and w2 are untouched; every eta value shifts by 1.
pub fn twist(x: Expr) -> Result<Expr> {
    if x.orientable() || !x.w2_zero() {
        return Err(Error::TwistOperand(x.to_string()));
    }
    Ok(Expr::CircleSum(Box::new(x), Box::new(Expr::TwistToken)))
}

/// Gluck twist along the belt sphere of an S2xS2 summand: rewrites
/// X # S2xS2 into X #s1 A. Requires a non-orientable Pin+ complement X.
pub fn gluck_twist(x: &Expr) -> Result<Expr> {
    let n = x.normalize();
    let Expr::ConnSum(parts) = &n else {
        return Err(Error::NotGluckForm(x.to_string()));
    };
    let Some(pos) = parts.iter().position(|p| *p == Expr::Atom(AtomId::S2xS2)) else {
        return Err(Error::NotGluckForm(x.to_string()));
    };
    let mut rest: Vec<Expr> = parts.clone();
    rest.remove(pos);
    let complement = conn_sum_all(rest)?;
    if complement.orientable() || !complement.w2_zero() {
        return Err(Error::NotGluckForm(x.to_string()));
    }
    circle_sum(complement, atom(AtomId::A))
}

impl Expr {
    pub fn chi(&self) -> i64 {
        match self {
            Expr::Atom(a) => a.record().chi,
            Expr::ConnSum(parts) => {
                parts.iter().map(Expr::chi).sum::<i64>() - 2 * (parts.len() as i64 - 1)
            }
            Expr::CircleSum(x, y) => x.chi() + y.chi(),
            Expr::Bar(x) => x.chi(),
            Expr::TwistToken => 0,
        }
    }

    /// Signature; zero for every non-orientable expression.
    pub fn sigma(&self) -> i64 {
        if !self.orientable() {
            return 0;
        }
        match self {
            Expr::Atom(a) => a.record().sigma,
            Expr::ConnSum(parts) => parts.iter().map(Expr::sigma).sum(),
            Expr::Bar(x) => x.sigma(),
            Expr::CircleSum(..) | Expr::TwistToken => 0,
        }
    }

    pub fn orientable(&self) -> bool {
        match self {
            Expr::Atom(a) => a.record().orientable,
            Expr::ConnSum(parts) => parts.iter().all(Expr::orientable),
            Expr::CircleSum(..) => false,
            Expr::Bar(x) => x.orientable(),
            Expr::TwistToken => false,
        }
    }

    pub fn w2_zero(&self) -> bool {
        match self {
            Expr::Atom(a) => a.record().w2_zero,
            Expr::ConnSum(parts) => parts.iter().all(Expr::w2_zero),
            Expr::CircleSum(x, y) => x.w2_zero() && y.w2_zero(),
            Expr::Bar(x) => x.w2_zero(),
            Expr::TwistToken => true,
        }
    }

    /// dim H^1(-; Z/2). Connected sums add; a circle sum identifies the two
    /// loop classes, dropping the total by one.
    pub fn h1_dim(&self) -> u32 {
        match self {
            Expr::Atom(a) => a.record().h1_dim,
            Expr::ConnSum(parts) => parts.iter().map(Expr::h1_dim).sum(),
            Expr::CircleSum(x, y) => x.h1_dim() + y.h1_dim() - 1,
            Expr::Bar(x) => x.h1_dim(),
            Expr::TwistToken => 1,
        }
    }

    pub fn pi1(&self) -> GroupTag {
        match self {
            Expr::Atom(a) => a.record().pi1.clone(),
            Expr::ConnSum(parts) => {
                GroupTag::free_product(parts.iter().map(Expr::pi1).collect())
            }
            Expr::CircleSum(x, y) => {
                if **y == Expr::TwistToken {
                    return x.pi1();
                }
                match (x.pi1(), y.pi1()) {
                    (GroupTag::Z2, GroupTag::Z2) => GroupTag::Z2,
                    (GroupTag::Z, h) => h,
                    (h, GroupTag::Z) => h,
                    _ => GroupTag::Unknown,
                }
            }
            Expr::Bar(x) => x.pi1(),
            Expr::TwistToken => GroupTag::Unknown,
        }
    }

    /// Canonical form: nested connected sums flatten, summands sort, S4
    /// summands drop, double bars cancel, and RP4 #s1 bar(RP4) folds to the
    /// S2gR atom. Idempotent, and every invariant above is unchanged.
    pub fn normalize(&self) -> Expr {
        match self {
            Expr::Atom(_) | Expr::TwistToken => self.clone(),
            Expr::Bar(inner) => match inner.normalize() {
                Expr::Bar(x) => *x,
                other => Expr::Bar(Box::new(other)),
            },
            Expr::ConnSum(parts) => {
                let mut flat = Vec::with_capacity(parts.len());
                for p in parts {
                    match p.normalize() {
                        Expr::ConnSum(inner) => flat.extend(inner),
                        Expr::Atom(AtomId::S4) => {}
                        other => flat.push(other),
                    }
                }
                flat.sort();
                match flat.len() {
                    0 => Expr::Atom(AtomId::S4),
                    1 => flat.pop().unwrap(),
                    _ => Expr::ConnSum(flat),
                }
            }
            Expr::CircleSum(x, y) => {
                let x = x.normalize();
                let y = y.normalize();
                if x == Expr::Atom(AtomId::RP4) && y == Expr::Bar(Box::new(Expr::Atom(AtomId::RP4)))
                {
                    return Expr::Atom(AtomId::S2gR);
                }
                Expr::CircleSum(Box::new(x), Box::new(y))
            }
        }
    }

    /// Canonical rendering (normalize, then print).
    pub fn canonical(&self) -> String {
        self.normalize().to_string()
    }

    /// Count occurrences of one atom anywhere in the tree.
    pub fn count_atom(&self, id: AtomId) -> usize {
        match self {
            Expr::Atom(a) => (*a == id) as usize,
            Expr::ConnSum(parts) => parts.iter().map(|p| p.count_atom(id)).sum(),
            Expr::CircleSum(x, y) => x.count_atom(id) + y.count_atom(id),
            Expr::Bar(x) => x.count_atom(id),
            Expr::TwistToken => 0,
        }
    }

    /// Well-formedness of a hand-assembled tree: twist tokens only on the
    /// right of a circle sum, circle-sum operands non-orientable, bar only
    /// where a Pin+ structure exists.
    pub fn validate(&self) -> Result<()> {
        match self {
            Expr::Atom(_) => Ok(()),
            Expr::TwistToken => Err(Error::Malformed(
                "twist summand outside a circle sum".into(),
            )),
            Expr::ConnSum(parts) => {
                if parts.len() < 2 {
                    return Err(Error::Malformed("connected sum of fewer than 2".into()));
                }
                parts.iter().try_for_each(Expr::validate)
            }
            Expr::CircleSum(x, y) => {
                x.validate()?;
                if x.orientable() {
                    return Err(Error::OrientableOperand(x.to_string()));
                }
                if **y == Expr::TwistToken {
                    return Ok(());
                }
                y.validate()?;
                if y.orientable() {
                    return Err(Error::OrientableOperand(y.to_string()));
                }
                Ok(())
            }
            Expr::Bar(x) => {
                x.validate()?;
                if !x.w2_zero() {
                    return Err(Error::NoPinStructure(x.to_string()));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn paren_if_sum(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                Expr::ConnSum(..) | Expr::CircleSum(..) => write!(f, "({e})"),
                _ => write!(f, "{e}"),
            }
        }
        match self {
            Expr::Atom(a) => f.write_str(a.name()),
            Expr::Bar(x) => write!(f, "bar({x})"),
            Expr::ConnSum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " # ")?;
                    }
                    paren_if_sum(p, f)?;
                }
                Ok(())
            }
            Expr::CircleSum(x, y) => {
                if **y == Expr::TwistToken {
                    return write!(f, "twist({x})");
                }
                paren_if_sum(x, f)?;
                write!(f, " #s1 ")?;
                paren_if_sum(y, f)
            }
            Expr::TwistToken => f.write_str("<twist-summand>"),
        }
    }
}
