//! Exact eta-invariant arithmetic.
//!
//! Eta values of Pin+ structures on the manifolds in scope are elements of
//! (1/16)Z / 2Z. A value is stored as its numerator over 16, i.e. an integer
//! mod 32 ([`Mod32`]), so every computation is integer-exact. A manifold's
//! full Pin+ structure set is a [`PinProfile`]: one entry per H^1(M;Z/2)
//! label, together with the restriction bit of the structure on the
//! designated orientation-reversing loop (the datum circle sums glue along).

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Expr;

/// Profiles above 2^PROFILE_LIMIT entries are refused rather than computed.
pub const PROFILE_LIMIT: u32 = 20;

/// An eta value: `num`/16 taken mod 2Z, so `num` lives in Z/32.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Mod32(u8);

impl Mod32 {
    pub const ZERO: Mod32 = Mod32(0);
    /// The shift contributed by one mapping-torus summand: eta moves by 1 = 16/16.
    pub const ONE: Mod32 = Mod32(16);

    pub fn new(n: i64) -> Mod32 {
        Mod32(n.rem_euclid(32) as u8)
    }

    pub fn num(self) -> u8 {
        self.0
    }

    pub fn add(self, other: Mod32) -> Mod32 {
        Mod32((self.0 + other.0) % 32)
    }

    pub fn neg(self) -> Mod32 {
        Mod32((32 - self.0) % 32)
    }

    /// +1 (the twist shift).
    pub fn shift16(self) -> Mod32 {
        self.add(Mod32::ONE)
    }

    /// Class in the Z/16 bordism group: num/2. Table-generated numerators are
    /// always even, so this never truncates in practice.
    pub fn bordism_class(self) -> u8 {
        debug_assert!(self.0 % 2 == 0, "odd eta numerator {}", self.0);
        (self.0 / 2) % 16
    }

    /// Reduced-fraction rendering with representatives in (-1, 1]:
    /// 2 -> "1/8", 30 -> "-1/8", 16 -> "1", 0 -> "0".
    pub fn fraction(self) -> String {
        fn gcd(a: u8, b: u8) -> u8 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        match self.0 {
            0 => "0".to_string(),
            16 => "1".to_string(),
            k if k < 16 => {
                let d = gcd(k, 16);
                format!("{}/{}", k / d, 16 / d)
            }
            k => {
                let k = 32 - k;
                let d = gcd(k, 16);
                format!("-{}/{}", k / d, 16 / d)
            }
        }
    }
}

impl fmt::Debug for Mod32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Mod32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fraction())
    }
}

/// A Pin+ structure label: a bit-vector indexing H^1(M;Z/2). Coordinate 0 is
/// the first character of the printed form, stored as bit 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Label {
    bits: u32,
    len: u8,
}

/// Order labels the way their printed forms sort ("00" < "01" < "10"), so
/// profile listings read like a truth table.
impl Ord for Label {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let n = self.len.min(other.len);
        for i in 0..n {
            match (self.bit(i) as u8).cmp(&(other.bit(i) as u8)) {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Label {
    pub const EMPTY: Label = Label { bits: 0, len: 0 };

    pub fn new(bits: u32, len: u8) -> Label {
        debug_assert!(len <= 32 && (len == 32 || bits < (1u32 << len)));
        Label { bits, len }
    }

    pub fn bit(self, i: u8) -> bool {
        debug_assert!(i < self.len);
        (self.bits >> i) & 1 == 1
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn len(self) -> u8 {
        self.len
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    /// `self` in coordinates 0..len, `other` shifted above.
    pub fn concat(self, other: Label) -> Label {
        Label {
            bits: self.bits | (other.bits << self.len),
            len: self.len + other.len,
        }
    }

    /// Parse "011"-style strings; "" and "-" denote the empty label.
    pub fn parse(s: &str) -> Option<Label> {
        if s == "-" {
            return Some(Label::EMPTY);
        }
        if s.len() > 32 {
            return None;
        }
        let mut bits = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return None,
            }
        }
        Some(Label {
            bits,
            len: s.len() as u8,
        })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return write!(f, "-");
        }
        for i in 0..self.len {
            write!(f, "{}", if self.bit(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One Pin+ structure: its label, the restriction bit on the designated
/// orientation-reversing loop, and its eta value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ProfileEntry {
    pub label: Label,
    pub restr: bool,
    pub value: Mod32,
}

/// The full structure set of an expression, sorted by label. For a Pin+
/// expression with dim H^1 = d there are exactly 2^d entries and the labels
/// enumerate all d-bit vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PinProfile {
    entries: Vec<ProfileEntry>,
}

impl PinProfile {
    pub fn new(mut entries: Vec<ProfileEntry>) -> PinProfile {
        entries.sort_by_key(|e| e.label);
        PinProfile { entries }
    }

    pub fn entries(&self) -> &[ProfileEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> Vec<Mod32> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn eta_set(&self) -> EtaSet {
        EtaSet::from_iter(self.entries.iter().map(|e| e.value))
    }

    pub fn find(&self, label: Label) -> Option<&ProfileEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    fn negated(&self) -> PinProfile {
        PinProfile {
            entries: self
                .entries
                .iter()
                .map(|e| ProfileEntry {
                    value: e.value.neg(),
                    ..*e
                })
                .collect(),
        }
    }

    fn shifted16(&self) -> PinProfile {
        PinProfile {
            entries: self
                .entries
                .iter()
                .map(|e| ProfileEntry {
                    value: e.value.shift16(),
                    ..*e
                })
                .collect(),
        }
    }

    /// Entries in a restriction class, in label order (entries are sorted).
    fn class(&self, restr: bool) -> Vec<&ProfileEntry> {
        self.entries.iter().filter(|e| e.restr == restr).collect()
    }
}

/// Deduplicated, sorted set of eta values.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct EtaSet(BTreeSet<Mod32>);

impl EtaSet {
    pub fn from_iter<I: IntoIterator<Item = Mod32>>(it: I) -> EtaSet {
        EtaSet(it.into_iter().collect())
    }

    pub fn from_nums(nums: &[u8]) -> EtaSet {
        EtaSet(nums.iter().map(|&n| Mod32::new(n as i64)).collect())
    }

    pub fn nums(&self) -> Vec<u8> {
        self.0.iter().map(|m| m.num()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Mod32> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Mod32) -> bool {
        self.0.contains(&v)
    }

    pub fn shift16(&self) -> EtaSet {
        EtaSet(self.0.iter().map(|m| m.shift16()).collect())
    }

    pub fn negated(&self) -> EtaSet {
        EtaSet(self.0.iter().map(|m| m.neg()).collect())
    }

    pub fn sumset(&self, other: &EtaSet) -> EtaSet {
        let mut out = BTreeSet::new();
        for a in &self.0 {
            for b in &other.0 {
                out.insert(a.add(*b));
            }
        }
        EtaSet(out)
    }

    pub fn is_disjoint(&self, other: &EtaSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// True when the set equals its own negation (holds for every expression
    /// with fundamental group Z/2).
    pub fn closed_under_negation(&self) -> bool {
        self.0.iter().all(|m| self.0.contains(&m.neg()))
    }
}

impl fmt::Display for EtaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", m.fraction())?;
        }
        write!(f, "}}")
    }
}

/// Pin+ existence: w2 = 0 across every atom of the expression.
pub fn pin_plus(e: &Expr) -> bool {
    e.w2_zero()
}

pub fn h1_dim(e: &Expr) -> u32 {
    e.h1_dim()
}

/// Number of Pin+ structures, 2^h1dim; zero if no structure exists.
pub fn structure_count(e: &Expr) -> Result<u64> {
    if !e.w2_zero() {
        return Ok(0);
    }
    let d = e.h1_dim();
    if d >= 64 {
        return Err(Error::ProfileTooLarge(d));
    }
    Ok(1u64 << d)
}

/// The full Pin+ structure profile of `e`, computed by structural recursion:
/// connected sums concatenate labels and add values, circle sums keep exactly
/// the structure pairs that agree on the glued loop, bar negates, the twist
/// summand shifts every value by 1.
///
/// The profile is computed on the canonical form. This pins down the one
/// convention the recursion needs: the designated orientation-reversing loop
/// of a connected sum lives in its canonically first non-orientable summand,
/// making the profile a function of the expression's manifold rather than of
/// the spelling of its tree.
pub fn eta_profile(e: &Expr) -> Result<PinProfile> {
    e.validate()?;
    if !e.w2_zero() {
        return Err(Error::NoPinStructure(e.to_string()));
    }
    if e.h1_dim() > PROFILE_LIMIT {
        return Err(Error::ProfileTooLarge(e.h1_dim()));
    }
    Ok(profile_rec(&e.normalize()))
}

fn profile_rec(e: &Expr) -> PinProfile {
    match e {
        Expr::Atom(a) => a.record().profile.clone(),
        Expr::Bar(inner) => profile_rec(inner).negated(),
        Expr::ConnSum(parts) => {
            // Cartesian product; the loop datum comes from the left-most
            // non-orientable summand.
            let mut acc: Vec<(Label, Option<bool>, Mod32)> =
                vec![(Label::EMPTY, None, Mod32::ZERO)];
            for part in parts {
                let pp = profile_rec(part);
                let part_nonor = !part.orientable();
                let mut next = Vec::with_capacity(acc.len() * pp.len());
                for (lab, restr, val) in &acc {
                    for pe in pp.entries() {
                        let restr = restr.or(if part_nonor { Some(pe.restr) } else { None });
                        next.push((lab.concat(pe.label), restr, val.add(pe.value)));
                    }
                }
                acc = next;
            }
            PinProfile::new(
                acc.into_iter()
                    .map(|(label, restr, value)| ProfileEntry {
                        label,
                        restr: restr.unwrap_or(false),
                        value,
                    })
                    .collect(),
            )
        }
        Expr::CircleSum(x, y) => {
            let px = profile_rec(x);
            if **y == Expr::TwistToken {
                return px.shifted16();
            }
            let py = profile_rec(y);
            fuse_circle(&px, &py, y.h1_dim())
        }
        Expr::TwistToken => PinProfile::new(vec![
            ProfileEntry {
                label: Label::new(0, 1),
                restr: false,
                value: Mod32::ONE,
            },
            ProfileEntry {
                label: Label::new(1, 1),
                restr: true,
                value: Mod32::ONE,
            },
        ]),
    }
}

/// Circle-sum fusion: keep pairs whose restriction bits agree; the fused
/// label is the left label followed by the right structure's index inside its
/// restriction class (the shared bit is counted once).
fn fuse_circle(px: &PinProfile, py: &PinProfile, h1y: u32) -> PinProfile {
    let classes = [py.class(false), py.class(true)];
    let half = 1usize << (h1y - 1);
    assert!(
        classes[0].len() == half && classes[1].len() == half,
        "unbalanced restriction classes in circle-sum operand"
    );
    let short = (h1y - 1) as u8;
    let mut out = Vec::with_capacity(px.len() * half);
    for xe in px.entries() {
        for (j, ye) in classes[xe.restr as usize].iter().enumerate() {
            out.push(ProfileEntry {
                label: xe.label.concat(Label::new(j as u32, short)),
                restr: xe.restr,
                value: xe.value.add(ye.value),
            });
        }
    }
    PinProfile::new(out)
}

/// Sorted set of eta values over all Pin+ structures.
pub fn eta_set(e: &Expr) -> Result<EtaSet> {
    Ok(eta_profile(e)?.eta_set())
}

/// Z/16 bordism class of `(e, label)`: eta numerator over 2.
pub fn bordism_class(e: &Expr, label: Label) -> Result<u8> {
    let profile = eta_profile(e)?;
    match profile.find(label) {
        Some(entry) => Ok(entry.value.bordism_class()),
        None => Err(Error::InvalidLabel(label.to_string(), e.to_string())),
    }
}

/// Eta from an isolated-fixed-point count: one summand of +-1/8 per point,
/// i.e. numerator 2 * (sum of indices) mod 32.
pub fn eta_from_fixed_points(indices: &[i8]) -> Mod32 {
    let s: i64 = indices.iter().map(|&i| i as i64).sum();
    Mod32::new(2 * s)
}

/// Eta of an orientable spin expression: signature/16 mod 2Z, the same for
/// every structure.
pub fn spin_eta(e: &Expr) -> Result<Mod32> {
    if !e.orientable() || !e.w2_zero() {
        return Err(Error::NotSpin(e.to_string()));
    }
    let value = Mod32::new(e.sigma());
    if e.h1_dim() <= 12 {
        let set = eta_set(e)?;
        debug_assert!(set.len() == 1 && set.contains(value));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{atom, bar, circle_sum, conn_sum, csum, twist, AtomId};

    fn a(id: AtomId) -> Expr {
        atom(id)
    }

    #[test]
    fn mod32_arithmetic() {
        assert_eq!(Mod32::new(2).add(Mod32::new(30)), Mod32::ZERO);
        assert_eq!(Mod32::new(-2), Mod32::new(30));
        assert_eq!(Mod32::new(18).neg(), Mod32::new(14));
        assert_eq!(Mod32::new(30).shift16(), Mod32::new(14));
        assert_eq!(Mod32::new(2).bordism_class(), 1);
        assert_eq!(Mod32::new(18).bordism_class(), 9);
    }

    #[test]
    fn fraction_rendering() {
        assert_eq!(Mod32::new(0).fraction(), "0");
        assert_eq!(Mod32::new(2).fraction(), "1/8");
        assert_eq!(Mod32::new(30).fraction(), "-1/8");
        assert_eq!(Mod32::new(14).fraction(), "7/8");
        assert_eq!(Mod32::new(18).fraction(), "-7/8");
        assert_eq!(Mod32::new(16).fraction(), "1");
        assert_eq!(Mod32::new(4).fraction(), "1/4");
        assert_eq!(Mod32::new(6).fraction(), "3/8");
        assert_eq!(Mod32::new(26).fraction(), "-3/8");
    }

    #[test]
    fn label_roundtrip() {
        let l = Label::parse("011").unwrap();
        assert!(!l.bit(0) && l.bit(1) && l.bit(2));
        assert_eq!(l.to_string(), "011");
        assert_eq!(Label::parse("-"), Some(Label::EMPTY));
        assert_eq!(Label::EMPTY.to_string(), "-");
        let c = Label::parse("1").unwrap().concat(Label::parse("01").unwrap());
        assert_eq!(c.to_string(), "101");
    }

    #[test]
    fn generator_profiles() {
        assert_eq!(eta_set(&a(AtomId::RP4)).unwrap(), EtaSet::from_nums(&[2, 30]));
        assert_eq!(eta_set(&a(AtomId::Q)).unwrap(), EtaSet::from_nums(&[14, 18]));
        assert_eq!(eta_set(&a(AtomId::A)).unwrap(), EtaSet::from_nums(&[16]));
        assert_eq!(eta_set(&a(AtomId::S3tS1)).unwrap(), EtaSet::from_nums(&[0]));
        assert_eq!(eta_set(&a(AtomId::S2gR)).unwrap(), EtaSet::from_nums(&[0]));
        assert_eq!(eta_profile(&a(AtomId::KbxS2)).unwrap().len(), 4);
        assert_eq!(eta_profile(&a(AtomId::KbxT2)).unwrap().len(), 16);
        assert!(eta_profile(&a(AtomId::CP2)).is_err());
    }

    #[test]
    fn q_profile_matches_twisted_rp4() {
        let q = eta_profile(&a(AtomId::Q)).unwrap();
        let t = eta_profile(&twist(a(AtomId::RP4)).unwrap()).unwrap();
        assert_eq!(q, t);
    }

    #[test]
    fn conn_sum_profile_is_full_sumset() {
        let e = conn_sum(a(AtomId::RP4), a(AtomId::RP4)).unwrap();
        let p = eta_profile(&e).unwrap();
        let values: Vec<u8> = p.values().iter().map(|m| m.num()).collect();
        assert_eq!(values, vec![4, 0, 0, 28]);
        // restriction bit comes from the first summand
        let restrs: Vec<bool> = p.entries().iter().map(|e| e.restr).collect();
        assert_eq!(restrs, vec![false, false, true, true]);
    }

    #[test]
    fn circle_sum_filters_on_the_shared_loop() {
        // two copies glue to the double profile
        let e = circle_sum(a(AtomId::RP4), a(AtomId::RP4)).unwrap();
        assert_eq!(eta_set(&e).unwrap(), EtaSet::from_nums(&[4, 28]));
        // gluing against the reversed structure cancels
        let e = circle_sum(a(AtomId::RP4), bar(a(AtomId::RP4)).unwrap()).unwrap();
        assert_eq!(eta_set(&e).unwrap(), EtaSet::from_nums(&[0]));
        assert_eq!(e.h1_dim(), 1);
    }

    #[test]
    fn designated_loop_follows_the_canonical_summand_order() {
        // A connected sum of two non-orientable manifolds has one designated
        // loop; it lives in the canonically first summand (RP4 here), no
        // matter how the sum is spelled. A later circle sum pairs structures
        // along that loop, so both spellings must give the same profile.
        let spelled = conn_sum(a(AtomId::S2gR), a(AtomId::RP4)).unwrap();
        let e = circle_sum(spelled, a(AtomId::RP4)).unwrap();
        let values: Vec<u8> = eta_profile(&e)
            .unwrap()
            .values()
            .iter()
            .map(|m| m.num())
            .collect();
        assert_eq!(values, vec![4, 4, 28, 28]);
        assert_eq!(
            eta_profile(&e).unwrap().entries(),
            eta_profile(&e.normalize()).unwrap().entries()
        );
    }

    #[test]
    fn sixteen_copies_cancel() {
        let e = csum(16, &a(AtomId::RP4)).unwrap();
        assert_eq!(e.h1_dim(), 1);
        assert_eq!(eta_set(&e).unwrap(), EtaSet::from_nums(&[0]));
    }

    #[test]
    fn twist_shifts_every_value() {
        let e = twist(a(AtomId::RP4)).unwrap();
        assert_eq!(eta_set(&e).unwrap(), EtaSet::from_nums(&[14, 18]));
        let e = twist(a(AtomId::S2gR)).unwrap();
        assert_eq!(eta_set(&e).unwrap(), EtaSet::from_nums(&[16]));
    }

    #[test]
    fn bar_negates() {
        let e = bar(a(AtomId::Q)).unwrap();
        assert_eq!(eta_set(&e).unwrap(), EtaSet::from_nums(&[14, 18]));
        let p = eta_profile(&e).unwrap();
        assert_eq!(p.entries()[0].value, Mod32::new(14));
    }

    #[test]
    fn bordism_classes() {
        assert_eq!(bordism_class(&a(AtomId::RP4), Label::parse("0").unwrap()).unwrap(), 1);
        let t = twist(a(AtomId::RP4)).unwrap();
        assert_eq!(bordism_class(&t, Label::parse("0").unwrap()).unwrap(), 9);
        assert_eq!(bordism_class(&a(AtomId::S2gR), Label::parse("1").unwrap()).unwrap(), 0);
        assert!(bordism_class(&a(AtomId::RP4), Label::parse("00").unwrap()).is_err());
    }

    #[test]
    fn fixed_point_formula() {
        assert_eq!(eta_from_fixed_points(&[1]), Mod32::new(2));
        assert_eq!(eta_from_fixed_points(&[]), Mod32::ZERO);
        assert_eq!(eta_from_fixed_points(&[1, -1]), Mod32::ZERO);
        assert_eq!(eta_from_fixed_points(&[-1; 3]), Mod32::new(26));
    }

    #[test]
    fn spin_eta_is_signature_over_16() {
        assert_eq!(spin_eta(&a(AtomId::S4)).unwrap(), Mod32::ZERO);
        let e = conn_sum(a(AtomId::S2xS2), a(AtomId::S2xS2)).unwrap();
        assert_eq!(spin_eta(&e).unwrap(), Mod32::ZERO);
        assert!(spin_eta(&a(AtomId::CP2)).is_err());
        assert!(spin_eta(&a(AtomId::RP4)).is_err());
    }

    #[test]
    fn structure_counts() {
        assert_eq!(structure_count(&a(AtomId::S3tS1)).unwrap(), 2);
        assert_eq!(structure_count(&a(AtomId::KbxS2)).unwrap(), 4);
        assert_eq!(structure_count(&a(AtomId::KbxT2)).unwrap(), 16);
        assert_eq!(structure_count(&a(AtomId::CP2)).unwrap(), 0);
    }

    #[test]
    fn profile_too_large_is_refused() {
        // six KbxT2 summands: h1 = 24 > 20
        let mut e = a(AtomId::KbxT2);
        for _ in 0..5 {
            e = conn_sum(e, a(AtomId::KbxT2)).unwrap();
        }
        assert!(matches!(eta_profile(&e), Err(Error::ProfileTooLarge(24))));
    }
}
