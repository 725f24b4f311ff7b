//! Evaluation, comparison, and cover reports.
//!
//! Every report renders as plain text or as pretty-printed JSON with a
//! fixed key set (absent data serializes as null, never as a missing key),
//! and the output is byte-stable for a fixed input and format.

use serde::Serialize;

use crate::classify::{homeo, smooth_compare, Homeo, Smooth, Step};
use crate::cover::orientation_cover_traced;
use crate::error::Result;
use crate::expr::Expr;
use crate::invariants::{eta_profile, eta_set, structure_count, EtaSet};
use crate::oracle;

/// Output format for all reports.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
}

pub fn pretty_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

/// One Pin+ structure in a report: its label, the restriction of the
/// structure on the designated loop (null when the manifold is orientable
/// and carries none), and the eta value three ways.
#[derive(Clone, Debug, Serialize)]
pub struct EntryView {
    pub label: String,
    pub loop_restriction: Option<bool>,
    pub num: u8,
    pub eta: String,
    pub bordism_class: u8,
}

/// Full evaluation report for one expression.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub canonical: String,
    pub chi: i64,
    pub orientable: bool,
    pub pi1: String,
    pub h1_dim: u32,
    pub pin_plus: bool,
    pub w2_zero: bool,
    pub structure_count: u64,
    pub eta_profile: Vec<EntryView>,
    pub eta_set: Vec<u8>,
    pub eta_set_fractions: Vec<String>,
    /// true/false once a brute-force cross-check ran; null otherwise.
    pub oracle_agrees: Option<bool>,
}

/// Evaluate an expression into a [`Report`]. `oracle_bound` requests an
/// independent brute-force cross-check of the eta profile (errors if the
/// enumeration exceeds the bound).
pub fn build_report(e: &Expr, oracle_bound: Option<u64>) -> Result<Report> {
    e.validate()?;
    let n = e.normalize();
    let pin_plus = n.w2_zero();
    let (profile, nums, fracs) = if pin_plus {
        let p = eta_profile(&n)?;
        let restr_of = |r: bool| if n.orientable() { None } else { Some(r) };
        let views = p
            .entries()
            .iter()
            .map(|en| EntryView {
                label: en.label.to_string(),
                loop_restriction: restr_of(en.restr),
                num: en.value.num(),
                eta: en.value.fraction(),
                bordism_class: en.value.bordism_class(),
            })
            .collect();
        let set = p.eta_set();
        let fracs = set.iter().map(|m| m.fraction()).collect();
        (views, set.nums(), fracs)
    } else {
        (Vec::new(), Vec::new(), Vec::new())
    };
    let oracle_agrees = match oracle_bound {
        Some(bound) if pin_plus => Some(oracle::agrees_with_profile(&n, bound)?),
        _ => None,
    };
    Ok(Report {
        canonical: n.to_string(),
        chi: n.chi(),
        orientable: n.orientable(),
        pi1: n.pi1().to_string(),
        h1_dim: n.h1_dim(),
        pin_plus,
        w2_zero: n.w2_zero(),
        structure_count: structure_count(&n)?,
        eta_profile: profile,
        eta_set: nums,
        eta_set_fractions: fracs,
        oracle_agrees,
    })
}

fn fmt_num_set(nums: &[u8]) -> String {
    let inner: Vec<String> = nums.iter().map(u8::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "expression:      {}", self.canonical)?;
        writeln!(f, "chi:             {}", self.chi)?;
        writeln!(f, "orientable:      {}", self.orientable)?;
        writeln!(f, "pi1:             {}", self.pi1)?;
        writeln!(f, "H^1 dim:         {}", self.h1_dim)?;
        writeln!(f, "pin+:            {} (w2 = 0: {})", self.pin_plus, self.w2_zero)?;
        writeln!(f, "structures:      {}", self.structure_count)?;
        if self.eta_profile.is_empty() {
            writeln!(f, "eta profile:     (no Pin+ structure)")?;
        } else {
            writeln!(f, "eta profile:")?;
            for en in &self.eta_profile {
                let loop_bit = match en.loop_restriction {
                    Some(true) => "1",
                    Some(false) => "0",
                    None => "-",
                };
                writeln!(
                    f,
                    "  label {}  loop {}  eta {}  (num {}, bordism class {})",
                    en.label, loop_bit, en.eta, en.num, en.bordism_class
                )?;
            }
        }
        writeln!(
            f,
            "eta set:         {{{}}}  (numerators {})",
            self.eta_set_fractions.join(", "),
            fmt_num_set(&self.eta_set)
        )?;
        let classes: Vec<String> = self
            .eta_profile
            .iter()
            .map(|en| en.bordism_class.to_string())
            .collect();
        write!(f, "bordism classes: {{{}}}", classes.join(", "))?;
        if let Some(agrees) = self.oracle_agrees {
            write!(
                f,
                "\noracle:          {}",
                if agrees { "agrees (brute-force cross-check)" } else { "DISAGREES" }
            )?;
        }
        Ok(())
    }
}

/// Homeomorphism and smooth-comparison report for a pair of expressions.
#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub left: String,
    pub right: String,
    pub homeomorphic: &'static str,
    pub homeo_common: Option<String>,
    pub homeo_chain: Vec<Step>,
    pub homeo_reason: Option<String>,
    pub smooth: &'static str,
    pub smooth_witness: Option<String>,
    pub smooth_chain: Vec<Step>,
    pub smooth_reason: Option<String>,
    pub left_eta_set: Option<Vec<u8>>,
    pub right_eta_set: Option<Vec<u8>>,
    pub left_eta_fractions: Option<String>,
    pub right_eta_fractions: Option<String>,
    pub oracle_agrees: Option<bool>,
}

pub fn build_compare(x: &Expr, y: &Expr, oracle_bound: Option<u64>) -> Result<CompareReport> {
    x.validate()?;
    y.validate()?;
    let nx = x.normalize();
    let ny = y.normalize();

    let (homeomorphic, homeo_common, homeo_chain, homeo_reason) = match homeo(&nx, &ny)? {
        Homeo::Yes { common, chain } => ("yes", Some(common), chain, None),
        Homeo::Unknown { reason } => ("unknown", None, Vec::new(), Some(reason)),
    };
    let (smooth, smooth_witness, smooth_chain, smooth_reason) = match smooth_compare(&nx, &ny)? {
        Smooth::Diffeomorphic { witness, chain } => ("diffeomorphic", Some(witness), chain, None),
        Smooth::Exotic { .. } => ("exotic", None, Vec::new(), None),
        Smooth::Unknown { reason } => ("unknown", None, Vec::new(), Some(reason)),
    };

    let sets = |e: &Expr| -> Option<EtaSet> {
        if e.w2_zero() {
            eta_set(e).ok()
        } else {
            None
        }
    };
    let (lx, ly) = (sets(&nx), sets(&ny));
    let oracle_agrees = match oracle_bound {
        Some(bound) if nx.w2_zero() && ny.w2_zero() => Some(
            oracle::agrees_with_profile(&nx, bound)? && oracle::agrees_with_profile(&ny, bound)?,
        ),
        _ => None,
    };

    Ok(CompareReport {
        left: nx.to_string(),
        right: ny.to_string(),
        homeomorphic,
        homeo_common,
        homeo_chain,
        homeo_reason,
        smooth,
        smooth_witness,
        smooth_chain,
        smooth_reason,
        left_eta_set: lx.as_ref().map(EtaSet::nums),
        right_eta_set: ly.as_ref().map(EtaSet::nums),
        left_eta_fractions: lx.map(|s| s.to_string()),
        right_eta_fractions: ly.map(|s| s.to_string()),
        oracle_agrees,
    })
}

impl std::fmt::Display for CompareReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "left:          {}", self.left)?;
        writeln!(f, "right:         {}", self.right)?;
        match (&self.homeo_common, &self.homeo_reason) {
            (Some(common), _) => {
                writeln!(f, "homeomorphic:  yes (common form {common})")?;
                for step in &self.homeo_chain {
                    writeln!(f, "  {step}")?;
                }
            }
            (None, Some(reason)) => writeln!(f, "homeomorphic:  unknown — {reason}")?,
            (None, None) => writeln!(f, "homeomorphic:  unknown")?,
        }
        write!(f, "smooth:        {}", self.smooth)?;
        if let Some(w) = &self.smooth_witness {
            write!(f, " (both are {w})")?;
        }
        writeln!(f)?;
        for step in &self.smooth_chain {
            writeln!(f, "  {step}")?;
        }
        if let Some(reason) = &self.smooth_reason {
            writeln!(f, "  {reason}")?;
        }
        if let (Some(lf), Some(rf), Some(ln), Some(rn)) = (
            &self.left_eta_fractions,
            &self.right_eta_fractions,
            &self.left_eta_set,
            &self.right_eta_set,
        ) {
            writeln!(
                f,
                "eta sets:      {lf} vs {rf}  (numerators {} vs {})",
                fmt_num_set(ln),
                fmt_num_set(rn)
            )?;
        }
        if let Some(agrees) = self.oracle_agrees {
            writeln!(
                f,
                "oracle:        {}",
                if agrees { "agrees (brute-force cross-check)" } else { "DISAGREES" }
            )?;
        }
        Ok(())
    }
}

/// Orientation double cover report.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub base: String,
    pub base_chi: i64,
    pub base_group: String,
    pub cover: String,
    pub cover_chi: i64,
    pub cover_group: String,
    pub rules: Vec<&'static str>,
    pub oracle_agrees: Option<bool>,
}

pub fn build_cover(e: &Expr, oracle_bound: Option<u64>) -> Result<CoverReport> {
    let n = e.normalize();
    let (cover, rules) = orientation_cover_traced(&n)?;
    let oracle_agrees = match oracle_bound {
        Some(bound) if n.w2_zero() => Some(oracle::agrees_with_profile(&n, bound)?),
        _ => None,
    };
    Ok(CoverReport {
        base: n.to_string(),
        base_chi: n.chi(),
        base_group: n.pi1().to_string(),
        cover: cover.to_string(),
        cover_chi: cover.chi(),
        cover_group: cover.pi1().to_string(),
        rules,
        oracle_agrees,
    })
}

impl std::fmt::Display for CoverReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "base:   {}  (chi {}, group {})",
            self.base, self.base_chi, self.base_group
        )?;
        writeln!(
            f,
            "cover:  {}  (chi {}, group {})",
            self.cover, self.cover_chi, self.cover_group
        )?;
        write!(f, "rules:  {}", self.rules.join(", "))?;
        writeln!(
            f,
            "\nchecks: chi doubled ({} = 2 x {}), orientable, signature 0",
            self.cover_chi, self.base_chi
        )?;
        if let Some(agrees) = self.oracle_agrees {
            write!(
                f,
                "oracle: {}",
                if agrees {
                    "base profile agrees (brute-force cross-check)"
                } else {
                    "base profile DISAGREES"
                }
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn report_fields_for_q() {
        let r = build_report(&parse("Q").unwrap(), None).unwrap();
        assert_eq!(r.canonical, "Q");
        assert_eq!(r.eta_set, vec![14, 18]);
        assert_eq!(r.eta_set_fractions, vec!["7/8", "-7/8"]);
        assert_eq!(r.structure_count, 2);
        let json = pretty_json(&r);
        assert!(json.contains("\"eta_set\": [\n    14,\n    18\n  ]"));
        assert!(json.contains("\"pin_plus\": true"));
    }

    #[test]
    fn report_handles_missing_pin_structures() {
        let r = build_report(&parse("CP2").unwrap(), None).unwrap();
        assert!(!r.pin_plus && !r.w2_zero);
        assert_eq!(r.structure_count, 0);
        assert!(r.eta_profile.is_empty());
        assert!(pretty_json(&r).contains("\"pin_plus\": false"));
        assert!(r.to_string().contains("(no Pin+ structure)"));
    }

    #[test]
    fn text_report_shows_bordism_classes() {
        let r = build_report(&parse("A").unwrap(), None).unwrap();
        assert!(r.to_string().contains("bordism classes: {8, 8}"));
    }

    #[test]
    fn orientable_entries_have_no_loop_bit() {
        let r = build_report(&parse("S4").unwrap(), None).unwrap();
        assert_eq!(r.eta_profile.len(), 1);
        assert_eq!(r.eta_profile[0].loop_restriction, None);
        assert_eq!(r.eta_profile[0].label, "-");
    }

    #[test]
    fn compare_report_exotic_pair() {
        let x = parse("twist(S2gR)").unwrap();
        let y = parse("S2gR").unwrap();
        let r = build_compare(&x, &y, None).unwrap();
        assert_eq!(r.homeomorphic, "yes");
        assert_eq!(r.smooth, "exotic");
        assert_eq!(r.left_eta_set, Some(vec![16]));
        assert_eq!(r.right_eta_set, Some(vec![0]));
        let text = r.to_string();
        assert!(text.contains("smooth:        exotic"));
        assert!(text.contains("{1} vs {0}"));
    }

    #[test]
    fn compare_report_oracle_flag() {
        let x = parse("twist(RP4)").unwrap();
        let y = parse("Q").unwrap();
        let r = build_compare(&x, &y, Some(oracle::DEFAULT_ENUM_BOUND)).unwrap();
        assert_eq!(r.oracle_agrees, Some(true));
        assert_eq!(r.smooth, "unknown");
        assert_eq!(r.homeomorphic, "yes");
    }

    #[test]
    fn cover_report_rules() {
        let r = build_cover(&parse("twist(KbxT2)").unwrap(), None).unwrap();
        assert_eq!(r.cover, "T2xT2");
        assert_eq!(r.rules, vec!["C7", "C5"]);
        assert_eq!(r.cover_chi, 2 * r.base_chi);
    }

    #[test]
    fn reports_are_deterministic() {
        let e = parse("RP4 # KbxS2 # S2xS2").unwrap();
        let a = pretty_json(&build_report(&e, None).unwrap());
        let b = pretty_json(&build_report(&e, None).unwrap());
        assert_eq!(a, b);
    }
}
