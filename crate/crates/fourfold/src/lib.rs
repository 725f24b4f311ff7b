//! Symbolic engine for closed smooth 4-manifolds built from a fixed atom
//! alphabet and four constructions: connected sum, circle sum, orientation
//! reversal, and the Gluck twist.
//!
//! The engine computes exact eta-invariant profiles over all Pin+ structures
//! (numerators mod 32 over the fixed denominator 16 — no floats), issues
//! machine-checked homeomorphism and exotic-smooth-structure verdicts with
//! replayable rewrite chains, constructs orientation double covers, and
//! cross-validates every profile against a brute-force enumeration oracle.
//!
//! Modules:
//! - [`expr`] — expression trees, the atom table, normalization.
//! - [`invariants`] — eta profiles, eta sets, bordism classes.
//! - [`classify`] — homeomorphism and smooth-comparison verdicts.
//! - [`cover`] — orientation double covers and involution reports.
//! - [`oracle`] — independent brute-force enumeration and algebraic laws.
//! - [`dsl`] — the expression grammar (`RP4 # S2xS2`, `csum(3, RP4)`, ...).
//! - [`report`] — text/JSON evaluation, comparison, and cover reports.
//! - [`tables`] — self-checking golden reproduction tables.
//!
//! The `examples/` directory demonstrates each capability end to end; the
//! `fourfold` binary exposes `eval`, `compare`, `cover`, and `tables`
//! subcommands over the same API.

pub mod classify;
pub mod cover;
pub mod dsl;
pub mod error;
pub mod expr;
pub mod invariants;
pub mod oracle;
pub mod report;
pub mod tables;

pub use error::{Error, Result};
pub use expr::{atom, bar, circle_sum, conn_sum, conn_sum_all, csum, gluck_twist, twist};
pub use expr::{AtomId, Expr, GroupTag, ALL_ATOMS, GENERATORS};
pub use invariants::{
    bordism_class, eta_from_fixed_points, eta_profile, eta_set, h1_dim, pin_plus, spin_eta,
    structure_count, EtaSet, Label, Mod32, PinProfile,
};
pub use classify::{
    cp2_stabilize, homeo, limits_report, replay, smooth_compare, Homeo, Smooth, Step,
};
pub use cover::{involution_report, orientation_cover, orientation_cover_traced, InvolutionReport};
pub use dsl::{parse, ParseError, ParseErrorKind};
pub use oracle::{agrees_with_profile, brute_eta_set, brute_values, check_laws, DEFAULT_ENUM_BOUND};
pub use report::{build_compare, build_cover, build_report, pretty_json, Format, Report};
pub use tables::{reproduce, TableDoc, Target};
