use thiserror::Error;

/// Evaluation-level failures. Syntax errors live in [`crate::dsl::ParseError`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("circle sum requires non-orientable operands, `{0}` is orientable")]
    OrientableOperand(String),

    #[error("`{0}` admits no Pin+ structure (w2 != 0)")]
    NoPinStructure(String),

    #[error("twist requires a non-orientable Pin+ expression, got `{0}`")]
    TwistOperand(String),

    #[error("`{0}` is not of the form X # S2xS2 with X non-orientable Pin+")]
    NotGluckForm(String),

    #[error("no orientation-cover rule matches `{0}`")]
    NoCoverRule(String),

    #[error("orientation cover requires a non-orientable expression, got `{0}`")]
    AlreadyOrientable(String),

    #[error("`{0}` has no CP2 summand at top level")]
    NoCp2Summand(String),

    #[error("no structure with label `{0}` on `{1}`")]
    InvalidLabel(String, String),

    #[error("enumeration needs {needed} assignments, above the bound {bound}")]
    EnumerationBound { needed: u128, bound: u64 },

    #[error("profile with 2^{0} entries is too large")]
    ProfileTooLarge(u32),

    #[error("spin eta requires an orientable expression with w2 = 0, got `{0}`")]
    NotSpin(String),

    #[error("malformed expression: {0}")]
    Malformed(String),

    #[error("{0}")]
    Precondition(String),

    #[error("unknown table target `{0}`")]
    UnknownTarget(String),

    #[error("engine invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
