use thiserror::Error;

/// Conditions of the intrinsic characterization of free EI categories of Cartan type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum EiCondition {
    /// Automorphism groups are cyclic with the supplied generators.
    EC1,
    /// Both one-sided actions on unfactorizable morphisms are free.
    EC2,
    /// The generator powers commute past every unfactorizable morphism.
    EC3,
    /// Unfactorizable morphisms exist in both directions between two objects.
    Orientation,
}

impl std::fmt::Display for EiCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EiCondition::EC1 => "EC1",
            EiCondition::EC2 => "EC2",
            EiCondition::EC3 => "EC3",
            EiCondition::Orientation => "orientation",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("tensor algebra is not finite dimensional: {0}")]
    NotFiniteDimensional(String),
    #[error("category is not of Cartan type: {condition} fails ({detail})")]
    NotCartanType {
        condition: EiCondition,
        detail: String,
    },
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("table mismatch in row {row}: {detail}")]
    TableMismatch { row: String, detail: String },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
