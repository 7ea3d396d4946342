use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal {0:?}")]
    Parse(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("zero function has no valuation or divisor")]
    ZeroFunction,
    #[error("pole at evaluation point")]
    Pole,
    #[error("unsupported locus: irreducible factor {0}")]
    UnsupportedLocus(String),
    #[error("not logarithmic: pole of order {order} at {point}")]
    NotLogarithmic { point: String, order: i64 },
    #[error("non-generic residue: repeated eigenvalue")]
    NonGenericResidue,
    #[error("eigenvalues outside field")]
    EigenvaluesOutsideField,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("incidence variety: zeta_{0} equals z_{0}")]
    IncidenceVariety(usize),
    #[error("incidence pole: a.b vanishes at the sample")]
    IncidencePole,
    #[error("blown-up point: z = (t, t)")]
    BlownUpPoint,
    #[error("evaluation at Z_{0} = 0 needs the epsilon field")]
    UseEpsilonField(usize),
    #[error("apparent-map transcription failure: {0}")]
    AppTranscription(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("series precision exhausted")]
    Precision,
}

pub type Result<T> = std::result::Result<T, Error>;
