use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: Z_{left} vs Z_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("table references an element outside its domain or codomain: {0}")]
    DomainMismatch(String),
    #[error("map `{map}` is undefined at {element}")]
    PartialMap { map: &'static str, element: String },
    #[error("multiplication {0}")]
    MulDomainMismatch(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("unit set mismatch: {0}")]
    UnitSetMismatch(String),
    #[error("p·q ≠ 1: {p}·{q} ≡ {product} (mod {modulus})")]
    NotInverse { p: u32, q: u32, product: u32, modulus: u32 },
    #[error("not a subspace: {0}")]
    NotASubspace(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("image outside the pullback carrier at {0}")]
    ImageOutsidePullback(String),
    #[error("unit map disagrees with the element map at {0}")]
    UnitMapConflict(String),
}

impl Error {
    /// Short variant name, used as a diagnostic code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DomainMismatch(_) => "DomainMismatch",
            Error::PartialMap { .. } => "PartialMap",
            Error::MulDomainMismatch(_) => "MulDomainMismatch",
            Error::UnknownElement(_) => "UnknownElement",
            Error::NotAUnit(_) => "NotAUnit",
            Error::CarrierMismatch(_) => "CarrierMismatch",
            Error::UnitSetMismatch(_) => "UnitSetMismatch",
            Error::NotInverse { .. } => "NotInverse",
            Error::NotASubspace(_) => "NotASubspace",
            Error::BaseMismatch(_) => "BaseMismatch",
            Error::SizeGuard(_) => "SizeGuard",
            Error::ImageOutsidePullback(_) => "ImageOutsidePullback",
            Error::UnitMapConflict(_) => "UnitMapConflict",
        }
    }
}
