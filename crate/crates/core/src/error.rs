use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not prime, the degree is zero, or the field is too large for table arithmetic.
    InvalidField(String),
    /// The supplied modulus factors; `factor_degree` is the degree of its smallest irreducible factor.
    ReducibleModulus { factor_degree: u32 },
    /// A ring element or series that had to be inverted is not a (declared) unit.
    NotAUnit,
    /// A valuation or coefficient could not be certified below the available precision.
    /// `needed` is the smallest precision that would have sufficed, when known.
    Precision { available: i64, needed: Option<i64> },
    /// The matrix is singular over the Laurent series field.
    NotInvertible,
    /// Vectors or matrices of mismatched size, or objects from different root data.
    DatumMismatch { expected: usize, found: usize },
    /// The pairing matrix of the simple roots and coroots is not of finite type.
    NotFiniteType(String),
    /// `μ - ν` does not lie in the rational span of the simple coroots.
    KappaMismatch,
    /// A rational cocharacter is not an admissible `GL_r` Newton point.
    Inadmissible(String),
    /// A cocharacter that has to be dominant is not.
    NotDominant,
    /// Matrix entries do not lie in the declared `σ^s`-fixed subfield.
    NotInSubfield { s: u32 },
    /// An enumeration would exceed its budget.
    Budget { estimated: u128, limit: u128 },
    /// The requested affine Deligne-Lusztig set is empty.
    Empty,
    /// All point counts of a stratum are zero.
    EmptyStratum,
    /// Not enough samples to fit a growth rate.
    TooFewSamples { needed: usize, found: usize },
    /// Valid input outside the supported range of an operation.
    Unsupported(String),
    /// Malformed input (parse errors, out-of-range values).
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidField(msg) => write!(f, "invalid field: {msg}"),
            Error::ReducibleModulus { factor_degree } => write!(
                f,
                "modulus is reducible: it has an irreducible factor of degree {factor_degree}"
            ),
            Error::NotAUnit => f.write_str("element is not a unit"),
            Error::Precision { available, needed: Some(n) } => write!(
                f,
                "precision {available} is insufficient, at least {n} is required"
            ),
            Error::Precision { available, needed: None } => {
                write!(f, "precision {available} is insufficient to certify the result")
            }
            Error::NotInvertible => f.write_str("matrix is not invertible"),
            Error::DatumMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotFiniteType(msg) => write!(f, "pairing matrix is not of finite type: {msg}"),
            Error::KappaMismatch => {
                f.write_str("difference is not in the rational span of the simple coroots")
            }
            Error::Inadmissible(msg) => write!(f, "inadmissible Newton point: {msg}"),
            Error::NotDominant => f.write_str("cocharacter is not dominant"),
            Error::NotInSubfield { s } => {
                write!(f, "entries are not fixed by the {s}-th power of Frobenius")
            }
            Error::Budget { estimated, limit } => write!(
                f,
                "enumeration refused: about {estimated} candidates exceed the budget of {limit}"
            ),
            Error::Empty => f.write_str("the affine Deligne-Lusztig set is empty"),
            Error::EmptyStratum => f.write_str("all counts of the stratum are zero"),
            Error::TooFewSamples { needed, found } => {
                write!(f, "need at least {needed} samples, found {found}")
            }
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
