use thiserror::Error;

/// Every failure the library can report.
///
/// [`Error::is_cap`] separates resource-limit failures from validation
/// failures so that callers can react to them differently.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus polynomial {0:?} is not irreducible of the declared degree")]
    ReducibleModulusPoly(Vec<u32>),
    #[error("field has no element of multiplicative order {0}")]
    NoRootOfUnityOfOrder(u64),
    #[error("field is too large to tabulate: {0} elements")]
    FieldTooLarge(u64),
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("operation needs odd characteristic")]
    EvenCharacteristic,
    #[error("column {0} of the operation table is not a bijection")]
    NotBijectiveColumn(usize),
    #[error("self-distributivity fails at x={0}, y={1}, z={2}")]
    SelfDistributivityFails(usize, usize, usize),
    #[error("subset is not closed under conjugation")]
    NotConjugacyClosed,
    #[error("subset is not an ideal")]
    NotAnIdeal,
    #[error("cocycle value at ({0},{1}) is not in the supplied group")]
    CocycleNotValuedInA(usize, usize),
    #[error("hereditary connectivity is only tested for racks with at most 12 elements, got {0}")]
    TooLargeForHereditaryTest(usize),
    #[error("subset does not generate the group")]
    NotGenerating,
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error("cocycle identity fails at r={0}, s={1}, t={2}")]
    CocycleIdentityFails(usize, usize, usize),
    #[error("cocycle value at ({0},{1}) is zero")]
    ZeroValue(usize, usize),
    #[error("cocycle is not valued in roots of unity")]
    NotCyclotomic,
    #[error("Yang-Baxter equation fails")]
    YangBaxterFails,
    #[error("braiding is not invertible")]
    NotInvertible,
    #[error("addable pair hexagon fails: {0}")]
    AddableHexagonFails(String),
    #[error("grading incompatible with braiding")]
    GradeIncompatible,
    #[error("braid word on {got} strands applied to tensor power {expected}")]
    StrandMismatch { expected: usize, got: usize },
    #[error("{what}: size {size} exceeds cap {cap}")]
    SizeCapExceeded { what: String, size: u128, cap: u128 },
    #[error("work cap exceeded: {work} units, cap {cap}")]
    WorkCapExceeded { work: u128, cap: u128 },
    #[error("divisibility hypothesis fails: {0}")]
    DivisibilityHypothesisFails(String),
    #[error("boundary map squares to nonzero in degree {0}")]
    BoundaryNotSquareZero(usize),
    #[error("braided space is not permutational")]
    NotPermutational,
    #[error("operation needs characteristic zero")]
    PositiveCharacteristic,
    #[error("the q-power map leaves the conjugacy-closed set")]
    QPowerLeavesR,
    #[error("objects live over different fields")]
    FieldMismatch,
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for size and work limits, false for validation errors.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::SizeCapExceeded { .. }
                | Error::WorkCapExceeded { .. }
                | Error::TooLargeForHereditaryTest(_)
                | Error::FieldTooLarge(_)
        )
    }

    /// Short machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPrimeModulus(_) => "NonPrimeModulus",
            Error::ReducibleModulusPoly(_) => "ReducibleModulusPoly",
            Error::NoRootOfUnityOfOrder(_) => "NoRootOfUnityOfOrder",
            Error::FieldTooLarge(_) => "FieldTooLarge",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NotSquarefree => "NotSquarefree",
            Error::EvenCharacteristic => "EvenCharacteristic",
            Error::NotBijectiveColumn(_) => "NotBijectiveColumn",
            Error::SelfDistributivityFails(..) => "SelfDistributivityFails",
            Error::NotConjugacyClosed => "NotConjugacyClosed",
            Error::NotAnIdeal => "NotAnIdeal",
            Error::CocycleNotValuedInA(..) => "CocycleNotValuedInA",
            Error::TooLargeForHereditaryTest(_) => "TooLargeForHereditaryTest",
            Error::NotGenerating => "NotGenerating",
            Error::HypothesisFails(_) => "HypothesisFails",
            Error::CocycleIdentityFails(..) => "CocycleIdentityFails",
            Error::ZeroValue(..) => "ZeroValue",
            Error::NotCyclotomic => "NotCyclotomic",
            Error::YangBaxterFails => "YangBaxterFails",
            Error::NotInvertible => "NotInvertible",
            Error::AddableHexagonFails(_) => "AddableHexagonFails",
            Error::GradeIncompatible => "GradeIncompatible",
            Error::StrandMismatch { .. } => "StrandMismatch",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
            Error::WorkCapExceeded { .. } => "WorkCapExceeded",
            Error::DivisibilityHypothesisFails(_) => "DivisibilityHypothesisFails",
            Error::BoundaryNotSquareZero(_) => "BoundaryNotSquareZero",
            Error::NotPermutational => "NotPermutational",
            Error::PositiveCharacteristic => "PositiveCharacteristic",
            Error::QPowerLeavesR => "QPowerLeavesR",
            Error::FieldMismatch => "FieldMismatch",
            Error::Invalid(_) => "Invalid",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
