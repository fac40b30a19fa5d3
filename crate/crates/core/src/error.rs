use thiserror::Error;

/// Errors surfaced by the library.
///
/// Precondition failures (bad moduli, mismatched groups, hypothesis
/// violations) are ordinary errors. The `TheoremViolation` variant is
/// different: it is returned from code paths that are provably unreachable
/// when the structure theorems hold, so seeing it from valid input means a
/// bug, and the verification sweeps treat it as a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is invalid: cyclic factors must have order at least 2")]
    InvalidModulus(u64),
    #[error("group must have at least one cyclic factor")]
    EmptyGroup,
    #[error("group order {order} exceeds the enumeration budget {budget}")]
    EnumerationBudgetExceeded { order: u64, budget: u64 },
    #[error("operands belong to groups with different moduli")]
    GroupMismatch,
    #[error("coordinate index {index} out of range for {arity} factors")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("entry ({row},{col}) = {entry} does not define a homomorphism: {source_modulus} * {entry} != 0 mod {target_modulus}")]
    IllDefinedHom {
        row: usize,
        col: usize,
        entry: u64,
        source_modulus: u64,
        target_modulus: u64,
    },
    #[error("expected a nonempty collection of points")]
    EmptyInput,
    #[error("the zero character does not define a hyperplane")]
    ZeroCharacter,
    #[error("no element evaluates to {target} under a character of order {order}: the fiber is empty")]
    EmptyFiber { target: String, order: u64 },
    #[error("the set is not closed under affine combinations")]
    NotAffine,
    #[error("the quotient by the linear translate is not cyclic, so the set is not a hyperplane")]
    NonCyclicQuotient,
    #[error("inflation {inflation} is incompatible with modulus {modulus} at the determined coordinate")]
    BadInflation { inflation: u64, modulus: u64 },
    #[error("coordinate {index} has modulus {modulus} != 2 and cannot support the determining character")]
    BadSupport { index: usize, modulus: u64 },
    #[error("the hyperplane is not contained in the zero locus")]
    NotInZeroLocus,
    #[error("the hyperplane is not a z-hyperplane for coordinate {index}")]
    NotZHyperplane { index: usize },
    #[error("the character does not have order 2")]
    NotOrderTwo,
    #[error("the collection is not a hyperplane splitting")]
    NotASplitting,
    #[error("the splitting union does not equal the zero locus")]
    UnionMismatch,
    #[error("the preimage of the hyperplane is empty")]
    EmptyPreimage,
    #[error("the preimage is the whole group, not a hyperplane")]
    FullPreimage,
    #[error("the map is not an isomorphism")]
    NotIso,
    #[error("the map does not carry the zero locus onto the zero locus")]
    NotZPreserving,
    #[error("moduli must be sorted with the order-2 factors first: {0:?}")]
    ModuliNotSorted(Vec<u64>),
    #[error("character index {k} is out of range for Z/{n}")]
    BadCharacter { k: u64, n: u64 },
    #[error("({n},{q}) is not a lens space parameter: need 0 < q < n coprime to n")]
    BadLens { n: u64, q: u64 },
    #[error("{copies} copies times rho = {value} is not an integer signature")]
    NonIntegralSignature { copies: u64, value: String },
    #[error("the map does not carry one signature zero locus onto the other")]
    NotSignaturePreserving,
    #[error("cancellation fails: {0}")]
    CancellationFails(String),
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("internal structure theorem violated: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
