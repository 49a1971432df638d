//! Library-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the library.
///
/// Variants carry enough context to name the offending input; checker
/// operations that are report-valued (axiom checks, condition checks)
/// do not error on a failed check, only on malformed input.
#[derive(Debug, Clone, Error)]
pub enum LtError {
    #[error("division by zero in the scalar field")]
    DivisionByZero,
    #[error("operands belong to different field contexts (conductors {0} and {1})")]
    ContextMismatch(u64, u64),
    #[error("order {order} does not divide the conductor {conductor}")]
    OrderNotDividingConductor { order: u64, conductor: u64 },
    #[error("polynomial does not split into linear factors; residual factor of degree {degree}: {factor}")]
    NonSplittingPolynomial { degree: usize, factor: String },

    #[error("invalid root system type: {0}")]
    InvalidType(String),
    #[error("input is not a root system: {0}")]
    NotARootSystem(String),
    #[error("root system is not irreducible")]
    NotIrreducible,
    #[error("root not in system")]
    RootNotInSystem,

    #[error("gram matrix is singular")]
    SingularGram,
    #[error("no regular element found within the search bound")]
    NoRegularElementFound,
    #[error("Cartan subalgebra does not split over the working field: {0}")]
    NonSplitCartan(String),
    #[error("subalgebra does not act ad-diagonalizably: {0}")]
    NotAdDiagonalizable(String),
    #[error("weights do not split over the working field: {0}")]
    NonSplitWeights(String),
    #[error("subspace is not stable under the subalgebra action")]
    NotStable,
    #[error("basis vectors do not close under the bracket")]
    NotClosed,

    #[error("permutation is not a symmetry of the Dynkin diagram")]
    NotADiagramSymmetry,
    #[error("automorphism extension is inconsistent: {0}")]
    ExtensionInconsistent(String),
    #[error("torus automorphism scalar is zero")]
    ZeroScalar,
    #[error("matrix does not preserve the defining bilinear form")]
    NotInIsometryGroup,
    #[error("tuple entries do not commute (entries {0} and {1})")]
    NonCommutingTuple(usize, usize),
    #[error("field conductor {conductor} too small for automorphism order {order}")]
    ConductorTooSmall { conductor: u64, order: u64 },
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("automorphism order exceeds bound {0}")]
    OrderBoundExceeded(usize),

    #[error("subalgebra is not ad-diagonalizable Cartan input")]
    NonCartanInput,
    #[error("element is not homogeneous of the claimed degree")]
    HomogeneityViolation,
    #[error("shift is not admissible: s(alpha) outside the support semilattice of base root #{base_index}")]
    NotAdmissible { base_index: usize },
    #[error("degree window too small")]
    WindowTooSmall,

    #[error("witness does not satisfy the congruence A*B = Id (mod M)")]
    NotAWitness,
    #[error("modulus chain violated: m[{0}+1] does not divide m[{0}]")]
    DivisibilityChainViolated(usize),
    #[error("group needs {needed} generators but only {slots} slots are available")]
    TooFewSlots { needed: usize, slots: usize },
    #[error("orbit exceeds enumeration bound {0}")]
    OrbitTooLarge(usize),
    #[error("map is not an algebra isomorphism: {0}")]
    NotAnIsomorphism(String),
    #[error("twist is not a torus automorphism of the required order: {0}")]
    NotATorusAutomorphism(String),

    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("io error: {0}")]
    IoError(String),
    #[error("internal consistency check failed: {0}")]
    InternalCheck(String),
}

pub type Result<T> = std::result::Result<T, LtError>;

impl LtError {
    /// CLI/FFI exit code classification: 2 input error, 3 field too small.
    pub fn exit_code(&self) -> i32 {
        match self {
            LtError::NonSplittingPolynomial { .. }
            | LtError::ConductorTooSmall { .. }
            | LtError::NonSplitCartan(_)
            | LtError::NonSplitWeights(_) => 3,
            _ => 2,
        }
    }
}
