use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("image array is not a permutation")]
    NotAPermutation,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("expected {expected} generator images, found {found}")]
    ImageCountMismatch { expected: usize, found: usize },
    #[error("parse error at column {column}: {message}")]
    Parse { message: String, column: usize },
    #[error("signature not hyperbolic: {0}")]
    NotHyperbolic(String),
    #[error("group order times orbifold Euler characteristic is not the Euler characteristic of a closed surface: {0}")]
    NotASmoothSurfaceKernel(String),
    #[error("invalid coset action: {0}")]
    InvalidAction(String),
    #[error("inconsistent stabilizer homomorphism: relator {relator} acts nontrivially at point {point}")]
    InconsistentStabilizerHom { relator: String, point: usize },
    #[error("relator {relator} is not mapped to the identity (image word {image})")]
    RelatorViolation { relator: String, image: String },
    #[error("label 2 present: use the tetrahedron construction")]
    WrongConstructionUseTetrahedron,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("no admissible edge labeling found")]
    LabelingFailure,
    #[error("numerical realization did not converge (best residual {best_residual:e})")]
    NonConvergence { best_residual: f64 },
    #[error("homomorphism is not smooth: {0}")]
    NonSmoothInput(String),
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("point stabilizer has torsion: signature {0}")]
    TorsionInSubgroup(String),
    #[error("kernel contains torsion: {0}")]
    TorsionInKernel(String),
    #[error("excluded signature: {0}")]
    Excluded(String),
    #[error("group too large to enumerate ({0} elements requested)")]
    GroupTooLarge(u64),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("certification failed: {0}")]
    CertificationFailure(String),
}

pub type Result<T> = core::result::Result<T, Error>;
