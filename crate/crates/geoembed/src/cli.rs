//! Command-line surface. Every command produces a JSON artifact and a short
//! human summary; `--out` writes the artifact, `--json` prints it.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geoembed_core::Error;

use crate::io::IoError;

/// Exit status: success.
pub const EXIT_OK: i32 = 0;
/// Exit status: a certification or verification check failed.
pub const EXIT_CERTIFICATION: i32 = 1;
/// Exit status: malformed input.
pub const EXIT_MALFORMED: i32 = 2;

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "GEOEMBED_THREADS";

#[derive(Debug, Parser)]
#[command(name = "geoembed", version, about = "Certified equivariant geodesic embeddings of hyperbolic surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Print the JSON artifact on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the JSON artifact to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores, or GEOEMBED_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// More progress output on standard error.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolyhedronArg {
    Tetrahedron,
    /// Tetrahedron drawn without crossings.
    Planar,
    Cube,
    Octahedron,
    Bipyramid,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a homomorphism file respects all relators.
    VerifyHom {
        #[arg(long)]
        hom: PathBuf,
        /// Target group file or library name, overriding the hom file.
        #[arg(long)]
        target: Option<String>,
    },
    /// All smooth epimorphisms onto a target group, up to conjugation.
    Census {
        #[arg(long)]
        sig: String,
        #[arg(long)]
        target: String,
        /// Also merge classes under outer conjugation in the symmetric group.
        #[arg(long)]
        outer: bool,
        /// Run the embedding pipeline on every epimorphism found.
        #[arg(long)]
        embed: bool,
    },
    /// Transitive actions up to a given degree.
    LowIndex {
        #[arg(long)]
        sig: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Signature of the point stabilizer of an action.
    SubgroupSignature {
        #[arg(long)]
        action: PathBuf,
    },
    /// Embedding report for a smooth epimorphism.
    Embed {
        /// Expected signature of the homomorphism.
        #[arg(long)]
        sig: Option<String>,
        #[arg(long)]
        hom: PathBuf,
        #[arg(long)]
        target: Option<String>,
        /// Skip the numerical realization.
        #[arg(long)]
        no_geometry: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Normal core of an action: the quasiplatonic quotient.
    Core {
        #[arg(long)]
        action: PathBuf,
    },
    /// Quasiplatonic cover of a semiplatonic surface and its embedding.
    Corollary2 {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        no_geometry: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Gram matrix of the tetrahedron with opposite labels p, q, r.
    Gram {
        /// Labels `p,q,r`.
        #[arg(long = "type")]
        labels: String,
    },
    /// Numerical realization of a truncated polyhedron.
    Realize {
        #[arg(long, value_enum)]
        polyhedron: PolyhedronArg,
        #[arg(long)]
        labels: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Spatial graph diagram emitted by a builder.
    Diagram {
        #[arg(long, value_enum)]
        polyhedron: PolyhedronArg,
        #[arg(long)]
        labels: String,
    },
    /// Orbifold group presentation and boundary subgroups of a diagram file.
    Wirtinger {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Geodesic embedding of the action of F_S / K on H²/K.
    Theorem3 {
        #[arg(long)]
        action: PathBuf,
        /// Stabilizer homomorphism file.
        #[arg(long, conflicts_with = "mod2")]
        stab: Option<PathBuf>,
        /// Use basis vector K of Hom(stabilizer, Z/2) instead of a file.
        #[arg(long)]
        mod2: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
}

/// Failure of a command, carrying its exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Certification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => EXIT_MALFORMED,
            CliError::Certification(_) => EXIT_CERTIFICATION,
        }
    }
}

/// Whether a library error means the input was malformed rather than a
/// check failing.
pub fn is_malformed(e: &Error) -> bool {
    matches!(
        e,
        Error::NotAPermutation
            | Error::DegreeMismatch { .. }
            | Error::GeneratorOutOfRange(_)
            | Error::ImageCountMismatch { .. }
            | Error::Parse { .. }
            | Error::NotHyperbolic(_)
            | Error::InvalidAction(_)
            | Error::WrongConstructionUseTetrahedron
            | Error::PreconditionViolation(_)
            | Error::Excluded(_)
            | Error::InvalidDiagram(_)
    )
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if is_malformed(&e) {
            CliError::Malformed(e.to_string())
        } else {
            CliError::Certification(e.to_string())
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match &e {
            IoError::Invalid { source, .. } if !is_malformed(source) => CliError::Certification(e.to_string()),
            _ => CliError::Malformed(e.to_string()),
        }
    }
}
