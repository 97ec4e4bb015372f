use std::path::PathBuf;

use crate::cli::{Cli, CliError, Command, THREADS_ENV};

/// Settings of one invocation, validated.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub tol: f64,
    pub seed: u64,
    /// `None` lets the pool pick one thread per core.
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub json: bool,
    pub verbosity: u8,
}

impl RunConfig {
    /// `env_threads` is the value of the thread-count variable, if set.
    pub fn new(cli: &Cli, env_threads: Option<&str>) -> Result<Self, CliError> {
        let (command, inputs, solver) = match &cli.command {
            Command::VerifyHom { hom, .. } => ("verify-hom", vec![hom.clone()], None),
            Command::Census { .. } => ("census", vec![], None),
            Command::LowIndex { .. } => ("low-index", vec![], None),
            Command::SubgroupSignature { action } => ("subgroup-signature", vec![action.clone()], None),
            Command::Embed { hom, solver, .. } => ("embed", vec![hom.clone()], Some(*solver)),
            Command::Core { action } => ("core", vec![action.clone()], None),
            Command::Corollary2 { action, solver, .. } => ("corollary2", vec![action.clone()], Some(*solver)),
            Command::Gram { .. } => ("gram", vec![], None),
            Command::Realize { solver, .. } => ("realize", vec![], Some(*solver)),
            Command::Diagram { .. } => ("diagram", vec![], None),
            Command::Wirtinger { diagram } => ("wirtinger", vec![diagram.clone()], None),
            Command::Theorem3 { action, stab, .. } => {
                ("theorem3", std::iter::once(action.clone()).chain(stab.clone()).collect(), None)
            }
        };
        let (tol, seed) = solver.map(|s| (s.tol, s.seed)).unwrap_or((1e-8, 0));
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Malformed(format!("tolerance must be positive, got {tol}")));
        }
        let threads = match (cli.global.threads, env_threads) {
            (Some(n), _) => Some(n),
            (None, Some(v)) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Malformed(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?,
            ),
            (None, None) => None,
        };
        if threads == Some(0) {
            return Err(CliError::Malformed("thread count must be positive".into()));
        }
        Ok(RunConfig {
            command: command.into(),
            inputs,
            tol,
            seed,
            threads,
            output: cli.global.out.clone(),
            json: cli.global.json,
            verbosity: cli.global.verbose,
        })
    }
}
