//! Surface files, the bundled surfaces and the `fakedp` command line.

pub mod cli;
pub mod commands;
pub mod doc;
pub mod error;
pub mod parse;
pub mod registry;
pub mod verify;

use std::path::Path;

pub use commands::{CommandResult, Context};
pub use error::CliError;
pub use registry::{load_surface, LoadError, LoadedSurface, Registry};

/// Builds the registry and runs one parsed command.
pub fn execute(cli: &cli::Cli) -> Result<CommandResult, CliError> {
    let registry = match &cli.surface_path {
        Some(dir) => Registry::with_path(Path::new(dir))?,
        None => Registry::bundled(),
    };
    let ctx = Context::new(registry, cli.jobs)?;
    commands::run(&ctx, &cli.command)
}
