//! Scene ingestion, analysis commands and artifact writers behind the
//! `fuzgeo` binary.

pub mod commands;
pub mod emit;
mod error;
pub mod scene;

pub use commands::{run, Command, Format, Options};
pub use error::CliError;
pub use scene::{parse_scene, Scene};

/// Reads and validates a scene file.
pub fn load_scene(path: &std::path::Path) -> Result<Scene, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| CliError::ReadScene { path: path.to_path_buf(), source })?;
    parse_scene(&text)
}
