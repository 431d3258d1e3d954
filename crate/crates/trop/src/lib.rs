//! Command-line front end: set specs, JSON export, SVG pictures and verb dispatch.

pub mod cli;
pub mod json;
pub mod setspec;
pub mod svg;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] trop_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
