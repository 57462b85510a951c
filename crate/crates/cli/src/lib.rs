//! Text formats and the command-line front end of `autwidth`.

pub mod commands;
pub mod formats;
