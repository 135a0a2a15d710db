//! File formats and command implementations behind the `tridct` binary.

pub mod commands;
pub mod io;
