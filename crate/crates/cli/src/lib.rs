//! Report formats, file formats and command implementations behind the
//! `tracelab` binary.

pub mod commands;
pub mod complexfile;
pub mod presfile;
pub mod render;
pub mod report;
