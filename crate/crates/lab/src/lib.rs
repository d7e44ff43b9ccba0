//! IO, file formats, and the command-line front end over `brody-core`:
//! curve specification files, growth tables, inequality sweeps, the
//! acceptance battery, and deterministic report writers.

pub mod accept;
pub mod commands;
pub mod report;
pub mod spec;
