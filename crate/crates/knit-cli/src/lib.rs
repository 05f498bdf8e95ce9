//! Manifest parsing and emission for the `knit` command-line tool, exposed
//! as a library so integration tests can parse the tool's output.

pub mod manifest;
