//! Expression language of the `sizecalc` command line.
pub mod eval;
pub mod syntax;
