//! Size sequences of canonically arranged countable sets.

pub mod numtheory;
pub mod seq;
pub mod set;
pub mod verifier;
