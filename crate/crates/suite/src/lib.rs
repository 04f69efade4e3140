//! Holds no code. The acceptance criteria live in `tests/acceptance.rs`,
//! in a package of their own so that a failing criterion does not keep
//! cargo from running the other crates' test binaries.
