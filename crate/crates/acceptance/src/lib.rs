//! Acceptance checks live in `tests/acceptance.rs`; `cargo test -p glt-spectra-validation`
//! prints one line per criterion.
