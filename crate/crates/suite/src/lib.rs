//! Acceptance suite for `braidstat`.
//!
//! The runner is the `acceptance` test target (`tests/acceptance.rs`), kept in
//! its own package so that `cargo test --workspace` runs it after every other
//! test binary. The criteria themselves live in `braidstat::acceptance`.
