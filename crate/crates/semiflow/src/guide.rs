//! The book chapters from `book/src`, attached as rustdoc so every code
//! snippet in the guide compiles and runs under `cargo test --doc`. The
//! rendered book (`mdbook build book`) and these doctests share the same
//! markdown sources, so the guide cannot drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/matrices.md")]
pub mod matrices {}

#[doc = include_str!("../../../book/src/operator-space.md")]
pub mod operator_space {}

#[doc = include_str!("../../../book/src/quantum-maps.md")]
pub mod quantum_maps {}

#[doc = include_str!("../../../book/src/semigroups.md")]
pub mod semigroups {}

#[doc = include_str!("../../../book/src/weak-integration.md")]
pub mod weak_integration {}

#[doc = include_str!("../../../book/src/resolvents.md")]
pub mod resolvents {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
