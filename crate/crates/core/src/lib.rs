//! Value driven agents reasoning through assumption-based argumentation.
//!
//! [`vda`] holds the agent model and its ethical preference; [`aba`] and
//! [`semantics`] the argumentation machinery; [`framework`] compiles agents
//! into frameworks; [`explain`] turns verdicts into explanations; [`oracle`]
//! holds brute-force reference implementations for cross-checking.

pub mod aba;
pub mod explain;
pub mod fixtures;
pub mod framework;
pub mod oracle;
pub mod semantics;
pub mod vda;

pub use aba::{AbaError, AbaFramework, AbaSpec, Argument, ArgumentId};
pub use framework::{EpistemicSpec, FrameworkError};
pub use semantics::{AttackGraph, Extension, Semantics, Status};
pub use vda::{VdaAgent, VdaError};
