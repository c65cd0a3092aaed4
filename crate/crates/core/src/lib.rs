//! Labeled and reduced Rauzy–Veech induction, Rauzy class enumeration, and
//! the invariants of the translation surfaces built from suspension data.
//!
//! The enumeration and batch verification entry points take an
//! [`Execution`] mode. With the default `parallel` feature they fan out over
//! rayon; without it every mode runs sequentially.

pub mod classes;
pub mod exec;
pub mod geometry;
pub mod induction;
pub mod invariants;
pub mod perm;
pub mod theorem;

pub use classes::{
    enumerate_class, enumerate_labeled, enumerate_reduced, ratio, Budget, DiagramMode,
    EnumerateOptions, RauzyDiagram,
};
pub use exec::Execution;
pub use induction::{MoveKind, Rational, SuspensionData};
pub use invariants::{classify_component, profile, ComponentId, ComponentKind, MarkedProfile};
pub use perm::{LabeledPermutation, ReducedPermutation};
pub use theorem::{sweep, verify, RatioReport, Verdict};
