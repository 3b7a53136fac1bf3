//! Finite-model workbench for bunched logics.
//!
//! The crate covers the propositional family LGL/ILGL, BI/BBI, SML,
//! DMBI/CBI, BiBI/BiBBI and CKBI, and the first-order pointer logic over
//! finite heaps. Each logic gets four coordinated views:
//!
//! - [`syntax`](crate::parser) / [`formula`]: shared AST, ASCII grammar,
//!   signature checking and defined-connective expansion;
//! - [`proofs`]: Hilbert proof objects and a rule-by-rule checker;
//! - [`frames`]: finite Kripke frames, axiom checking and satisfaction;
//! - [`algebras`]: finite residuated lattice-based algebras;
//! - [`duality`]: complex algebras, prime filter frames, and the θ/η
//!   round-trip checks of the finite representation theorems;
//! - [`heap`]: the separation-logic store/heap instance with both pointer
//!   semantics and the context-indexed semantics;
//! - [`models`]: layered-graph scaffolds, resource monoids, and a curated
//!   sample library;
//! - [`explorer`]: bounded frame enumeration, countermodel search, and
//!   soundness fuzzing.

pub mod algebras;
pub mod explorer;
pub mod formula;
pub mod frames;
pub mod json;
pub mod logic;
pub mod models;
pub mod parser;
pub mod duality;
pub mod generate;
pub mod heap;
pub mod proofs;

pub use formula::{Formula, Sequent, Term};
pub use logic::{Logic, LogicName, ModalClass, SigmaAxiom};
