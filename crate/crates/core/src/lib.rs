//! A workbench for monoidal actions, strengths, and strong monads over
//! finite, exhaustively checkable windows.
//!
//! Everything here is *executable* category theory: objects are finite
//! carriers with optional decorations, morphisms are function tables, and
//! every law is checked by brute enumeration over a finite probe window.
//! A failing verdict is globally sound (it exhibits a counterexample); a
//! passing verdict certifies the window it was checked on.

pub mod action;
pub mod biaction;
pub mod bounds;
pub mod core;
pub mod corpus;
pub mod enrichment;
pub mod error;
pub mod letlang;
pub mod monoidal;
pub mod powering;
pub mod strength;
pub mod strongmonad;

pub use crate::core::{
    Category, Elem, FunctorData, LawReport, Morphism, NaturalData, Obj,
};
pub use crate::error::LabError;
