//! A toolkit for a bimodal logic of knowledge and comprehension, interpreted
//! over epistemic models with meanings.
//!
//! Every state of a model carries its own set of meanings, and propositional
//! variables are true or false per meaning rather than per state. On top of
//! that, `K[a] phi` (knowledge) asks that `phi` holds under every meaning of
//! every state the agent cannot distinguish from the current one, while
//! `C[a] phi` (comprehension) asks only that the truth value of `phi` is
//! uniform across the meanings within each such state. The two modalities are
//! independent: an agent may comprehend a sentence without knowing it, and
//! the other way around.
//!
//! The crate provides:
//!
//! - [`formula`] — the formula language, its parser, and printer;
//! - [`model`] — validated models and their JSON on-disk format;
//! - [`checker`] — the satisfaction relation and model-level validity;
//! - [`proof`] — a Hilbert-style proof verifier for the ten-axiom system;
//! - [`countermodel`] — bounded exhaustive search for witnesses;
//! - [`harness`] — seeded generators and the randomized property suites;
//! - [`fixtures`] — the bundled example models and proofs.

pub mod checker;
pub mod countermodel;
pub mod fixtures;
pub mod formula;
pub mod harness;
pub mod model;
pub mod proof;

pub use checker::{satisfies, valid_in_model, SemanticsMode};
pub use formula::{parse, render, Formula};
pub use model::{Model, Point};
