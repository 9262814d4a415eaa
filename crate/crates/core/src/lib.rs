//! Exact computations around the higher Frobenius-Schur indicators of the
//! Drinfeld double `D(G)` of a finite group `G`.
//!
//! An irreducible representation of `D(G)` is labelled by a conjugacy class
//! representative `u` and an irreducible character `eta` of the centralizer
//! `C(u)`. Its `n`-th indicator is
//!
//! ```text
//! nu_n(u, eta) = |C(u)|^-1 * sum_{g in C(u)} |G_n(u, g)| * eta(g),
//! G_n(u, g)    = { a in G : a^n = (a u^-1)^n = g }.
//! ```
//!
//! All indicators at degree `n` are integers exactly when the counts
//! `|G_n(u, g)|` are constant on every set `{ g^m : gcd(m, o(g)) = 1 }`.
//! The crate decides that criterion by exact counting ([`indicator`]),
//! over a backend-agnostic finite group type ([`group`]) with builders for
//! the standard families ([`constructions`]), and evaluates indicator
//! values in exact cyclotomic arithmetic ([`cyclotomic`]) wherever the
//! needed characters are linear. [`report`] drives everything from a
//! [`report::RunConfig`] and renders JSON, CSV or text.

pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod indicator;
pub mod io;
pub mod report;

pub use cyclotomic::{CycClass, CycNum};
pub use error::{FszError, Result};
pub use group::{ConjClass, ElementId, Group, PowerClassPartition, SIZE_CAP};
pub use indicator::{FszOptions, FszVerdict, Witness, ZetaTable};
