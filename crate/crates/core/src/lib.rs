//! Braided Seifert surfaces and quasipositive band representations.
//!
//! The crate models a braided surface `S(b)` through its handle decomposition
//! (one disk per strand, one half-twisted band per entry of a band
//! representation) and works with graphs drawn on such surfaces in combed
//! form. On top of that it provides:
//!
//! - the torus-link fiber representations [`nabla`] and [`q_rep`] together
//!   with the embeddings of positive braidwords and quasipositive band
//!   representations into fibers ([`pad_into_nabla`], [`expand_bands`]);
//! - fullness, regular-neighbourhood summaries and Whitehead reduction of
//!   combed graphs ([`graph`]);
//! - extraction of a quasipositive band representation from a full combed
//!   graph on `S(q_n)` ([`quasipositize`]);
//! - independent link-invariant oracles: reduced Burau, Seifert matrices and
//!   Alexander polynomials ([`invariants`]).
//!
//! Everything here is pure and allocation-only; file formats and the command
//! line live in the companion `qpsurf` crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod braid;
pub mod constructions;
mod dsu;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod poly;
pub mod qpize;
pub mod surface;

pub use braid::{BandRepresentation, BraidWord, EmbeddedBand, Letter, Permutation, Sign};
pub use constructions::{
    expand_bands, nabla, pad_into_nabla, q_rep, verify_fiber, CoarseDecomposition, CoarseHandle,
    FiberReport, PaddedWord, ExpandedBands,
};
pub use error::{Error, Result};
pub use graph::{Arc, CombedGraph, DiskPart, Site, Tooth, Violation};
pub use invariants::{alexander_from_braid, alexander_from_seifert, reduced_burau, seifert_matrix};
pub use poly::LaurentPolynomial;
pub use qpize::{quasipositize, quasipositize_handle_subsurface, QuasipositizationResult};
pub use surface::{BraidedSurface, ComponentSummary, SurfaceSummary};
