//! Exact computational algebra for commuting sets of matrices over small
//! fields: GF(p), GF(p^k), Q, and rational function fields K(t).
//!
//! The centerpiece is the analysis of uniserial modules — finite-dimensional
//! spaces whose invariant subspaces form a single chain — for the commutative
//! algebra generated by a set of commuting matrices. The crate computes socle
//! filtrations, decides uniseriality with certificates either way, extracts a
//! single matrix that generates the whole algebra action, and rewrites the
//! input generators as polynomials in it. Around that sit the supporting
//! layers: exact field arithmetic, polynomial algorithms (gcds, squarefree
//! parts, irreducibility, root-finding into extensions), Jordan-Chevalley
//! decompositions with certified invariants, and degree bookkeeping for
//! primitive-element searches in finite fields.

pub mod constructions;
pub mod cyclicgen;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod modstruct;
pub mod poly;
pub mod primelt;

pub use cyclicgen::{
    analyze, find_combination_generator, find_single_generator, Mode, UniserialReport,
};
pub use error::{Error, Result};
pub use fields::{Field, FieldDescriptor, FieldElement};
pub use linalg::{apply_poly, jordan_chevalley, JCDecomposition, Mat, Subspace};
pub use modstruct::{
    algebra_closure, is_uniserial, socle, socle_chain, CommAlgebra, SocleChain, UniserialCheck,
};
pub use poly::Poly;


