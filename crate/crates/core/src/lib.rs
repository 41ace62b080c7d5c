//! Marginal-preserving two-record swaps for categorical microdata.
//!
//! A microdata set over `k` categorized variables is a sparse `k`-way
//! contingency table. Given a generating class of protected marginals,
//! this crate decides whether two records can exchange some of their
//! observations without moving any protected marginal, finds swap partners
//! for risky records by scanning diagonal subtables around the minimal
//! vertex separators of the generated graph, and converts between swaps and
//! primitive Markov moves.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod model;
pub mod moves;
pub mod oracle;
pub mod swap;
pub mod table;
pub mod varset;

pub use error::{Error, Result};
pub use model::{GeneratingClass, Graph, Normalized, SeparatorDecomposition};
pub use moves::{move_to_swap, swap_to_move, MarkovNote, Move, PrimitiveMove};
pub use swap::{
    apply_swap, check_pair, decompositions, difference_set, find_partner, fixes_marginal,
    is_effective, is_swappable, separator_witness, verify_preservation, PairCheck, Partner,
    PartnerSearch, PreservationReport, SwapPlan, SwapWitness,
};
pub use table::{Cell, ContingencyTable, DiagonalSubtable, MicrodataTable, Record, Schema};
pub use varset::VarSet;
