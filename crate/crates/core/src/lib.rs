//! Finite-type constrained systems given by forbidden words: the CMR
//! automaton and presentation, Shannon covers by follower-set merging, and
//! brute-force oracles to check them against.
//!
//! ```
//! use ftcs::{shannon_cover, ForbiddenSet};
//!
//! let f = ForbiddenSet::from_strs(&["a", "b", "c"], &["aaaa", "abaa"]).unwrap();
//! let report = shannon_cover(&f).unwrap();
//! assert_eq!(report.nu, 5);
//! assert!(report.language_irreducible);
//! ```

mod bits;
pub mod cmr;
pub mod conformance;
mod error;
pub mod graph;
pub mod minimize;
pub mod oracle;
pub mod sample;
pub mod words;

pub use cmr::{build_cmr_automaton, cmr_presentation, CmrAutomaton};
pub use error::{Error, Result};
pub use graph::{Format, GraphDocument, LabeledGraph, Partition, StateId};
pub use minimize::{is_language_irreducible, shannon_cover, CoverReport};
pub use words::{parse_forbidden_set, Alphabet, ForbiddenSet, Symbol, Word};
