//! Word combinatorics for free products `H_1 * H_2 * ...` of a countable
//! family of groups, the inverse limit `lim← G_n` of the finite free products
//! `G_n = H_1 * ... * H_n`, and the subgroup `G` of sequences with eventually
//! constant deletion images, which models the fundamental group of the
//! Hawaiian earring.
//!
//! The crate makes the combinatorial side of a Baire-category argument
//! executable: the stratification `σ : G → {1, 2, ...}` splits `G` into
//! countably many strata, each stratum is pinned by finitely many coordinates
//! (so it is closed), and every element of a stratum is a limit of
//! perturbations that leave it (so it has empty interior). Consequently `G`
//! is not a Baire space and admits no complete metric compatible with the
//! inverse-limit topology.
//!
//! ```
//! use earring_core::{format_word, integers, iota, parse_word, reduce, sigma};
//!
//! let z = integers();
//! let w = parse_word(&*z, "a1 a2 a2^-1 a1").unwrap();
//! assert_eq!(format_word(&*z, &reduce(&*z, &w)), "a1^2");
//!
//! let commutator = parse_word(&*z, "a1 a2 a1^-1 a2^-1").unwrap();
//! assert_eq!(sigma(&iota(z, &commutator), 32).unwrap().n, 2);
//! ```

pub mod enumerate;
pub mod error;
pub mod family;
pub mod limit;
pub mod par;
pub mod parse;
pub mod reduce;
pub mod witness;
pub mod word;

pub use error::{FamilyError, LimitError, ParseError, WitnessError, WordError};
pub use family::{family_from_name, integers, CyclicGroups, Family, GroupFamily, Integers, Value};
pub use limit::{
    agree_to, check_coherence, iota, lim_invert, lim_multiply, sigma, sigma_certificate,
    stabilization_check, telescope_element, Exactness, LimitElement, SigmaValue, Stability,
    StabilizationReport, DEFAULT_DEPTH,
};
pub use par::Execution;
pub use parse::{format_word, parse_word};
pub use reduce::{invert, k_step, kappa, multiply, psi, reduce};
pub use witness::{
    decomposition_audit, empty_interior_scan, perturbation, witness_dichotomy, AuditEntry,
    AuditOptions, AuditRow, AuditTable, Branch, ScanSummary, Side, WitnessReport,
};
pub use word::{check_reduced, is_reduced, Letter, ReducedWord, Word};
