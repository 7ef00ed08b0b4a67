//! Upper and lower subset indices of finite groups, computed exactly.
//!
//! For `A ⊆ G` the right s-factors of `A` are the maximal independent sets
//! of the left Cayley graph `Cay(G, A⁻¹A \ {e})`. The library builds groups
//! ([`group`], [`catalog`]), the graphs ([`cayley`]), solves `α` and `i`
//! exactly ([`solver`]), and on top of that decides stability of subsets
//! and groups ([`stability`]) and reproduces the known instances and the
//! list of stable groups ([`witnesses`]).
//!
//! ```
//! use sfactor::{catalog, solver::SolveBudget, stability::subset_indices};
//!
//! let named = catalog::parse_group_spec("alt4").unwrap();
//! let r = subset_indices(&named.group, &named.designated.unwrap(), &SolveBudget::default()).unwrap();
//! assert_eq!((r.lower, r.upper), (2, 3));
//! ```

pub mod bitset;
pub mod catalog;
pub mod cayley;
pub mod cli;
pub mod group;
pub mod solver;
pub mod stability;
pub mod witnesses;

pub use bitset::ElementSet;
pub use group::FiniteGroup;
pub use solver::{SolveBudget, SolveError};
