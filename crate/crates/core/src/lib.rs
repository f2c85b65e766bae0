//! Z/2-bases of Ext_A^{k, k+n}(Z/2, Z/2) over the mod 2 Steenrod algebra
//! for k <= 5.
//!
//! The engine enumerates products of the indecomposable generators in a
//! bidegree, encodes the known relations as GF(2) vectors, and reads a
//! basis of the quotient off the reduced relation matrix. On top of that
//! sit sweeps over parametric stem families and a small pattern miner.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod ext;
pub mod families;
pub mod gf2;
pub mod monomial;
pub mod pattern;
pub mod relations;

pub use catalog::{Family, Generator};
pub use error::{Error, Result};
pub use ext::{compute_ext_basis, BasisElement, ExtBasisReport, ExtOptions};
pub use families::{stem_power, stem_stu, sweep_stu, StuCase, SweepOptions, SweepResult};
pub use monomial::{canonicalize, enumerate_monomials, Bidegree, Monomial};
pub use pattern::{discover_patterns, render_theorem, Pattern};
