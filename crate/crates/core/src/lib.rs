//! Exact symbolic dynamics on the Cantor set.
//!
//! The crate models the Cantor set as a one-sided vertex shift with the
//! dyadic metric and works with subshifts of finite type given by directed
//! graphs. On top of that it builds cover graphs of block maps, Krieger
//! marker sets, marker-based factor codes into mixing subshifts, and
//! certified bounds for approximating a chain mixing map by conjugates of
//! a subshift.
//!
//! Every number that appears in a certificate is an exact [`Dyadic`].

pub mod cantor;
pub mod catalog;
pub mod dyadic;
pub mod endo;
pub mod error;
pub mod factor;
pub mod marker;
pub mod pipeline;
pub mod point;
pub mod report;
pub mod sft;
pub mod verdict;
pub mod words;

pub use cantor::{Alphabet, CPartition, ClopenSet, Distance, DomainSpace, Word};
pub use dyadic::Dyadic;
pub use endo::CantorMap;
pub use error::{Error, Refusal, Result};
pub use point::EventuallyPeriodicPoint;
pub use verdict::Verdict;
pub use sft::{BooleanMatrix, DirectedGraph, EventuallyPeriodicSet, PeriodicOrbit, Symbol};
