//! Nielsen fixed-point invariants of graph selfmaps and injective free-group
//! endomorphisms.

pub mod boundary;
pub mod corpus;
pub mod endo;
pub mod error;
pub mod folding;
pub mod graph;
pub mod json;
pub mod nielsen;
pub mod pf;
pub mod pi1;
pub mod props;
pub mod route;
pub mod rtt;
pub mod subdivide;
pub mod suite;
pub mod word;

pub use endo::{Endomorphism, IntegerMatrix, RouteSearch};
pub use error::{BoundaryError, GraphError, InputError, InvariantError, RttError, WordError};
pub use folding::FoldedGraph;
pub use word::{Basis, Letter, Word};
