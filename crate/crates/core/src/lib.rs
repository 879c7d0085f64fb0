//! RSK correspondence, Greene invariants and the Lipschitz behaviour of the
//! RSK shape under adjacent transpositions.

pub mod construct;
pub mod error;
pub mod greene;
pub mod metrics;
pub mod partition;
pub mod perm;
pub mod rsk;
pub mod search;
pub mod seqlemma;
pub mod tableau;

pub use error::{Error, Result};
pub use partition::Partition;
pub use perm::{Permutation, Side};
pub use tableau::{Cell, Tableau, TableauPair};
