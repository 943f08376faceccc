//! Popular matchings in roommates and bipartite instances.
//!
//! * [`instance`]: preference instances, matchings, votes and edge weights;
//! * [`stable`]: deferred acceptance;
//! * [`verify`]: popularity by enumeration, best response and alternating
//!   structures;
//! * [`witness`]: `{-1, 0, 1}` dual certificates;
//! * [`reduction`]: instances built from positive 3CNF formulas;
//! * [`satdecide`]: 1-in-3 SAT and the gadget-restricted search;
//! * [`io`]: text formats.

pub mod error;
pub mod instance;
pub mod io;
pub mod reduction;
pub mod satdecide;
pub mod stable;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
pub use instance::{
    blocking_edges, check_matching, delta, is_stable, validate_instance, vote, wt, wt_self, Choice,
    Instance, Matching, Side, VertexId, Violation, Vote,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/popularity.md")]
    mod popularity {}
    #[doc = include_str!("../../../book/src/witnesses.md")]
    mod witnesses {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
