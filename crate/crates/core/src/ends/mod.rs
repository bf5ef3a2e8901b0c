//! Ends of locally finite graphs through finite stage approximations.

mod graph;
mod stage;

pub use graph::{LazyGraph, Vertex};
pub use stage::*;
