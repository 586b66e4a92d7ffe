//! Dynamic core decomposition toolkit.
//!
//! * [`graph`]: simple graphs/digraphs, static core, truss and (k,l)-core
//!   decompositions together with definitional fixpoint oracles.
//! * [`dynforest`]: Euler tour forest, link-cut forest and HDT connectivity.
//! * [`twocore`]: fully dynamic 2-core membership in polylogarithmic time.
//! * [`circuit`]: dynamic bounded monotone Boolean circuits.
//! * [`gadgets`]: compilers from circuits to core/truss/(k,l)-core instances
//!   and from OuMv, k-SAT and DynXor to dynamic circuits.
//! * [`maint`]: recompute-and-diff core maintenance and the order-reversal
//!   instance.

pub mod bench;
pub mod circuit;
pub mod dynforest;
pub mod gadgets;
pub mod graph;
pub mod maint;
pub mod trace;
pub mod twocore;
pub mod verify;

pub use graph::{Digraph, Graph, GraphError, Vertex};
pub use twocore::TwoCoreIndex;
