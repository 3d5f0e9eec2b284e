pub mod cli;
pub mod corpus;
pub mod ehrhart_engine;
pub mod error;
pub mod exactlin;
pub mod group_action;
pub mod hstar;
pub mod instance;
pub mod poly;
pub mod polytope;
pub mod repr_ring;
pub mod sr_formula;
pub mod triangulate;

pub use error::{Error, Result};
