//! Maximum-weight k-colourable induced subgraphs of `(P5 + rK1)`-free graphs.

pub mod bitset;
pub mod canvas;
pub mod cli;
pub mod colour;
pub mod component;
pub mod error;
pub mod graph;
pub mod hfree;
pub mod io;
pub mod mwis;
pub mod oracles;
pub mod solver;
