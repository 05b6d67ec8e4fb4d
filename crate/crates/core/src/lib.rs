//! Behavioral models of quaternary adders: value domains and arithmetic
//! oracle, a catalog of blocks with transistor counts, a netlist simulator
//! with a text format, builders for every adder architecture and the
//! reproduced cost tables with their errata.

pub mod catalog;
pub mod designs;
pub mod errata;
pub mod mvq;
pub mod netlist;
pub mod tables;
