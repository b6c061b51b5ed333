pub mod fgab;
pub mod sequences;
pub mod lattice;
pub mod kunneth;
pub mod report;
pub mod fixtures;
pub mod splitter;
pub mod io;
