//! b-colorings of small graphs: exact b-spectra, the constructive colorings
//! around (dilated) irises, and a descent engine that lowers the number of
//! colors of a b-coloring one step at a time.

pub mod graph;
pub mod coloring;
pub mod oracle;
pub mod iris;
pub mod descent;
