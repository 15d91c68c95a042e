//! Link and graph homology: Kauffman families of embedded graphs, classical
//! link polynomials, Khovanov homology and grid-diagram knot Floer homology.

pub mod census;
pub mod diagram;
pub mod dims;
pub mod error;
pub mod graph_homology;
pub mod grid;
pub mod invariants;
pub mod kauffman;
pub mod khovanov;
pub mod linalg;
pub mod poly;

pub use diagram::{Diagram, GraphDiagram, LinkDiagram};
pub use error::{Error, Result};
