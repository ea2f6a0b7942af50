//! Small complexes the unit tests keep coming back to.

use crate::complex::RegularComplex;

pub fn simplices(lists: &[&[&str]]) -> Vec<Vec<String>> {
    lists.iter().map(|s| s.iter().map(|v| v.to_string()).collect()).collect()
}

/// Closure of one 2-simplex: 3 + 3 + 1 cells.
pub fn triangle() -> RegularComplex {
    RegularComplex::simplicial(&simplices(&[&["a", "b", "c"]])).unwrap()
}

/// Triangulated sphere: 4 + 6 + 4 cells, no free edges.
pub fn tetra_boundary() -> RegularComplex {
    RegularComplex::simplicial(&simplices(&[
        &["a", "b", "c"],
        &["a", "b", "d"],
        &["a", "c", "d"],
        &["b", "c", "d"],
    ]))
    .unwrap()
}

/// Cycle graph on three vertices as a 1-complex.
pub fn three_cycle() -> RegularComplex {
    RegularComplex::simplicial(&simplices(&[&["a", "b"], &["b", "c"], &["a", "c"]])).unwrap()
}

/// Square split along one diagonal into two triangles.
pub fn split_square() -> RegularComplex {
    RegularComplex::simplicial(&simplices(&[&["a", "b", "c"], &["a", "c", "d"]])).unwrap()
}
