//! Exact-rational construction and verification of universal quantum groups
//! attached to preregular multilinear forms.

pub mod catalog;
pub mod forms;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod ncpoly;
pub mod rational;
pub mod spalg;
