pub mod catalog;
pub mod cli;
pub mod dynamics;
pub mod format;
pub mod graphs;
pub mod poly;
pub mod pst;
pub mod scheme;
pub mod spectra;
pub mod tridiag;
