pub mod error;
pub mod linalg;
pub mod padic;
pub mod polyseries;
pub mod curve;
pub mod frobenius;
pub mod coleman;
pub mod heights;
pub mod cli;
