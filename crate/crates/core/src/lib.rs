pub mod admissibility;
pub mod cli;
pub mod dynamics;
pub mod growth;
pub mod projection;
pub mod real;
pub mod words;
