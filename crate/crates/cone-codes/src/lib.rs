pub mod chain;
pub mod cli;
pub mod cone;
pub mod css;
pub mod f2linalg;
pub mod constructions;
