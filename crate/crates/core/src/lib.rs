pub mod cli;
pub mod error;
pub mod fit;
pub mod groups;
pub mod lattice;
pub mod primes;
pub mod rational_dm;
pub mod towers;
