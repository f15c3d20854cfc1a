//! Generalized multiplicative connectives of linear logic, read as sets of
//! partitions: orthogonality through meeting graphs, partition-set
//! behaviors of formulas, and decomposability checks for MLL, MALL, IMLL
//! and a bounded fragment of EMLL.

pub mod cli;
pub mod decomposition;
pub mod exponentials;
pub mod formulas;
pub mod intuitionistic;
pub mod partitions;
