pub mod cli;
pub mod cocycles;
pub mod double;
pub mod dual_pair;
pub mod group;
pub mod io;
pub mod linalg;
pub mod monomial;
pub mod oracle;
pub mod rep_decomp;
pub mod scalars;
pub mod twisted_algebra;
