//! Balanced presentations of the trivial group whose Dehn functions grow
//! like towers of exponentials: word machinery, the `G`/`P`/`Q`/`T`
//! families, word-problem solvers, van Kampen diagrams and brute-force
//! area oracles.

pub mod diagrams;
pub mod families;
pub mod oracles;
pub mod wordproblem;
pub mod words;
