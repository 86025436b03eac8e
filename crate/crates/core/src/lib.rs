//! Exact arithmetic for positive-integer solutions of Cayley's cubic
//! `C_s(x,y,z) = s(x²+y²+z²) − s³ − 2xyz = 0`.
//!
//! * [`seqcore`]: Lucas, Chebyshev and scaled Chebyshev (`R`) sequences.
//! * [`cayley`]: evaluation, conjugation (Vieta jumping), reduction, solution graphs.
//! * [`pell`]: Pell equations solved by those sequences, plus a brute-force oracle.
//! * [`markov`]: Markov triples and continuant identities.
//! * [`search`]: bounded enumeration and classification of solutions.
//! * [`export`]: JSON, DOT and CSV-ready views of the above.

pub mod arith;
pub mod cayley;
pub mod error;
pub mod export;
pub mod markov;
pub mod pell;
pub mod search;
pub mod seqcore;

pub use arith::ExactRatio;
pub use cayley::{Component, SolutionGraph, Triple};
pub use error::{Error, Result};
pub use markov::{MarkovTriple, Word};
pub use pell::{PellForm, PellInstance, PellSolution};
pub use seqcore::{LucasParams, RFamilyParams};
