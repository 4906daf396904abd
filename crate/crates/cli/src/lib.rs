//! Problem files, result documents and the subcommand drivers behind the
//! `dloc` binary.

pub mod document;
pub mod problem;
pub mod run;

pub use document::ResultDocument;
pub use problem::{Problem, ProblemError, TieBreak};
pub use run::{Failure, RunOptions};
