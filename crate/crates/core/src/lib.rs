pub mod algebra;
pub mod cartan;
pub mod courant_fd;
pub mod courant_tm;
pub mod error;
pub mod json;
pub mod poly;
pub mod report;

pub use error::{Error, Result};
pub use report::{CheckReport, Verdict, Witness};
