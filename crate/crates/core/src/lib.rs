#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod identity;
pub mod exact_kernel;
pub mod numeric;
pub mod quad;
pub mod rational;
pub mod real;
pub mod report;
pub mod series;
pub mod stieltjes;

pub use error::{Error, Result};
pub use rational::ExactRational;
pub use real::BigReal;
pub use report::VerificationReport;
pub use series::TruncatedSeries;
