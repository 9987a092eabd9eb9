pub mod emfields;
pub mod error;
pub mod moments;
pub mod oracle;
pub mod quadrature;
pub mod recurrence;
pub mod specfun;

mod eigen;

pub use error::{Error, Result};
