pub mod error;
pub mod cli;
pub mod cone;
pub mod divisorial;
pub mod exact_linalg;
pub mod groebner;
pub mod monoid;
pub mod multigraded;

pub use error::{Error, Result};
