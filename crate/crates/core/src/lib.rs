pub mod bump;
pub mod cochains;
pub mod derham;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod mv;
pub mod nabla;
pub mod rational;
pub mod simplicial;

pub use error::{Error, Hypothesis, Result};
