pub mod algebra;
pub mod bjortho;
pub mod classify;
pub mod cli;
pub mod error;
pub mod io;
pub mod matkernel;
pub mod optimize;
pub mod orthograph;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
