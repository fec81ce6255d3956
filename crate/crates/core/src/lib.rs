pub mod cobar;
pub mod cutoffs;
pub mod error;
pub mod linear;
pub mod massey;
pub mod merkulov;
pub mod presentation;
pub mod recovery;
pub mod verify;

pub use error::{Error, Result};
