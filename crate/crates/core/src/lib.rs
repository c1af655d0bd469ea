pub mod cli;
pub mod dualtop;
pub mod error;
pub mod exactring;
pub mod grouplambda;
pub mod json;
pub mod kummercoh;
pub mod verify;
pub mod wittrat;
pub mod wittvec;

pub use error::{Error, Result};
