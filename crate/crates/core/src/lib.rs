pub mod arith;
pub mod cases;
pub mod error;
pub mod harness;
pub mod isogeny;
pub mod localdata;
pub mod models;
pub mod parity;
pub mod psi;
pub mod sign;

pub use error::{Error, Result};
pub use sign::Sign;
