//! Exact masses of orders in definite central division algebras over global
//! fields.

pub mod error;
pub mod exactnum;
pub mod field;
pub mod local;
pub mod mass;
pub mod oracle;
pub mod par;
pub mod problem;
pub mod quaternion;
pub mod ring;
pub mod table;

pub use error::{Error, Result};
