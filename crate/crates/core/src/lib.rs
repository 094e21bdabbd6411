pub mod error;
pub mod field;

pub use error::{Error, Result};
pub mod polyring;
pub mod combinat;
pub mod hecke;
pub mod macdonald;
pub mod oracle;
pub mod mpstrace;
pub mod verify;
