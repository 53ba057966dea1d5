pub mod arith;
pub mod error;
pub mod fano;
pub mod lie;
pub mod lts;
pub mod manivel;
pub mod pipeline;
pub mod quaternion;
pub mod tensor_split;

pub use error::{Error, Result};
