pub mod bounds;
pub mod braid;
pub mod cover;
pub mod embed;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod render;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
