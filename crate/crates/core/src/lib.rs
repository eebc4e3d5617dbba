pub mod charclass;
pub mod connection;
pub mod error;
pub mod gca;
pub mod harness;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod model;
pub mod models;
pub mod morphism;
pub mod report;
pub mod superconn;

pub use error::{Error, Result};
