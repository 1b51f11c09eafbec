pub mod algebra;
pub mod error;
pub mod exec;
pub mod formulas;
pub mod localization;
pub mod partitions;
pub mod rational;
pub mod series;
pub mod vertex;

pub use error::{Error, Result};
pub use rational::Rational;
