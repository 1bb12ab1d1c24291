//! Text formats and the command line on top of `cdga-core`: the algebra DSL
//! ([`dsl`]), ring files ([`ring_json`]), class expressions ([`classes`]),
//! result documents ([`document`]) and the `cdga` commands ([`commands`]).

pub mod classes;
pub mod commands;
pub mod document;
pub mod dsl;
pub mod ring_json;

pub use commands::{run, Outcome};
