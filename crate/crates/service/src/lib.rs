//! Session service and command-line front end for the dpgame engine.

pub mod cli;
pub mod http;
pub mod render;
pub mod session;
pub mod store;
