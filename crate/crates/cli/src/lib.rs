//! Command line and HTTP front end for `homspace`.
//!
//! [`api::handle`] is the whole service: a pure function from method, path
//! and body to status and body. The HTTP server and the CLI both go through it.

pub mod api;
pub mod server;
pub mod svg;
pub mod text;
