pub mod commands;
pub mod error;
pub mod formats;
pub mod packing;
