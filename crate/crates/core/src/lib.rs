#![no_std]

extern crate alloc;

pub mod error;
pub mod field;
pub mod matrix;
pub mod gabidulin;
pub mod gpt;
pub mod overbeck;
pub mod reference;
