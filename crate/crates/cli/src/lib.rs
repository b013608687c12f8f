pub mod commands;
pub mod expr;
