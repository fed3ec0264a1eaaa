pub mod commands;
pub mod dsl;
pub mod output;
pub mod workspace;
