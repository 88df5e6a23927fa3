pub mod eq;
pub mod syntax;
