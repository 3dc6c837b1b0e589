//! Text formats, proof construction, the end-to-end pipeline and the shipped
//! corpus for `hhtkit-core`.

pub mod builder;
pub mod cli;
pub mod corpus;
pub mod files;
pub mod pipeline;
pub mod syntax;
