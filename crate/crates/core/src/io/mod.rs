//! Serialization: JSON documents, LaTeX tables, tube CSV and the term syntax.

pub mod csv;
pub mod json;
pub mod latex;
pub mod term;

pub use json::Document;
pub use term::{parse_terms, Symbol, Term};
