//! An interpreter for situated constructional grammars.
//!
//! Programs declare schemas, contexts and s-constructions. The engine matches
//! s-constructions against a working memory of situated instances, fires them
//! atomically and explores alternative readings in a scored beam.

pub mod cli;
pub mod constraint;
pub mod engine;
pub mod memory;
pub mod place;
pub mod random;
pub mod registry;
pub mod scenario;
pub mod syntax;
pub mod types;
pub mod validate;
pub mod value;
