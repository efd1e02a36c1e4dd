//! Scenario files in, reports out.

pub mod build;
pub mod diagnostic;
pub mod document;
pub mod emit;

pub use build::{build_scenario, load_scenario, Built};
pub use diagnostic::{Code, Diagnostic, Pos, Severity};
pub use document::{parse, Document, Entry, Item, Scalar, Section, Value};
pub use emit::{emit, fixed, Format, Render};
