//! Maximal subsemigroups: symbolic descriptions, closed-form constructions and counts.

pub mod classify;
pub mod delta;
pub mod descriptor;
pub mod formula;
pub mod groups;
pub mod registry;

pub use descriptor::{infer_kind, Descriptor, Kind, Payload, Pred};
pub use formula::{count_formula, formula_text, Count};
pub use registry::theorem_registry;
pub use classify::{classify_all, classify_covered, lemma_xi, regular_star_intersect, ClassifyOptions};
