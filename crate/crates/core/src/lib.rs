//! Positive braid words, the relations between reduced expressions of a
//! permutation, and subword reversing.

pub mod derivation;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod experiments;
pub mod export;
pub mod families;
pub mod invariants;
pub mod normal_form;
pub mod reversing;
pub mod word;

pub use derivation::{Certificate, Derivation, Step, StepName, Verdict};
pub use diagram::GridDiagram;
pub use error::{Error, Result};
pub use invariants::{LowerBound, Name2, Name22, Name3, NameSequence};
pub use reversing::{Reverser, ReversingResult, Strategy, TileCounts, TileType};
pub use word::{Direction, ExtLetter, ExtendedWord, Permutation, Relation, RelationKind, Word};
