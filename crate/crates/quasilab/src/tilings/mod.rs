//! Exact triangle-substitution tilings and their graphs.

pub mod cyclo;
pub mod gauss;
pub mod graph;
pub mod penrose;
pub mod pinwheel;

pub use cyclo::Cyclo;
pub use gauss::{G5, GaussInt};
pub use graph::{PlanePoint, TilingGraph, build_graph};
pub use penrose::{
    PenrosePatch, PenroseRule, PenroseVariant, RobinsonKind, robinson_penrose_rule,
};
pub use pinwheel::{PinwheelPatch, PinwheelRule, Similarity, pinwheel_rule};
