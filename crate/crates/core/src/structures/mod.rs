//! Hom Lie triple systems, finite group actions and representations.

pub mod examples;
mod group;
mod hom_lts;
mod report;
mod representation;

pub use examples::{make_example, section5, Example, ExampleParams};
pub use group::{verify_group_action, FiniteGroup, GroupAction};
pub(crate) use hom_lts::check_ternary_map;
pub use hom_lts::{eval_bracket, verify_hom_lts, HomLts};
pub use report::{VerificationReport, Violation};
pub use representation::{
    adjoint_representation, semidirect_sum, verify_representation, Representation,
};
