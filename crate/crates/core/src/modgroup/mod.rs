//! Open subgroups of GL2 of the profinite integers, represented at finite level.

mod cosets;
mod matrix;
mod subgroup;
mod weber;

pub use cosets::{CosetTable, DoubleCosetSpace};
pub use matrix::{gl2_elements, gl2_order, ModMatrix};
pub use subgroup::{
    cns_twist2, is_geometrically_independent, is_independent, parse_spec, standard, OpenSubgroup,
    ELEMENT_BUDGET,
};
pub use weber::weber;
