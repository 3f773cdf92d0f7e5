//! Positive stable laws, Kanter's factorization and the variables derived from them.

mod alpha;
pub mod density;
pub mod family;
pub mod grid;
pub mod kanter;

pub use alpha::AlphaParam;
pub use density::{
    fractional_moment, kanter_v_density, ln_power_density, ln_stable_density, power_density,
    stable_density,
};
pub use family::{
    derived_density, descriptor_left_edge, laplace_transform, ln_derived_density,
    support_left_edge, total_mass, EdgeTarget, Family, VariableDescriptor,
};
pub use grid::DensityGrid;
pub use kanter::{kanter_b, KanterEval};
