mod bundle;
mod hpd;
mod join;

pub use bundle::{
    blowup_sod, blowup_sod_labeled, hyperplane_sod, hyperplane_sod_labeled, projective_bundle_sod,
};
pub use hpd::{
    hpd_total, hpd_total_of_components, n_hyperplane_sod, two_hyperplane_rank,
    universal_hyperplane_sod, HyperplaneData, HyperplaneSource, NHyperplane, Splitting,
    COMPLEMENT_READING_NOTE,
};
pub use join::{
    join_components_of, join_conservation_rhs, join_profile, join_profile_with, n_join_components,
    n_join_profile, primitive_convolution, refined_blowup_profile, refined_blowup_total,
    ruled_join_components, ruled_join_profile, JPrimeBound, JoinResult, RefinedBlowup,
    PRINTED_BOUND_NOTE,
};
