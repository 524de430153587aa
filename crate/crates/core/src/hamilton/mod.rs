//! Hamilton cycles, circles, spanning rays and prescribed-leaf spanning trees.

mod certificate;
mod circle;
mod cycle;
mod finite;
mod layers;
mod leaf_tree;
mod leafsearch;
mod report;
mod spanning;
mod strands;

pub use certificate::{
    parse_circle_certificate, parse_tree_certificate, write_circle_certificate,
    write_tree_certificate, Certificate,
};
pub use circle::{
    build_circle_prefix, extend_cycle, normalize_crossings, prefix_order,
    verify_circle_certificate, CircleCertificate, CutProbes, CyclePrefix, ExtensionCase,
};
pub use cycle::{
    crossing_count, cycle_order, edges_of_cycle, edges_of_path, is_hamilton_cycle,
    is_hamilton_path, EdgeSet,
};
pub use finite::finite_hamilton_cycle;
pub use layers::{choose_separator, Layering, SeparatorPolicy, Side};
pub use leaf_tree::{
    leaf_tree, leaf_tree_with, verify_tree_certificate, EndLabel, LeafSpec, LeafTreeOptions,
    RayExtension, TreeCertificate,
};
pub use report::{CheckOutcome, Verification};
pub use spanning::{
    spanning_ray_or_double_ray, verify_spanning_path, SpanningCase, SpanningKind, SpanningPath,
};
