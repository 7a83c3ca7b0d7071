//! Instance text format, random generators and reductions from other problems.

pub mod format;
pub mod generate;
pub mod reduce;

pub use format::{parse_instance, serialize_instance};
pub use generate::{gen_random, generate, GenConfig, Shape};
pub use reduce::{gen_dq_light, reduce_edge_deletion, reduce_vertex_cover};
