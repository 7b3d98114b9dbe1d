//! Certificate-driven search for even cycles in dense graphs.
//!
//! The crate walks a graph with a degree-capped level exploration, finds
//! theta graphs (a cycle with a chord) inside or between levels, prunes
//! three-layer subgraphs until a theta or a well-placed one appears, and
//! stitches the result into a cycle on exactly `2k` vertices. Every stage
//! returns a certificate that is re-verified against the original graph, and
//! brute-force oracles cross-check the machinery at small scale.
//!
//! Start with the examples:
//!
//! * `explore_levels` runs the capped exploration and its growth audit.
//! * `theta_certificates` finds and verifies theta graphs three ways.
//! * `prune_trilayered` iterates the three-layer pruning step.
//! * `well_placed_search` compares the exhaustive and constructive searches.
//! * `extract_cycle` turns a leveled theta certificate into a cycle.
//! * `find_even_cycle` drives the whole pipeline end to end.
//! * `turan_numbers` tabulates exact extremal counts and the analytic bound.
//! * `polarity_witness` builds dense square-free graphs from finite planes.

pub mod cli;
pub mod exploration;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod theta;
pub mod trilayered;
