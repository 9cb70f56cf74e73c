//! Constructive families of rational-distance point pairs: the hyperbola
//! solution family and conjugate-factor ("diamond") grids, plus plot-data
//! emission for both.

pub mod diamond;
pub mod hyperbola;
pub mod plot;

pub use diamond::{
    construct_pair, diamond_grid, grid_report, verify_grid, verify_pairs, CellOutcome,
    ConstructedPair, DiamondGrid, DiamondParams, GridCell, GridReport, GridVerification,
    Provenance,
};
pub use hyperbola::{
    claim_note, first_quadrant_threshold, hyperbola_membership, hyperbola_pair_from_s,
    HyperbolaOutcome, HyperbolaPair, HyperbolaParams,
};
pub use plot::{emit_plot_samples, PlotSpec};
