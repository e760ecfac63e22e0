//! Deterministic raster images of the λ-plane and of individual dynamical
//! planes, addressed as 256-pixel tiles over `[−2, 2]²` or as free viewports.

mod frame;
mod render;
pub mod sample;
pub mod style;
mod view;

pub use frame::Frame;
pub use render::{
    attractors_for, draw_markers, markers, render_dynamical_tile, render_parameter_tile,
    render_view, render_view_with_workers, shade_dynamical, shade_parameter, Marker, MarkerKind,
    RenderJob,
};
pub use style::{RenderStyle, Rgb};
pub use view::{Plane, TileSpec, Viewport, BASE_HALF_WIDTH, MAX_ZOOM, TILE_SIZE};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error(transparent)]
    Params(#[from] bubbledyn_core::Error),
    #[error("dynamical plane needs a lambda")]
    MissingLambda,
    #[error("tile address outside the tile grid")]
    TileOutOfRange,
    #[error("tile spec is for the other plane")]
    WrongPlane,
    #[error("viewport needs positive size and pixel dimensions")]
    InvalidViewport,
    #[error("image encoding failed: {0}")]
    Encode(String),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
