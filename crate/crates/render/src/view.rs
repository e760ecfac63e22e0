use bubbledyn_core::Complex64;

use crate::RenderError;

/// Edge length of a tile in pixels.
pub const TILE_SIZE: u32 = 256;
/// Half-width of the zoom-0 tile window `[−2, 2]²`.
pub const BASE_HALF_WIDTH: f64 = 2.0;
/// Deepest supported tile level.
pub const MAX_ZOOM: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Plane {
    /// The λ-plane at fixed `n`.
    Parameter,
    /// The z-plane of one map.
    Dynamical,
}

impl Plane {
    /// URL and file-name token.
    pub fn token(&self) -> &'static str {
        match self {
            Plane::Parameter => "param",
            Plane::Dynamical => "julia",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "param" | "parameter" => Some(Plane::Parameter),
            "julia" | "dynamical" => Some(Plane::Dynamical),
            _ => None,
        }
    }
}

/// A rectangular pixel grid over the complex plane. The half-height follows
/// from the aspect ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub center: Complex64,
    pub half_width: f64,
    pub pixel_width: u32,
    pub pixel_height: u32,
}

impl Viewport {
    pub fn new(center: Complex64, half_width: f64, pixel_width: u32, pixel_height: u32) -> Result<Self, RenderError> {
        if pixel_width == 0 || pixel_height == 0 || !half_width.is_finite() || half_width <= 0.0 {
            return Err(RenderError::InvalidViewport);
        }
        Ok(Viewport {
            center,
            half_width,
            pixel_width,
            pixel_height,
        })
    }

    pub fn half_height(&self) -> f64 {
        self.half_width * self.pixel_height as f64 / self.pixel_width as f64
    }

    fn pixel_step(&self) -> f64 {
        2.0 * self.half_width / self.pixel_width as f64
    }

    /// Complex coordinate of the centre of pixel `(px, py)`, row 0 at the top.
    #[inline]
    pub fn pixel_center(&self, px: u32, py: u32) -> Complex64 {
        let step = self.pixel_step();
        let left = self.center.re - self.half_width;
        let top = self.center.im + self.half_height();
        Complex64::new(
            left + (px as f64 + 0.5) * step,
            top - (py as f64 + 0.5) * step,
        )
    }

    /// Continuous pixel coordinates of `z` (pixel centres at `k + 0.5`).
    pub fn to_pixel(&self, z: Complex64) -> (f64, f64) {
        let step = self.pixel_step();
        let left = self.center.re - self.half_width;
        let top = self.center.im + self.half_height();
        ((z.re - left) / step, (top - z.im) / step)
    }
}

/// Slippy-map style tile address over the base window `[−2, 2]²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TileSpec {
    pub plane: Plane,
    pub n: u32,
    /// Map parameter, required for the dynamical plane.
    pub lambda: Option<Complex64>,
    pub zoom: u32,
    pub tx: u32,
    pub ty: u32,
    pub budget: usize,
}

impl TileSpec {
    pub fn validate(&self) -> Result<(), RenderError> {
        if self.zoom > MAX_ZOOM {
            return Err(RenderError::TileOutOfRange);
        }
        let count = 1u64 << self.zoom;
        if self.tx as u64 >= count || self.ty as u64 >= count {
            return Err(RenderError::TileOutOfRange);
        }
        if self.plane == Plane::Dynamical && self.lambda.is_none() {
            return Err(RenderError::MissingLambda);
        }
        Ok(())
    }

    /// Side length of the tile in the complex plane.
    pub fn span(&self) -> f64 {
        2.0 * BASE_HALF_WIDTH / (1u64 << self.zoom) as f64
    }

    /// The tile as a 256×256 viewport, covering
    /// `[−W + tx·s, −W + (tx+1)·s] × [W − (ty+1)·s, W − ty·s]`.
    pub fn viewport(&self) -> Viewport {
        let s = self.span();
        Viewport {
            center: Complex64::new(
                -BASE_HALF_WIDTH + (self.tx as f64 + 0.5) * s,
                BASE_HALF_WIDTH - (self.ty as f64 + 0.5) * s,
            ),
            half_width: 0.5 * s,
            pixel_width: TILE_SIZE,
            pixel_height: TILE_SIZE,
        }
    }

    /// `{plane}_{n}_{lre}_{lim}_{zoom}_{tx}_{ty}.png`
    pub fn file_name(&self) -> String {
        let lambda = self.lambda.unwrap_or_default();
        format!(
            "{}_{}_{}_{}_{}_{}_{}.png",
            self.plane.token(),
            self.n,
            lambda.re,
            lambda.im,
            self.zoom,
            self.tx,
            self.ty
        )
    }
}
