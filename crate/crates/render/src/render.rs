//! Tile and frame assembly.
//!
//! Every pixel is a pure function of its coordinate and the job, so frames
//! are byte-identical whatever the worker count or scheduling order.

use bubbledyn_core::{
    attractor_inventory, Complex64, CycleInfo, MapParams, DEFAULT_CLASSIFY_BUDGET,
};
use rayon::prelude::*;

use crate::frame::Frame;
use crate::sample::{sample_parameter, DynSample, DynamicalContext, ParamSample};
use crate::style::{RenderStyle, Rgb};
use crate::view::{Plane, TileSpec, Viewport, TILE_SIZE};
use crate::RenderError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderJob {
    pub viewport: Viewport,
    pub plane: Plane,
    pub n: u32,
    /// Required for the dynamical plane, ignored for the parameter plane.
    pub lambda: Option<Complex64>,
    pub budget: usize,
    /// Overlay critical points and values (dynamical plane only).
    pub markers: bool,
}

pub fn shade_parameter(style: &RenderStyle, s: &ParamSample) -> Rgb {
    if s.v1_bounded {
        style.v1_bounded
    } else if s.v0_bounded {
        style.v0_bounded
    } else {
        style.escape_color(s.v0_nu)
    }
}

pub fn shade_dynamical(style: &RenderStyle, s: &DynSample) -> Rgb {
    match *s {
        DynSample::Escaped { nu, .. } => style.escape_color(nu),
        DynSample::Attracted { index, steps } => style.attractor_color(index, steps),
        DynSample::Unresolved => style.unresolved,
    }
}

/// Attracting cycles used to colour a dynamical plane.
pub fn attractors_for(params: &MapParams) -> Vec<CycleInfo> {
    attractor_inventory(params, DEFAULT_CLASSIFY_BUDGET)
}

/// Evaluates `shade` at every pixel centre, one 256×256 block at a time with
/// rows spread across the current rayon pool.
fn fill<F>(viewport: &Viewport, shade: F) -> Frame
where
    F: Fn(Complex64) -> Rgb + Sync,
{
    let mut frame = Frame::new(viewport.pixel_width, viewport.pixel_height);
    for y0 in (0..viewport.pixel_height).step_by(TILE_SIZE as usize) {
        for x0 in (0..viewport.pixel_width).step_by(TILE_SIZE as usize) {
            let w = TILE_SIZE.min(viewport.pixel_width - x0);
            let h = TILE_SIZE.min(viewport.pixel_height - y0);
            let mut block = Frame::new(w, h);
            block
                .data
                .par_chunks_mut(w as usize * 4)
                .enumerate()
                .for_each(|(row, out)| {
                    let py = y0 + row as u32;
                    for (col, px) in out.chunks_exact_mut(4).enumerate() {
                        let c = shade(viewport.pixel_center(x0 + col as u32, py));
                        px.copy_from_slice(&[c[0], c[1], c[2], 255]);
                    }
                });
            frame.blit(&block, x0, y0);
        }
    }
    frame
}

fn render_parameter(viewport: &Viewport, n: u32, budget: usize, style: &RenderStyle) -> Frame {
    fill(viewport, |lambda| {
        shade_parameter(style, &sample_parameter(n, lambda, budget))
    })
}

fn render_dynamical(
    viewport: &Viewport,
    params: MapParams,
    budget: usize,
    attractors: &[CycleInfo],
    style: &RenderStyle,
) -> Frame {
    let ctx = DynamicalContext::new(params, budget, attractors);
    fill(viewport, |z| shade_dynamical(style, &ctx.sample(z)))
}

pub fn render_parameter_tile(spec: &TileSpec, style: &RenderStyle) -> Result<Frame, RenderError> {
    spec.validate()?;
    if spec.plane != Plane::Parameter {
        return Err(RenderError::WrongPlane);
    }
    if spec.n < 2 {
        return Err(RenderError::Params(bubbledyn_core::Error::InvalidDegree(spec.n)));
    }
    Ok(render_parameter(&spec.viewport(), spec.n, spec.budget, style))
}

pub fn render_dynamical_tile(
    spec: &TileSpec,
    style: &RenderStyle,
    attractors: &[CycleInfo],
) -> Result<Frame, RenderError> {
    spec.validate()?;
    if spec.plane != Plane::Dynamical {
        return Err(RenderError::WrongPlane);
    }
    let params = MapParams::new(spec.n, spec.lambda.ok_or(RenderError::MissingLambda)?)?;
    Ok(render_dynamical(&spec.viewport(), params, spec.budget, attractors, style))
}

/// Renders a full frame on the current rayon pool.
pub fn render_view(job: &RenderJob, style: &RenderStyle) -> Result<Frame, RenderError> {
    match job.plane {
        Plane::Parameter => {
            if job.n < 2 {
                return Err(RenderError::Params(bubbledyn_core::Error::InvalidDegree(job.n)));
            }
            Ok(render_parameter(&job.viewport, job.n, job.budget, style))
        }
        Plane::Dynamical => {
            let params = MapParams::new(job.n, job.lambda.ok_or(RenderError::MissingLambda)?)?;
            let attractors = attractors_for(&params);
            let mut frame = render_dynamical(&job.viewport, params, job.budget, &attractors, style);
            if job.markers {
                draw_markers(&mut frame, &job.viewport, &params, style);
            }
            Ok(frame)
        }
    }
}

/// Renders on a dedicated pool of `workers` threads (0 = rayon default).
pub fn render_view_with_workers(
    job: &RenderJob,
    style: &RenderStyle,
    workers: usize,
) -> Result<Frame, RenderError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| RenderError::Pool(e.to_string()))?;
    pool.install(|| render_view(job, style))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkerKind {
    CriticalPoint,
    CriticalValue,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Marker {
    pub kind: MarkerKind,
    pub at: Complex64,
}

/// Finite free critical points `0, c_1, …, c_n` and the critical values `−λ`, `3λ`.
pub fn markers(params: &MapParams) -> Vec<Marker> {
    let points = params
        .critical_points()
        .into_iter()
        .filter_map(|p| p.finite())
        .map(|at| Marker {
            kind: MarkerKind::CriticalPoint,
            at,
        });
    let values = [params.v0(), params.v1()].into_iter().map(|at| Marker {
        kind: MarkerKind::CriticalValue,
        at,
    });
    points.chain(values).collect()
}

/// Draws critical points in red, then critical values in blue. A value dot
/// that overlaps a point dot shrinks so the red ring stays visible.
pub fn draw_markers(frame: &mut Frame, viewport: &Viewport, params: &MapParams, style: &RenderStyle) {
    let all = markers(params);
    let r = style.marker_radius;
    let centers: Vec<(MarkerKind, (f64, f64))> =
        all.iter().map(|m| (m.kind, viewport.to_pixel(m.at))).collect();
    for &(_, c) in centers.iter().filter(|(k, _)| *k == MarkerKind::CriticalPoint) {
        disk(frame, c, r, style.critical_point);
    }
    for &(_, c) in centers.iter().filter(|(k, _)| *k == MarkerKind::CriticalValue) {
        let overlaps = centers.iter().any(|(k, p)| {
            *k == MarkerKind::CriticalPoint && (p.0 - c.0).hypot(p.1 - c.1) < 2.0 * r
        });
        let radius = if overlaps { 0.6 * r } else { r };
        disk(frame, c, radius, style.critical_value);
    }
}

fn disk(frame: &mut Frame, (cx, cy): (f64, f64), radius: f64, color: Rgb) {
    let x_lo = (cx - radius).floor().max(0.0) as i64;
    let y_lo = (cy - radius).floor().max(0.0) as i64;
    let x_hi = ((cx + radius).ceil() as i64).min(frame.width as i64 - 1);
    let y_hi = ((cy + radius).ceil() as i64).min(frame.height as i64 - 1);
    for y in y_lo..=y_hi {
        for x in x_lo..=x_hi {
            let (dx, dy) = (x as f64 + 0.5 - cx, y as f64 + 0.5 - cy);
            if dx * dx + dy * dy <= radius * radius {
                frame.set(x as u32, y as u32, color);
            }
        }
    }
}
