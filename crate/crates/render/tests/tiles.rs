use std::f64::consts::PI;

use bubbledyn_core::{escape_radius, Complex64, MapParams};
use bubbledyn_render::sample::{DynSample, DynamicalContext};
use bubbledyn_render::{
    attractors_for, render_dynamical_tile, render_parameter_tile, render_view,
    render_view_with_workers, Frame, Plane, RenderJob, RenderStyle, TileSpec, Viewport,
};

fn param_tile(zoom: u32, tx: u32, ty: u32) -> TileSpec {
    TileSpec {
        plane: Plane::Parameter,
        n: 3,
        lambda: None,
        zoom,
        tx,
        ty,
        budget: 500,
    }
}

/// Pixel of `spec` whose square contains `z`.
fn pixel_of(spec: &TileSpec, z: Complex64) -> (u32, u32) {
    let (x, y) = spec.viewport().to_pixel(z);
    (x.floor() as u32, y.floor() as u32)
}

#[test]
fn parameter_tile_colors_at_reference_parameters() {
    let style = RenderStyle::default();
    let spec = param_tile(0, 0, 0);
    let frame = render_parameter_tile(&spec, &style).unwrap();
    let at = |z: Complex64| {
        let (x, y) = pixel_of(&spec, z);
        frame.rgb(x, y)
    };
    assert_eq!(at(Complex64::new(0.16, 0.0)), style.v1_bounded);
    assert_eq!(at(Complex64::from_polar(1.0, PI / 3.0)), style.v0_bounded);
    let c = at(Complex64::new(0.0, -1.0));
    assert_ne!(c, style.v0_bounded);
    assert_ne!(c, style.v1_bounded);
    assert!(c[2] > c[0] && c[2] > c[1], "escape shading is blue: {c:?}");
}

#[test]
fn julia_tile_shows_superattracting_basin() {
    let lambda = Complex64::new(0.2722, 0.0);
    let params = MapParams::new(3, lambda).unwrap();
    let attractors = attractors_for(&params);
    let fixed = attractors
        .iter()
        .position(|c| c.period == 1 && c.multiplier.norm() < 1e-2)
        .expect("fixed point near 3λ");
    let spec = TileSpec {
        plane: Plane::Dynamical,
        n: 3,
        lambda: Some(lambda),
        zoom: 2,
        tx: 1,
        ty: 1,
        budget: 500,
    };
    let style = RenderStyle::default();
    let frame = render_dynamical_tile(&spec, &style, &attractors).unwrap();
    // ω·c1 lies in this tile and maps straight onto the fixed point.
    let z = params.omega() * params.free_critical_points()[0];
    let (x, y) = pixel_of(&spec, z);
    let hue = style.attractor_hues[fixed];
    let got = frame.rgb(x, y);
    let ratio = |k: usize| got[k] as f64 / hue[k] as f64;
    assert!((ratio(0) - ratio(1)).abs() < 0.05 && (ratio(1) - ratio(2)).abs() < 0.05, "{got:?} vs {hue:?}");
}

#[test]
fn cantor_julia_origin_escapes() {
    let spec = TileSpec {
        plane: Plane::Dynamical,
        n: 3,
        lambda: Some(Complex64::new(0.0, -1.0)),
        zoom: 0,
        tx: 0,
        ty: 0,
        budget: 500,
    };
    let style = RenderStyle::default();
    let params = MapParams::new(3, Complex64::new(0.0, -1.0)).unwrap();
    let frame = render_dynamical_tile(&spec, &style, &attractors_for(&params)).unwrap();
    let (x, y) = pixel_of(&spec, Complex64::new(1e-9, 1e-9));
    let c = frame.rgb(x, y);
    assert!(c[2] > c[0] && c[2] > c[1]);
}

#[test]
fn full_tile_view_matches_tile() {
    let style = RenderStyle::default();
    for spec in [param_tile(1, 1, 0), param_tile(3, 4, 3)] {
        let tile = render_parameter_tile(&spec, &style).unwrap();
        let job = RenderJob {
            viewport: spec.viewport(),
            plane: Plane::Parameter,
            n: 3,
            lambda: None,
            budget: 500,
            markers: false,
        };
        assert_eq!(render_view(&job, &style).unwrap(), tile);
    }
}

#[test]
fn views_are_identical_across_worker_counts() {
    let style = RenderStyle::default();
    let jobs = [
        RenderJob {
            viewport: Viewport::new(Complex64::new(0.0, 0.0), 1.2, 300, 180).unwrap(),
            plane: Plane::Dynamical,
            n: 3,
            lambda: Some(Complex64::new(6f64.sqrt() / 9.0, 0.0)),
            budget: 200,
            markers: true,
        },
        RenderJob {
            viewport: Viewport::new(Complex64::new(0.1, 0.0), 0.8, 270, 270).unwrap(),
            plane: Plane::Parameter,
            n: 4,
            lambda: None,
            budget: 200,
            markers: false,
        },
    ];
    for job in &jobs {
        let one = render_view_with_workers(job, &style, 1).unwrap();
        let eight = render_view_with_workers(job, &style, 8).unwrap();
        assert_eq!(one.encode_png().unwrap(), eight.encode_png().unwrap());
    }
}

fn has_color_near(frame: &Frame, view: &Viewport, z: Complex64, color: [u8; 3], radius: f64) -> bool {
    let (cx, cy) = view.to_pixel(z);
    let r = radius.ceil() as i64;
    (-r..=r).any(|dy| {
        (-r..=r).any(|dx| {
            let (x, y) = (cx.floor() as i64 + dx, cy.floor() as i64 + dy);
            x >= 0
                && y >= 0
                && (x as u32) < frame.width
                && (y as u32) < frame.height
                && frame.rgb(x as u32, y as u32) == color
        })
    })
}

#[test]
fn julia_view_has_marker_dots() {
    let style = RenderStyle::default();
    let lambda = Complex64::new(6f64.sqrt() / 9.0, 0.0);
    let params = MapParams::new(3, lambda).unwrap();
    let viewport = Viewport::new(Complex64::new(0.0, 0.0), 1.5, 512, 512).unwrap();
    let job = RenderJob {
        viewport,
        plane: Plane::Dynamical,
        n: 3,
        lambda: Some(lambda),
        budget: 300,
        markers: true,
    };
    let frame = render_view(&job, &style).unwrap();
    let mut reds = vec![Complex64::new(0.0, 0.0)];
    reds.extend(params.free_critical_points());
    for z in reds {
        assert!(has_color_near(&frame, &viewport, z, style.critical_point, 5.0), "red at {z}");
    }
    for z in [params.v0(), params.v1()] {
        assert!(has_color_near(&frame, &viewport, z, style.critical_value, 5.0), "blue at {z}");
    }
    let plain = render_view(&RenderJob { markers: false, ..job }, &style).unwrap();
    assert_ne!(plain, frame);
}

#[test]
fn hitting_times_are_rotation_invariant() {
    for (n, lambda) in [(3, Complex64::new(0.16, 0.0)), (4, Complex64::new(0.3, 0.2)), (5, Complex64::new(-0.05, 0.6))] {
        let params = MapParams::new(n, lambda).unwrap();
        let ctx = DynamicalContext::new(params, 300, &attractors_for(&params));
        let r = escape_radius(&params);
        for k in 0..400 {
            let z = Complex64::from_polar(r * (k as f64 / 400.0), 2.4 * k as f64);
            let a = ctx.sample(z);
            let b = ctx.sample(params.omega() * z);
            // Orbits agree from step 1 on; only step 0 can differ.
            match (a, b) {
                (DynSample::Escaped { steps: s, .. }, DynSample::Escaped { steps: t, .. }) => {
                    assert!(s == t || s.min(t) == 0, "n={n} z={z}")
                }
                (DynSample::Attracted { steps: s, .. }, DynSample::Attracted { steps: t, .. }) => {
                    assert!(s == t || s.min(t) == 0, "n={n} z={z}")
                }
                (DynSample::Unresolved, DynSample::Unresolved) => {}
                (a, b) => assert!(
                    matches!(a, DynSample::Attracted { steps: 0, .. } | DynSample::Escaped { steps: 0, .. })
                        || matches!(b, DynSample::Attracted { steps: 0, .. } | DynSample::Escaped { steps: 0, .. }),
                    "n={n} z={z}: {a:?} vs {b:?}"
                ),
            }
        }
    }
}

#[test]
fn png_output_is_rgba_and_stable() {
    let style = RenderStyle::default();
    let spec = param_tile(2, 2, 1);
    let a = render_parameter_tile(&spec, &style).unwrap().encode_png().unwrap();
    let b = render_parameter_tile(&spec, &style).unwrap().encode_png().unwrap();
    assert_eq!(a, b);
    let decoder = png::Decoder::new(std::io::Cursor::new(a));
    let reader = decoder.read_info().unwrap();
    assert_eq!(reader.info().width, 256);
    assert_eq!(reader.info().color_type, png::ColorType::Rgba);
}
