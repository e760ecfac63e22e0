//! Fixed palettes and shading rules.

pub type Rgb = [u8; 3];

pub const BLACK: Rgb = [0, 0, 0];

/// Dark-to-light-to-dark blue cycle for escape shading.
const BLUE_RAMP: [Rgb; 8] = [
    [8, 16, 60],
    [16, 40, 110],
    [30, 80, 170],
    [70, 130, 220],
    [150, 190, 245],
    [70, 130, 220],
    [30, 80, 170],
    [16, 40, 110],
];

/// Base hues for attractor basins, by attractor index.
const ATTRACTOR_HUES: [Rgb; 6] = [
    [235, 125, 40],
    [200, 60, 160],
    [60, 185, 170],
    [150, 110, 225],
    [225, 205, 120],
    [120, 205, 95],
];

#[derive(Clone, Debug, PartialEq)]
pub struct RenderStyle {
    /// λ where `v1` stays bounded.
    pub v1_bounded: Rgb,
    /// λ where only `v0` stays bounded.
    pub v0_bounded: Rgb,
    pub escape_ramp: Vec<Rgb>,
    /// Ramp positions advanced per unit of smooth escape time.
    pub ramp_speed: f64,
    pub attractor_hues: Vec<Rgb>,
    pub unresolved: Rgb,
    pub critical_point: Rgb,
    pub critical_value: Rgb,
    /// Marker radius in pixels.
    pub marker_radius: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            v1_bounded: [0, 160, 60],
            v0_bounded: [240, 220, 40],
            escape_ramp: BLUE_RAMP.to_vec(),
            ramp_speed: 0.35,
            attractor_hues: ATTRACTOR_HUES.to_vec(),
            unresolved: BLACK,
            critical_point: [220, 30, 30],
            critical_value: [30, 60, 220],
            marker_radius: 5.0,
        }
    }
}

impl RenderStyle {
    /// Colour for smooth escape time `nu ≥ 0`.
    pub fn escape_color(&self, nu: f64) -> Rgb {
        let len = self.escape_ramp.len();
        if len == 0 {
            return BLACK;
        }
        let t = (nu.max(0.0) * self.ramp_speed) % len as f64;
        let i = t.floor() as usize % len;
        let frac = t - t.floor();
        lerp(self.escape_ramp[i], self.escape_ramp[(i + 1) % len], frac)
    }

    /// Hue of attractor `index`, darkened with the hitting time.
    pub fn attractor_color(&self, index: usize, steps: usize) -> Rgb {
        if self.attractor_hues.is_empty() {
            return BLACK;
        }
        let base = self.attractor_hues[index % self.attractor_hues.len()];
        let fade = 1.0 - 0.65 * (steps.min(40) as f64 / 40.0);
        base.map(|c| (c as f64 * fade).round() as u8)
    }
}

fn lerp(a: Rgb, b: Rgb, t: f64) -> Rgb {
    let mut out = [0u8; 3];
    for k in 0..3 {
        out[k] = (a[k] as f64 + (b[k] as f64 - a[k] as f64) * t).round() as u8;
    }
    out
}

/// Smooth escape time `steps − log_base(ln|z| / ln R)`, with the correction
/// clamped to `[0, 1]` and the result to `≥ 0`. `None` stands for `z = ∞`.
pub fn smooth_escape(steps: usize, final_modulus: Option<f64>, radius: f64, base: f64) -> f64 {
    let correction = match final_modulus {
        Some(m) if m > 1.0 && radius > 1.0 => ((m.ln() / radius.ln()).ln() / base.ln()).clamp(0.0, 1.0),
        _ => 1.0,
    };
    (steps as f64 - correction).max(0.0)
}
