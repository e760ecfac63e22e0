use std::io::Write;

use crate::style::Rgb;
use crate::RenderError;

/// 8-bit RGBA raster, row-major from the top-left pixel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub width: u32,
    pub height: u32,
    pub data: Vec<u8>,
}

impl Frame {
    pub fn new(width: u32, height: u32) -> Self {
        Frame {
            width,
            height,
            data: vec![0; width as usize * height as usize * 4],
        }
    }

    pub fn pixel(&self, x: u32, y: u32) -> [u8; 4] {
        let i = (y as usize * self.width as usize + x as usize) * 4;
        [self.data[i], self.data[i + 1], self.data[i + 2], self.data[i + 3]]
    }

    pub fn rgb(&self, x: u32, y: u32) -> Rgb {
        let [r, g, b, _] = self.pixel(x, y);
        [r, g, b]
    }

    pub fn set(&mut self, x: u32, y: u32, c: Rgb) {
        let i = (y as usize * self.width as usize + x as usize) * 4;
        self.data[i..i + 4].copy_from_slice(&[c[0], c[1], c[2], 255]);
    }

    /// Copies `src` into this frame with its top-left corner at `(x0, y0)`,
    /// cropping at the frame edge.
    pub fn blit(&mut self, src: &Frame, x0: u32, y0: u32) {
        let w = src.width.min(self.width.saturating_sub(x0)) as usize;
        for row in 0..src.height.min(self.height.saturating_sub(y0)) {
            let s = row as usize * src.width as usize * 4;
            let d = ((y0 + row) as usize * self.width as usize + x0 as usize) * 4;
            self.data[d..d + w * 4].copy_from_slice(&src.data[s..s + w * 4]);
        }
    }

    /// Non-interlaced 8-bit RGBA PNG.
    pub fn encode_png(&self) -> Result<Vec<u8>, RenderError> {
        let mut out = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut out, self.width, self.height);
            enc.set_color(png::ColorType::Rgba);
            enc.set_depth(png::BitDepth::Eight);
            let mut writer = enc
                .write_header()
                .map_err(|e| RenderError::Encode(e.to_string()))?;
            writer
                .write_image_data(&self.data)
                .map_err(|e| RenderError::Encode(e.to_string()))?;
            writer
                .finish()
                .map_err(|e| RenderError::Encode(e.to_string()))?;
        }
        Ok(out)
    }

    /// Binary PPM (P6); alpha is dropped.
    pub fn write_ppm<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        write!(out, "P6\n{} {}\n255\n", self.width, self.height)?;
        let rgb: Vec<u8> = self
            .data
            .chunks_exact(4)
            .flat_map(|p| [p[0], p[1], p[2]])
            .collect();
        out.write_all(&rgb)?;
        out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blit_crops() {
        let mut dst = Frame::new(3, 3);
        let mut src = Frame::new(2, 2);
        src.set(0, 0, [1, 2, 3]);
        src.set(1, 1, [4, 5, 6]);
        dst.blit(&src, 2, 2);
        assert_eq!(dst.rgb(2, 2), [1, 2, 3]);
        assert_eq!(dst.pixel(0, 0), [0, 0, 0, 0]);
    }

    #[test]
    fn ppm_layout() {
        let mut f = Frame::new(2, 1);
        f.set(0, 0, [10, 20, 30]);
        f.set(1, 0, [40, 50, 60]);
        let mut buf = Vec::new();
        f.write_ppm(&mut buf).unwrap();
        assert_eq!(&buf[..11], b"P6\n2 1\n255\n");
        assert_eq!(&buf[11..], &[10, 20, 30, 40, 50, 60]);
    }

    #[test]
    fn png_round_trip() {
        let mut f = Frame::new(5, 4);
        f.set(3, 2, [200, 100, 50]);
        let bytes = f.encode_png().unwrap();
        assert_eq!(&bytes[..8], b"\x89PNG\r\n\x1a\n");
        let decoder = png::Decoder::new(std::io::Cursor::new(bytes));
        let mut reader = decoder.read_info().unwrap();
        let mut buf = vec![0; reader.output_buffer_size().unwrap()];
        let info = reader.next_frame(&mut buf).unwrap();
        assert_eq!((info.width, info.height), (5, 4));
        assert_eq!(info.color_type, png::ColorType::Rgba);
        assert_eq!(&buf[..info.buffer_size()], &f.data[..]);
        assert!(!reader.info().interlaced);
    }
}
