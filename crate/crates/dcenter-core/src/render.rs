//! Escape-time rasterization of filled Julia sets.
//!
//! A pixel belongs to the interior when its orbit under `z -> z^d + c`
//! stays inside the escape radius for the full iteration budget. The
//! output format is binary PPM (P6): header `P6\n<w> <h>\n255\n` followed
//! by raw RGB rows, so identical inputs give identical bytes with no codec
//! in between.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex;
use num_traits::Float;

use crate::dynamics::critical_orbit;

type C64 = Complex<f64>;

/// Hard bound on image dimensions.
pub const MAX_PIXELS_PER_SIDE: u32 = 8192;

/// Errors of the rendering layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RenderError {
    InvalidViewport(&'static str),
}

impl fmt::Display for RenderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenderError::InvalidViewport(why) => write!(f, "invalid viewport: {why}"),
        }
    }
}

impl core::error::Error for RenderError {}

/// The region and sampling budget of a rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct Viewport {
    pub center: C64,
    /// Half the horizontal extent; vertical extent follows from the pixel
    /// aspect (pixels are square).
    pub half_width: f64,
    pub width: u32,
    pub height: u32,
    pub max_iter: u32,
    /// Must stay at or above `2^(1/(d-1))` so escape is conclusive; the
    /// default 4.0 covers every degree.
    pub escape_radius: f64,
}

impl Viewport {
    /// A square viewport centered at the origin.
    pub fn square(half_width: f64, pixels: u32, max_iter: u32) -> Viewport {
        Viewport {
            center: C64::new(0.0, 0.0),
            half_width,
            width: pixels,
            height: pixels,
            max_iter,
            escape_radius: 4.0,
        }
    }

    fn validate(&self, d: u32) -> Result<(), RenderError> {
        if d < 2 {
            return Err(RenderError::InvalidViewport("rendering requires degree d >= 2"));
        }
        if self.width == 0 || self.height == 0 {
            return Err(RenderError::InvalidViewport("zero image dimension"));
        }
        if self.width > MAX_PIXELS_PER_SIDE || self.height > MAX_PIXELS_PER_SIDE {
            return Err(RenderError::InvalidViewport("image dimension exceeds 8192"));
        }
        if !(self.half_width > 0.0) || !self.half_width.is_finite() {
            return Err(RenderError::InvalidViewport("half width must be positive"));
        }
        if self.max_iter == 0 {
            return Err(RenderError::InvalidViewport("max_iter must be positive"));
        }
        let guarantee = Float::powf(2.0, 1.0 / (d as f64 - 1.0));
        if self.escape_radius < guarantee {
            return Err(RenderError::InvalidViewport("escape radius below 2^(1/(d-1))"));
        }
        Ok(())
    }

    fn step(&self) -> f64 {
        2.0 * self.half_width / self.width as f64
    }

    /// Complex coordinate of the pixel center `(x, y)`; `y` grows
    /// downward in image space, upward in imaginary part.
    pub fn pixel_point(&self, x: u32, y: u32) -> C64 {
        let step = self.step();
        let re = self.center.re + (x as f64 + 0.5 - self.width as f64 / 2.0) * step;
        let im = self.center.im - (y as f64 + 0.5 - self.height as f64 / 2.0) * step;
        C64::new(re, im)
    }

    /// Pixel under a complex point, if inside the image.
    fn pixel_of(&self, z: C64) -> Option<(u32, u32)> {
        let step = self.step();
        let x = Float::floor((z.re - self.center.re) / step + self.width as f64 / 2.0);
        let y = Float::floor(self.height as f64 / 2.0 - (z.im - self.center.im) / step);
        if x >= 0.0 && x < self.width as f64 && y >= 0.0 && y < self.height as f64 {
            Some((x as u32, y as u32))
        } else {
            None
        }
    }
}

/// Escape iteration count of one point, `None` when it never escapes
/// within the budget.
fn escape_time(start: C64, c: C64, d: u32, max_iter: u32, radius_sqr: f64) -> Option<u32> {
    let mut z = start;
    for k in 0..max_iter {
        if z.norm_sqr() > radius_sqr {
            return Some(k);
        }
        z = z.powu(d) + c;
    }
    None
}

/// Row-major interior mask of the filled Julia set of `z^d + c` over the
/// viewport.
pub fn interior_mask(c: C64, d: u32, vp: &Viewport) -> Result<Vec<bool>, RenderError> {
    vp.validate(d)?;
    let radius_sqr = vp.escape_radius * vp.escape_radius;
    let mut mask = Vec::with_capacity(vp.width as usize * vp.height as usize);
    for y in 0..vp.height {
        for x in 0..vp.width {
            let z = vp.pixel_point(x, y);
            mask.push(escape_time(z, c, d, vp.max_iter, radius_sqr).is_none());
        }
    }
    Ok(mask)
}

/// An 8-bit RGB raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl RgbImage {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Raw RGB bytes, row-major.
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    fn put(&mut self, x: u32, y: u32, rgb: [u8; 3]) {
        let idx = 3 * (y as usize * self.width as usize + x as usize);
        self.data[idx..idx + 3].copy_from_slice(&rgb);
    }

    /// Serializes as binary PPM (P6).
    pub fn encode_ppm(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.data.len() + 32);
        out.extend_from_slice(alloc::format!("P6\n{} {}\n255\n", self.width, self.height).as_bytes());
        out.extend_from_slice(&self.data);
        out
    }
}

const INTERIOR: [u8; 3] = [0, 0, 0];
const ORBIT_MARK: [u8; 3] = [255, 40, 40];

/// Renders the filled Julia set of `z^d + c`: interior pixels black,
/// exterior shaded by escape time. With `overlay_orbit = Some(n)` the
/// first `n` critical-orbit points are marked by small crosses.
pub fn render_julia(
    c: C64,
    d: u32,
    vp: &Viewport,
    overlay_orbit: Option<u32>,
) -> Result<RgbImage, RenderError> {
    vp.validate(d)?;
    let radius_sqr = vp.escape_radius * vp.escape_radius;
    let mut image = RgbImage {
        width: vp.width,
        height: vp.height,
        data: alloc::vec![0u8; 3 * vp.width as usize * vp.height as usize],
    };
    for y in 0..vp.height {
        for x in 0..vp.width {
            let z = vp.pixel_point(x, y);
            let rgb = match escape_time(z, c, d, vp.max_iter, radius_sqr) {
                None => INTERIOR,
                Some(k) => {
                    let t = ((k as u64 * 255) / vp.max_iter as u64) as u8;
                    [t / 2, 64 + t / 2 + t / 4, 160 + (t / 3)]
                }
            };
            image.put(x, y, rgb);
        }
    }
    if let Some(steps) = overlay_orbit {
        let orbit = critical_orbit(c, d, steps);
        for z in &orbit.points {
            if let Some((x, y)) = vp.pixel_of(*z) {
                image.put(x, y, ORBIT_MARK);
                if x > 0 {
                    image.put(x - 1, y, ORBIT_MARK);
                }
                if x + 1 < vp.width {
                    image.put(x + 1, y, ORBIT_MARK);
                }
                if y > 0 {
                    image.put(x, y - 1, ORBIT_MARK);
                }
                if y + 1 < vp.height {
                    image.put(x, y + 1, ORBIT_MARK);
                }
            }
        }
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_mask_for_c_zero() {
        // K_0 is the closed unit disk
        let vp = Viewport::square(2.0, 128, 64);
        let mask = interior_mask(C64::new(0.0, 0.0), 2, &vp).unwrap();
        let diag = vp.half_width * 2.0 / 128.0 * core::f64::consts::SQRT_2;
        for y in 0..128 {
            for x in 0..128 {
                let z = vp.pixel_point(x, y);
                let inside = mask[(y * 128 + x) as usize];
                if z.norm() < 1.0 - diag {
                    assert!(inside, "({x},{y}) should be interior");
                }
                if z.norm() > 1.0 + diag {
                    assert!(!inside, "({x},{y}) should be exterior");
                }
            }
        }
        // spot checks from the examples: 0 interior, 1.5 exterior
        let mid = vp.pixel_of(C64::new(0.0, 0.0)).unwrap();
        assert!(mask[(mid.1 * 128 + mid.0) as usize]);
        let out = vp.pixel_of(C64::new(1.5, 0.0)).unwrap();
        assert!(!mask[(out.1 * 128 + out.0) as usize]);
    }

    #[test]
    fn basilica_superattracting_points_are_interior() {
        let vp = Viewport::square(2.0, 128, 256);
        let mask = interior_mask(C64::new(-1.0, 0.0), 2, &vp).unwrap();
        for point in [C64::new(0.0, 0.0), C64::new(-1.0, 0.0)] {
            let (x, y) = vp.pixel_of(point).unwrap();
            assert!(mask[(y * 128 + x) as usize], "{point} lies on the cycle");
        }
    }

    #[test]
    fn rotational_symmetry_of_the_interior() {
        // the filled Julia set has d-fold symmetry about the origin
        let c = C64::new(0.387848, 0.6853);
        let d = 3;
        let vp = Viewport::square(1.3, 201, 128);
        let mask = interior_mask(c, d, &vp).unwrap();
        let angle = core::f64::consts::TAU / d as f64;
        let rot = C64::new(Float::cos(angle), Float::sin(angle));
        let at = |x: i64, y: i64| {
            x >= 0
                && y >= 0
                && x < vp.width as i64
                && y < vp.height as i64
                && mask[(y as u32 * vp.width + x as u32) as usize]
        };
        let mut mismatches = 0usize;
        let mut core_pixels = 0usize;
        for y in 0..vp.height {
            for x in 0..vp.width {
                if !mask[(y * vp.width + x) as usize] {
                    continue;
                }
                // 1 pixel of boundary jitter is allowed, so only pixels
                // strictly inside the mask must survive the rotation
                let deep = (-1i64..=1).all(|dy| {
                    (-1i64..=1).all(|dx| at(x as i64 + dx, y as i64 + dy))
                });
                if !deep {
                    continue;
                }
                core_pixels += 1;
                let rotated = vp.pixel_point(x, y) * rot;
                if let Some((rx, ry)) = vp.pixel_of(rotated) {
                    let hit = (-1i64..=1).any(|dy| {
                        (-1i64..=1).any(|dx| at(rx as i64 + dx, ry as i64 + dy))
                    });
                    if !hit {
                        mismatches += 1;
                    }
                }
            }
        }
        assert!(core_pixels > 500, "the interior should be substantial");
        assert_eq!(mismatches, 0);
    }

    #[test]
    fn ppm_bytes_are_deterministic() {
        let vp = Viewport::square(2.0, 32, 32);
        let a = render_julia(C64::new(-1.0, 0.0), 2, &vp, Some(2)).unwrap().encode_ppm();
        let b = render_julia(C64::new(-1.0, 0.0), 2, &vp, Some(2)).unwrap().encode_ppm();
        assert_eq!(a, b);
        assert!(a.starts_with(b"P6\n32 32\n255\n"));
        assert_eq!(a.len(), 13 + 3 * 32 * 32);
    }

    #[test]
    fn viewport_validation() {
        let mut vp = Viewport::square(2.0, 64, 32);
        assert!(interior_mask(C64::new(0.0, 0.0), 1, &vp).is_err());
        vp.escape_radius = 1.0;
        assert!(matches!(
            interior_mask(C64::new(0.0, 0.0), 2, &vp),
            Err(RenderError::InvalidViewport(_))
        ));
        let vp = Viewport::square(2.0, 0, 32);
        assert!(interior_mask(C64::new(0.0, 0.0), 2, &vp).is_err());
        let vp = Viewport::square(2.0, MAX_PIXELS_PER_SIDE + 1, 32);
        assert!(interior_mask(C64::new(0.0, 0.0), 2, &vp).is_err());
    }
}
