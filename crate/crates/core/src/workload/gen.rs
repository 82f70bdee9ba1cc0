use super::rng::SeededRng;
use crate::error::{Error, Result};
use crate::gol::ByteGrid;
use crate::knn::{Point, PointCloud};

fn check_density(density: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::parameter(
            "density",
            format!("{density} is not in [0, 1]"),
        ));
    }
    Ok(())
}

/// Each cell alive independently with probability `density`, one draw per
/// cell in row-major order.
pub fn gen_grid(seed: u64, width: usize, height: usize, density: f64) -> Result<ByteGrid> {
    if width == 0 || !width.is_multiple_of(64) {
        return Err(Error::parameter(
            "width",
            format!("{width} is not a positive multiple of 64"),
        ));
    }
    if height == 0 {
        return Err(Error::parameter("height", "must be at least 1"));
    }
    check_density(density)?;
    let mut rng = SeededRng::new(seed);
    let cells = (0..width * height)
        .map(|_| u8::from(rng.unit_f64() < density))
        .collect();
    ByteGrid::from_cells(width, height, cells)
}

/// `n` points uniform in `[lo, hi)` on both axes; x is drawn before y.
pub fn gen_points(seed: u64, n: usize, lo: f64, hi: f64) -> Result<PointCloud> {
    let mut rng = SeededRng::new(seed);
    gen_points_with(&mut rng, n, lo, hi)
}

pub(crate) fn gen_points_with(
    rng: &mut SeededRng,
    n: usize,
    lo: f64,
    hi: f64,
) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::parameter("n", "must be at least 1"));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::parameter(
            "bounds",
            format!("need finite lo < hi, got [{lo}, {hi})"),
        ));
    }
    let span = hi - lo;
    let mut coord = || {
        let v = lo + span * rng.unit_f64();
        // Rounding can land exactly on `hi`.
        if v < hi {
            v
        } else {
            lo
        }
    };
    let points = (0..n).map(|_| Point::new(coord(), coord())).collect();
    PointCloud::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_extremes() {
        assert_eq!(gen_grid(1, 64, 8, 0.0).unwrap().population(), 0);
        assert_eq!(gen_grid(1, 64, 8, 1.0).unwrap().population(), 64 * 8);
    }

    #[test]
    fn grid_parameters_validated() {
        assert!(gen_grid(1, 100, 8, 0.5).is_err());
        assert!(gen_grid(1, 0, 8, 0.5).is_err());
        assert!(gen_grid(1, 64, 0, 0.5).is_err());
        assert!(gen_grid(1, 64, 8, 1.5).is_err());
        assert!(gen_grid(1, 64, 8, f64::NAN).is_err());
    }

    #[test]
    fn single_point_in_bounds() {
        let c = gen_points(9, 1, -2.0, 3.0).unwrap();
        let p = c.points()[0];
        assert!((-2.0..3.0).contains(&p.x) && (-2.0..3.0).contains(&p.y));
    }

    #[test]
    fn point_parameters_validated() {
        assert!(gen_points(1, 0, 0.0, 1.0).is_err());
        assert!(gen_points(1, 5, 1.0, 1.0).is_err());
        assert!(gen_points(1, 5, 0.0, f64::INFINITY).is_err());
    }
}
