//! Angle wrapping helpers. All public angles in this crate are degrees.

/// Wrap an angle in degrees into `(-180, 180]`.
pub fn wrap_deg(angle: f64) -> f64 {
    let mut a = angle % 360.0;
    if a <= -180.0 {
        a += 360.0;
    } else if a > 180.0 {
        a -= 360.0;
    }
    a
}

/// Smallest absolute difference between two angles, in `[0, 180]`.
pub fn angular_distance_deg(a: f64, b: f64) -> f64 {
    wrap_deg(a - b).abs()
}

pub(crate) fn rad_to_deg(x: f64) -> f64 {
    x.to_degrees()
}

pub(crate) fn deg_to_rad(x: f64) -> f64 {
    x.to_radians()
}
