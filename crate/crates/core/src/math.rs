//! libm-backed float functions; the crate builds without std.

#[allow(unused_imports)]
pub(crate) use libm::{ceil, cos, cosh, exp, log as ln, pow as powf, sin, sinh, sqrt, tan};

/// Integer power by repeated squaring.
pub(crate) fn powi(x: f64, n: i32) -> f64 {
    let mut base = if n < 0 { 1.0 / x } else { x };
    let mut e = n.unsigned_abs();
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_powers() {
        assert_eq!(powi(2.0, 10), 1024.0);
        assert_eq!(powi(0.5, -3), 8.0);
        assert_eq!(powi(3.0, 0), 1.0);
        assert!((powi(0.9, 25) - powf(0.9, 25.0)).abs() < 1e-15);
    }
}
