//! Shared fixtures for the criterion benches.

use num_complex::Complex64;
use qbarnes_core::QParam;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A `zeta_{q,r}(s, t, z)` evaluation point.
#[derive(Debug, Clone, Copy)]
pub struct QZetaPoint {
    pub label: &'static str,
    pub r: usize,
    pub q: QParam,
    pub s: Complex64,
    pub t: Complex64,
    pub z: Complex64,
}

fn q(v: f64) -> QParam {
    QParam::new(v).expect("fixture q lies in (0, 1)")
}

/// Points inside the region where the direct sum converges, so every route applies.
pub fn convergent_points() -> Vec<QZetaPoint> {
    vec![
        QZetaPoint { label: "r1 q0.5", r: 1, q: q(0.5), s: c(2.0, 0.0), t: c(1.5, 0.0), z: c(1.0, 0.0) },
        QZetaPoint { label: "r2 q0.5", r: 2, q: q(0.5), s: c(2.0, 0.0), t: c(3.0, 0.0), z: c(1.0, 0.0) },
        QZetaPoint { label: "r3 q0.7 complex", r: 3, q: q(0.7), s: c(1.5, 2.0), t: c(3.5, 0.5), z: c(0.8, 0.3) },
    ]
}

/// Points that need the continuation.
pub fn continued_points() -> Vec<QZetaPoint> {
    vec![
        QZetaPoint { label: "r1 t=-0.5", r: 1, q: q(0.6), s: c(-0.5, 1.0), t: c(-0.5, 0.0), z: c(1.0, 0.0) },
        QZetaPoint { label: "r2 s=-1.5", r: 2, q: q(0.9), s: c(-1.5, 0.0), t: c(-2.5, 0.0), z: c(1.2, 0.0) },
        QZetaPoint { label: "r2 z=-0.4+0.3i", r: 2, q: q(0.5), s: c(0.5, 0.0), t: c(0.5, 0.0), z: c(-0.4, 0.3) },
    ]
}

/// `q` values approaching 1, where the series lengthen like `1/(1-q)`.
pub fn near_one() -> Vec<QParam> {
    [0.9, 0.99, 0.999].into_iter().map(q).collect()
}
