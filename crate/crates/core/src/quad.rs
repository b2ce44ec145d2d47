//! Globally adaptive Gauss-Kronrod (7/15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Value and absolute error estimate of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad {
    pub value: Complex64,
    pub abs_err: f64,
    /// `false` when the subdivision budget ran out before the tolerance was met.
    pub converged: bool,
}

/// The 15 abscissae of the Kronrod rule on `[a, b]`, paired with their weights.
pub fn kronrod_nodes(a: f64, b: f64) -> [(f64, f64); 15] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut out = [(0.0, 0.0); 15];
    for i in 0..7 {
        out[2 * i] = (c - h * XGK[i], h * WGK[i]);
        out[2 * i + 1] = (c + h * XGK[i], h * WGK[i]);
    }
    out[14] = (c, h * WGK[7]);
    out
}

/// Gauss weight matching `kronrod_nodes(a, b)[k]`, zero for Kronrod-only nodes.
pub fn gauss_weight(a: f64, b: f64, k: usize) -> f64 {
    let h = 0.5 * (b - a);
    if k == 14 {
        return h * WG[3];
    }
    let i = k / 2;
    if i % 2 == 1 {
        h * WG[i / 2]
    } else {
        0.0
    }
}

/// One Kronrod panel: the K15 value and `|K15 - G7|`.
pub fn gk15<F>(f: &mut F, a: f64, b: f64) -> (Complex64, f64)
where
    F: FnMut(f64) -> Complex64,
{
    let mut k = Complex64::new(0.0, 0.0);
    let mut g = Complex64::new(0.0, 0.0);
    for (idx, (x, w)) in kronrod_nodes(a, b).iter().enumerate() {
        let fx = f(*x);
        k += fx * *w;
        let wg = gauss_weight(a, b, idx);
        if wg != 0.0 {
            g += fx * wg;
        }
    }
    (k, (k - g).norm())
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrate `f` over `[a, b]`, bisecting the worst panel until the summed
/// error estimate drops below `tol` or `max_panels` is reached.
pub fn integrate<F>(mut f: F, a: f64, b: f64, tol: f64, max_panels: usize) -> Quad
where
    F: FnMut(f64) -> Complex64,
{
    if a == b {
        return Quad {
            value: Complex64::new(0.0, 0.0),
            abs_err: 0.0,
            converged: true,
        };
    }
    let (value, err) = gk15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, err });
    let mut total = value;
    let mut total_err = err;
    while total_err > tol && heap.len() < max_panels.max(1) {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(&mut f, worst.a, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
    }
    // recompute from panels to shed accumulated rounding in the running sums
    let mut value = Complex64::new(0.0, 0.0);
    let mut abs_err = 0.0;
    for p in heap.iter() {
        value += p.value;
        abs_err += p.err;
    }
    Quad {
        value,
        abs_err,
        converged: abs_err <= tol,
    }
}
