//! Adaptive Gauss–Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};

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
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One 15-point rule on [a, b]: (estimate, error estimate) with the usual scaled error heuristic.
pub(crate) fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let result = resk * h;
    resabs *= h.abs();
    resasc *= h.abs();
    let mut err = ((resk - resg) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (result, err)
}

struct Panel {
    a: f64,
    b: f64,
    val: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err).then(o.a.total_cmp(&self.a))
    }
}

/// Integrate `f` over [a, b] to absolute tolerance `tol`, bisecting the worst panel first.
///
/// `budget` counts remaining bisections and is shared across calls.
pub(crate) fn integrate<F: Fn(f64) -> f64 + Sync>(f: &F, a: f64, b: f64, tol: f64, budget: &mut usize) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    integrate_panels(f, &[a, b], tol, budget)
}

/// As [`integrate`], over the consecutive panels delimited by `breaks`, with one global error target.
/// The initial panels are evaluated in parallel.
pub(crate) fn integrate_panels<F: Fn(f64) -> f64 + Sync>(f: &F, breaks: &[f64], tol: f64, budget: &mut usize) -> Result<f64> {
    let init: Vec<Panel> = if breaks.len() > 64 {
        breaks
            .par_windows(2)
            .map(|w| {
                let (val, err) = gk15(f, w[0], w[1]);
                Panel { a: w[0], b: w[1], val, err }
            })
            .collect()
    } else {
        breaks
            .windows(2)
            .map(|w| {
                let (val, err) = gk15(f, w[0], w[1]);
                Panel { a: w[0], b: w[1], val, err }
            })
            .collect()
    };
    let mut total_err: f64 = init.iter().map(|q| q.err).sum();
    let mut heap = BinaryHeap::from(init);
    let mut steps = 0usize;
    while total_err > tol {
        if *budget == 0 {
            return Err(Error::QuadratureBudgetExceeded(heap.len()));
        }
        *budget -= 1;
        let p = heap.pop().unwrap();
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            heap.push(p);
            break;
        }
        let (v1, e1) = gk15(f, p.a, m);
        let (v2, e2) = gk15(f, m, p.b);
        total_err += e1 + e2 - p.err;
        heap.push(Panel { a: p.a, b: m, val: v1, err: e1 });
        heap.push(Panel { a: m, b: p.b, val: v2, err: e2 });
        steps += 1;
        if steps % 64 == 0 {
            total_err = heap.iter().map(|q| q.err).sum();
        }
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(panels.iter().map(|q| q.val).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let (v, _) = gk15(&|x: f64| x.powi(20), 0.0, 1.0);
        assert!((v - 1.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn endpoint_singularity() {
        let mut budget = 10_000;
        let v = integrate(&|x: f64| x.sqrt(), 0.0, 1.0, 1e-13, &mut budget).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn budget_is_enforced() {
        let mut budget = 3;
        let r = integrate(&|x: f64| (1.0 / x).sin(), 1e-9, 1.0, 1e-14, &mut budget);
        assert!(matches!(r, Err(Error::QuadratureBudgetExceeded(_))));
    }
}
