//! One-dimensional search: golden-section maximization and bisection.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes a unimodal `f` on `[lo, hi]` until the bracket is narrower
/// than `tol`. Returns the best abscissa evaluated and its value.
pub fn golden_section_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
            if f1 > best.1 {
                best = (x1, f1);
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
            if f2 > best.1 {
                best = (x2, f2);
            }
        }
    }
    best
}

/// Given `pred(lo)` true and `pred(hi)` false, narrows the bracket to
/// width `tol` and returns its lower end, the last point known to satisfy `pred`.
pub fn bisect_last_true<F: FnMut(f64) -> bool>(mut pred: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_interior_and_boundary_maxima() {
        let (x, fx) = golden_section_max(|x| -(x - 0.3).powi(2), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8 && fx.abs() < 1e-15);
        let (x, _) = golden_section_max(|x| x, 0.0, 1.0, 1e-10);
        assert!(1.0 - x < 1e-9);
        let (x, _) = golden_section_max(|x| (x * 3.0).cos(), 0.0, 2.0, 1e-9);
        assert!(x.abs() < 1e-8);
    }

    #[test]
    fn bisection_locates_threshold() {
        let root = bisect_last_true(|x| x * x < 2.0, 0.0, 2.0, 1e-12);
        assert!((root - 2f64.sqrt()).abs() < 1e-12);
        assert!(root * root < 2.0);
    }
}
