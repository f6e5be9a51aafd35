use crate::scalar::Real;

/// Brent's method on a bracket `[a, b]` with `f(a)·f(b) <= 0`.
///
/// Stops when the bracket is narrower than `2·tol` (plus a few ulps) or an exact zero is hit.
pub fn brent_root<T: Real>(mut f: impl FnMut(T) -> T, a: T, b: T, fa: T, fb: T, tol: T) -> T {
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    if fa == T::zero() {
        return a;
    }
    if fb == T::zero() {
        return b;
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if (fb > T::zero()) == (fc > T::zero()) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = two * T::epsilon() * b.abs() + half * tol;
        let xm = half * (c - b);
        if xm.abs() <= tol1 || fb == T::zero() {
            return b;
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * xm * s;
                q = T::one() - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (two * xm * qq * (qq - r) - (b - a) * (r - T::one()));
                q = (qq - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = T::lit(3.0) * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol1 { b + d } else { b + tol1 * xm.signum() };
        fb = f(b);
    }
    b
}

/// Golden-section minimization of `f` on `[a, b]` down to width `tol`.
/// Returns `(argmin, min)`.
pub fn golden_min<T: Real>(mut f: impl FnMut(T) -> T, a: T, b: T, tol: T) -> (T, T) {
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let (mut a, mut b) = (a, b);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cosine_zero() {
        let f = |x: f64| x.cos();
        let r = brent_root(f, 1.0, 2.0, f(1.0), f(2.0), 1e-14);
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn finds_root_of_steep_function() {
        let f = |x: f64| (x - 0.3).powi(3) * 1e6;
        let r = brent_root(f, 0.0, 1.0, f(0.0), f(1.0), 1e-12);
        assert!((r - 0.3).abs() < 1e-6);
    }

    #[test]
    fn golden_finds_parabola_vertex() {
        let (x, v) = golden_min(|x: f64| (x - 0.25).powi(2) + 1.0, -1.0, 1.0, 1e-9);
        assert!((x - 0.25).abs() < 1e-7 && (v - 1.0).abs() < 1e-13);
    }
}
