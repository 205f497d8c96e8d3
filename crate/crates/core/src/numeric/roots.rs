/// Bisection on a bracket with `f(a)` and `f(b)` of opposite sign. Returns
/// the midpoint of the final bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, mut fa: f64, xtol: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= xtol || m == a || m == b {
            return m;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Sign changes of `f` on `[a, b]` detected from `samples + 1` equispaced
/// evaluations, each refined by bisection.
pub fn sign_change_roots<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    samples: usize,
    xtol: f64,
) -> Vec<f64> {
    let mut roots = Vec::new();
    let h = (b - a) / samples as f64;
    let mut x0 = a;
    let mut f0 = f(a);
    for i in 1..=samples {
        let x1 = if i == samples { b } else { a + h * i as f64 };
        let f1 = f(x1);
        if f0 != 0.0 && f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
            roots.push(bisect(f, x0, x1, f0, xtol));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}
