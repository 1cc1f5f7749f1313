/// Scan density used by the penetration-depth search.
pub const DEFAULT_SCAN_POINTS: usize = 4096;

/// Outcome of a first-crossing search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossing {
    At(f64),
    NoCrossing,
}

impl Crossing {
    pub fn position(self) -> Option<f64> {
        match self {
            Crossing::At(x) => Some(x),
            Crossing::NoCrossing => None,
        }
    }
}

/// Smallest `x` in `[a, b]` where `f(x)` crosses `level`.
///
/// The interval is scanned on `scan_points` uniform nodes (at least 64) and
/// the first bracketing pair is bisected down to `(b − a)·1e-10`. Crossings
/// that enter and leave between two scan nodes are not seen.
pub fn find_first_crossing<F: Fn(f64) -> f64>(
    f: F,
    level: f64,
    a: f64,
    b: f64,
    scan_points: usize,
) -> Crossing {
    assert!(a < b, "find_first_crossing needs a < b");
    let n = scan_points.max(64);
    let step = (b - a) / (n - 1) as f64;
    let node = |i: usize| if i == n - 1 { b } else { a + i as f64 * step };

    let mut x0 = a;
    let mut g0 = f(a) - level;
    if g0 == 0.0 {
        return Crossing::At(a);
    }
    for i in 1..n {
        let x1 = node(i);
        let g1 = f(x1) - level;
        if g1 == 0.0 {
            return Crossing::At(x1);
        }
        if g0.signum() != g1.signum() {
            return Crossing::At(bisect(&f, level, x0, g0, x1, (b - a) * 1e-10));
        }
        x0 = x1;
        g0 = g1;
    }
    Crossing::NoCrossing
}

fn bisect<F: Fn(f64) -> f64>(f: &F, level: f64, mut lo: f64, g_lo: f64, mut hi: f64, tol: f64) -> f64 {
    let s_lo = g_lo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let g = f(mid) - level;
        if g == 0.0 {
            return mid;
        }
        if g.signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
