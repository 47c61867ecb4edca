//! Derivative-free minimization of convex functions of one and two real variables.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Outcome of a minimization: the best point seen, its value and the number of evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum<P> {
    pub point: P,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search for a unimodal `f` on `[lo, hi]`, stopping at bracket width `tol`.
///
/// The returned point is the best evaluated point, so `value` is always a true sample of `f`.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Minimum<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut evals = 2;
    let (mut best, mut best_value) = if fc <= fd { (c, fc) } else { (d, fd) };
    while (b - a).abs() > tol && evals < 400 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc < best_value {
                best = c;
                best_value = fc;
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd < best_value {
                best = d;
                best_value = fd;
            }
        }
        evals += 1;
    }
    Minimum { point: best, value: best_value, evaluations: evals }
}

/// Settings for [`minimize_planar`].
#[derive(Debug, Clone, Copy)]
pub struct PlanarSearch {
    /// Search box half-width.
    pub radius: f64,
    /// Stop when a full round moves less than `tol·radius`.
    pub tol: f64,
    /// Return as soon as a value below this is found.
    pub stop_below: Option<f64>,
}

/// Minimizes a convex `f(x, y)` over the box `|x|, |y| ≤ radius`, starting from the origin.
///
/// Rounds of coordinate-wise golden-section searches, each followed by a line
/// search along the round's net displacement, and a final compass polish in 16
/// directions so that the search cannot stall at a kink of a nonsmooth `f`.
pub fn minimize_planar<F: FnMut(f64, f64) -> f64>(mut f: F, opts: PlanarSearch) -> Minimum<(f64, f64)> {
    let r = opts.radius;
    let step_tol = opts.tol * r;
    let line_tol = (step_tol * 0.1).max(f64::EPSILON * r);
    let mut evals = 1;
    let mut p = (0.0, 0.0);
    let mut best = f(0.0, 0.0);
    let done = |v: f64| opts.stop_below.is_some_and(|s| v < s);
    if done(best) {
        return Minimum { point: p, value: best, evaluations: evals };
    }

    // Line search along direction (dx, dy) through p, over parameters keeping p inside the box.
    let line = |p: (f64, f64), dir: (f64, f64), f: &mut F, evals: &mut usize| -> Option<(f64, f64, f64)> {
        let (lo, hi) = box_interval(p, dir, r);
        if hi - lo <= 0.0 {
            return None;
        }
        let norm = dir.0.hypot(dir.1);
        let m = golden_section(|t| f(p.0 + t * dir.0, p.1 + t * dir.1), lo, hi, line_tol / norm);
        *evals += m.evaluations;
        Some((p.0 + m.point * dir.0, p.1 + m.point * dir.1, m.value))
    };

    for _ in 0..200 {
        let start = p;
        for dir in [(1.0, 0.0), (0.0, 1.0)] {
            if let Some((x, y, v)) = line(p, dir, &mut f, &mut evals) {
                if v < best {
                    p = (x, y);
                    best = v;
                }
            }
        }
        if done(best) {
            return Minimum { point: p, value: best, evaluations: evals };
        }
        let disp = (p.0 - start.0, p.1 - start.1);
        let moved = disp.0.hypot(disp.1);
        if moved > 0.0 {
            if let Some((x, y, v)) = line(p, disp, &mut f, &mut evals) {
                if v < best {
                    p = (x, y);
                    best = v;
                }
            }
        }
        if moved < step_tol {
            break;
        }
    }

    let mut h = (1e-3 * r).max(step_tol);
    let dirs: Vec<(f64, f64)> = (0..16)
        .map(|k| {
            let t = std::f64::consts::PI * k as f64 / 8.0;
            (t.cos(), t.sin())
        })
        .collect();
    while h >= step_tol && evals < 20_000 {
        if done(best) {
            break;
        }
        let mut improved = false;
        for &(dx, dy) in &dirs {
            let q = (p.0 + h * dx, p.1 + h * dy);
            let v = f(q.0, q.1);
            evals += 1;
            if v < best {
                best = v;
                p = q;
                improved = true;
                break;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    Minimum { point: p, value: best, evaluations: evals }
}

/// Parameter interval `{t : |p + t·dir|_∞ ≤ r}`.
fn box_interval(p: (f64, f64), dir: (f64, f64), r: f64) -> (f64, f64) {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (x, d) in [(p.0, dir.0), (p.1, dir.1)] {
        if d != 0.0 {
            let (a, b) = ((-r - x) / d, (r - x) / d);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_minimum() {
        let m = golden_section(|x| (x - 0.3) * (x - 0.3), -2.0, 2.0, 1e-9);
        assert!((m.point - 0.3).abs() < 1e-8);
    }

    #[test]
    fn golden_handles_kinks() {
        let m = golden_section(|x| (x + 0.7).abs() + 1.0, -2.0, 2.0, 1e-10);
        assert!((m.point + 0.7).abs() < 1e-9 && (m.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn planar_smooth_bowl() {
        let m = minimize_planar(
            |x, y| (x - 0.4).powi(2) + 3.0 * (y + 0.2).powi(2) + (x - 0.4) * (y + 0.2),
            PlanarSearch { radius: 2.0, tol: 1e-9, stop_below: None },
        );
        assert!((m.point.0 - 0.4).abs() < 1e-6 && (m.point.1 + 0.2).abs() < 1e-6);
    }

    #[test]
    fn planar_diagonal_kink() {
        // Coordinate moves alone stall on the ridge x = y; the polish must not.
        let f = |x: f64, y: f64| (x - y).abs() * 10.0 + (x + y - 1.0).powi(2);
        let m = minimize_planar(f, PlanarSearch { radius: 2.0, tol: 1e-9, stop_below: None });
        assert!(m.value < 1e-12, "value {}", m.value);
    }

    #[test]
    fn planar_early_stop() {
        let m = minimize_planar(
            |x, y| (x - 1.0).powi(2) + y * y,
            PlanarSearch { radius: 2.0, tol: 1e-9, stop_below: Some(0.5) },
        );
        assert!(m.value < 0.5);
    }
}
