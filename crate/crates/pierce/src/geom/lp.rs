use super::Point;

/// Closed halfplane `a*x + b*y <= c` with unit normal `(a, b)`.
#[derive(Debug, Clone, Copy)]
pub struct Halfplane {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Halfplane {
    pub fn new(a: f64, b: f64, c: f64) -> Halfplane {
        let n = a.hypot(b);
        debug_assert!(n > 1e-300);
        Halfplane {
            a: a / n,
            b: b / n,
            c: c / n,
        }
    }

    pub fn violation(&self, p: &Point) -> f64 {
        self.a * p.x + self.b * p.y - self.c
    }
}

const BOUND: f64 = 1e7;

/// Decides feasibility of a system of closed halfplanes by incremental
/// two-dimensional linear programming and returns a feasible point when one
/// exists.
///
/// The optimum of the running objective is maintained exactly on constraint
/// boundaries; when a new constraint is violated the problem is reduced to a
/// one-dimensional interval intersection along that constraint's line. The
/// region is first boxed to `[-BOUND, BOUND]^2`, so callers must keep their
/// geometry well inside that range.
pub fn halfplanes_feasible(planes: &[Halfplane]) -> Option<Point> {
    // Objective direction: minimize d.p with a slight tilt so ties resolve.
    let dx = 1e-7;
    let dy = 1.0;
    let mut p = Point::new(-BOUND, -BOUND);
    let boxed: [Halfplane; 4] = [
        Halfplane { a: 1.0, b: 0.0, c: BOUND },
        Halfplane { a: -1.0, b: 0.0, c: BOUND },
        Halfplane { a: 0.0, b: 1.0, c: BOUND },
        Halfplane { a: 0.0, b: -1.0, c: BOUND },
    ];
    for (i, h) in planes.iter().enumerate() {
        if h.violation(&p) <= 1e-12 {
            continue;
        }
        // New optimum lies on the boundary line of h. Parameterize the line
        // and intersect every earlier constraint with it.
        let base = Point::new(h.a * h.c, h.b * h.c);
        let dir = Point::new(-h.b, h.a);
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for g in boxed.iter().chain(planes[..i].iter()) {
            // g applied to base + t*dir: (g.n . dir) t <= c - g.n . base
            let denom = g.a * dir.x + g.b * dir.y;
            let rhs = g.c - (g.a * base.x + g.b * base.y);
            if denom.abs() <= 1e-15 {
                if rhs < -1e-12 {
                    return None;
                }
                continue;
            }
            let t = rhs / denom;
            if denom > 0.0 {
                hi = hi.min(t);
            } else {
                lo = lo.max(t);
            }
            if lo > hi + 1e-12 {
                return None;
            }
        }
        let along = dx * dir.x + dy * dir.y;
        let t = if along > 0.0 { lo } else { hi };
        let t = t.clamp(lo.min(hi), hi.max(lo));
        p = base.add(&dir.scale(t));
    }
    Some(p)
}
