//! Small dense-vector helpers shared by the geometric modules.
//!
//! Everything works on `&[f64]` slices so the billiard reduction can live in
//! `R^{3n}` without a fixed-dimension vector type.

/// Dot product. Panics on length mismatch.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `a + s * b`, allocated.
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

/// Linear interpolation `(1 - t) a + t b`.
pub fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| (1.0 - t) * x + t * y).collect()
}

pub fn normalize(a: &[f64]) -> Option<Vec<f64>> {
    let n = norm(a);
    if n == 0.0 || !n.is_finite() {
        None
    } else {
        Some(scale(a, 1.0 / n))
    }
}

pub fn clamp_unit(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

/// Ceiling of `pi / angle` with a snap for ratios that are integral up to
/// roundoff (`pi / (pi/3)` must give 3, not 4).
pub fn ceil_pi_over(angle: f64) -> u32 {
    assert!(angle > 0.0, "angle must be positive");
    let q = std::f64::consts::PI / angle;
    let r = q.round();
    if (q - r).abs() <= 1e-9 * q.max(1.0) {
        r as u32
    } else {
        q.ceil() as u32
    }
}

/// Eigenvalues of a symmetric 3x3 matrix, ascending. Uses the closed-form
/// trigonometric solution of the characteristic cubic.
pub fn sym3_eigenvalues(m: &[[f64; 3]; 3]) -> [f64; 3] {
    let p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    if p1 == 0.0 {
        let mut eig = [m[0][0], m[1][1], m[2][2]];
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return eig;
    }
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            b[i][j] = (m[i][j] - if i == j { q } else { 0.0 }) / p;
        }
    }
    let detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = clamp_unit(detb / 2.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    let mut eig = [e1, e2, e3];
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}

/// A unit eigenvector of a symmetric 3x3 matrix for the given eigenvalue,
/// found from the cross products of the rows of `m - lambda I`.
pub fn sym3_eigenvector(m: &[[f64; 3]; 3], lambda: f64) -> [f64; 3] {
    let a = [m[0][0] - lambda, m[0][1], m[0][2]];
    let b = [m[1][0], m[1][1] - lambda, m[1][2]];
    let c = [m[2][0], m[2][1], m[2][2] - lambda];
    let cands = [cross3(&a, &b), cross3(&b, &c), cross3(&a, &c)];
    let best = cands
        .iter()
        .max_by(|u, v| norm(*u as &[f64]).partial_cmp(&norm(*v as &[f64])).unwrap())
        .unwrap();
    let n = norm(best);
    if n == 0.0 {
        // m - lambda I has rank <= 1; any vector orthogonal to a row works.
        let row = if norm(&a) >= norm(&b) && norm(&a) >= norm(&c) {
            a
        } else if norm(&b) >= norm(&c) {
            b
        } else {
            c
        };
        let rn = norm(&row);
        if rn == 0.0 {
            return [1.0, 0.0, 0.0];
        }
        let u = [row[0] / rn, row[1] / rn, row[2] / rn];
        // Pick the coordinate axis least aligned with u and orthogonalize.
        let mut axis = [0.0; 3];
        let k = (0..3)
            .min_by(|&i, &j| u[i].abs().partial_cmp(&u[j].abs()).unwrap())
            .unwrap();
        axis[k] = 1.0;
        let proj = dot(&axis, &u);
        let mut w = [axis[0] - proj * u[0], axis[1] - proj * u[1], axis[2] - proj * u[2]];
        let wn = norm(&w);
        for x in &mut w {
            *x /= wn;
        }
        return w;
    }
    [best[0] / n, best[1] / n, best[2] / n]
}

pub fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Golden-section search for the minimum of a unimodal function on `[lo, hi]`.
/// Returns `(argmin, min)`; `tol` is the absolute tolerance in the argument.
pub fn golden_section_min(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INVPHI * (hi - lo);
    let mut d = lo + INVPHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > tol {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INVPHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INVPHI * (hi - lo);
            fd = f(d);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = [[3.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 2.0]];
        let e = sym3_eigenvalues(&m);
        assert!((e[0] + 1.0).abs() < 1e-12);
        assert!((e[1] - 2.0).abs() < 1e-12);
        assert!((e[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eigenpair_consistency() {
        let m = [[2.0, 1.0, 0.5], [1.0, 3.0, -0.25], [0.5, -0.25, 1.5]];
        for lambda in sym3_eigenvalues(&m) {
            let v = sym3_eigenvector(&m, lambda);
            for i in 0..3 {
                let mv = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
                assert!((mv - lambda * v[i]).abs() < 1e-9, "row {i}: {mv} vs {}", lambda * v[i]);
            }
        }
    }

    #[test]
    fn ceil_pi_over_snaps_near_integers() {
        assert_eq!(ceil_pi_over(std::f64::consts::PI / 2.0), 2);
        assert_eq!(ceil_pi_over(std::f64::consts::PI / 3.0), 3);
        assert_eq!(ceil_pi_over(std::f64::consts::PI), 1);
        assert_eq!(ceil_pi_over(2.0), 2);
        assert_eq!(ceil_pi_over(1.0), 4);
    }

    #[test]
    fn golden_section_finds_quadratic_min() {
        let (x, fx) = golden_section_min(0.0, 1.0, 1e-12, |t| (t - 0.3) * (t - 0.3) + 1.0);
        // The argmin of a flat quadratic is only sqrt(eps)-identifiable from
        // value comparisons; the value itself is what the callers consume.
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-14);
    }
}
