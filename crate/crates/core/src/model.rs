//! Constant-curvature model planes: triangles and angles in E^2, S^2 (unit
//! sphere) and H^2 (hyperboloid model), plus the comparison lemmas built on
//! them.
//!
//! Angles are computed with half-angle formulas,
//! `tan(A/2) = sqrt(f(s-b) f(s-c) / (f(s) f(s-a)))` with `f = id | sin | sinh`,
//! which stay accurate for tiny and near-degenerate triangles where the
//! plain law-of-cosines route loses all precision.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{clamp_unit, cross3, dot};

/// Curvature of the model plane. Only -1, 0, +1 are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kappa {
    Hyperbolic,
    Flat,
    Spherical,
}

impl Kappa {
    pub fn from_int(k: i32) -> Option<Self> {
        match k {
            -1 => Some(Kappa::Hyperbolic),
            0 => Some(Kappa::Flat),
            1 => Some(Kappa::Spherical),
            _ => None,
        }
    }

    pub fn as_int(self) -> i32 {
        match self {
            Kappa::Hyperbolic => -1,
            Kappa::Flat => 0,
            Kappa::Spherical => 1,
        }
    }
}

/// Model plane selection plus the absolute tolerance used by comparisons.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ModelConfig {
    pub kappa: Kappa,
    pub tol: f64,
}

impl ModelConfig {
    pub fn new(kappa: Kappa, tol: f64) -> Result<Self, ModelError> {
        if !(tol > 0.0) {
            return Err(ModelError::InvalidTolerance(tol));
        }
        Ok(ModelConfig { kappa, tol })
    }

    pub fn flat() -> Self {
        ModelConfig { kappa: Kappa::Flat, tol: DEFAULT_TOL }
    }

    pub fn spherical() -> Self {
        ModelConfig { kappa: Kappa::Spherical, tol: DEFAULT_TOL }
    }

    pub fn hyperbolic() -> Self {
        ModelConfig { kappa: Kappa::Hyperbolic, tol: DEFAULT_TOL }
    }

    pub fn with_kappa(kappa: Kappa) -> Self {
        ModelConfig { kappa, tol: DEFAULT_TOL }
    }
}

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("side lengths must be finite and nonnegative, got {0}")]
    InvalidSide(f64),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("sides ({0}, {1}, {2}) violate the triangle inequality")]
    TriangleInequality(f64, f64, f64),
    #[error("spherical triangle undefined: perimeter {0} >= 2*pi")]
    SphericalUndefined(f64),
    #[error("model angle undefined: adjacent side of length zero")]
    DegenerateVertex,
    #[error("z is not metrically between x and y: |xz| + |zy| = {0}, |xy| = {1}")]
    NotBetween(f64, f64),
}

fn check_sides(sides: &[f64]) -> Result<(), ModelError> {
    for &s in sides {
        if !s.is_finite() || s < 0.0 {
            return Err(ModelError::InvalidSide(s));
        }
    }
    Ok(())
}

/// `(y + z - x) / 2` computed to avoid cancellation when `x` dominates.
fn semi_excess(x: f64, y: f64, z: f64) -> f64 {
    if y >= x {
        ((y - x) + z) * 0.5
    } else {
        (z - (x - y)) * 0.5
    }
}

/// The model angle at the vertex where sides `b` and `c` meet, opposite side
/// `a`, in the plane of curvature `kappa`.
///
/// Errors when an adjacent side vanishes, when the triple breaks the
/// triangle inequality beyond `cfg.tol`, or (spherical case) when the
/// perimeter reaches `2*pi`.
pub fn model_angle(opposite: f64, adj1: f64, adj2: f64, cfg: &ModelConfig) -> Result<f64, ModelError> {
    let (a, b, c) = (opposite, adj1, adj2);
    check_sides(&[a, b, c])?;
    if b == 0.0 || c == 0.0 {
        return Err(ModelError::DegenerateVertex);
    }
    let slack = cfg.tol;
    if a > b + c + slack || b > c + a + slack || c > a + b + slack {
        return Err(ModelError::TriangleInequality(a, b, c));
    }
    if cfg.kappa == Kappa::Spherical {
        let perimeter = a + b + c;
        if perimeter >= 2.0 * std::f64::consts::PI {
            return Err(ModelError::SphericalUndefined(perimeter));
        }
    }
    let s = 0.5 * (a + (b + c));
    let sma = semi_excess(a, b, c).max(0.0);
    let smb = semi_excess(b, c, a).max(0.0);
    let smc = semi_excess(c, a, b).max(0.0);
    let (fs, fsa, fsb, fsc) = match cfg.kappa {
        Kappa::Flat => (s, sma, smb, smc),
        Kappa::Spherical => (s.sin(), sma.sin(), smb.sin(), smc.sin()),
        Kappa::Hyperbolic => (s.sinh(), sma.sinh(), smb.sinh(), smc.sinh()),
    };
    let num = (fsb * fsc).max(0.0).sqrt();
    let den = (fs * fsa).max(0.0).sqrt();
    Ok(2.0 * num.atan2(den))
}

/// A model triangle realized by explicit vertex coordinates: Cartesian pairs
/// in E^2, unit vectors in R^3 for S^2, hyperboloid vectors `(t, x, y)` with
/// `t^2 - x^2 - y^2 = 1` for H^2.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelTriangle {
    pub kappa: Kappa,
    pub vertices: [Vec<f64>; 3],
}

impl ModelTriangle {
    /// Model-plane distance between vertices `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        model_distance(self.kappa, &self.vertices[i], &self.vertices[j])
    }

    /// Interior angle at vertex `i`, measured from the coordinates.
    pub fn angle_at(&self, i: usize) -> f64 {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        match self.kappa {
            Kappa::Flat => {
                let u = [
                    self.vertices[j][0] - self.vertices[i][0],
                    self.vertices[j][1] - self.vertices[i][1],
                ];
                let v = [
                    self.vertices[k][0] - self.vertices[i][0],
                    self.vertices[k][1] - self.vertices[i][1],
                ];
                let cross = u[0] * v[1] - u[1] * v[0];
                cross.abs().atan2(dot(&u, &v))
            }
            Kappa::Spherical => {
                let p: &[f64] = &self.vertices[i];
                let u = tangent_sphere(p, &self.vertices[j]);
                let v = tangent_sphere(p, &self.vertices[k]);
                angle_between(&u, &v)
            }
            Kappa::Hyperbolic => {
                let p: &[f64] = &self.vertices[i];
                let u = tangent_hyp(p, &self.vertices[j]);
                let v = tangent_hyp(p, &self.vertices[k]);
                // Tangent metric is -<.,.>_L in this signature.
                let uu = -lorentz(&u, &u);
                let vv = -lorentz(&v, &v);
                if uu <= 0.0 || vv <= 0.0 {
                    return 0.0;
                }
                clamp_unit(-lorentz(&u, &v) / (uu * vv).sqrt()).acos()
            }
        }
    }
}

/// Distance in the model plane of curvature `kappa` between coordinate
/// vectors produced by this module.
pub fn model_distance(kappa: Kappa, p: &[f64], q: &[f64]) -> f64 {
    match kappa {
        Kappa::Flat => crate::geom::dist(p, q),
        Kappa::Spherical => {
            let pp = [p[0], p[1], p[2]];
            let qq = [q[0], q[1], q[2]];
            let c = cross3(&pp, &qq);
            crate::geom::norm(&c).atan2(dot(p, q))
        }
        Kappa::Hyperbolic => {
            // sinh^2(d/2) = (|dx|^2 - dt^2) / 4, cancellation-free.
            let dt = p[0] - q[0];
            let dx = p[1] - q[1];
            let dy = p[2] - q[2];
            let h = ((dx * dx + dy * dy - dt * dt) / 4.0).max(0.0);
            2.0 * h.sqrt().asinh()
        }
    }
}

fn angle_between(u: &[f64], v: &[f64]) -> f64 {
    let nu = crate::geom::norm(u);
    let nv = crate::geom::norm(v);
    if nu == 0.0 || nv == 0.0 {
        return 0.0;
    }
    clamp_unit(dot(u, v) / (nu * nv)).acos()
}

/// Tangent direction at unit vector `p` toward unit vector `q`.
fn tangent_sphere(p: &[f64], q: &[f64]) -> Vec<f64> {
    let c = dot(p, q);
    (0..3).map(|i| q[i] - c * p[i]).collect()
}

/// Lorentz inner product on the hyperboloid model, signature (+,-,-).
fn lorentz(p: &[f64], q: &[f64]) -> f64 {
    p[0] * q[0] - p[1] * q[1] - p[2] * q[2]
}

/// Lorentz projection of `q` onto the tangent space at hyperboloid point `p`.
fn tangent_hyp(p: &[f64], q: &[f64]) -> Vec<f64> {
    let c = lorentz(p, q);
    (0..3).map(|i| q[i] - c * p[i]).collect()
}

/// Builds the model triangle with side lengths `|pq|, |qr|, |rp|` in the
/// plane of curvature `cfg.kappa`. For `kappa = +1` the triangle is defined
/// only when the perimeter is strictly below `2*pi`.
pub fn model_triangle(pq: f64, qr: f64, rp: f64, cfg: &ModelConfig) -> Result<ModelTriangle, ModelError> {
    check_sides(&[pq, qr, rp])?;
    let slack = cfg.tol;
    if pq > qr + rp + slack || qr > rp + pq + slack || rp > pq + qr + slack {
        return Err(ModelError::TriangleInequality(pq, qr, rp));
    }
    if cfg.kappa == Kappa::Spherical {
        let perimeter = pq + qr + rp;
        if perimeter >= 2.0 * std::f64::consts::PI {
            return Err(ModelError::SphericalUndefined(perimeter));
        }
    }
    // Angle at p between the directions of q and r; undefined legs pin the
    // far vertex on the first axis instead.
    let angle_p = if pq == 0.0 || rp == 0.0 {
        0.0
    } else {
        model_angle(qr, pq, rp, cfg)?
    };
    let (ca, sa) = (angle_p.cos(), angle_p.sin());
    let vertices = match cfg.kappa {
        Kappa::Flat => [
            vec![0.0, 0.0],
            vec![pq, 0.0],
            vec![rp * ca, rp * sa],
        ],
        Kappa::Spherical => [
            vec![0.0, 0.0, 1.0],
            vec![pq.sin(), 0.0, pq.cos()],
            vec![rp.sin() * ca, rp.sin() * sa, rp.cos()],
        ],
        Kappa::Hyperbolic => [
            vec![1.0, 0.0, 0.0],
            vec![pq.cosh(), pq.sinh(), 0.0],
            vec![rp.cosh(), rp.sinh() * ca, rp.sinh() * sa],
        ],
    };
    Ok(ModelTriangle { kappa: cfg.kappa, vertices })
}

/// Curvature sensitivity of the model angle of a triple: how far the
/// spherical and hyperbolic angles sit from the Euclidean one, with the
/// product-of-adjacent-sides bound they must respect.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AngleCurvatureGap {
    pub angle_flat: f64,
    pub angle_sphere: f64,
    pub angle_hyp: f64,
    pub gap_sphere: f64,
    pub gap_hyp: f64,
    pub bound: f64,
}

/// Evaluates the three model angles at `p` for the triple
/// `(|px|, |py|, |xy|)` and reports `|sphere - flat|`, `|hyp - flat|` and the
/// bound `|px| * |py|`.
pub fn angle_curvature_gap(px: f64, py: f64, xy: f64, tol: f64) -> Result<AngleCurvatureGap, ModelError> {
    let cfg_e = ModelConfig::new(Kappa::Flat, tol)?;
    let cfg_s = ModelConfig::new(Kappa::Spherical, tol)?;
    let cfg_h = ModelConfig::new(Kappa::Hyperbolic, tol)?;
    let angle_flat = model_angle(xy, px, py, &cfg_e)?;
    let angle_sphere = model_angle(xy, px, py, &cfg_s)?;
    let angle_hyp = model_angle(xy, px, py, &cfg_h)?;
    Ok(AngleCurvatureGap {
        angle_flat,
        angle_sphere,
        angle_hyp,
        gap_sphere: (angle_sphere - angle_flat).abs(),
        gap_hyp: (angle_hyp - angle_flat).abs(),
        bound: px * py,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(v: f64, tol: f64) -> Sign {
        if v.abs() <= tol {
            Sign::Zero
        } else if v > 0.0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// Output of the concatenated-triangle sign comparison for a configuration
/// `p, x, y` with `z` between `x` and `y`.
///
/// `sign_a` is the sign of the angle growth at `x` when the short side `[xz]`
/// is extended to the full side `[xy]`; `sign_b` is the sign of the angle
/// excess over `pi` at the concatenation point `z`. The two agree, and the
/// angle at `p` for the full triangle dominates the sum of the two partial
/// angles (`angle_inequality_slack >= 0`), with equality exactly in the flat
/// concatenation case where both signs vanish.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AlexandrovSignReport {
    pub sign_a: Sign,
    pub sign_b: Sign,
    pub value_a: f64,
    pub value_b: f64,
    pub angle_inequality_slack: f64,
}

/// Distances for the four-point concatenation configuration; `z` lies on a
/// geodesic `[xy]`, so `xz + zy` must equal `xy` within tolerance.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AlexandrovInput {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
    pub xz: f64,
    pub zy: f64,
    pub xy: f64,
}

pub fn alexandrov_lemma(input: &AlexandrovInput, cfg: &ModelConfig) -> Result<AlexandrovSignReport, ModelError> {
    let AlexandrovInput { px, py, pz, xz, zy, xy } = *input;
    check_sides(&[px, py, pz, xz, zy, xy])?;
    if xz <= 0.0 || zy <= 0.0 {
        return Err(ModelError::DegenerateVertex);
    }
    if ((xz + zy) - xy).abs() > cfg.tol.max(1e-12 * xy.max(1.0)) {
        return Err(ModelError::NotBetween(xz + zy, xy));
    }
    if cfg.kappa == Kappa::Spherical && pz + py + xy >= 2.0 * std::f64::consts::PI {
        return Err(ModelError::SphericalUndefined(pz + py + xy));
    }
    // Angles at x: full triangle (p, x, y) versus sub-triangle (p, x, z).
    let at_x_full = model_angle(py, px, xy, cfg)?;
    let at_x_sub = model_angle(pz, px, xz, cfg)?;
    // Adjacent angles at z.
    let at_z_x = model_angle(px, pz, xz, cfg)?;
    let at_z_y = model_angle(py, pz, zy, cfg)?;
    // Angles at p.
    let at_p_full = model_angle(xy, px, py, cfg)?;
    let at_p_xz = model_angle(xz, px, pz, cfg)?;
    let at_p_zy = model_angle(zy, pz, py, cfg)?;

    let value_a = at_x_full - at_x_sub;
    let value_b = at_z_x + at_z_y - std::f64::consts::PI;
    let slack = at_p_full - at_p_xz - at_p_zy;
    Ok(AlexandrovSignReport {
        sign_a: Sign::of(value_a, cfg.tol),
        sign_b: Sign::of(value_b, cfg.tol),
        value_a,
        value_b,
        angle_inequality_slack: slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const KAPPAS: [Kappa; 3] = [Kappa::Hyperbolic, Kappa::Flat, Kappa::Spherical];

    #[test]
    fn equilateral_flat_angle() {
        let cfg = ModelConfig::flat();
        let a = model_angle(1.0, 1.0, 1.0, &cfg).unwrap();
        assert!((a - PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn pythagorean_flat_angle() {
        let cfg = ModelConfig::flat();
        // Law-of-cosines oracle: cos A = (3^2 + 4^2 - 5^2) / (2*3*4) = 0.
        let oracle = ((9.0_f64 + 16.0 - 25.0) / 24.0).acos();
        let a = model_angle(5.0, 3.0, 4.0, &cfg).unwrap();
        assert!((a - oracle).abs() < 1e-14);
        assert!((a - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn spherical_octant_angle() {
        let cfg = ModelConfig::spherical();
        let a = model_angle(PI / 2.0, PI / 2.0, PI / 2.0, &cfg).unwrap();
        assert!((a - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_adjacent_side_is_an_error() {
        let cfg = ModelConfig::flat();
        assert!(matches!(
            model_angle(1.0, 0.0, 1.0, &cfg),
            Err(ModelError::DegenerateVertex)
        ));
    }

    #[test]
    fn spherical_perimeter_overflow_is_an_error() {
        let cfg = ModelConfig::spherical();
        assert!(matches!(
            model_angle(PI, PI / 2.0, PI / 2.0, &cfg),
            Err(ModelError::SphericalUndefined(_))
        ));
    }

    #[test]
    fn cosine_law_agreement_in_cos_space() {
        let cfg = ModelConfig::flat();
        let triples = [
            (1.0, 1.0, 1.0),
            (5.0, 3.0, 4.0),
            (1.9999, 1.0, 1.0),
            (1e-6, 1e-6, 1e-6),
            (0.5, 2.0, 2.2),
        ];
        for (a, b, c) in triples {
            let angle = model_angle(a, b, c, &cfg).unwrap();
            let cos_law = (b * b + c * c - a * a) / (2.0 * b * c);
            assert!(
                (angle.cos() - clamp_unit(cos_law)).abs() < 1e-12,
                "triple ({a},{b},{c})"
            );
        }
    }

    #[test]
    fn model_triangle_realizes_side_lengths() {
        for kappa in KAPPAS {
            let cfg = ModelConfig::with_kappa(kappa);
            let tri = model_triangle(0.9, 1.2, 0.7, &cfg).unwrap();
            assert!((tri.distance(0, 1) - 0.9).abs() < 1e-12, "{kappa:?}");
            assert!((tri.distance(1, 2) - 1.2).abs() < 1e-12, "{kappa:?}");
            assert!((tri.distance(2, 0) - 0.7).abs() < 1e-12, "{kappa:?}");
        }
    }

    #[test]
    fn model_triangle_equilateral_flat() {
        let cfg = ModelConfig::flat();
        let tri = model_triangle(1.0, 1.0, 1.0, &cfg).unwrap();
        for i in 0..3 {
            assert!((tri.angle_at(i) - PI / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn model_triangle_345_right_angle_opposite_long_side() {
        let cfg = ModelConfig::flat();
        // Sides (|pq|, |qr|, |rp|) = (3, 4, 5): the right angle sits at q,
        // the vertex opposite the side of length 5.
        let tri = model_triangle(3.0, 4.0, 5.0, &cfg).unwrap();
        assert!((tri.angle_at(1) - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn spherical_lune_boundary_is_undefined() {
        let cfg = ModelConfig::spherical();
        assert!(matches!(
            model_triangle(PI, PI / 2.0, PI / 2.0, &cfg),
            Err(ModelError::SphericalUndefined(_))
        ));
    }

    #[test]
    fn triangle_inequality_violation_is_an_error() {
        let cfg = ModelConfig::flat();
        assert!(matches!(
            model_triangle(3.0, 1.0, 1.0, &cfg),
            Err(ModelError::TriangleInequality(..))
        ));
    }

    #[test]
    fn angle_gap_small_triple() {
        let g = angle_curvature_gap(0.1, 0.1, 0.1, DEFAULT_TOL).unwrap();
        assert!(g.gap_sphere <= 0.01 + 1e-12);
        assert!(g.gap_hyp <= 0.01 + 1e-12);
    }

    #[test]
    fn angle_gap_degenerate_triple_is_flat_pi() {
        let g = angle_curvature_gap(0.4, 0.6, 1.0, DEFAULT_TOL).unwrap();
        assert!((g.angle_flat - PI).abs() < 1e-12);
        assert!((g.angle_sphere - PI).abs() < 1e-12);
        assert!((g.angle_hyp - PI).abs() < 1e-12);
        assert!(g.gap_sphere < 1e-12 && g.gap_hyp < 1e-12);
    }

    #[test]
    fn angle_gap_unit_triple() {
        // Direct evaluation of both laws of cosines as the oracle.
        let g = angle_curvature_gap(1.0, 1.0, 1.0, DEFAULT_TOL).unwrap();
        let e = (0.5_f64).acos();
        let s = ((1.0_f64.cos() - 1.0_f64.cos() * 1.0_f64.cos()) / (1.0_f64.sin() * 1.0_f64.sin())).acos();
        let h = ((1.0_f64.cosh() * 1.0_f64.cosh() - 1.0_f64.cosh()) / (1.0_f64.sinh() * 1.0_f64.sinh())).acos();
        assert!((g.gap_sphere - (s - e).abs()).abs() < 1e-12);
        assert!((g.gap_hyp - (h - e).abs()).abs() < 1e-12);
        assert!(g.gap_sphere <= 1.0 + 1e-12);
        assert!(g.gap_hyp <= 1.0 + 1e-12);
    }

    #[test]
    fn angle_ordering_hyper_flat_sphere() {
        let g = angle_curvature_gap(1.0, 0.8, 1.3, DEFAULT_TOL).unwrap();
        assert!(g.angle_hyp <= g.angle_flat + 1e-12);
        assert!(g.angle_flat <= g.angle_sphere + 1e-12);
    }

    fn planar_input(py_factor: f64) -> AlexandrovInput {
        // p = (0,1), x = (0,0), z = (1,0), y = (2,0) with |py| rescaled.
        AlexandrovInput {
            px: 1.0,
            py: 5.0_f64.sqrt() * py_factor,
            pz: 2.0_f64.sqrt(),
            xz: 1.0,
            zy: 1.0,
            xy: 2.0,
        }
    }

    #[test]
    fn alexandrov_flat_concatenation_is_equality() {
        let cfg = ModelConfig::flat();
        let rep = alexandrov_lemma(&planar_input(1.0), &cfg).unwrap();
        assert_eq!(rep.sign_a, Sign::Zero);
        assert_eq!(rep.sign_b, Sign::Zero);
        assert!(rep.angle_inequality_slack.abs() < 1e-9);
    }

    #[test]
    fn alexandrov_inflated_far_side_is_positive() {
        let cfg = ModelConfig::flat();
        let rep = alexandrov_lemma(&planar_input(1.05), &cfg).unwrap();
        assert_eq!(rep.sign_a, Sign::Pos);
        assert_eq!(rep.sign_b, Sign::Pos);
        assert!(rep.angle_inequality_slack > 0.0);
    }

    #[test]
    fn alexandrov_deflated_far_side_is_negative() {
        let cfg = ModelConfig::flat();
        let rep = alexandrov_lemma(&planar_input(0.95), &cfg).unwrap();
        assert_eq!(rep.sign_a, Sign::Neg);
        assert_eq!(rep.sign_b, Sign::Neg);
        assert!(rep.angle_inequality_slack > 0.0);
    }

    #[test]
    fn alexandrov_rejects_non_between_z() {
        let cfg = ModelConfig::flat();
        let mut input = planar_input(1.0);
        input.xy = 2.5;
        assert!(matches!(
            alexandrov_lemma(&input, &cfg),
            Err(ModelError::NotBetween(..))
        ));
    }
}
