//! Seeded generators for the sample families used across the test suites:
//! Euclidean, spherical and hyperbolic quadruples, random metric trees and
//! their products, and admissible configurations for the angle lemmas.

use rand::Rng;

use crate::cat::SixDistances;
use crate::geom;
use crate::metric::FiniteMetricSpace;
use crate::model::{AlexandrovInput, Kappa};

/// Standard normal via Box-Muller; keeps the dependency surface small.
pub fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn random_unit_vector(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        if let Some(u) = geom::normalize(&v) {
            return u;
        }
    }
}

fn six_distances(points: &[Vec<f64>], d: impl Fn(&[f64], &[f64]) -> f64) -> SixDistances {
    [
        d(&points[0], &points[1]),
        d(&points[0], &points[2]),
        d(&points[0], &points[3]),
        d(&points[1], &points[2]),
        d(&points[1], &points[3]),
        d(&points[2], &points[3]),
    ]
}

/// Quadruple sampled from a unit box in `E^dim`.
pub fn euclidean_quadruple(rng: &mut impl Rng, dim: usize) -> SixDistances {
    let pts: Vec<Vec<f64>> = (0..4)
        .map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect())
        .collect();
    six_distances(&pts, geom::dist)
}

/// Quadruple of intrinsic (great-circle) distances of four uniform points on
/// the unit sphere.
pub fn spherical_quadruple(rng: &mut impl Rng) -> SixDistances {
    let pts: Vec<Vec<f64>> = (0..4).map(|_| random_unit_vector(rng, 3)).collect();
    six_distances(&pts, |a, b| {
        let aa = [a[0], a[1], a[2]];
        let bb = [b[0], b[1], b[2]];
        let c = geom::cross3(&aa, &bb);
        geom::norm(&c).atan2(geom::dot(a, b))
    })
}

/// Quadruple of intrinsic distances of four random points of the hyperbolic
/// plane (hyperboloid model), radii up to `max_radius`.
pub fn hyperbolic_quadruple(rng: &mut impl Rng, max_radius: f64) -> SixDistances {
    let pts: Vec<Vec<f64>> = (0..4)
        .map(|_| {
            let r = rng.gen::<f64>() * max_radius;
            let t = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
            vec![r.cosh(), r.sinh() * t.cos(), r.sinh() * t.sin()]
        })
        .collect();
    six_distances(&pts, |a, b| {
        let dt = a[0] - b[0];
        let dx = a[1] - b[1];
        let dy = a[2] - b[2];
        let h = ((dx * dx + dy * dy - dt * dt) / 4.0).max(0.0);
        2.0 * h.sqrt().asinh()
    })
}

/// Random tree metric on `n` nodes: node `i` hangs off a uniformly chosen
/// earlier node with edge weight in `[0.1, 2)`.
pub fn random_tree_metric(rng: &mut impl Rng, n: usize) -> FiniteMetricSpace {
    assert!(n >= 1);
    let mut parent = vec![0usize; n];
    let mut weight = vec![0.0f64; n];
    for i in 1..n {
        parent[i] = rng.gen_range(0..i);
        weight[i] = rng.gen_range(0.1..2.0);
    }
    // depth[i] = distance to the root; tree distance via lowest common
    // ancestor along parent chains.
    let mut depth = vec![0.0f64; n];
    for i in 1..n {
        depth[i] = depth[parent[i]] + weight[i];
    }
    let mut dist = vec![vec![0.0f64; n]; n];
    let ancestors = |mut v: usize| -> Vec<usize> {
        let mut chain = vec![v];
        while v != 0 {
            v = parent[v];
            chain.push(v);
        }
        chain
    };
    for i in 0..n {
        let ai = ancestors(i);
        for j in (i + 1)..n {
            let aj = ancestors(j);
            let mut lca = 0;
            let set: std::collections::HashSet<usize> = ai.iter().copied().collect();
            for &v in &aj {
                if set.contains(&v) {
                    lca = v;
                    break;
                }
            }
            let d = depth[i] + depth[j] - 2.0 * depth[lca];
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    FiniteMetricSpace::from_matrix(dist).expect("tree metric is well formed")
}

/// Quadruple of four distinct points of a finite metric space.
pub fn quadruple_from_space(space: &FiniteMetricSpace, rng: &mut impl Rng) -> SixDistances {
    let n = space.len();
    assert!(n >= 4);
    let mut idx = Vec::with_capacity(4);
    while idx.len() < 4 {
        let i = rng.gen_range(0..n);
        if !idx.contains(&i) {
            idx.push(i);
        }
    }
    [
        space.d(idx[0], idx[1]),
        space.d(idx[0], idx[2]),
        space.d(idx[0], idx[3]),
        space.d(idx[1], idx[2]),
        space.d(idx[1], idx[3]),
        space.d(idx[2], idx[3]),
    ]
}

/// Quadruple from the l2-product of two finite metric spaces: points are
/// pairs, `d((u,v),(u',v'))^2 = d(u,u')^2 + d(v,v')^2`.
pub fn product_quadruple(
    a: &FiniteMetricSpace,
    b: &FiniteMetricSpace,
    rng: &mut impl Rng,
) -> SixDistances {
    let mut pts = Vec::with_capacity(4);
    while pts.len() < 4 {
        let p = (rng.gen_range(0..a.len()), rng.gen_range(0..b.len()));
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let d = |p: (usize, usize), q: (usize, usize)| -> f64 {
        let da = a.d(p.0, q.0);
        let db = b.d(p.1, q.1);
        (da * da + db * db).sqrt()
    };
    [
        d(pts[0], pts[1]),
        d(pts[0], pts[2]),
        d(pts[0], pts[3]),
        d(pts[1], pts[2]),
        d(pts[1], pts[3]),
        d(pts[2], pts[3]),
    ]
}

/// Triple `(|px|, |py|, |xy|)` admissible for the curvature-gap comparison:
/// positive adjacent sides, triangle inequality, spherical model defined.
/// Scales are drawn log-uniformly down to 1e-4 to exercise small triangles.
pub fn gap_triple(rng: &mut impl Rng) -> (f64, f64, f64) {
    let scale = 10f64.powf(rng.gen_range(-4.0..0.17));
    let px = scale * rng.gen_range(0.1..1.0);
    let py = scale * rng.gen_range(0.1..1.0);
    let lo = (px - py).abs();
    let hi = px + py;
    let xy = lo + rng.gen::<f64>() * (hi - lo);
    (px, py, xy)
}

/// Random admissible configuration for the concatenated-triangle lemma:
/// `z` strictly between `x` and `y`, all model triangles defined for
/// `kappa`, spherical inputs additionally respecting the perimeter clause.
pub fn alexandrov_config(rng: &mut impl Rng, kappa: Kappa) -> AlexandrovInput {
    loop {
        let xz: f64 = rng.gen_range(0.05..1.0);
        let zy: f64 = rng.gen_range(0.05..1.0);
        let xy = xz + zy;
        let pz: f64 = rng.gen_range(0.05..1.5);
        // p must close triangles with both x and y through z.
        let px = rng.gen_range((pz - xz).abs().max(0.05)..(pz + xz));
        let py = rng.gen_range((pz - zy).abs().max(0.05)..(pz + zy));
        // Full triangle (p, x, y) must be a metric triple as well.
        if px + py <= xy || px + xy <= py || py + xy <= px {
            continue;
        }
        if kappa == Kappa::Spherical {
            let two_pi = 2.0 * std::f64::consts::PI;
            if pz + py + xy >= two_pi
                || px + pz + xz >= two_pi
                || px + py + xy >= two_pi
                || pz + py + zy >= two_pi
            {
                continue;
            }
        }
        return AlexandrovInput { px, py, pz, xz, zy, xy };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::batch::case_rng;
    use crate::metric::validate_metric;

    #[test]
    fn tree_metric_is_a_metric() {
        let mut rng = case_rng(3, 0);
        let t = random_tree_metric(&mut rng, 20);
        assert!(validate_metric(&t, 1e-9).unwrap().ok());
    }

    #[test]
    fn spherical_quadruples_are_metric() {
        let mut rng = case_rng(4, 0);
        for _ in 0..100 {
            let d = spherical_quadruple(&mut rng);
            let [d01, d02, d03, d12, d13, d23] = d;
            let m = FiniteMetricSpace::from_matrix(vec![
                vec![0.0, d01, d02, d03],
                vec![d01, 0.0, d12, d13],
                vec![d02, d12, 0.0, d23],
                vec![d03, d13, d23, 0.0],
            ])
            .unwrap();
            assert!(validate_metric(&m, 1e-9).unwrap().ok());
        }
    }

    #[test]
    fn alexandrov_configs_are_admissible() {
        for kappa in [Kappa::Hyperbolic, Kappa::Flat, Kappa::Spherical] {
            let mut rng = case_rng(5, kappa.as_int() as u64);
            for _ in 0..200 {
                let c = alexandrov_config(&mut rng, kappa);
                assert!((c.xz + c.zy - c.xy).abs() < 1e-12);
                assert!(c.px + c.py > c.xy);
            }
        }
    }
}
