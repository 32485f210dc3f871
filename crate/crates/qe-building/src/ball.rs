//! Breadth-first balls, spheres and polytopal balls.

use crate::{weyl_distance, BuildingError, BuildingVertex, Result};
use qe_weyl::{in_pm, WeylVector};
use serde_json::json;
use std::collections::HashMap;

/// Largest combinatorial radius accepted by the enumerators.
pub const MAX_RADIUS: i64 = 8;
/// Largest estimated ball size accepted by the enumerators.
pub const MAX_VERTICES: f64 = 4.0e6;

/// Vertices within combinatorial distance `radius` of `center`, sorted by
/// canonical form, with their distance from the centre.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: BuildingVertex,
    pub radius: i64,
    pub vertices: Vec<BuildingVertex>,
    pub dist: Vec<WeylVector>,
    index: HashMap<BuildingVertex, usize>,
}

/// `sum_{r+s <= R} N_(r,s)` in floating point, the size of the ball.
fn estimated_size(p: u32, radius: i64) -> f64 {
    let q = p as f64;
    let t = 1.0 / q;
    let nu3 = (1.0 + t) * (1.0 + t + t * t);
    let mut tot = 0.0;
    for r in 0..=radius {
        for s in 0..=radius - r {
            let nu = match (r > 0, s > 0) {
                (true, true) => 1.0,
                (false, false) => nu3,
                _ => 1.0 + t,
            };
            tot += q.powi(2 * (r + s) as i32) * nu3 / nu;
        }
    }
    tot
}

pub fn check_resources(p: u32, radius: i64) -> Result<()> {
    if radius > MAX_RADIUS {
        return Err(BuildingError::ResourceLimit(format!("radius {radius} exceeds {MAX_RADIUS}")));
    }
    let est = estimated_size(p, radius);
    if est > MAX_VERTICES {
        return Err(BuildingError::ResourceLimit(format!("ball of radius {radius} at p={p} has ~{est:.0} vertices")));
    }
    Ok(())
}

impl Ball {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: &BuildingVertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn distance_of(&self, v: &BuildingVertex) -> Option<WeylVector> {
        self.index.get(v).map(|&i| self.dist[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BuildingVertex, &WeylVector)> {
        self.vertices.iter().zip(self.dist.iter())
    }

    /// JSON lines `{"hnf": [[..],[..],[..]], "dist": [l1, l2]}` in canonical order.
    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for (v, d) in self.iter() {
            let l = d.partition();
            s.push_str(&json!({"hnf": v.hnf, "dist": [l[0], l[1]]}).to_string());
            s.push('\n');
        }
        s
    }
}

/// BFS layers `0..=radius` around `center`; layer `k` is the combinatorial sphere of radius `k`.
pub fn bfs_layers(center: &BuildingVertex, radius: i64) -> Result<Vec<Vec<BuildingVertex>>> {
    check_resources(center.p, radius)?;
    let mut seen: HashMap<BuildingVertex, ()> = HashMap::new();
    seen.insert(center.clone(), ());
    let mut layers = vec![vec![center.clone()]];
    for _ in 0..radius {
        let frontier = layers.last().unwrap();
        let expanded = qe_par::map(frontier, |v| v.neighbors());
        let mut next = Vec::new();
        for nb in expanded {
            for (w, _) in nb {
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), ());
                    next.push(w);
                }
            }
        }
        next.sort();
        layers.push(next);
    }
    Ok(layers)
}

pub fn ball(center: &BuildingVertex, radius: i64) -> Result<Ball> {
    let mut vertices: Vec<BuildingVertex> = bfs_layers(center, radius)?.into_iter().flatten().collect();
    vertices.sort();
    let dist = qe_par::map(&vertices, |w| weyl_distance(center, w));
    let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    Ok(Ball { center: center.clone(), radius, vertices, dist, index })
}

fn filtered(center: &BuildingVertex, radius: i64, keep: impl Fn(&WeylVector) -> bool) -> Result<Ball> {
    let b = ball(center, radius)?;
    let (vertices, dist): (Vec<_>, Vec<_>) = b.vertices.into_iter().zip(b.dist).filter(|(_, d)| keep(d)).unzip();
    let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    Ok(Ball { center: center.clone(), radius, vertices, dist, index })
}

/// Vertices `w` with `d(v, w) = lambda`.
pub fn sphere(v: &BuildingVertex, lambda: WeylVector) -> Result<Vec<BuildingVertex>> {
    Ok(filtered(v, lambda.r + lambda.s, |d| *d == lambda)?.vertices)
}

/// `B_{P_m}(v)`: vertices with `d(v, w)` in `P_m`.
pub fn polytopal_ball(v: &BuildingVertex, m: i64) -> Result<Ball> {
    filtered(v, 2 * m, |d| in_pm(d, m))
}
