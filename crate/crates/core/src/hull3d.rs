//! Lower convex hull of a 3D point cloud, used as an independent check on
//! the axis-wise convexification.
//!
//! Plain incremental hull with exact orientation predicates. Grid data is
//! full of coplanar quadruples (the vertical walls over the domain boundary,
//! mirror-symmetric quadrilaterals), so the `(x, y)` coordinates are jittered
//! by a tiny seeded amount before insertion. The jitter moves the envelope by
//! at most `JITTER × slope`, far below anything the checks resolve.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robust::{orient3d, Coord3D};

use crate::error::{Error, Result};

const JITTER: f64 = 1e-9;
/// Facets steeper than this (|slope|) are artefacts of jittered vertical walls.
const MAX_SLOPE: f64 = 1e5;

#[derive(Debug, Clone, Copy)]
struct Face {
    v: [usize; 3],
    alive: bool,
}

fn coord(p: &[f64; 3]) -> Coord3D<f64> {
    Coord3D {
        x: p[0],
        y: p[1],
        z: p[2],
    }
}

/// `> 0` when `d` is on the inner side of the oriented face `(a, b, c)`.
fn orient(pts: &[[f64; 3]], a: usize, b: usize, c: usize, d: &[f64; 3]) -> f64 {
    orient3d(coord(&pts[a]), coord(&pts[b]), coord(&pts[c]), coord(d))
}

/// Triangulated convex hull; faces are oriented with outward normals.
#[derive(Debug, Clone)]
pub struct ConvexHull3 {
    points: Vec<[f64; 3]>,
    faces: Vec<[usize; 3]>,
}

impl ConvexHull3 {
    pub fn build(points: Vec<[f64; 3]>) -> Result<Self> {
        if points.len() < 4 {
            return Err(Error::DegenerateHull("fewer than four points"));
        }
        let seed = initial_tetrahedron(&points)?;
        let interior = {
            let mut c = [0.0; 3];
            for &i in &seed {
                for k in 0..3 {
                    c[k] += points[i][k] / 4.0;
                }
            }
            c
        };

        let mut faces: Vec<Face> = Vec::new();
        let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
        let [a, b, c, d] = seed;
        for tri in [[a, b, c], [a, b, d], [a, c, d], [b, c, d]] {
            let tri = if orient(&points, tri[0], tri[1], tri[2], &interior) > 0.0 {
                tri
            } else {
                [tri[0], tri[2], tri[1]]
            };
            push_face(&mut faces, &mut edges, tri);
        }

        let mut order: Vec<usize> = (0..points.len()).filter(|i| !seed.contains(i)).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(0x4a11));

        let mut alive: Vec<usize> = (0..faces.len()).collect();
        for p in order {
            let visible: Vec<usize> = alive
                .iter()
                .copied()
                .filter(|&fi| {
                    let v = faces[fi].v;
                    orient(&points, v[0], v[1], v[2], &points[p]) < 0.0
                })
                .collect();
            if visible.is_empty() {
                continue;
            }
            let mut horizon = Vec::new();
            for &fi in &visible {
                let v = faces[fi].v;
                for (u, w) in [(v[0], v[1]), (v[1], v[2]), (v[2], v[0])] {
                    let twin = edges[&(w, u)];
                    let twin_visible = orient(
                        &points,
                        faces[twin].v[0],
                        faces[twin].v[1],
                        faces[twin].v[2],
                        &points[p],
                    ) < 0.0;
                    if !twin_visible {
                        horizon.push((u, w));
                    }
                }
            }
            for &fi in &visible {
                let v = faces[fi].v;
                faces[fi].alive = false;
                for e in [(v[0], v[1]), (v[1], v[2]), (v[2], v[0])] {
                    edges.remove(&e);
                }
            }
            alive.retain(|&fi| faces[fi].alive);
            for (u, w) in horizon {
                alive.push(faces.len());
                push_face(&mut faces, &mut edges, [u, w, p]);
            }
        }

        Ok(Self {
            faces: faces.iter().filter(|f| f.alive).map(|f| f.v).collect(),
            points,
        })
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    /// Outward (unnormalized) normal of face `f`.
    pub fn normal(&self, f: usize) -> [f64; 3] {
        let [a, b, c] = self.faces[f].map(|i| self.points[i]);
        let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        // orient3d > 0 for interior points means (b−a)×(c−a) points away
        // from the interior.
        [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ]
    }
}

fn push_face(faces: &mut Vec<Face>, edges: &mut HashMap<(usize, usize), usize>, v: [usize; 3]) {
    let id = faces.len();
    faces.push(Face { v, alive: true });
    for e in [(v[0], v[1]), (v[1], v[2]), (v[2], v[0])] {
        edges.insert(e, id);
    }
}

fn initial_tetrahedron(pts: &[[f64; 3]]) -> Result<[usize; 4]> {
    let dist2 = |a: &[f64; 3], b: &[f64; 3]| (0..3).map(|k| (a[k] - b[k]).powi(2)).sum::<f64>();
    let a = 0;
    let b = (0..pts.len())
        .max_by(|&i, &j| dist2(&pts[a], &pts[i]).total_cmp(&dist2(&pts[a], &pts[j])))
        .unwrap();
    let area = |i: usize| {
        let u: Vec<f64> = (0..3).map(|k| pts[b][k] - pts[a][k]).collect();
        let v: Vec<f64> = (0..3).map(|k| pts[i][k] - pts[a][k]).collect();
        let cx = u[1] * v[2] - u[2] * v[1];
        let cy = u[2] * v[0] - u[0] * v[2];
        let cz = u[0] * v[1] - u[1] * v[0];
        cx * cx + cy * cy + cz * cz
    };
    let c = (0..pts.len()).max_by(|&i, &j| area(i).total_cmp(&area(j))).unwrap();
    if area(c) == 0.0 {
        return Err(Error::DegenerateHull("all points collinear"));
    }
    let d = (0..pts.len())
        .max_by(|&i, &j| {
            orient(pts, a, b, c, &pts[i])
                .abs()
                .total_cmp(&orient(pts, a, b, c, &pts[j]).abs())
        })
        .unwrap();
    if orient(pts, a, b, c, &pts[d]) == 0.0 {
        return Err(Error::DegenerateHull("all points coplanar"));
    }
    Ok([a, b, c, d])
}

/// Lower convex envelope of samples `z = f(x, y)`, as the upper envelope of
/// the planes through the hull's downward-facing facets.
#[derive(Debug, Clone)]
pub struct LowerEnvelope {
    /// `(p, q, c)` with `z = p x + q y + c`.
    planes: Vec<[f64; 3]>,
}

impl LowerEnvelope {
    pub fn from_samples(samples: &[[f64; 3]], seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let jittered: Vec<[f64; 3]> = samples
            .iter()
            .map(|p| {
                [
                    p[0] + rng.gen_range(-JITTER..JITTER),
                    p[1] + rng.gen_range(-JITTER..JITTER),
                    p[2],
                ]
            })
            .collect();
        let hull = ConvexHull3::build(jittered)?;
        let mut planes = Vec::new();
        for f in 0..hull.faces().len() {
            let n = hull.normal(f);
            if n[2] >= 0.0 {
                continue;
            }
            let (p, q) = (-n[0] / n[2], -n[1] / n[2]);
            if p.abs() > MAX_SLOPE || q.abs() > MAX_SLOPE {
                continue;
            }
            let a = hull.points()[hull.faces()[f][0]];
            planes.push([p, q, a[2] - p * a[0] - q * a[1]]);
        }
        if planes.is_empty() {
            return Err(Error::DegenerateHull("no lower facets"));
        }
        Ok(Self { planes })
    }

    pub fn n_facets(&self) -> usize {
        self.planes.len()
    }

    /// Envelope value at `(x, y)`; meaningful inside the samples' footprint.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.planes
            .iter()
            .map(|[p, q, c]| p * x + q * y + c)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}
