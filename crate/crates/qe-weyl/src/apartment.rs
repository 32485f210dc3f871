//! The S₃ action on the apartment and the continuous ball-intersection test.

use crate::WeylVector;
use qe_polytope::Q;

/// A permutation of `{0, 1, 2}`, acting by `(sigma.y)_i = y_{sigma[i]}`.
pub type S3 = [usize; 3];

pub const S3_ELEMENTS: [S3; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

pub fn s3_act(sigma: &S3, v: &WeylVector) -> WeylVector {
    let y = v.partition();
    WeylVector::from_partition([y[sigma[0]], y[sigma[1]], y[sigma[2]]])
}

/// Distinct 𝔞-points of the orbit, sorted.
pub fn s3_orbit(v: &WeylVector) -> Vec<[Q; 3]> {
    let mut out: Vec<[Q; 3]> = S3_ELEMENTS.iter().map(|s| s3_act(s, v).frak()).collect();
    out.sort();
    out.dedup();
    out
}

/// Matrix of the linear map `x -> sigma.x` in cone coordinates.
fn matrix(sigma: &S3) -> [[i64; 2]; 2] {
    let a = s3_act(sigma, &WeylVector::new(1, 0));
    let b = s3_act(sigma, &WeylVector::new(0, 1));
    [[a.r, b.r], [a.s, b.s]]
}

fn inverse(sigma: &S3) -> S3 {
    let mut inv = [0; 3];
    for (i, &j) in sigma.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Integer half-plane `a . y <= b` in cone coordinates.
type HalfPlane = ([i64; 2], i64);

/// `P_m` in cone coordinates.
fn pm_halfplanes(m: i64) -> [HalfPlane; 3] {
    [([-1, 0], 0), ([0, -1], 0), ([1, 2], 2 * m)]
}

/// Half-planes of `v + sigma(P_m)`.
fn image_halfplanes(sigma: &S3, v: &WeylVector, m: i64) -> Vec<HalfPlane> {
    let mi = matrix(&inverse(sigma));
    pm_halfplanes(m)
        .iter()
        .map(|(a, b)| {
            let c = [a[0] * mi[0][0] + a[1] * mi[1][0], a[0] * mi[0][1] + a[1] * mi[1][1]];
            (c, b + c[0] * v.r + c[1] * v.s)
        })
        .collect()
}

/// Exact feasibility of a bounded system of half-planes: a bounded nonempty
/// region has a vertex, so it suffices to test pairwise line intersections.
fn feasible(h: &[HalfPlane]) -> bool {
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            let (a, b) = (h[i].0, h[j].0);
            let det = a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128;
            if det == 0 {
                continue;
            }
            let (bi, bj) = (h[i].1 as i128, h[j].1 as i128);
            let xn = bi * b[1] as i128 - a[1] as i128 * bj;
            let yn = a[0] as i128 * bj - bi * b[0] as i128;
            // point = (xn, yn) / det; check c . point <= d  <=>  c.(xn,yn) <= d det (det > 0)
            let ok = h.iter().all(|(c, d)| {
                let lhs = c[0] as i128 * xn + c[1] as i128 * yn;
                let rhs = *d as i128 * det;
                if det > 0 {
                    lhs <= rhs
                } else {
                    lhs >= rhs
                }
            });
            if ok {
                return true;
            }
        }
    }
    false
}

/// Whether the balls `W.P_m` around `0` and around `v` in the apartment meet
/// (over real points). The ball of shape `P_m` about `y` is `y + W.P_m`.
pub fn apartment_ball_intersection(v: &WeylVector, m: i64) -> bool {
    let origin = WeylVector::ZERO;
    for s in &S3_ELEMENTS {
        let a = image_halfplanes(s, &origin, m);
        for t in &S3_ELEMENTS {
            let mut sys = a.clone();
            sys.extend(image_halfplanes(t, v, m));
            if feasible(&sys) {
                return true;
            }
        }
    }
    false
}
