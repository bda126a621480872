//! Geodesic two-point boundary value problem on the bilinear patch
//! x(u,v) = (u, v, u*v).
//!
//! The first fundamental form is E = 1 + v^2, F = u*v, G = 1 + u^2, and the
//! Euler-Lagrange equations for an affinely parametrized geodesic reduce to
//!
//! ```text
//! u'' + (2v / (1 + u^2 + v^2)) u' v' = 0
//! v'' + (2u / (1 + u^2 + v^2)) u' v' = 0
//! ```
//!
//! which we discretize with second-order central differences on a uniform
//! grid and solve by damped Newton iteration. The Jacobian is banded
//! (each interior node couples only to its neighbours), so the Newton step
//! uses a banded LU with partial pivoting.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Parameters (u, v) of a point on the patch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceParamPoint {
    pub u: f64,
    pub v: f64,
}

impl SurfaceParamPoint {
    pub fn new(u: f64, v: f64) -> Self {
        SurfaceParamPoint { u, v }
    }

    /// Embedding into R^3.
    pub fn embed(&self) -> [f64; 3] {
        [self.u, self.v, self.u * self.v]
    }
}

/// First fundamental form coefficients (E, F, G) at a parameter point.
pub fn first_fundamental_form(q: &SurfaceParamPoint) -> (f64, f64, f64) {
    (1.0 + q.v * q.v, q.u * q.v, 1.0 + q.u * q.u)
}

/// A solved (or best-effort) geodesic boundary value problem.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeodesicSolution {
    /// Collocation nodes from the first boundary point to the second.
    pub nodes: Vec<SurfaceParamPoint>,
    /// Max-norm of the discretized ODE residual at the nodes.
    pub residual: f64,
    /// Arc length of the node polyline under the surface metric.
    pub length: f64,
}

/// Metric length of a polyline in parameter space, first fundamental form
/// evaluated at segment midpoints.
pub fn polyline_length(nodes: &[SurfaceParamPoint]) -> f64 {
    let mut total = 0.0;
    for pair in nodes.windows(2) {
        let du = pair[1].u - pair[0].u;
        let dv = pair[1].v - pair[0].v;
        let mid = SurfaceParamPoint::new(
            0.5 * (pair[0].u + pair[1].u),
            0.5 * (pair[0].v + pair[1].v),
        );
        let (e, f, g) = first_fundamental_form(&mid);
        total += (e * du * du + 2.0 * f * du * dv + g * dv * dv).sqrt();
    }
    total
}

const NEWTON_MAX_ITER: usize = 200;
const NEWTON_MAX_HALVINGS: usize = 30;
const RESIDUAL_TARGET: f64 = 1e-10;

/// Residual of the discretized system. `u` and `v` hold all nodes including
/// the boundary; output has two entries per interior node.
fn residual_vec(u: &[f64], v: &[f64], h: f64, out: &mut [f64]) {
    let n = u.len();
    let h2 = h * h;
    for j in 1..n - 1 {
        let c = 1.0 + u[j] * u[j] + v[j] * v[j];
        let up = (u[j + 1] - u[j - 1]) / (2.0 * h);
        let vp = (v[j + 1] - v[j - 1]) / (2.0 * h);
        let second_u = (u[j + 1] - 2.0 * u[j] + u[j - 1]) / h2;
        let second_v = (v[j + 1] - 2.0 * v[j] + v[j - 1]) / h2;
        out[2 * (j - 1)] = second_u + 2.0 * v[j] / c * up * vp;
        out[2 * (j - 1) + 1] = second_v + 2.0 * u[j] / c * up * vp;
    }
}

fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0f64, |m, &a| m.max(a.abs()))
}

/// Banded matrix with `kl` sub- and `ku` super-diagonals, plus room for the
/// fill-in produced by partial pivoting. LAPACK-style column storage.
struct Banded {
    n: usize,
    kl: usize,
    ku: usize,
    /// entry (i, j) lives at data[(kl + ku + i - j) + j * ldab]
    data: Vec<f64>,
    ldab: usize,
}

impl Banded {
    fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let ldab = 2 * kl + ku + 1;
        Banded {
            n,
            kl,
            ku,
            data: vec![0.0; ldab * n],
            ldab,
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        self.kl + self.ku + i - j + j * self.ldab
    }

    fn set(&mut self, i: usize, j: usize, value: f64) {
        let at = self.idx(i, j);
        self.data[at] = value;
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        self.data[self.idx(i, j)]
    }

    /// Solve A x = b in place by Gaussian elimination with partial pivoting.
    /// Pivoting can fill columns up to kl + ku right of the diagonal; the
    /// storage already reserves them.
    fn solve(mut self, b: &mut [f64]) -> Result<()> {
        let n = self.n;
        for k in 0..n {
            let row_end = (k + self.kl).min(n - 1);
            let mut pivot_row = k;
            let mut pivot_val = self.get(k, k).abs();
            for i in k + 1..=row_end {
                let a = self.get(i, k).abs();
                if a > pivot_val {
                    pivot_val = a;
                    pivot_row = i;
                }
            }
            if pivot_val == 0.0 {
                return Err(Error::InvalidInput(
                    "singular Jacobian in BVP Newton step".into(),
                ));
            }
            let col_end = (k + self.kl + self.ku).min(n - 1);
            if pivot_row != k {
                for j in k..=col_end {
                    let a = self.get(k, j);
                    let b2 = self.get(pivot_row, j);
                    self.set(k, j, b2);
                    self.set(pivot_row, j, a);
                }
                b.swap(k, pivot_row);
            }
            let diag = self.get(k, k);
            for i in k + 1..=row_end {
                let m = self.get(i, k) / diag;
                if m != 0.0 {
                    for j in k + 1..=col_end {
                        let v = self.get(i, j) - m * self.get(k, j);
                        self.set(i, j, v);
                    }
                    b[i] -= m * b[k];
                }
            }
        }
        for k in (0..n).rev() {
            let col_end = (k + self.kl + self.ku).min(n - 1);
            let mut s = b[k];
            for j in k + 1..=col_end {
                s -= self.get(k, j) * b[j];
            }
            b[k] = s / self.get(k, k);
        }
        Ok(())
    }
}

/// Fill the banded Jacobian of the residual at the current iterate.
/// Unknowns are interleaved: x = (u_1, v_1, ..., u_{n-2}, v_{n-2}).
fn jacobian(u: &[f64], v: &[f64], h: f64) -> Banded {
    let n = u.len();
    let m = 2 * (n - 2);
    let mut jac = Banded::zeros(m, 3, 3);
    let h2 = h * h;
    for j in 1..n - 1 {
        let c = 1.0 + u[j] * u[j] + v[j] * v[j];
        let up = (u[j + 1] - u[j - 1]) / (2.0 * h);
        let vp = (v[j + 1] - v[j - 1]) / (2.0 * h);
        let row_u = 2 * (j - 1);
        let row_v = row_u + 1;
        // column indices of the six coupled unknowns (boundary nodes are
        // fixed, so j = 1 and j = n-2 drop the out-of-range columns)
        let col_u = |jj: usize| 2 * (jj - 1);
        let col_v = |jj: usize| 2 * (jj - 1) + 1;

        // dF_u rows
        if j > 1 {
            jac.set(row_u, col_u(j - 1), 1.0 / h2 - (2.0 * v[j] / c) * vp / (2.0 * h));
            jac.set(row_u, col_v(j - 1), -(2.0 * v[j] / c) * up / (2.0 * h));
        }
        jac.set(
            row_u,
            col_u(j),
            -2.0 / h2 + up * vp * 2.0 * v[j] * (-2.0 * u[j] / (c * c)),
        );
        jac.set(
            row_u,
            col_v(j),
            up * vp * (2.0 / c) * (1.0 - 2.0 * v[j] * v[j] / c),
        );
        if j < n - 2 {
            jac.set(row_u, col_u(j + 1), 1.0 / h2 + (2.0 * v[j] / c) * vp / (2.0 * h));
            jac.set(row_u, col_v(j + 1), (2.0 * v[j] / c) * up / (2.0 * h));
        }

        // dF_v rows (swap roles of u and v)
        if j > 1 {
            jac.set(row_v, col_v(j - 1), 1.0 / h2 - (2.0 * u[j] / c) * up / (2.0 * h));
            jac.set(row_v, col_u(j - 1), -(2.0 * u[j] / c) * vp / (2.0 * h));
        }
        jac.set(
            row_v,
            col_v(j),
            -2.0 / h2 + up * vp * 2.0 * u[j] * (-2.0 * v[j] / (c * c)),
        );
        jac.set(
            row_v,
            col_u(j),
            up * vp * (2.0 / c) * (1.0 - 2.0 * u[j] * u[j] / c),
        );
        if j < n - 2 {
            jac.set(row_v, col_v(j + 1), 1.0 / h2 + (2.0 * u[j] / c) * up / (2.0 * h));
            jac.set(row_v, col_u(j + 1), (2.0 * u[j] / c) * vp / (2.0 * h));
        }
    }
    jac
}

/// Solve the geodesic BVP between `p0` and `p1` with `n_nodes` collocation
/// nodes. The initial guess is the straight parameter line; Newton steps are
/// damped by halving until the residual decreases.
pub fn bilinear_geodesic_bvp(
    p0: &SurfaceParamPoint,
    p1: &SurfaceParamPoint,
    n_nodes: usize,
) -> Result<GeodesicSolution> {
    if (p0.u - p1.u).abs() < 1e-15 && (p0.v - p1.v).abs() < 1e-15 {
        return Ok(GeodesicSolution {
            nodes: vec![*p0],
            residual: 0.0,
            length: 0.0,
        });
    }
    if n_nodes < 10 {
        return Err(Error::TooFewNodes {
            needed: 10,
            got: n_nodes,
        });
    }

    let n = n_nodes;
    let h = 1.0 / (n as f64 - 1.0);
    let mut u: Vec<f64> = (0..n)
        .map(|j| p0.u + (p1.u - p0.u) * (j as f64) * h)
        .collect();
    let mut v: Vec<f64> = (0..n)
        .map(|j| p0.v + (p1.v - p0.v) * (j as f64) * h)
        .collect();
    // exact boundary values regardless of rounding in the ramp
    u[0] = p0.u;
    v[0] = p0.v;
    u[n - 1] = p1.u;
    v[n - 1] = p1.v;

    let m = 2 * (n - 2);
    let mut res = vec![0.0; m];
    residual_vec(&u, &v, h, &mut res);
    let mut res_norm = max_abs(&res);

    let mut iterations = 0;
    while res_norm > RESIDUAL_TARGET && iterations < NEWTON_MAX_ITER {
        iterations += 1;
        let jac = jacobian(&u, &v, h);
        let mut step: Vec<f64> = res.iter().map(|r| -r).collect();
        jac.solve(&mut step)?;

        let mut scale = 1.0;
        let mut accepted = false;
        let mut trial_u = u.clone();
        let mut trial_v = v.clone();
        let mut trial_res = vec![0.0; m];
        for _ in 0..=NEWTON_MAX_HALVINGS {
            for j in 1..n - 1 {
                trial_u[j] = u[j] + scale * step[2 * (j - 1)];
                trial_v[j] = v[j] + scale * step[2 * (j - 1) + 1];
            }
            residual_vec(&trial_u, &trial_v, h, &mut trial_res);
            let trial_norm = max_abs(&trial_res);
            if trial_norm < res_norm {
                u.copy_from_slice(&trial_u);
                v.copy_from_slice(&trial_v);
                res.copy_from_slice(&trial_res);
                res_norm = trial_norm;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if !accepted {
            break; // stalled; report the best iterate
        }
    }

    let nodes: Vec<SurfaceParamPoint> = u
        .iter()
        .zip(v.iter())
        .map(|(&uu, &vv)| SurfaceParamPoint::new(uu, vv))
        .collect();
    let length = polyline_length(&nodes);
    let solution = GeodesicSolution {
        nodes,
        residual: res_norm,
        length,
    };
    if res_norm > 1e-8 {
        return Err(Error::NoConvergence {
            residual: res_norm,
            iterations,
            best: Box::new(solution),
        });
    }
    Ok(solution)
}
