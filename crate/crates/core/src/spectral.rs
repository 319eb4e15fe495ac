//! Classical spectral gap `lambda(G, R)`: the second-smallest eigenvalue of
//! the normalized Laplacian `I - D^-1/2 A D^-1/2`.

use serde::Serialize;

use crate::graph::Graph;

/// Off-diagonal Frobenius norm at which Jacobi sweeps stop.
pub const JACOBI_TOLERANCE: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SpectralError {
    #[error("graph needs at least two vertices, got {0}")]
    TooSmall(usize),
    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("denominator is zero: values are constant on the non-isolated vertices")]
    ZeroDenominator,
}

/// Dense symmetric matrix stored row-major; symmetry is kept by `set`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    }
}

/// `I - D^-1/2 A D^-1/2`, with `D^-1/2` taken as 0 on isolated vertices, so
/// their rows and columns are all zero.
pub fn normalized_laplacian(g: &Graph) -> SymmetricMatrix {
    let n = g.n();
    let inv_sqrt: Vec<f64> = g
        .degrees()
        .into_iter()
        .map(|d| if d == 0 { 0.0 } else { 1.0 / (d as f64).sqrt() })
        .collect();
    let mut m = SymmetricMatrix::zeros(n);
    for v in 0..n {
        if g.degree(v) > 0 {
            m.set(v, v, 1.0);
        }
    }
    for &(u, v) in g.edges() {
        m.set(u, v, -inv_sqrt[u] * inv_sqrt[v]);
    }
    m
}

/// Eigenpairs of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct Eigen {
    /// ascending
    pub values: Vec<f64>,
    /// `vectors[i]` belongs to `values[i]`, unit length
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

/// Cyclic Jacobi rotations until the off-diagonal norm drops below
/// [`JACOBI_TOLERANCE`].
pub fn jacobi_eigen(matrix: &SymmetricMatrix) -> Result<Eigen, SpectralError> {
    let n = matrix.order();
    let mut a = matrix.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let mut sweeps = 0;
    while a.off_diagonal_norm() >= JACOBI_TOLERANCE {
        if sweeps == MAX_SWEEPS {
            return Err(SpectralError::NoConvergence {
                sweeps,
                off_norm: a.off_diagonal_norm(),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a.get(p, p), a.get(q, q));
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r != p && r != q {
                        let (arp, arq) = (a.get(r, p), a.get(r, q));
                        a.set(r, p, c * arp - s * arq);
                        a.set(r, q, s * arp + c * arq);
                    }
                }
                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                for r in 0..n {
                    let (vrp, vrq) = (v[r * n + p], v[r * n + q]);
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    Ok(Eigen {
        values: order.iter().map(|&i| a.get(i, i)).collect(),
        vectors: order
            .iter()
            .map(|&col| (0..n).map(|r| v[r * n + col]).collect())
            .collect(),
        sweeps,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralResult {
    pub eigenvalues: Vec<f64>,
    /// second-smallest eigenvalue, or 0 when the graph is disconnected
    pub lambda1: f64,
    /// `max_i ||L v_i - mu_i v_i||_inf`
    pub residual: f64,
    pub trace: f64,
    pub sweeps: usize,
}

/// Full normalized-Laplacian spectrum and `lambda(G, R)`.
pub fn lambda_r(g: &Graph) -> Result<SpectralResult, SpectralError> {
    if g.n() < 2 {
        return Err(SpectralError::TooSmall(g.n()));
    }
    let lap = normalized_laplacian(g);
    let eig = jacobi_eigen(&lap)?;
    let residual = eig
        .values
        .iter()
        .zip(&eig.vectors)
        .map(|(&mu, vec)| {
            lap.mul_vec(vec)
                .iter()
                .zip(vec)
                .map(|(lv, x)| (lv - mu * x).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let lambda1 = if g.is_connected() { eig.values[1] } else { 0.0 };
    Ok(SpectralResult {
        lambda1,
        residual,
        trace: lap.trace(),
        sweeps: eig.sweeps,
        eigenvalues: eig.values,
    })
}

/// Real-valued Rayleigh quotient
/// `vol(G) sum_{u~v} (x_u - x_v)^2 / sum_{ {u,v} } (x_u - x_v)^2 d_u d_v`.
pub fn rayleigh_r(g: &Graph, values: &[f64]) -> Result<f64, SpectralError> {
    if values.len() != g.n() {
        return Err(SpectralError::LengthMismatch {
            expected: g.n(),
            got: values.len(),
        });
    }
    let num: f64 = g
        .edges()
        .iter()
        .map(|&(u, v)| (values[u] - values[v]).powi(2))
        .sum();
    let deg = g.degrees();
    let mut den = 0.0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            den += (values[u] - values[v]).powi(2) * (deg[u] * deg[v]) as f64;
        }
    }
    if den == 0.0 {
        return Err(SpectralError::ZeroDenominator);
    }
    Ok(g.volume() as f64 * num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, path, Family};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn k2_laplacian() {
        let l = normalized_laplacian(&complete(2));
        assert_eq!(l.get(0, 0), 1.0);
        assert_eq!(l.get(0, 1), -1.0);
        assert_eq!(l.get(1, 0), -1.0);
        assert_eq!(l.get(1, 1), 1.0);
    }

    #[test]
    fn isolated_vertex_row_is_zero() {
        let g = complete(2).disjoint_union(&Graph::empty(1));
        let l = normalized_laplacian(&g);
        for j in 0..3 {
            assert_eq!(l.get(2, j), 0.0);
            assert_eq!(l.get(j, 2), 0.0);
        }
    }

    #[test]
    fn path_laplacian_entries() {
        let l = normalized_laplacian(&path(3));
        let e = -1.0 / 2f64.sqrt();
        assert!((l.get(0, 1) - e).abs() < 1e-15);
        assert!((l.get(1, 2) - e).abs() < 1e-15);
        assert_eq!(l.get(0, 2), 0.0);
    }

    #[test]
    fn complete_graph_gap() {
        for n in 3..=8 {
            let r = lambda_r(&complete(n)).unwrap();
            let expect = n as f64 / (n as f64 - 1.0);
            assert!((r.lambda1 - expect).abs() < 1e-9, "n={n}: {}", r.lambda1);
            assert!(r.residual < 1e-9);
        }
    }

    #[test]
    fn path_three_gap_is_one() {
        // characteristic polynomial of the 3x3 matrix: mu (mu - 1) (mu - 2)
        let r = lambda_r(&path(3)).unwrap();
        assert!((r.lambda1 - 1.0).abs() < 1e-9);
        for (got, want) in r.eigenvalues.iter().zip([0.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn disconnected_graph_reports_zero() {
        let g = complete(3).disjoint_union(&complete(2));
        assert_eq!(lambda_r(&g).unwrap().lambda1, 0.0);
        assert_eq!(
            lambda_r(&Graph::empty(1)).unwrap_err(),
            SpectralError::TooSmall(1)
        );
    }

    #[test]
    fn spectrum_bounds_and_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(2..=12);
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(0.4))
                .collect();
            let g = Graph::new(n, edges).unwrap();
            let r = lambda_r(&g).unwrap();
            let non_isolated = (0..n).filter(|&v| g.degree(v) > 0).count() as f64;
            let sum: f64 = r.eigenvalues.iter().sum();
            assert!((sum - non_isolated).abs() < 1e-8);
            assert!((sum - r.trace).abs() < 1e-8);
            assert!(r.eigenvalues[0].abs() < 1e-9);
            assert!(r
                .eigenvalues
                .iter()
                .all(|&x| (-1e-9..=2.0 + 1e-9).contains(&x)));
        }
    }

    #[test]
    fn rayleigh_on_triangle() {
        let r = rayleigh_r(&complete(3), &[0.0, 0.0, 1.0]).unwrap();
        assert!((r - 1.5).abs() < 1e-15);
        assert_eq!(
            rayleigh_r(&complete(3), &[2.0, 2.0, 2.0]),
            Err(SpectralError::ZeroDenominator)
        );
        assert!(matches!(
            rayleigh_r(&complete(3), &[1.0]),
            Err(SpectralError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn rayleigh_dominates_lambda1() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let graphs = [
            path(5),
            Family::Cycle(7).generate().unwrap(),
            Family::Dumbbell(8).generate().unwrap(),
            Family::CompleteBipartite(2, 4).generate().unwrap(),
        ];
        for g in &graphs {
            let l1 = lambda_r(g).unwrap().lambda1;
            for _ in 0..250 {
                let x: Vec<f64> = (0..g.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                assert!(rayleigh_r(g, &x).unwrap() >= l1 - 1e-9);
            }
        }
    }

    #[test]
    fn fiedler_like_vector_attains_lambda1() {
        let g = Family::Dumbbell(8).generate().unwrap();
        let lap = normalized_laplacian(&g);
        let eig = jacobi_eigen(&lap).unwrap();
        // f = D^-1/2 v for the second eigenvector
        let f: Vec<f64> = eig.vectors[1]
            .iter()
            .enumerate()
            .map(|(i, x)| x / (g.degree(i) as f64).sqrt())
            .collect();
        let r = rayleigh_r(&g, &f).unwrap();
        assert!((r - eig.values[1]).abs() < 1e-9);
    }
}
