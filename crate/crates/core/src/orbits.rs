//! Vertex orbits of the automorphism group of a small graph.
//!
//! Used only to prune the exhaustive gap search: the first vertex of `G` is
//! sent to one representative per orbit of `Aut(H)`.

use crate::graph::{apsp, Graph};

/// Largest order for which orbits are computed exactly.
pub const MAX_ORBIT_ORDER: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// `orbit[v]` is the smallest vertex in the orbit of `v`.
    orbit: Vec<usize>,
    exact: bool,
}

impl OrbitPartition {
    pub fn singletons(k: usize) -> Self {
        OrbitPartition {
            orbit: (0..k).collect(),
            exact: false,
        }
    }

    pub fn orbit_of(&self, v: usize) -> usize {
        self.orbit[v]
    }

    /// One vertex per orbit, ascending.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.orbit.len())
            .filter(|&v| self.orbit[v] == v)
            .collect()
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        self.representatives()
            .into_iter()
            .map(|r| {
                (0..self.orbit.len())
                    .filter(|&v| self.orbit[v] == r)
                    .collect()
            })
            .collect()
    }

    /// False when the size limit forced the singleton fallback.
    pub fn is_exact(&self) -> bool {
        self.exact
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        parent[hi] = lo;
    }
}

/// Exact orbits for `k <= MAX_ORBIT_ORDER`; singleton orbits beyond that.
pub fn vertex_orbits(h: &Graph) -> OrbitPartition {
    let k = h.n();
    if k > MAX_ORBIT_ORDER {
        return OrbitPartition::singletons(k);
    }
    let dist = apsp(h);
    // sorted distance rows are an automorphism invariant
    let signature: Vec<Vec<u32>> = (0..k)
        .map(|v| {
            let mut row = dist.row(v).to_vec();
            row.sort_unstable();
            row
        })
        .collect();

    let mut parent: Vec<usize> = (0..k).collect();
    for v in 0..k {
        for r in 0..v {
            if find(&mut parent, r) != r || find(&mut parent, v) == r {
                continue;
            }
            if signature[r] != signature[v] {
                continue;
            }
            if let Some(sigma) = automorphism_mapping(h, &signature, r, v) {
                for (x, &y) in sigma.iter().enumerate() {
                    union(&mut parent, x, y);
                }
            }
        }
    }
    let orbit = (0..k).map(|v| find(&mut parent, v)).collect();
    OrbitPartition { orbit, exact: true }
}

/// Searches for an automorphism sending `from` to `to`.
fn automorphism_mapping(
    h: &Graph,
    signature: &[Vec<u32>],
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    let k = h.n();
    let mut order = vec![from];
    order.extend((0..k).filter(|&v| v != from));
    let mut sigma = vec![usize::MAX; k];
    let mut used = vec![false; k];
    sigma[from] = to;
    used[to] = true;

    fn extend(
        h: &Graph,
        signature: &[Vec<u32>],
        order: &[usize],
        depth: usize,
        sigma: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for cand in 0..h.n() {
            if used[cand] || signature[cand] != signature[v] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&w| h.has_edge(v, w) == h.has_edge(cand, sigma[w]));
            if consistent {
                sigma[v] = cand;
                used[cand] = true;
                if extend(h, signature, order, depth + 1, sigma, used) {
                    return true;
                }
                used[cand] = false;
                sigma[v] = usize::MAX;
            }
        }
        false
    }

    extend(h, signature, &order, 1, &mut sigma, &mut used).then_some(sigma)
}
