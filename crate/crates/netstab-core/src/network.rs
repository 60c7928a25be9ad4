//! Directed networks as dense adjacency matrices, their Laplacians and
//! spectra.
//!
//! Orientation convention: `A[i][j]` is the weight of the edge from node `j`
//! into node `i`, so row `i` collects everything arriving at `i` and the
//! in-degree Laplacian `L = A - diag(in-strength)` has exact zero row sums.
//! Directed Laplacians generally have complex spectra; by Gershgorin every
//! eigenvalue has nonpositive real part (up to roundoff).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigen::{self, EigenError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NetworkError {
    #[error("network must have at least {min} nodes, got {n}")]
    TooFewNodes { n: usize, min: usize },
    #[error("data length {len} does not match {n}x{n}")]
    ShapeMismatch { n: usize, len: usize },
    #[error("edge weights must be finite and nonnegative, got {weight}")]
    InvalidWeight { weight: f64 },
    #[error("self-loop on node {node} is not allowed")]
    SelfLoop { node: usize },
    #[error("node index {index} out of range for {n} nodes")]
    NodeOutOfRange { index: usize, n: usize },
    #[error("ring degree must satisfy 1 <= k < n, got k = {k} with n = {n}")]
    InvalidRingDegree { k: usize, n: usize },
    #[error("shortcut probability must lie in [0, 1], got {p}")]
    InvalidProbability { p: f64 },
}

/// Weighted directed adjacency matrix with nonnegative entries and a zero
/// diagonal. `weight(into, from)` follows the row convention above.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix {
    n: usize,
    w: Vec<f64>,
}

impl AdjacencyMatrix {
    pub fn zeros(n: usize) -> Result<Self, NetworkError> {
        if n == 0 {
            return Err(NetworkError::TooFewNodes { n, min: 1 });
        }
        Ok(AdjacencyMatrix {
            n,
            w: vec![0.0; n * n],
        })
    }

    /// Builds from a row-major weight matrix, validating shape, sign,
    /// finiteness and the zero diagonal.
    pub fn from_rows(n: usize, rows: Vec<f64>) -> Result<Self, NetworkError> {
        if n == 0 {
            return Err(NetworkError::TooFewNodes { n, min: 1 });
        }
        if rows.len() != n * n {
            return Err(NetworkError::ShapeMismatch { n, len: rows.len() });
        }
        for (pos, &x) in rows.iter().enumerate() {
            if !x.is_finite() || x < 0.0 {
                return Err(NetworkError::InvalidWeight { weight: x });
            }
            if pos / n == pos % n && x != 0.0 {
                return Err(NetworkError::SelfLoop { node: pos / n });
            }
        }
        Ok(AdjacencyMatrix { n, w: rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Weight of the edge `from -> into` (zero when absent).
    pub fn weight(&self, into: usize, from: usize) -> f64 {
        self.w[into * self.n + from]
    }

    /// Inserts (or overwrites) the edge `src -> dst` with the given weight.
    pub fn add_edge(&mut self, src: usize, dst: usize, weight: f64) -> Result<(), NetworkError> {
        if src >= self.n {
            return Err(NetworkError::NodeOutOfRange {
                index: src,
                n: self.n,
            });
        }
        if dst >= self.n {
            return Err(NetworkError::NodeOutOfRange {
                index: dst,
                n: self.n,
            });
        }
        if src == dst {
            return Err(NetworkError::SelfLoop { node: src });
        }
        if !weight.is_finite() || weight < 0.0 {
            return Err(NetworkError::InvalidWeight { weight });
        }
        self.w[dst * self.n + src] = weight;
        Ok(())
    }

    /// True when an edge `src -> dst` is present with nonzero weight.
    pub fn has_edge(&self, src: usize, dst: usize) -> bool {
        self.w[dst * self.n + src] != 0.0
    }

    /// All edges as `(src, dst, weight)` sorted by source then destination.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for src in 0..self.n {
            for dst in 0..self.n {
                let w = self.w[dst * self.n + src];
                if w != 0.0 {
                    out.push((src, dst, w));
                }
            }
        }
        out
    }

    /// Total weight arriving at `node` (the weighted in-degree).
    pub fn in_strength(&self, node: usize) -> f64 {
        self.w[node * self.n..(node + 1) * self.n].iter().sum()
    }

    pub fn rows(&self) -> &[f64] {
        &self.w
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in 0..i {
                if self.w[i * self.n + j] != self.w[j * self.n + i] {
                    return false;
                }
            }
        }
        true
    }
}

/// Replaces every directed edge pair by its average: `(A + A^T) / 2`.
pub fn symmetrize(a: &AdjacencyMatrix) -> AdjacencyMatrix {
    let n = a.n;
    let mut w = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            w[i * n + j] = 0.5 * (a.w[i * n + j] + a.w[j * n + i]);
        }
    }
    AdjacencyMatrix { n, w }
}

/// In-degree Laplacian `L = A - diag(in-strength)`. Row sums are exactly
/// zero by construction: the diagonal is the negated sum of its own row's
/// off-diagonal entries, accumulated in the same order `row_sum_residual`
/// re-reads them.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedLaplacian {
    n: usize,
    l: Vec<f64>,
}

pub fn directed_laplacian(a: &AdjacencyMatrix) -> DirectedLaplacian {
    let n = a.n;
    let mut l = a.w.clone();
    for i in 0..n {
        let mut strength = 0.0;
        for j in 0..n {
            if j != i {
                strength += l[i * n + j];
            }
        }
        l[i * n + i] = -strength;
    }
    DirectedLaplacian { n, l }
}

impl DirectedLaplacian {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.l[i * self.n + j]
    }

    pub fn rows(&self) -> &[f64] {
        &self.l
    }

    /// Largest |diagonal| entry; a cheap bound on the spectral radius used
    /// for time-step heuristics.
    pub fn max_diagonal_magnitude(&self) -> f64 {
        (0..self.n)
            .map(|i| self.l[i * self.n + i].abs())
            .fold(0.0, f64::max)
    }

    /// Dense matrix-vector product `out = L x`.
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        assert_eq!(x.len(), self.n, "input length must match node count");
        assert_eq!(out.len(), self.n, "output length must match node count");
        for i in 0..self.n {
            let row = &self.l[i * self.n..(i + 1) * self.n];
            let mut acc = 0.0;
            for (lij, xj) in row.iter().zip(x.iter()) {
                acc += lij * xj;
            }
            out[i] = acc;
        }
    }
}

/// Laplacian eigenvalues sorted by descending real part, ties broken by
/// descending imaginary part. For a connected network the first entry is the
/// zero mode (up to roundoff) and every real part is nonpositive.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianSpectrum {
    eigs: Vec<Complex64>,
}

impl LaplacianSpectrum {
    pub fn from_eigenvalues(mut eigs: Vec<Complex64>) -> Self {
        eigs.sort_by(|p, q| q.re.total_cmp(&p.re).then(q.im.total_cmp(&p.im)));
        LaplacianSpectrum { eigs }
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigs
    }

    pub fn len(&self) -> usize {
        self.eigs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigs.is_empty()
    }
}

pub fn spectrum(l: &DirectedLaplacian) -> Result<LaplacianSpectrum, EigenError> {
    let eigs = eigen::eigenvalues(l.n, &l.l)?;
    Ok(LaplacianSpectrum::from_eigenvalues(eigs))
}

/// Directed Newman-Watts network: every node sends one edge to each of its
/// `k` clockwise ring neighbours, then each ordered non-ring pair gains a
/// shortcut independently with probability `p`. Connected by the ring alone;
/// with `p = 1` the graph is complete. Deterministic in `seed`.
pub fn newman_watts_directed(
    n: usize,
    k: usize,
    p: f64,
    seed: u64,
) -> Result<AdjacencyMatrix, NetworkError> {
    if n < 3 {
        return Err(NetworkError::TooFewNodes { n, min: 3 });
    }
    if k == 0 || k >= n {
        return Err(NetworkError::InvalidRingDegree { k, n });
    }
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(NetworkError::InvalidProbability { p });
    }

    let mut a = AdjacencyMatrix::zeros(n)?;
    for u in 0..n {
        for m in 1..=k {
            a.add_edge(u, (u + m) % n, 1.0)?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for src in 0..n {
        for dst in 0..n {
            if dst == src {
                continue;
            }
            let offset = (dst + n - src) % n;
            if offset <= k {
                continue;
            }
            if rng.gen::<f64>() < p {
                a.add_edge(src, dst, 1.0)?;
            }
        }
    }
    Ok(a)
}
