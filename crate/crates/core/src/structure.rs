//! Combinatorial structure of a matrix's nonzero pattern: irreducibility,
//! index of imprimitivity, the cyclic normal form and block-shift detection.
//!
//! All operations work on the pattern digraph with an edge `u -> v` wherever
//! `|a_uv| > eps_pattern`. The default threshold is exact zero, which is the
//! right choice for integer fixtures; callers with noisy float input pass an
//! explicit threshold.

use thiserror::Error;

use crate::linalg::{hermitian_part, ComplexMatrix};

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("matrix is not irreducible")]
    NotIrreducible,
    #[error("underlying undirected pattern graph is not connected")]
    NotConnected,
    #[error("matrix has a negative or non-real entry")]
    NotNonnegative,
    #[error("permuted matrix violates the cyclic block pattern (internal error)")]
    PatternViolation,
}

/// Directed graph of structurally nonzero entries.
#[derive(Debug, Clone)]
pub struct PatternDigraph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl PatternDigraph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// BFS distances from `start`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_levels(&self, start: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.n];
        level[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn reverse(&self) -> PatternDigraph {
        let mut adjacency = vec![Vec::new(); self.n];
        let mut edge_count = 0;
        for (u, v) in self.edges() {
            adjacency[v].push(u);
            edge_count += 1;
        }
        PatternDigraph {
            n: self.n,
            adjacency,
            edge_count,
        }
    }

    /// Strong connectivity via forward plus backward reachability from 0.
    pub fn is_strongly_connected(&self) -> bool {
        let all_reached = |levels: &[usize]| levels.iter().all(|&l| l != usize::MAX);
        all_reached(&self.bfs_levels(0)) && all_reached(&self.reverse().bfs_levels(0))
    }
}

/// Pattern digraph of `A` with edges where `|a_uv| > eps_pattern`.
pub fn pattern(a: &ComplexMatrix, eps_pattern: f64) -> PatternDigraph {
    assert!(eps_pattern >= 0.0, "pattern threshold must be nonnegative");
    let n = a.dim();
    let mut adjacency = vec![Vec::new(); n];
    let mut edge_count = 0;
    for u in 0..n {
        for v in 0..n {
            if a.get(u, v).norm() > eps_pattern {
                adjacency[u].push(v);
                edge_count += 1;
            }
        }
    }
    PatternDigraph {
        n,
        adjacency,
        edge_count,
    }
}

/// True when no permutation puts `A` in nontrivial block upper-triangular
/// form; equivalently the pattern digraph is strongly connected. A 1x1
/// matrix is irreducible exactly when its entry is nonzero.
pub fn is_irreducible(a: &ComplexMatrix) -> bool {
    let n = a.dim();
    if n == 1 {
        return a.get(0, 0).norm() > 0.0;
    }
    pattern(a, 0.0).is_strongly_connected()
}

/// Index of imprimitivity (digraph period): the gcd over all edges `u -> v`
/// of `level(u) + 1 - level(v)` with BFS levels from vertex 0.
pub fn imprimitivity_index(a: &ComplexMatrix) -> Result<usize, StructureError> {
    if !is_irreducible(a) {
        return Err(StructureError::NotIrreducible);
    }
    let graph = pattern(a, 0.0);
    if graph.edge_count() == 0 {
        // Only the 1x1 zero matrix gets here, and it is already rejected.
        return Err(StructureError::NotIrreducible);
    }
    let levels = graph.bfs_levels(0);
    let mut g: i64 = 0;
    for (u, v) in graph.edges() {
        let d = levels[u] as i64 + 1 - levels[v] as i64;
        g = gcd(g, d);
    }
    Ok(g.unsigned_abs() as usize)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Cyclic normal form of an irreducible matrix: vertex levels modulo the
/// index of imprimitivity, the permutation grouping levels contiguously and
/// the resulting block sizes.
#[derive(Debug, Clone)]
pub struct CyclicStructure {
    pub irreducible: bool,
    pub q: usize,
    /// Level in `[0, q)` per vertex; every edge advances the level by one
    /// modulo `q`.
    pub levels: Vec<usize>,
    /// Vertex ordering grouping level 0 first, then level 1, and so on.
    pub permutation: Vec<usize>,
    pub block_sizes: Vec<usize>,
    /// True when a grading with no wrap edge exists (never for irreducible
    /// matrices with q > 1, since every cycle wraps).
    pub block_shift: bool,
}

/// Computes the cyclic normal form and verifies the permuted matrix against
/// the cyclic block pattern before returning.
pub fn cyclic_normal_form(a: &ComplexMatrix) -> Result<CyclicStructure, StructureError> {
    let q = imprimitivity_index(a)?;
    let n = a.dim();
    let graph = pattern(a, 0.0);
    let levels: Vec<usize> = graph.bfs_levels(0).iter().map(|&l| l % q).collect();

    let mut permutation: Vec<usize> = (0..n).collect();
    permutation.sort_by_key(|&v| (levels[v], v));
    let block_sizes: Vec<usize> = (0..q)
        .map(|t| levels.iter().filter(|&&l| l == t).count())
        .collect();

    // Every edge must advance the level by one modulo q, i.e. the permuted
    // matrix is nonzero only in the superdiagonal blocks plus the corner.
    for (u, v) in graph.edges() {
        if (levels[u] + 1) % q != levels[v] {
            return Err(StructureError::PatternViolation);
        }
    }

    Ok(CyclicStructure {
        irreducible: true,
        q,
        levels,
        permutation,
        block_sizes,
        block_shift: block_shift_grading(a).is_some(),
    })
}

/// Result of [`phase_similarity_index`]: the largest `q` with `A` diagonally
/// similar to `e^{2 pi i / q} A`, or `Unbounded` when an exact grading exists
/// and every rotation works.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhaseSimilarity {
    Bounded { q: usize, potentials: Vec<i64> },
    Unbounded { potentials: Vec<i64> },
}

impl PhaseSimilarity {
    pub fn potentials(&self) -> &[i64] {
        match self {
            PhaseSimilarity::Bounded { potentials, .. } => potentials,
            PhaseSimilarity::Unbounded { potentials } => potentials,
        }
    }
}

/// Largest positive integer `q` such that a nonnegative `A` is diagonally
/// similar to `e^{2 pi i / q} A`.
///
/// Builds an integer potential over a spanning tree of the undirected
/// pattern graph with `pot(v) = pot(u) + 1` across each directed edge, then
/// takes the gcd of the discrepancies of the remaining edges. No discrepancy
/// at all means an exact grading exists and the similarity holds for every
/// rotation angle. The witness diagonal is `D = diag(e^{i pot(v) 2 pi / q})`.
pub fn phase_similarity_index(a: &ComplexMatrix) -> Result<PhaseSimilarity, StructureError> {
    if !a.is_nonnegative(0.0) {
        return Err(StructureError::NotNonnegative);
    }
    let n = a.dim();
    let graph = pattern(a, 0.0);
    let potentials = grade_component(&graph, 0, n).ok_or(StructureError::NotConnected)?;
    if potentials.iter().any(Option::is_none) {
        return Err(StructureError::NotConnected);
    }
    let potentials: Vec<i64> = potentials.into_iter().map(Option::unwrap).collect();

    let mut g: i64 = 0;
    for (u, v) in graph.edges() {
        g = gcd(g, potentials[u] + 1 - potentials[v]);
    }
    if g == 0 {
        Ok(PhaseSimilarity::Unbounded { potentials })
    } else {
        Ok(PhaseSimilarity::Bounded {
            q: g as usize,
            potentials,
        })
    }
}

/// BFS over the undirected pattern assigning `pot(v) = pot(u) +/- 1` along
/// directed edges; `None` when the component of `start` misses vertices
/// (only relevant when the caller requires connectivity).
fn grade_component(graph: &PatternDigraph, start: usize, n: usize) -> Option<Vec<Option<i64>>> {
    let mut undirected = vec![Vec::new(); n];
    for (u, v) in graph.edges() {
        undirected[u].push((v, 1i64));
        if u != v {
            undirected[v].push((u, -1i64));
        }
    }
    let mut pot: Vec<Option<i64>> = vec![None; n];
    pot[start] = Some(0);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let base = pot[u].unwrap();
        for &(v, step) in &undirected[u] {
            if pot[v].is_none() {
                pot[v] = Some(base + step);
                queue.push_back(v);
            }
        }
    }
    Some(pot)
}

/// Grading levels when `A` has block-shift structure: a permutation puts it
/// in cyclic form with the corner block zero. Returns per-vertex levels
/// (normalized to start at 0 within each weakly connected component), or
/// `None` when no such grading exists or fewer than two levels are occupied.
pub fn block_shift_grading(a: &ComplexMatrix) -> Option<Vec<usize>> {
    let n = a.dim();
    let graph = pattern(a, 0.0);
    let mut undirected = vec![Vec::new(); n];
    for (u, v) in graph.edges() {
        if u == v {
            return None; // a loop cannot be graded
        }
        undirected[u].push((v, 1i64));
        undirected[v].push((u, -1i64));
    }

    let mut pot: Vec<Option<i64>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    for start in 0..n {
        if pot[start].is_some() {
            continue;
        }
        pot[start] = Some(0);
        component[start] = start;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let base = pot[u].unwrap();
            for &(v, step) in &undirected[u] {
                match pot[v] {
                    None => {
                        pot[v] = Some(base + step);
                        component[v] = start;
                        queue.push_back(v);
                    }
                    Some(existing) => {
                        if existing != base + step {
                            return None; // inconsistent grading
                        }
                    }
                }
            }
        }
    }
    // Also confirm every directed edge advances by exactly one (covers the
    // case of a consistent tree but contradicting non-tree edge, which the
    // BFS check above already catches; kept as the authoritative test).
    for (u, v) in graph.edges() {
        if pot[v].unwrap() != pot[u].unwrap() + 1 {
            return None;
        }
    }

    // Normalize each component so its minimum level is zero.
    let mut min_per_component: std::collections::HashMap<usize, i64> =
        std::collections::HashMap::new();
    for v in 0..n {
        let entry = min_per_component.entry(component[v]).or_insert(i64::MAX);
        *entry = (*entry).min(pot[v].unwrap());
    }
    let levels: Vec<usize> = (0..n)
        .map(|v| (pot[v].unwrap() - min_per_component[&component[v]]) as usize)
        .collect();
    let depth = levels.iter().max().copied().unwrap_or(0) + 1;
    (depth >= 2).then_some(levels)
}

/// True when a permutation puts `A` in cyclic form with zero corner block.
pub fn is_block_shift(a: &ComplexMatrix) -> bool {
    block_shift_grading(a).is_some()
}

/// True when the undirected pattern graph of the Hermitian part is
/// connected, i.e. `H(A)` is irreducible.
pub fn hermitian_pattern_irreducible(a: &ComplexMatrix) -> bool {
    let h = hermitian_part(a);
    let n = h.dim();
    let graph = pattern(&h, 0.0);
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut undirected = vec![Vec::new(); n];
    for (u, v) in graph.edges() {
        undirected[u].push(v);
        undirected[v].push(u);
    }
    while let Some(u) = queue.pop_front() {
        for &v in &undirected[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
