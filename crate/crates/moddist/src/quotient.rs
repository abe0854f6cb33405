//! Finite quotient Cayley graphs and exact independence numbers.
//!
//! Reducing the generating set mod `m` yields a Cayley graph on `Z_m²`
//! whose weighted adjacency matrix is the circulant analyzed in
//! [`crate::spectral`]. At desk scale the exact independence number is
//! computable by branch and bound, which cross-validates the ratio bound:
//! `α/m²` can never exceed `-λ_min/(λ_max - λ_min)`.
//!
//! Quotients may contain triangles even though the infinite graph is
//! triangle-free; the wrap-around mod `m` creates sums that do not exist
//! in Z². That is expected and does not contradict the freeness result.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::generators::SymmetricWeights;
use crate::spectral::circulant_spectrum;

/// Default vertex cap for the exact solver.
pub const DEFAULT_ALPHA_CAP: usize = 100;

/// Tolerance for the dominance comparison `α/m² ≤ ratio + ε`.
pub const DOMINANCE_TOLERANCE: f64 = 1e-9;

/// The Cayley graph of `Z_m²` for a connection set closed under negation.
#[derive(Clone, Debug)]
pub struct QuotientCayleyGraph {
    m: u64,
    connection_set: Vec<(u64, u64)>,
    /// Residues hit by more than one support vector during reduction.
    collisions: Vec<(u64, u64)>,
}

impl QuotientCayleyGraph {
    /// Builds a quotient graph from an explicit connection set.
    pub fn new(m: u64, connection_set: BTreeSet<(u64, u64)>) -> Result<Self> {
        if m < 2 {
            return Err(Error::ModulusTooSmall(m));
        }
        if connection_set.is_empty() {
            return Err(Error::EmptyConnectionSet);
        }
        for &(a, b) in &connection_set {
            let neg = ((m - a % m) % m, (m - b % m) % m);
            if (a, b) == (0, 0) || a >= m || b >= m || !connection_set.contains(&neg) {
                return Err(Error::InvalidConnectionSet { m });
            }
        }
        Ok(Self {
            m,
            connection_set: connection_set.into_iter().collect(),
            collisions: Vec::new(),
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        (self.m * self.m) as usize
    }

    pub fn connection_set(&self) -> &[(u64, u64)] {
        &self.connection_set
    }

    /// Degree of every vertex (the graph is vertex-transitive).
    pub fn degree(&self) -> usize {
        self.connection_set.len()
    }

    pub fn collisions(&self) -> &[(u64, u64)] {
        &self.collisions
    }

    pub fn adjacent(&self, u: (u64, u64), v: (u64, u64)) -> bool {
        let diff = (
            (u.0 + self.m - v.0) % self.m,
            (u.1 + self.m - v.1) % self.m,
        );
        self.connection_set.binary_search(&diff).is_ok()
    }

    /// Adjacency bitmasks indexed by `v = a*m + b`; requires at most 128
    /// vertices, which the solver cap guarantees.
    fn adjacency_masks(&self) -> Vec<u128> {
        let m = self.m;
        let n = self.vertex_count();
        assert!(n <= 128, "bitset solver handles at most 128 vertices");
        let mut adj = vec![0u128; n];
        for a in 0..m {
            for b in 0..m {
                let v = (a * m + b) as usize;
                for &(da, db) in &self.connection_set {
                    let w = (((a + da) % m) * m + (b + db) % m) as usize;
                    adj[v] |= 1 << w;
                    adj[w] |= 1 << v;
                }
            }
        }
        adj
    }

    /// True if no two vertices of `set` are adjacent.
    pub fn is_independent(&self, set: &[(u64, u64)]) -> bool {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if self.adjacent(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduces the support of `w` mod `m`. Any vector collapsing to the origin
/// makes the quotient degenerate (weight would land on the diagonal);
/// distinct vectors sharing a residue are recorded as collisions and the
/// residue appears once in the connection set.
pub fn build_quotient(w: &SymmetricWeights, m: u64) -> Result<QuotientCayleyGraph> {
    if m < 2 {
        return Err(Error::ModulusTooSmall(m));
    }
    let mut counts: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for (v, _) in w.entries() {
        let r = v.reduce_mod(m);
        if r == (0, 0) {
            return Err(Error::DegenerateQuotient { vector: v.clone(), m });
        }
        *counts.entry(r).or_insert(0) += 1;
    }
    if counts.is_empty() {
        return Err(Error::EmptyConnectionSet);
    }
    let collisions: Vec<(u64, u64)> = counts
        .iter()
        .filter(|(_, &c)| c > 1)
        .map(|(&r, _)| r)
        .collect();
    let graph = QuotientCayleyGraph::new(m, counts.into_keys().collect())?;
    Ok(QuotientCayleyGraph { collisions, ..graph })
}

/// Exact independence data for one quotient, optionally paired with the
/// spectral ratio bound it must respect.
#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub graph: QuotientCayleyGraph,
    pub alpha: u64,
    /// `α / m²` as an exact rational.
    pub density: BigRational,
    /// One maximum independent set, sorted.
    pub witness: Vec<(u64, u64)>,
    pub spectral_ratio: Option<f64>,
    pub dominance_ok: Option<bool>,
}

impl IndependenceReport {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.graph.m(),
            "connection_set": self.graph.connection_set(),
            "collisions": self.graph.collisions(),
            "degree": self.graph.degree(),
            "alpha": self.alpha,
            "density": crate::serial::ratio_str(&self.density),
            "witness": self.witness.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
            "spectral_ratio": self.spectral_ratio,
            "dominance_ok": self.dominance_ok,
        })
    }
}

struct MisSolver {
    adj: Vec<u128>,
}

impl MisSolver {
    /// Greedy clique cover of the candidate set: an independent set meets
    /// each clique at most once, so the cover size is an admissible bound.
    fn upper_bound(&self, cand: u128) -> u32 {
        let mut cliques: Vec<u128> = Vec::new();
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut placed = false;
            for clique in cliques.iter_mut() {
                if *clique & !self.adj[v] == 0 {
                    *clique |= 1 << v;
                    placed = true;
                    break;
                }
            }
            if !placed {
                cliques.push(1 << v);
            }
        }
        cliques.len() as u32
    }

    /// Deterministic branch and bound: branch on the lowest candidate
    /// vertex, include before exclude, strict improvement only.
    fn solve(&self, cand: u128, size: u32, chosen: u128, best: &mut (u32, u128)) {
        if cand == 0 {
            if size > best.0 {
                *best = (size, chosen);
            }
            return;
        }
        if size + self.upper_bound(cand) <= best.0 {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let bit = 1u128 << v;
        self.solve(cand & !self.adj[v] & !bit, size + 1, chosen | bit, best);
        self.solve(cand & !bit, size, chosen, best);
    }
}

/// Exact maximum independent set by branch and bound with a greedy
/// clique-cover bound. Deterministic: lexicographic vertex order and a
/// greedy warm start make identical inputs yield identical witnesses.
pub fn independence_number_exact(
    graph: &QuotientCayleyGraph,
    cap: usize,
) -> Result<IndependenceReport> {
    let n = graph.vertex_count();
    if n > cap || n > 128 {
        return Err(Error::InstanceTooLarge { vertices: n, cap: cap.min(128) });
    }
    let solver = MisSolver { adj: graph.adjacency_masks() };

    // Greedy warm start over ascending vertex indices.
    let mut greedy = 0u128;
    for v in 0..n {
        if solver.adj[v] & greedy == 0 {
            greedy |= 1 << v;
        }
    }
    let mut best = (greedy.count_ones(), greedy);

    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    solver.solve(full, 0, 0, &mut best);

    let (alpha, mask) = best;
    let m = graph.m();
    let witness: Vec<(u64, u64)> = (0..n)
        .filter(|v| mask >> v & 1 == 1)
        .map(|v| ((v as u64) / m, (v as u64) % m))
        .collect();
    debug_assert!(graph.is_independent(&witness));
    let density = BigRational::new(BigInt::from(alpha), BigInt::from(n));
    Ok(IndependenceReport {
        graph: graph.clone(),
        alpha: u64::from(alpha),
        density,
        witness,
        spectral_ratio: None,
        dominance_ok: None,
    })
}

/// Computes the exact independence density of the quotient and checks it
/// against the circulant ratio bound (collided weights merge additively in
/// the spectrum, so the comparison stays sound).
pub fn spectral_dominance_check(
    w: &SymmetricWeights,
    m: u64,
    cap: usize,
) -> Result<IndependenceReport> {
    let graph = build_quotient(w, m)?;
    let mut report = independence_number_exact(&graph, cap)?;
    let spectrum = circulant_spectrum(w, m)?;
    let ratio = spectrum.ratio_bound()?;
    let density = report.density.to_f64().expect("density converts to f64");
    report.spectral_ratio = Some(ratio);
    report.dominance_ok = Some(density <= ratio + DOMINANCE_TOLERANCE);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::weight_function;
    use crate::lattice::Vec2;
    use crate::params::ModularDistanceParams;
    use num_rational::BigRational;

    fn params(p: u64, q: u64, k: u32) -> ModularDistanceParams {
        ModularDistanceParams::new(p, q, k).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn uniform_weights(vectors: &[(i64, i64)]) -> SymmetricWeights {
        let entries = vectors
            .iter()
            .map(|&(x, y)| (Vec2::new(x, y), rat(1, 1)))
            .collect();
        SymmetricWeights::from_entries(entries).unwrap()
    }

    /// Plain recursive enumeration of independent sets, no bounding.
    fn exhaustive_alpha(graph: &QuotientCayleyGraph) -> u32 {
        fn rec(adj: &[u128], cand: u128, size: u32) -> u32 {
            if cand == 0 {
                return size;
            }
            let v = cand.trailing_zeros() as usize;
            let bit = 1u128 << v;
            rec(adj, cand & !adj[v] & !bit, size + 1).max(rec(adj, cand & !bit, size))
        }
        let adj = graph.adjacency_masks();
        let n = graph.vertex_count();
        rec(&adj, (1u128 << n) - 1, 0)
    }

    #[test]
    fn torus_grid_quotient() {
        // (1,2,1,1) mod 5: (0,-9) -> (0,1), (6,-10) -> (1,0); the quotient
        // is the 5x5 torus grid.
        let w = weight_function(&params(1, 2, 1), 1).unwrap();
        let g = build_quotient(w.weights(), 5).unwrap();
        assert_eq!(
            g.connection_set(),
            &[(0, 1), (0, 4), (1, 0), (4, 0)]
        );
        assert!(g.collisions().is_empty());
        assert_eq!(g.degree(), 4);

        let report = independence_number_exact(&g, DEFAULT_ALPHA_CAP).unwrap();
        assert_eq!(report.alpha, 10);
        assert_eq!(report.density, rat(2, 5));
        assert_eq!(report.alpha, u64::from(exhaustive_alpha(&g)));
        assert!(g.is_independent(&report.witness));
        assert_eq!(report.witness.len(), 10);
    }

    #[test]
    fn degenerate_and_oversized_quotients_error() {
        let w = weight_function(&params(1, 2, 1), 1).unwrap();
        assert!(matches!(
            build_quotient(w.weights(), 2),
            Err(Error::DegenerateQuotient { .. })
        ));
        let g = build_quotient(w.weights(), 11).unwrap();
        assert!(matches!(
            independence_number_exact(&g, DEFAULT_ALPHA_CAP),
            Err(Error::InstanceTooLarge { vertices: 121, cap: 100 })
        ));
    }

    #[test]
    fn collisions_are_recorded_mod_four() {
        // (1,2,1,2) mod 4: (0,9) and (0,-27) both reduce to (0,1), and all
        // of ±(6,-10), ±(18,-30) land on (2,2).
        let w = weight_function(&params(1, 2, 1), 2).unwrap();
        let g = build_quotient(w.weights(), 4).unwrap();
        assert_eq!(g.collisions(), &[(0, 1), (0, 3), (2, 2)]);
        assert_eq!(g.connection_set(), &[(0, 1), (0, 3), (2, 2)]);
    }

    #[test]
    fn four_vertex_matching() {
        let g = QuotientCayleyGraph::new(2, [(1u64, 1u64)].into_iter().collect()).unwrap();
        let report = independence_number_exact(&g, DEFAULT_ALPHA_CAP).unwrap();
        assert_eq!(report.alpha, 2);
        assert_eq!(report.alpha, u64::from(exhaustive_alpha(&g)));
    }

    #[test]
    fn connection_set_validation() {
        assert!(matches!(
            QuotientCayleyGraph::new(3, BTreeSet::new()),
            Err(Error::EmptyConnectionSet)
        ));
        assert!(matches!(
            QuotientCayleyGraph::new(3, [(0u64, 0u64)].into_iter().collect()),
            Err(Error::InvalidConnectionSet { m: 3 })
        ));
        // (1,0) without (2,0) is not closed under negation mod 3.
        assert!(matches!(
            QuotientCayleyGraph::new(3, [(1u64, 0u64)].into_iter().collect()),
            Err(Error::InvalidConnectionSet { m: 3 })
        ));
    }

    #[test]
    fn greedy_floor_and_degree_regularity() {
        for (prm, m) in [(params(1, 2, 1), 5), (params(1, 2, 1), 7), (params(2, 3, 1), 7)] {
            let w = weight_function(&prm, 1).unwrap();
            let g = build_quotient(w.weights(), m).unwrap();
            let report = independence_number_exact(&g, DEFAULT_ALPHA_CAP).unwrap();
            let floor = g.vertex_count() as u64 / (g.degree() as u64 + 1);
            assert!(report.alpha >= floor);
        }
    }

    #[test]
    fn dominance_on_the_torus_grid() {
        let w = weight_function(&params(1, 2, 1), 1).unwrap();
        let report = spectral_dominance_check(w.weights(), 5, DEFAULT_ALPHA_CAP).unwrap();
        assert_eq!(report.dominance_ok, Some(true));
        // λ = cos(2π z1/5) + cos(2π z2/5): ratio = 1.618/3.618.
        let ratio = report.spectral_ratio.unwrap();
        assert!((ratio - 0.44721).abs() < 1e-4);
        assert!(report.density.to_f64().unwrap() <= ratio + DOMINANCE_TOLERANCE);
    }

    #[test]
    fn complete_graph_equality_case() {
        // All nonzero residues of Z_5² with symmetric representatives and
        // uniform weight: the quotient is K_25, α = 1, and the ratio bound
        // is tight at 1/25.
        let mut vectors = Vec::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                if (a, b) != (0, 0) {
                    vectors.push((a, b));
                }
            }
        }
        let w = uniform_weights(&vectors);
        let report = spectral_dominance_check(&w, 5, DEFAULT_ALPHA_CAP).unwrap();
        assert_eq!(report.alpha, 1);
        let ratio = report.spectral_ratio.unwrap();
        assert!((ratio - 1.0 / 25.0).abs() < 1e-9);
        assert_eq!(report.dominance_ok, Some(true));
    }

    #[test]
    fn bipartite_equality_case() {
        // m = 2 with the single self-inverse residue (1,0): a perfect
        // matching; density 1/2 equals the ratio bound.
        let w = uniform_weights(&[(1, 0), (-1, 0)]);
        let report = spectral_dominance_check(&w, 2, DEFAULT_ALPHA_CAP).unwrap();
        assert_eq!(report.alpha, 2);
        assert_eq!(report.density, rat(1, 2));
        let ratio = report.spectral_ratio.unwrap();
        assert!((ratio - 0.5).abs() < 1e-12);
        assert_eq!(report.dominance_ok, Some(true));
    }

    #[test]
    fn quotient_with_triangles_does_not_contradict_freeness() {
        // (3,4,1) mod 3 collapses both base directions onto (0,±1): each
        // column of Z_3² is a 3-cycle. Triangles in a quotient are wrap
        // artifacts; the infinite graph stays triangle-free.
        let w = weight_function(&params(3, 4, 1), 1).unwrap();
        let g = build_quotient(w.weights(), 3).unwrap();
        assert_eq!(g.connection_set(), &[(0, 1), (0, 2)]);
        let (u, v, t) = ((0, 0), (0, 1), (0, 2));
        assert!(g.adjacent(u, v) && g.adjacent(v, t) && g.adjacent(u, t));

        let report = spectral_dominance_check(w.weights(), 3, DEFAULT_ALPHA_CAP).unwrap();
        assert_eq!(report.alpha, 3);
        // Tight case: density 1/3 equals the ratio bound.
        assert!((report.spectral_ratio.unwrap() - 1.0 / 3.0).abs() < 1e-9);
        assert_eq!(report.dominance_ok, Some(true));
    }

    #[test]
    fn witnesses_are_deterministic() {
        let w = weight_function(&params(1, 2, 1), 1).unwrap();
        let g = build_quotient(w.weights(), 5).unwrap();
        let a = independence_number_exact(&g, DEFAULT_ALPHA_CAP).unwrap();
        let b = independence_number_exact(&g, DEFAULT_ALPHA_CAP).unwrap();
        assert_eq!(a.witness, b.witness);
    }
}
