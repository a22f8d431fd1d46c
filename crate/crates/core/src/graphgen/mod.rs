//! Configuration-model graphs built from half-edges.
//!
//! A vertex of degree `d` owns `d` consecutive half-edge slots. A graph is a
//! perfect matching (`pairing`) on those slots; an edge is an unordered pair
//! `{h, pairing[h]}`. Percolation and vaccination never change the matching,
//! they only mark edges as absent via the per-half-edge `live` flags.

mod components;
mod gnw;

use std::io::Write;
use std::ops::Range;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::degrees::DegreeSequence;
use crate::error::{check_closed, Error, Result};

pub use components::{components, ComponentReport};
pub use gnw::{gnw_graph, gnw_graph_from_weights, EdgeRule};

/// Attempts before [`configuration_simple`] gives up.
pub const DEFAULT_MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Simplicity {
    /// Raw configuration multigraph; loops and multi-edges allowed.
    Unchecked,
    /// Checked to have no loops and no parallel edges.
    VerifiedSimple,
}

#[derive(Debug, Clone)]
pub struct HalfEdgeGraph {
    degrees: Vec<u32>,
    offsets: Vec<usize>,
    owner: Vec<u32>,
    pairing: Vec<u32>,
    live: Vec<bool>,
    simplicity: Simplicity,
    attempts: usize,
}

impl HalfEdgeGraph {
    fn unpaired(degrees: &[u32]) -> Self {
        let mut offsets = Vec::with_capacity(degrees.len() + 1);
        offsets.push(0);
        let mut owner = Vec::new();
        for (v, &d) in degrees.iter().enumerate() {
            owner.extend(std::iter::repeat_n(v as u32, d as usize));
            offsets.push(owner.len());
        }
        let half_edges = owner.len();
        HalfEdgeGraph {
            degrees: degrees.to_vec(),
            offsets,
            owner,
            pairing: vec![u32::MAX; half_edges],
            live: vec![true; half_edges],
            simplicity: Simplicity::Unchecked,
            attempts: 1,
        }
    }

    /// Builds a graph from an explicit edge list on vertices `0..n`.
    /// Loops `(u, u)` and repeated pairs are kept as given.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut degrees = vec![0u32; n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidDistribution(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
        }
        let mut g = Self::unpaired(&degrees);
        let mut next: Vec<usize> = g.offsets[..n].to_vec();
        for &(u, v) in edges {
            let a = next[u as usize];
            next[u as usize] += 1;
            let b = next[v as usize];
            next[v as usize] += 1;
            g.pairing[a] = b as u32;
            g.pairing[b] = a as u32;
        }
        if g.is_simple() {
            g.simplicity = Simplicity::VerifiedSimple;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// Degrees of record (before any percolation or vaccination).
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.degrees[v]
    }

    pub fn half_edge_count(&self) -> usize {
        self.owner.len()
    }

    /// `m`, counting every edge instance including removed ones.
    pub fn edge_count(&self) -> usize {
        self.owner.len() / 2
    }

    pub fn half_edges(&self, v: usize) -> Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn owner(&self, h: usize) -> usize {
        self.owner[h] as usize
    }

    pub fn partner(&self, h: usize) -> usize {
        self.pairing[h] as usize
    }

    pub fn pairing(&self) -> &[u32] {
        &self.pairing
    }

    /// Whether the edge through half-edge `h` is present.
    pub fn is_live(&self, h: usize) -> bool {
        self.live[h]
    }

    pub fn simplicity(&self) -> Simplicity {
        self.simplicity
    }

    /// Configuration draws used to produce this graph.
    pub fn attempts(&self) -> usize {
        self.attempts
    }

    /// Present edges as `(u, v)` pairs, one per edge instance.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.owner.len())
            .filter(move |&h| h < self.partner(h) && self.live[h])
            .map(move |h| (self.owner(h), self.owner(self.partner(h))))
    }

    pub fn live_edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Degree counting only present edges; a loop contributes two.
    pub fn retained_degree(&self, v: usize) -> u32 {
        self.half_edges(v).filter(|&h| self.live[h]).count() as u32
    }

    /// No loops and no parallel edges among the matched pairs.
    pub fn is_simple(&self) -> bool {
        let mut neighbours = Vec::new();
        for v in 0..self.n() {
            neighbours.clear();
            for h in self.half_edges(v) {
                let u = self.owner(self.partner(h));
                if u == v {
                    return false;
                }
                neighbours.push(u);
            }
            neighbours.sort_unstable();
            if neighbours.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
        true
    }

    /// Writes present edges as CSV with header `u,v`, 0-indexed, one row per
    /// edge instance.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "u,v")?;
        for (u, v) in self.edges() {
            writeln!(out, "{u},{v}")?;
        }
        Ok(())
    }

    pub(crate) fn live_mut(&mut self) -> &mut [bool] {
        &mut self.live
    }
}

/// Uniform perfect matching of all half-edges: shuffle, then pair
/// consecutive slots.
pub fn configuration_multigraph<R: Rng + ?Sized>(seq: &DegreeSequence, rng: &mut R) -> HalfEdgeGraph {
    let mut g = HalfEdgeGraph::unpaired(seq.degrees());
    let mut order: Vec<u32> = (0..g.owner.len() as u32).collect();
    order.shuffle(rng);
    for pair in order.chunks_exact(2) {
        g.pairing[pair[0] as usize] = pair[1];
        g.pairing[pair[1] as usize] = pair[0];
    }
    g
}

/// Uniform simple graph with the given degrees, by rejection.
pub fn configuration_simple<R: Rng + ?Sized>(
    seq: &DegreeSequence,
    rng: &mut R,
    max_attempts: usize,
) -> Result<HalfEdgeGraph> {
    for attempt in 1..=max_attempts {
        let mut g = configuration_multigraph(seq, rng);
        if g.is_simple() {
            g.simplicity = Simplicity::VerifiedSimple;
            g.attempts = attempt;
            return Ok(g);
        }
    }
    Err(Error::SimpleGraphNotFound { attempts: max_attempts })
}

/// Keeps each present edge independently with probability `p`.
pub fn percolate<R: Rng + ?Sized>(g: &HalfEdgeGraph, p: f64, rng: &mut R) -> Result<HalfEdgeGraph> {
    check_closed("p", p, 0.0, 1.0, "[0, 1]")?;
    let mut out = g.clone();
    for h in 0..out.owner.len() {
        let mate = out.pairing[h] as usize;
        if h < mate && out.live[h] {
            let keep = rng.random::<f64>() < p;
            out.live[h] = keep;
            out.live[mate] = keep;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    fn seq(d: &[u32]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec()).unwrap()
    }

    fn assert_involution(g: &HalfEdgeGraph) {
        for h in 0..g.half_edge_count() {
            let mate = g.partner(h);
            assert_ne!(mate, h);
            assert_eq!(g.partner(mate), h);
        }
    }

    #[test]
    fn single_edge() {
        let mut rng = rng_from_seed(3);
        let g = configuration_multigraph(&seq(&[1, 1]), &mut rng);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let g = configuration_simple(&seq(&[1, 1]), &mut rng, 10).unwrap();
        assert_eq!(g.attempts(), 1);
        assert_eq!(g.simplicity(), Simplicity::VerifiedSimple);
    }

    #[test]
    fn degree_two_vertex_is_a_loop() {
        let mut rng = rng_from_seed(4);
        let g = configuration_multigraph(&seq(&[2]), &mut rng);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 0)]);
        assert!(!g.is_simple());
        match configuration_simple(&seq(&[2]), &mut rng, 50) {
            Err(Error::SimpleGraphNotFound { attempts }) => assert_eq!(attempts, 50),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pairing_is_an_involution() {
        let mut rng = rng_from_seed(5);
        for _ in 0..50 {
            let degrees: Vec<u32> = (0..40).map(|_| rng.random_range(0..6)).collect();
            let total: u32 = degrees.iter().sum();
            let mut degrees = degrees;
            if total % 2 == 1 {
                degrees[0] += 1;
            }
            let s = seq(&degrees);
            let g = configuration_multigraph(&s, &mut rng);
            assert_involution(&g);
            assert_eq!(2 * g.edge_count() as u64, s.total_degree());
            for (v, &d) in degrees.iter().enumerate() {
                assert_eq!(g.retained_degree(v), d);
            }
        }
    }

    #[test]
    fn simple_rejection_on_cubic_graphs() {
        // Three-regular: P(simple) tends to exp(-2), about 7.4 draws on average.
        let mut rng = rng_from_seed(6);
        let s = seq(&[3; 1000]);
        let mut total = 0;
        for _ in 0..40 {
            let g = configuration_simple(&s, &mut rng, DEFAULT_MAX_ATTEMPTS).unwrap();
            assert!(g.is_simple());
            total += g.attempts();
        }
        let mean = total as f64 / 40.0;
        assert!(mean < 100.0, "{mean}");
    }

    #[test]
    fn percolation_extremes() {
        let mut rng = rng_from_seed(7);
        let g = HalfEdgeGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let kept = percolate(&g, 1.0, &mut rng).unwrap();
        assert_eq!(kept.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        let gone = percolate(&g, 0.0, &mut rng).unwrap();
        assert_eq!(gone.live_edge_count(), 0);
        assert_eq!(gone.degrees(), g.degrees());
        assert_eq!(gone.retained_degree(0), 0);
        assert!(percolate(&g, 1.5, &mut rng).is_err());
    }

    #[test]
    fn percolation_on_k4_keeps_half_the_edges() {
        let mut rng = rng_from_seed(8);
        let k4 = HalfEdgeGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.simplicity(), Simplicity::VerifiedSimple);
        let reps = 100_000;
        let total: usize = (0..reps).map(|_| percolate(&k4, 0.5, &mut rng).unwrap().live_edge_count()).sum();
        let mean = total as f64 / reps as f64;
        assert!((mean - 3.0).abs() < 0.03, "{mean}");
    }

    #[test]
    fn edge_list_format() {
        let g = HalfEdgeGraph::from_edges(3, &[(0, 1), (2, 2), (0, 1)]).unwrap();
        assert_eq!(g.simplicity(), Simplicity::Unchecked);
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "u,v\n0,1\n0,1\n2,2\n");
    }
}
