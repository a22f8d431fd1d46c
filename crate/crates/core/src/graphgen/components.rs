use std::collections::BTreeMap;

use super::HalfEdgeGraph;

struct DisjointSet {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
    }
}

/// Connected components among live vertices.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    sizes: Vec<usize>,
    component_of: Vec<Option<u32>>,
    degrees: Vec<u32>,
}

impl ComponentReport {
    /// Component orders, largest first.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `C_1`, or 0 when there are no live vertices.
    pub fn largest(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    /// `C_2`, or 0 when there is at most one component.
    pub fn second(&self) -> usize {
        self.sizes.get(1).copied().unwrap_or(0)
    }

    /// Index into [`sizes`](Self::sizes) of the component holding `v`;
    /// `None` for removed vertices.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.component_of[v].map(|c| c as usize)
    }

    pub fn size_of_component_containing(&self, v: usize) -> Option<usize> {
        self.component_of(v).map(|c| self.sizes[c])
    }

    pub fn live_vertices(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// `n_{>=k}`: vertices in components of order at least `k`.
    pub fn vertices_in_components_at_least(&self, k: usize) -> usize {
        self.sizes.iter().filter(|&&s| s >= k).sum()
    }

    /// `n_{d,>=k}` keyed by degree of record.
    pub fn degree_counts_at_least(&self, k: usize) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for (v, c) in self.component_of.iter().enumerate() {
            if let Some(c) = c {
                if self.sizes[*c as usize] >= k {
                    *out.entry(self.degrees[v]).or_insert(0) += 1;
                }
            }
        }
        out
    }
}

/// Exact component decomposition of the present edges, restricted to
/// vertices flagged in `alive` (all vertices when `None`).
pub fn components(g: &HalfEdgeGraph, alive: Option<&[bool]>) -> ComponentReport {
    let n = g.n();
    let is_alive = |v: usize| alive.is_none_or(|a| a[v]);
    let mut dsu = DisjointSet::new(n);
    for (u, v) in g.edges() {
        if u != v && is_alive(u) && is_alive(v) {
            dsu.union(u, v);
        }
    }

    let mut root_count: Vec<usize> = vec![0; n];
    for v in (0..n).filter(|&v| is_alive(v)) {
        let r = dsu.find(v);
        root_count[r] += 1;
    }
    let mut roots: Vec<usize> = (0..n).filter(|&r| root_count[r] > 0).collect();
    roots.sort_by(|&a, &b| root_count[b].cmp(&root_count[a]).then(a.cmp(&b)));
    let mut rank = vec![u32::MAX; n];
    for (i, &r) in roots.iter().enumerate() {
        rank[r] = i as u32;
    }
    let component_of = (0..n)
        .map(|v| is_alive(v).then(|| rank[dsu.find(v)]))
        .collect();

    ComponentReport {
        sizes: roots.iter().map(|&r| root_count[r]).collect(),
        component_of,
        degrees: g.degrees().to_vec(),
    }
}
