// SPDX-License-Identifier: Apache-2.0

//! Orbit structure of an atom map.

/// Union-find over atom indices with path compression and union by rank.
#[derive(Clone, Debug)]
pub struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != node {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return a;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] = self.rank[a].saturating_add(1);
        }
        a
    }

    /// Classes sorted by smallest member, members ascending.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let root = self.find(i);
            if slot[root] == usize::MAX {
                slot[root] = classes.len();
                classes.push(Vec::new());
            }
            classes[slot[root]].push(i);
        }
        classes
    }
}

/// Weakly connected classes of the functional graph `i → σ(i)`.
///
/// A vector is fixed by the composition operator exactly when it is constant
/// on each class.
pub fn functional_graph_classes(sigma: &[usize]) -> Vec<Vec<usize>> {
    let mut sets = DisjointSet::new(sigma.len());
    for (i, &j) in sigma.iter().enumerate() {
        sets.union(i, j);
    }
    sets.classes()
}

pub fn is_permutation(sigma: &[usize]) -> bool {
    let mut seen = vec![false; sigma.len()];
    for &j in sigma {
        if j >= sigma.len() || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

/// Cycles of a permutation in order of their smallest atom, each listed
/// along the orbit `i, σ(i), σ²(i), …`. `None` if `sigma` is not a permutation.
pub fn cycles(sigma: &[usize]) -> Option<Vec<Vec<usize>>> {
    if !is_permutation(sigma) {
        return None;
    }
    let mut visited = vec![false; sigma.len()];
    let mut out = Vec::new();
    for start in 0..sigma.len() {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            cycle.push(i);
            i = sigma[i];
        }
        out.push(cycle);
    }
    Some(out)
}
