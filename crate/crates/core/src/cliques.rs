//! Exact clique search over small and medium verdict graphs.
//!
//! Everything here is deterministic: enumeration orders are fixed by vertex
//! index, and the maximum-clique search returns the lexicographically
//! smallest vertex set among those of maximum size.

/// Fixed-capacity bitset over vertex indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)] }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Ascending vertex indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, bits)| {
            let mut bits = *bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// Adjacency as one bitset row per vertex; callers guarantee symmetry and an
/// empty diagonal.
pub fn adjacency_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<BitSet> {
    let mut adj = vec![BitSet::new(n); n];
    for &(u, v) in edges {
        debug_assert!(u != v);
        adj[u].insert(v);
        adj[v].insert(u);
    }
    adj
}

/// The lexicographically smallest maximum clique, as ascending indices.
///
/// Branch and bound with greedy pivoting; exact. Suitable for the verdict
/// graphs produced by grid verification (tens of vertices).
pub fn max_clique(adj: &[BitSet]) -> Vec<usize> {
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut candidates = BitSet::new(n);
    for i in 0..n {
        candidates.insert(i);
    }
    expand(adj, &mut current, candidates, &mut best);
    best
}

fn expand(adj: &[BitSet], current: &mut Vec<usize>, candidates: BitSet, best: &mut Vec<usize>) {
    if candidates.is_empty() {
        // Strictly-greater test keeps the first (lexicographically smallest,
        // because expansion is in ascending order) clique of each size.
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + candidates.len() <= best.len() {
        return; // bound: cannot beat the incumbent
    }
    let mut remaining = candidates;
    let verts: Vec<usize> = remaining.iter().collect();
    for v in verts {
        if current.len() + remaining.len() <= best.len() {
            return;
        }
        remaining.remove(v);
        current.push(v);
        expand(adj, current, remaining.intersect(&adj[v]), best);
        current.pop();
    }
}

/// All k-cliques of the graph given as sorted adjacency lists, enumerated in
/// ascending lexicographic order. `k >= 1`; vertices are `0..adj.len()`.
pub fn k_cliques(adj: &[Vec<u32>], k: usize) -> Vec<Vec<u32>> {
    debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut stack = Vec::with_capacity(k);
    for v in 0..adj.len() as u32 {
        stack.push(v);
        // candidates: neighbors of v above v, preserving sorted order
        let cands: Vec<u32> = upper_neighbors(adj, v);
        extend_cliques(adj, &mut stack, &cands, k, &mut out);
        stack.pop();
    }
    out
}

fn upper_neighbors(adj: &[Vec<u32>], v: u32) -> Vec<u32> {
    let list = &adj[v as usize];
    let split = list.partition_point(|&u| u <= v);
    list[split..].to_vec()
}

fn extend_cliques(
    adj: &[Vec<u32>],
    stack: &mut Vec<u32>,
    cands: &[u32],
    k: usize,
    out: &mut Vec<Vec<u32>>,
) {
    if stack.len() == k {
        out.push(stack.clone());
        return;
    }
    if stack.len() + cands.len() < k {
        return;
    }
    for (idx, &v) in cands.iter().enumerate() {
        if stack.len() + (cands.len() - idx) < k {
            return;
        }
        stack.push(v);
        let next: Vec<u32> = intersect_sorted(&cands[idx + 1..], &adj[v as usize]);
        extend_cliques(adj, stack, &next, k, out);
        stack.pop();
    }
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
