//! Brute-force enumeration of the graph monoid `M_E`: the free commutative
//! monoid on the vertices modulo `v = sum of r(e) over edges e leaving v`.
//!
//! Vectors in `N^n` of coordinate sum at most `S` are joined whenever one is
//! obtained from the other by expanding a single vertex. Classes are then
//! read off the vectors of sum at most `k`, where `k` is the first level at
//! which one more generator produces no new class. The bound `S` grows until
//! the element count is stable across two consecutive bounds and adding a
//! generator is well defined on classes; otherwise the state budget runs out.

use std::collections::HashMap;

use super::{small_adjacency, DirectedMultigraph, GraphError};

/// Default cap on the number of vectors held in one search box.
pub const DEFAULT_MONOID_BUDGET: usize = 10_000;

/// A finite graph monoid with its full addition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMonoid {
    /// Canonical representative of each element: the lexicographically least
    /// vector found in its class.
    elements: Vec<Vec<u64>>,
    table: Vec<Vec<usize>>,
    zero: usize,
    vertex_classes: Vec<usize>,
}

impl GraphMonoid {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<u64>] {
        &self.elements
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Index of the class `[v]` of vertex `v`.
    pub fn vertex_class(&self, v: usize) -> usize {
        self.vertex_classes[v]
    }

    /// Index of the class of an arbitrary vector.
    pub fn class_of(&self, x: &[u64]) -> usize {
        let mut acc = self.zero;
        for (v, &count) in x.iter().enumerate() {
            for _ in 0..count {
                acc = self.table[acc][self.vertex_classes[v]];
            }
        }
        acc
    }

    /// Number of nonzero elements.
    pub fn nonzero_order(&self) -> usize {
        self.len() - 1
    }

    /// If the nonzero elements form a group under the induced addition,
    /// returns the index of its identity.
    pub fn nonzero_group_identity(&self) -> Option<usize> {
        let nonzero: Vec<usize> = (0..self.len()).filter(|&a| a != self.zero).collect();
        if nonzero.is_empty() {
            return None;
        }
        for &a in &nonzero {
            for &b in &nonzero {
                if self.add(a, b) == self.zero || self.add(a, b) != self.add(b, a) {
                    return None;
                }
            }
        }
        for &a in &nonzero {
            for &b in &nonzero {
                for &c in &nonzero {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return None;
                    }
                }
            }
        }
        let identity = *nonzero
            .iter()
            .find(|&&e| nonzero.iter().all(|&a| self.add(e, a) == a))?;
        nonzero
            .iter()
            .all(|&a| nonzero.iter().any(|&b| self.add(a, b) == identity))
            .then_some(identity)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Number of vectors in `N^n` with coordinate sum at most `s`, i.e.
/// `C(s + n, n)`, saturating.
fn box_size(s: usize, n: usize) -> usize {
    let mut acc: u128 = 1;
    for i in 1..=n as u128 {
        acc = acc * (s as u128 + i) / i;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Vectors of sum at most `s`, ordered by sum, then lexicographically.
fn box_vectors(s: usize, n: usize) -> Vec<Vec<u64>> {
    fn fill(prefix: &mut Vec<u64>, n: usize, remaining: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == n - 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for c in 0..=remaining {
            prefix.push(c);
            fill(prefix, n, remaining - c, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(box_size(s, n));
    for total in 0..=s as u64 {
        fill(&mut Vec::with_capacity(n), n, total, &mut out);
    }
    out
}

struct Attempt {
    monoid: GraphMonoid,
}

fn attempt(adjacency: &[Vec<u64>], bound: usize) -> Option<Attempt> {
    let n = adjacency.len();
    let vectors = box_vectors(bound, n);
    let index: HashMap<&[u64], usize> =
        vectors.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let out_degree: Vec<u64> = adjacency.iter().map(|r| r.iter().sum()).collect();

    let mut uf = UnionFind::new(vectors.len());
    for (i, x) in vectors.iter().enumerate() {
        let total: u64 = x.iter().sum();
        for v in 0..n {
            if x[v] == 0 || out_degree[v] == 0 || total - 1 + out_degree[v] > bound as u64 {
                continue;
            }
            let mut y = x.clone();
            y[v] -= 1;
            for (w, &m) in adjacency[v].iter().enumerate() {
                y[w] += m;
            }
            uf.union(i, index[y.as_slice()]);
        }
    }

    // level_end[t] = number of vectors with sum <= t
    let level_end: Vec<usize> = (0..=bound).map(|t| box_size(t, n)).collect();
    let mut seen = vec![false; vectors.len()];
    let mut closed_at = None;
    for t in 0..=bound {
        let start = if t == 0 { 0 } else { level_end[t - 1] };
        let mut fresh = false;
        for i in start..level_end[t] {
            let r = uf.find(i);
            if !seen[r] {
                seen[r] = true;
                fresh = true;
            }
        }
        if t > 0 && !fresh {
            closed_at = Some(t - 1);
            break;
        }
    }
    let k = closed_at?;

    // Elements: roots met at sum <= k, with their lex-least member.
    let mut class_index: HashMap<usize, usize> = HashMap::new();
    let mut reps: Vec<Vec<u64>> = Vec::new();
    for (i, vector) in vectors.iter().enumerate().take(level_end[k]) {
        let r = uf.find(i);
        match class_index.get(&r) {
            Some(&c) => {
                if *vector < reps[c] {
                    reps[c] = vector.clone();
                }
            }
            None => {
                class_index.insert(r, reps.len());
                reps.push(vector.clone());
            }
        }
    }

    // Adding a vertex must be well defined on classes.
    let mut step: Vec<Vec<Option<usize>>> = vec![vec![None; n]; reps.len()];
    for i in 0..level_end[k] {
        let from = class_index[&uf.find(i)];
        for v in 0..n {
            let mut y = vectors[i].clone();
            y[v] += 1;
            let to = *class_index.get(&uf.find(index[y.as_slice()]))?;
            match step[from][v] {
                None => step[from][v] = Some(to),
                Some(prev) if prev != to => return None,
                Some(_) => {}
            }
        }
    }
    let step: Vec<Vec<usize>> = step
        .into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;

    // Sort elements by canonical vector so indices do not depend on the
    // union-find layout.
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| reps[a].cmp(&reps[b]));
    let mut renumber = vec![0; reps.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
    }
    let elements: Vec<Vec<u64>> = order.iter().map(|&o| reps[o].clone()).collect();
    let step: Vec<Vec<usize>> = order
        .iter()
        .map(|&o| step[o].iter().map(|&t| renumber[t]).collect())
        .collect();

    let add = |mut a: usize, b: &[u64]| {
        for (v, &count) in b.iter().enumerate() {
            for _ in 0..count {
                a = step[a][v];
            }
        }
        a
    };
    let table: Vec<Vec<usize>> = (0..elements.len())
        .map(|a| elements.iter().map(|b| add(a, b)).collect())
        .collect();
    let zero = elements
        .iter()
        .position(|e| e.iter().all(|&c| c == 0))
        .expect("zero vector is always enumerated");
    let vertex_classes = (0..n).map(|v| step[zero][v]).collect();
    Some(Attempt {
        monoid: GraphMonoid {
            elements,
            table,
            zero,
            vertex_classes,
        },
    })
}

/// Enumerates `M_E` exhaustively. Succeeds only for finite monoids small
/// enough that the search box stays within `cap` vectors; otherwise returns
/// [`GraphError::BudgetExceeded`].
pub fn graph_monoid_enumerate(
    g: &DirectedMultigraph,
    cap: usize,
) -> Result<GraphMonoid, GraphError> {
    let adjacency = small_adjacency(g).ok_or_else(|| {
        GraphError::InvalidParameter("edge multiplicities too large to enumerate".into())
    })?;
    let n = adjacency.len();
    let mut previous: Option<usize> = None;
    for bound in 1.. {
        if box_size(bound, n) > cap {
            return Err(GraphError::BudgetExceeded { cap });
        }
        match attempt(&adjacency, bound) {
            Some(a) => {
                if previous == Some(a.monoid.len()) {
                    return Ok(a.monoid);
                }
                previous = Some(a.monoid.len());
            }
            None => previous = None,
        }
    }
    unreachable!("the bound loop only exits by returning")
}
