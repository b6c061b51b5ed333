//! Finite posets of ideals: order queries, joins and meets, and the
//! hereditary-set induction scaffold.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("duplicate node {0:?}")]
    DuplicateNode(String),
    #[error("cover relation has a cycle through {0:?}")]
    Cycle(String),
    #[error("processed set is not downward closed: {0:?} is missing below {1:?}")]
    NotHereditary(String, String),
    #[error("node {0:?} is not below {1:?}")]
    NotBelow(String, String),
}

/// A finite poset given by cover edges `(lower, upper)`.
///
/// Nodes are indexed in lexicographic order of their ids; every iteration in
/// this module follows that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLattice {
    ids: Vec<String>,
    covers: Vec<(usize, usize)>,
    // leq[a][b] iff a <= b
    leq: Vec<Vec<bool>>,
}

impl IdealLattice {
    pub fn new(ids: &[String], covers: &[(String, String)]) -> Result<Self, LatticeError> {
        let mut sorted: Vec<String> = ids.to_vec();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(LatticeError::DuplicateNode(w[0].clone()));
            }
        }
        let n = sorted.len();
        let find = |s: &String| {
            sorted
                .binary_search(s)
                .map_err(|_| LatticeError::UnknownNode(s.clone()))
        };
        let mut edges = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            edges.push((find(lo)?, find(hi)?));
        }
        edges.sort();
        edges.dedup();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &edges {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for &(a, b) in &edges {
            if a == b || leq[b][a] {
                return Err(LatticeError::Cycle(sorted[a].clone()));
            }
        }
        Ok(IdealLattice {
            ids: sorted,
            covers: edges,
            leq,
        })
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(ids: &[&str], covers: &[(&str, &str)]) -> Result<Self, LatticeError> {
        let ids: Vec<String> = ids.iter().map(|s| s.to_string()).collect();
        let covers: Vec<(String, String)> = covers
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        IdealLattice::new(&ids, &covers)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index(&self, id: &str) -> Result<usize, LatticeError> {
        self.ids
            .binary_search_by(|s| s.as_str().cmp(id))
            .map_err(|_| LatticeError::UnknownNode(id.to_string()))
    }

    /// Cover edges as given (deduplicated), as index pairs.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn below(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lt(x, a)).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|x| self.leq(b, x)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|x| self.leq(x, t)))
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ub: Vec<usize> = (0..self.len())
            .filter(|&x| self.leq(a, x) && self.leq(b, x))
            .collect();
        ub.iter()
            .copied()
            .find(|&x| ub.iter().all(|&y| self.leq(x, y)))
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lb: Vec<usize> = (0..self.len())
            .filter(|&x| self.leq(x, a) && self.leq(x, b))
            .collect();
        lb.iter()
            .copied()
            .find(|&x| lb.iter().all(|&y| self.leq(y, x)))
    }

    /// First pair (in index order) lacking a join or a meet.
    pub fn lattice_witness(&self) -> Option<(usize, usize)> {
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.join(a, b).is_none() || self.meet(a, b).is_none() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_lattice(&self) -> bool {
        !self.is_empty() && self.lattice_witness().is_none()
    }

    /// First triple violating `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.join(b, c).and_then(|bc| self.meet(a, bc));
                    let rhs = match (self.meet(a, b), self.meet(a, c)) {
                        (Some(x), Some(y)) => self.join(x, y),
                        _ => None,
                    };
                    if lhs.is_none() || lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// Maximal elements among the nodes strictly below `i`.
    pub fn maximal_subideals(&self, i: usize) -> Vec<usize> {
        let below = self.below(i);
        below
            .iter()
            .copied()
            .filter(|&x| !below.iter().any(|&y| self.lt(x, y)))
            .collect()
    }

    /// Missing predecessor witness, if `set` is not downward closed.
    pub fn hereditary_witness(&self, set: &BTreeSet<usize>) -> Option<(usize, usize)> {
        for &x in set {
            if let Some(y) = self.below(x).into_iter().find(|y| !set.contains(y)) {
                return Some((y, x));
            }
        }
        None
    }

    pub fn is_hereditary(&self, set: &BTreeSet<usize>) -> bool {
        self.hereditary_witness(set).is_none()
    }

    /// The smallest-index node outside `processed` whose strict predecessors
    /// are all processed; `None` once everything is processed.
    pub fn next_ideal(&self, processed: &BTreeSet<usize>) -> Result<Option<usize>, LatticeError> {
        if let Some((y, x)) = self.hereditary_witness(processed) {
            return Err(LatticeError::NotHereditary(
                self.ids[y].clone(),
                self.ids[x].clone(),
            ));
        }
        Ok((0..self.len())
            .filter(|x| !processed.contains(x))
            .find(|&x| self.below(x).iter().all(|y| processed.contains(y))))
    }

    /// The full induction order produced by iterating [`Self::next_ideal`].
    pub fn induction_order(&self) -> Vec<usize> {
        let mut done = BTreeSet::new();
        let mut order = Vec::with_capacity(self.len());
        while let Some(x) = self.next_ideal(&done).expect("prefix is hereditary") {
            done.insert(x);
            order.push(x);
        }
        order
    }

    /// `parts[i] ∨ parts[j] = i` for every pair.
    pub fn is_comaximal_family(&self, i: usize, parts: &[usize]) -> Result<bool, LatticeError> {
        for &p in parts {
            if !self.leq(p, i) {
                return Err(LatticeError::NotBelow(
                    self.ids[p].clone(),
                    self.ids[i].clone(),
                ));
            }
        }
        for (k, &a) in parts.iter().enumerate() {
            for &b in &parts[k + 1..] {
                if self.join(a, b) != Some(i) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
