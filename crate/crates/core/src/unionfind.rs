// Disjoint sets with an optional parity bit on every element relative to
// its root. Plain connectivity just ignores the parity.

#[derive(Clone, Debug)]
pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    // parity of the element relative to its parent
    parity: Vec<bool>,
}

/// Outcome of a parity union.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Union {
    Merged,
    AlreadyConsistent,
    Conflict,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), rank: vec![0; n], parity: vec![false; n] }
    }

    /// Returns the root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let p = self.parent[x];
        if p == x {
            return (x, false);
        }
        let (root, par) = self.find(p);
        self.parity[x] ^= par;
        self.parent[x] = root;
        (root, self.parity[x])
    }

    #[cfg(test)]
    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a).0 == self.find(b).0
    }

    /// Records `parity(a) xor parity(b) == odd`.
    pub fn union(&mut self, a: usize, b: usize, odd: bool) -> Union {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return if pa ^ pb == odd { Union::AlreadyConsistent } else { Union::Conflict };
        }
        let (big, small) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.parity[small] = pa ^ pb ^ odd;
        if self.rank[big] == self.rank[small] {
            self.rank[big] += 1;
        }
        Union::Merged
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cycle_conflicts() {
        let mut uf = ParityUnionFind::new(3);
        assert_eq!(uf.union(0, 1, true), Union::Merged);
        assert_eq!(uf.union(1, 2, true), Union::Merged);
        assert_eq!(uf.union(2, 0, true), Union::Conflict);
        assert_eq!(uf.union(2, 0, false), Union::AlreadyConsistent);
        assert!(!(uf.find(0).1 ^ uf.find(2).1));
    }

    #[test]
    fn parity_is_relative_to_root() {
        let mut uf = ParityUnionFind::new(4);
        uf.union(0, 1, true);
        uf.union(2, 3, true);
        uf.union(1, 3, false);
        let p: Vec<bool> = (0..4).map(|i| uf.find(i).1).collect();
        assert_ne!(p[0], p[1]);
        assert_ne!(p[2], p[3]);
        assert_eq!(p[1], p[3]);
        assert!(uf.same(0, 2));
    }
}
