//! Union-find and the partitions it produces.

use serde::Serialize;

/// Disjoint-set forest over `0..len` with path compression and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind { parent: (0..len).collect(), size: vec![1; len] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut at = x;
        while self.parent[at] != root {
            let next = self.parent[at];
            self.parent[at] = root;
            at = next;
        }
        root
    }

    /// Returns whether two distinct sets were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let len = self.parent.len();
        let mut block_of_root = vec![usize::MAX; len];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for x in 0..len {
            let r = self.find(x);
            if block_of_root[r] == usize::MAX {
                block_of_root[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[block_of_root[r]].push(x);
        }
        Partition { len, blocks }
    }
}

/// A partition of `0..len` into nonempty blocks. Members are increasing within
/// a block and blocks are ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    len: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn ground_size(&self) -> usize {
        self.len
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }
}
