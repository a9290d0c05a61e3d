use crate::eca::Tape;
use crate::error::{Error, Result};
use crate::stats::{count_windows, format_key};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Node {
    pub count: u64,
    pub children: [Option<u32>; 2],
}

/// Prefix tree of every length-`2L` window of a row.
///
/// The root stands for the empty prefix. The node reached by the path
/// `y_0 ... y_{d-1}` counts the windows that start with that prefix.
#[derive(Clone, Debug)]
pub struct SubTree {
    depth: usize,
    nodes: Vec<Node>,
}

/// Parse `row` with a moving window of size `2L` into a [`SubTree`].
pub fn build_subtree(row: &Tape, l: usize) -> Result<SubTree> {
    if l == 0 {
        return Err(Error::Domain("past length L must be at least 1".into()));
    }
    if row.width() < 2 * l {
        return Err(Error::WindowTooLong {
            window: 2 * l,
            width: row.width(),
        });
    }
    let windows = count_windows(row, 2 * l)?;
    let mut tree = SubTree {
        depth: 2 * l,
        nodes: vec![Node::default()],
    };
    // inserting each distinct window with its multiplicity yields the same
    // counts as walking the row one window at a time
    for (key, count) in windows.observed() {
        tree.insert(key, count);
    }
    Ok(tree)
}

impl SubTree {
    fn insert(&mut self, key: u32, count: u64) {
        let mut idx = 0usize;
        self.nodes[0].count += count;
        for level in (0..self.depth).rev() {
            let y = ((key >> level) & 1) as usize;
            idx = match self.nodes[idx].children[y] {
                Some(child) => child as usize,
                None => {
                    let child = self.nodes.len();
                    self.nodes.push(Node::default());
                    self.nodes[idx].children[y] = Some(child as u32);
                    child
                }
            };
            self.nodes[idx].count += count;
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn root(&self) -> &Node {
        &self.nodes[0]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, idx: u32) -> &Node {
        &self.nodes[idx as usize]
    }

    /// Node reached by the `len`-symbol path encoded in `key`.
    pub fn find(&self, key: u32, len: usize) -> Option<u32> {
        let mut idx = 0u32;
        for level in (0..len).rev() {
            let y = ((key >> level) & 1) as usize;
            idx = self.nodes[idx as usize].children[y]?;
        }
        Some(idx)
    }

    /// All nodes at `depth` as `(path key, node index)`, ascending key order.
    pub fn level(&self, depth: usize) -> Vec<(u32, u32)> {
        let mut frontier = vec![(0u32, 0u32)];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for (key, idx) in frontier {
                for (y, child) in self.nodes[idx as usize].children.iter().enumerate() {
                    if let Some(c) = child {
                        next.push(((key << 1) | y as u32, *c));
                    }
                }
            }
            frontier = next;
        }
        frontier
    }

    /// Counts of the `len`-symbol continuations below `node`, as a dense
    /// histogram indexed by continuation key.
    pub fn future_histogram(&self, node: u32, len: usize) -> Vec<u64> {
        let mut hist = vec![0u64; 1 << len];
        let mut frontier = vec![(0u32, node)];
        for _ in 0..len {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for (key, idx) in frontier {
                for (y, child) in self.nodes[idx as usize].children.iter().enumerate() {
                    if let Some(c) = child {
                        next.push(((key << 1) | y as u32, *c));
                    }
                }
            }
            frontier = next;
        }
        for (key, idx) in frontier {
            hist[key as usize] = self.nodes[idx as usize].count;
        }
        hist
    }

    /// Counts of the next symbol after `node`.
    pub fn next_symbol_counts(&self, node: u32) -> [u64; 2] {
        let n = &self.nodes[node as usize];
        [0, 1].map(|y| n.children[y].map_or(0, |c| self.nodes[c as usize].count))
    }

    /// Full-depth paths with their counts, as binary strings.
    pub fn paths(&self) -> Vec<(String, u64)> {
        self.level(self.depth)
            .into_iter()
            .map(|(key, idx)| (format_key(key, self.depth), self.nodes[idx as usize].count))
            .collect()
    }
}
