use std::cmp::Ordering;
use std::fmt;

use super::ComplexError;

/// One maximal simplex of the complex. Slot `j` (1-based) holds the subcomplex
/// glued onto the facet that omits the `j`-th vertex of the simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    slots: Vec<Option<Box<Node>>>,
}

impl Node {
    pub fn leaf(d: usize) -> Self {
        Node { slots: vec![None; d] }
    }

    /// Slot content, `j` in `1..=d`.
    pub fn slot(&self, j: usize) -> Option<&Node> {
        self.slots[j - 1].as_deref()
    }

    pub fn set_slot(&mut self, j: usize, child: Option<Node>) {
        self.slots[j - 1] = child.map(Box::new);
    }

    pub fn slots(&self) -> impl Iterator<Item = Option<&Node>> {
        self.slots.iter().map(|s| s.as_deref())
    }

    fn size(&self) -> usize {
        1 + self.slots().flatten().map(Node::size).sum::<usize>()
    }

    fn write_encoding(&self, out: &mut String) {
        out.push('(');
        for slot in self.slots() {
            match slot {
                Some(child) => child.write_encoding(out),
                None => out.push('E'),
            }
        }
        out.push(')');
    }

    fn push_preorder(&self, out: &mut Vec<bool>) {
        out.push(true);
        for slot in self.slots() {
            match slot {
                Some(child) => child.push_preorder(out),
                None => out.push(false),
            }
        }
    }
}

/// Canonical order on slot contents: a node sorts before an empty slot, two nodes
/// compare slot by slot. This is the byte order of the text encodings.
fn cmp_slot(a: Option<&Node>, b: Option<&Node>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (Some(x), Some(y)) => x.cmp(y),
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.slots().zip(other.slots()) {
            let ord = cmp_slot(a, b);
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.slots.len().cmp(&other.slots.len())
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Decomposition tree of a rooted `d`-dimensional Fuss-Catalan complex.
///
/// Every node stands for a maximal simplex; the root is the simplex containing
/// the marked facet. The number of nodes is the index `n` of the complex, and
/// the empty tree encodes the index-0 complex consisting of the marked facet
/// alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecompositionTree {
    d: usize,
    root: Option<Node>,
}

impl DecompositionTree {
    pub fn empty(d: usize) -> Result<Self, ComplexError> {
        check_dimension(d)?;
        Ok(DecompositionTree { d, root: None })
    }

    pub fn from_root(d: usize, root: Node) -> Result<Self, ComplexError> {
        check_dimension(d)?;
        fn arity_ok(node: &Node, d: usize) -> bool {
            node.slots.len() == d && node.slots().flatten().all(|c| arity_ok(c, d))
        }
        if !arity_ok(&root, d) {
            return Err(ComplexError::DimensionMismatch {
                expected: d,
                found: root.slots.len(),
            });
        }
        Ok(DecompositionTree { d, root: Some(root) })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn root(&self) -> Option<&Node> {
        self.root.as_ref()
    }

    /// Number of nodes, i.e. the index of the complex.
    pub fn index(&self) -> usize {
        self.root.as_ref().map_or(0, Node::size)
    }

    pub fn encode(&self) -> String {
        let mut out = String::with_capacity(self.index() * (self.d + 2) + 1);
        match &self.root {
            Some(root) => root.write_encoding(&mut out),
            None => out.push('E'),
        }
        out
    }

    pub fn decode(text: &str, d: usize) -> Result<Self, ComplexError> {
        check_dimension(d)?;
        let bytes = text.as_bytes();
        let mut pos = 0;
        let root = parse_slot(bytes, &mut pos, d)?;
        if pos != bytes.len() {
            return Err(ComplexError::Parse {
                pos,
                msg: "trailing characters after tree".into(),
            });
        }
        Ok(DecompositionTree { d, root })
    }

    /// Preorder slot sequence: `true` for a node, `false` for an empty slot.
    pub fn preorder(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.index() * self.d + 1);
        match &self.root {
            Some(root) => root.push_preorder(&mut out),
            None => out.push(false),
        }
        out
    }

    pub(crate) fn from_preorder(d: usize, bits: &[bool]) -> Self {
        fn take(d: usize, bits: &[bool], pos: &mut usize) -> Option<Node> {
            let is_node = bits[*pos];
            *pos += 1;
            if !is_node {
                return None;
            }
            let slots = (0..d).map(|_| take(d, bits, pos).map(Box::new)).collect();
            Some(Node { slots })
        }
        let mut pos = 0;
        let root = take(d, bits, &mut pos);
        debug_assert_eq!(pos, bits.len());
        DecompositionTree { d, root }
    }
}

impl Ord for DecompositionTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.d
            .cmp(&other.d)
            .then_with(|| cmp_slot(self.root.as_ref(), other.root.as_ref()))
    }
}

impl PartialOrd for DecompositionTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DecompositionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

fn parse_slot(bytes: &[u8], pos: &mut usize, d: usize) -> Result<Option<Node>, ComplexError> {
    match bytes.get(*pos) {
        Some(b'E') => {
            *pos += 1;
            Ok(None)
        }
        Some(b'(') => {
            *pos += 1;
            let mut slots = Vec::with_capacity(d);
            for _ in 0..d {
                slots.push(parse_slot(bytes, pos, d)?.map(Box::new));
            }
            match bytes.get(*pos) {
                Some(b')') => {
                    *pos += 1;
                    Ok(Some(Node { slots }))
                }
                Some(_) => Err(ComplexError::Parse {
                    pos: *pos,
                    msg: format!("expected ')' after {d} slots"),
                }),
                None => Err(ComplexError::Parse {
                    pos: *pos,
                    msg: "unexpected end of input, expected ')'".into(),
                }),
            }
        }
        Some(&c) => Err(ComplexError::Parse {
            pos: *pos,
            msg: format!("unexpected character {:?}", c as char),
        }),
        None => Err(ComplexError::Parse {
            pos: *pos,
            msg: "unexpected end of input, expected 'E' or '('".into(),
        }),
    }
}

pub(crate) fn check_dimension(d: usize) -> Result<(), ComplexError> {
    if d < 2 {
        Err(ComplexError::InvalidDimension(d))
    } else {
        Ok(())
    }
}

/// Stream of all decomposition trees with `n` nodes in canonical order.
///
/// Works on the preorder slot sequence: the successor flips the last node that
/// can become an empty slot and refills the tail greedily with nodes first.
#[derive(Clone, Debug)]
pub struct TreeEnumerator {
    d: usize,
    n: usize,
    bits: Vec<bool>,
    state: EnumState,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EnumState {
    Fresh,
    Running,
    Done,
}

impl TreeEnumerator {
    pub fn new(d: usize, n: usize) -> Result<Self, ComplexError> {
        check_dimension(d)?;
        let mut bits = Vec::with_capacity(n * d + 1);
        fill_greedy(&mut bits, d, n, 1);
        Ok(TreeEnumerator {
            d,
            n,
            bits,
            state: EnumState::Fresh,
        })
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn index(&self) -> usize {
        self.n
    }

    fn advance(&mut self) -> bool {
        // (remaining nodes, pending slots) before each position
        let mut rem = self.n;
        let mut pending = 1usize;
        let mut flip = None;
        for (i, &is_node) in self.bits.iter().enumerate() {
            if is_node {
                if pending >= 2 {
                    flip = Some((i, rem, pending));
                }
                rem -= 1;
                pending += self.d - 1;
            } else {
                pending -= 1;
            }
        }
        match flip {
            Some((i, rem, pending)) => {
                self.bits.truncate(i);
                self.bits.push(false);
                fill_greedy(&mut self.bits, self.d, rem, pending - 1);
                true
            }
            None => false,
        }
    }
}

/// Completes a prefix with the least continuation: all remaining nodes first,
/// then one empty slot for every slot still open.
fn fill_greedy(bits: &mut Vec<bool>, d: usize, rem: usize, pending: usize) {
    bits.extend(std::iter::repeat_n(true, rem));
    bits.extend(std::iter::repeat_n(false, pending + rem * (d - 1)));
}

impl Iterator for TreeEnumerator {
    type Item = DecompositionTree;

    fn next(&mut self) -> Option<DecompositionTree> {
        match self.state {
            EnumState::Done => return None,
            EnumState::Fresh => self.state = EnumState::Running,
            EnumState::Running => {
                if !self.advance() {
                    self.state = EnumState::Done;
                    return None;
                }
            }
        }
        Some(DecompositionTree::from_preorder(self.d, &self.bits))
    }
}

pub fn enumerate_trees(d: usize, n: usize) -> Result<TreeEnumerator, ComplexError> {
    TreeEnumerator::new(d, n)
}
