use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use super::{bit, elements, Mode, Partition, PartitionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeetingEdge {
    /// Class index in the left partition.
    pub left: usize,
    /// Class index in the right partition.
    pub right: usize,
    /// The shared element witnessing the edge.
    pub element: usize,
}

/// Bipartite multigraph between the classes of two partitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeetingGraph {
    pub arity: usize,
    pub mode: Mode,
    pub left_classes: Vec<Vec<usize>>,
    pub right_classes: Vec<Vec<usize>>,
    pub edges: Vec<MeetingEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphShape {
    Tree,
    Cyclic,
    Disconnected,
    CyclicAndDisconnected,
}

impl MeetingGraph {
    pub fn vertex_count(&self) -> usize {
        self.left_classes.len() + self.right_classes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn vertex(&self, side: Side, index: usize) -> usize {
        match side {
            Side::Left => index,
            Side::Right => self.left_classes.len() + index,
        }
    }

    pub fn component_count(&self) -> usize {
        let v = self.vertex_count();
        let mut adj = vec![Vec::new(); v];
        for e in &self.edges {
            let a = self.vertex(Side::Left, e.left);
            let b = self.vertex(Side::Right, e.right);
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; v];
        let mut components = 0;
        for start in 0..v {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        components
    }

    pub fn shape(&self) -> GraphShape {
        let components = self.component_count();
        // A multigraph is a forest iff |E| = |V| - #components.
        let acyclic = self.edge_count() + components == self.vertex_count();
        match (acyclic, components == 1) {
            (true, true) => GraphShape::Tree,
            (false, true) => GraphShape::Cyclic,
            (true, false) => GraphShape::Disconnected,
            (false, false) => GraphShape::CyclicAndDisconnected,
        }
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.vertex_count() && self.component_count() == 1
    }
}

fn same_arity(p: &Partition, q: &Partition) -> Result<(), PartitionError> {
    if p.arity() != q.arity() {
        return Err(PartitionError::ArityMismatch { left: p.arity(), right: q.arity() });
    }
    Ok(())
}

/// Elements whose polarity is the same in `p` and `q`; in polarized mode
/// these produce no edge and cannot be cut.
fn same_polarity(p: &Partition, q: &Partition) -> u32 {
    !(p.checked_mask() ^ q.checked_mask()) & super::full_mask(p.arity())
}

pub fn meeting_graph(p: &Partition, q: &Partition, mode: Mode) -> Result<MeetingGraph, PartitionError> {
    same_arity(p, q)?;
    let skip = match mode {
        Mode::Unpolarized => 0,
        Mode::Polarized => same_polarity(p, q),
    };
    let edges = (1..=p.arity())
        .filter(|&e| skip & bit(e) == 0)
        .map(|e| MeetingEdge { left: p.class_of(e), right: q.class_of(e), element: e })
        .collect();
    Ok(MeetingGraph { arity: p.arity(), mode, left_classes: p.classes(), right_classes: q.classes(), edges })
}

/// Outcome of an orthogonality test with enough detail for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub orthogonal: bool,
    pub vertices: usize,
    pub edges: usize,
    pub shape: GraphShape,
    /// Polarized mode only: elements with the same polarity on both sides.
    pub uncut: Vec<usize>,
}

impl fmt::Display for OrthogonalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = match self.shape {
            GraphShape::Tree => "tree",
            GraphShape::Cyclic => "cycle",
            GraphShape::Disconnected => "disconnected",
            GraphShape::CyclicAndDisconnected => "cycle, disconnected",
        };
        let verdict = if self.orthogonal { "orthogonal" } else { "not orthogonal" };
        write!(f, "{verdict} ({shape}: {} vertices, {} edges", self.vertices, self.edges)?;
        if !self.uncut.is_empty() {
            let list: Vec<String> = self.uncut.iter().map(|e| e.to_string()).collect();
            write!(f, "; same polarity on both sides at {}", list.join(", "))?;
        }
        write!(f, ")")
    }
}

/// Orthogonality with diagnostics. Polarized orthogonality additionally
/// requires every element to be checked on exactly one side.
pub fn orthogonality(p: &Partition, q: &Partition, mode: Mode) -> Result<OrthogonalityReport, PartitionError> {
    let graph = meeting_graph(p, q, mode)?;
    let uncut: Vec<usize> = match mode {
        Mode::Unpolarized => Vec::new(),
        Mode::Polarized => elements(same_polarity(p, q)).collect(),
    };
    let shape = graph.shape();
    Ok(OrthogonalityReport {
        orthogonal: shape == GraphShape::Tree && uncut.is_empty(),
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        shape,
        uncut,
    })
}

/// `p ⊥ q`: the meeting graph is a tree.
pub fn is_orthogonal(p: &Partition, q: &Partition, mode: Mode) -> Result<bool, PartitionError> {
    same_arity(p, q)?;
    Ok(orthogonal_unchecked(p, q, mode))
}

/// Allocation-free tree test on bitsets; arities are equal by contract.
pub(crate) fn orthogonal_unchecked(p: &Partition, q: &Partition, mode: Mode) -> bool {
    if mode == Mode::Polarized && same_polarity(p, q) != 0 {
        return false;
    }
    let (pc, qc) = (p.class_masks(), q.class_masks());
    if pc.len() + qc.len() != p.arity() + 1 {
        return false;
    }
    // Grow the component of p's first class through shared elements.
    let mut reached_p = 1u64;
    let mut reached_q = 0u64;
    let mut covered = pc[0];
    loop {
        let mut grew = false;
        for (j, &c) in qc.iter().enumerate() {
            if reached_q >> j & 1 == 0 && c & covered != 0 {
                reached_q |= 1 << j;
                covered |= c;
                grew = true;
            }
        }
        for (i, &c) in pc.iter().enumerate() {
            if reached_p >> i & 1 == 0 && c & covered != 0 {
                reached_p |= 1 << i;
                covered |= c;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    reached_p.count_ones() as usize == pc.len() && reached_q.count_ones() as usize == qc.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutStep {
    pub element: usize,
    /// Sequent (component) ids being joined, before the cut.
    pub joined: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CutMergeOutcome {
    /// All cuts joined distinct sequents and one sequent remains.
    Success,
    /// The cut at `step` (1-based) would merge a sequent with itself.
    Cycle { step: usize, element: usize },
    /// Cuts completed but several sequents remain.
    Disconnected { sequents: usize },
    /// Polarized mode: the element sits on the same side in both rules.
    Uncuttable { element: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutMergeReport {
    pub steps: Vec<CutStep>,
    pub outcome: CutMergeOutcome,
}

impl CutMergeReport {
    pub fn succeeded(&self) -> bool {
        self.outcome == CutMergeOutcome::Success
    }
}

impl fmt::Display for CutMergeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            CutMergeOutcome::Success => {
                write!(f, "success: single merged sequent after {} cuts", self.steps.len())
            }
            CutMergeOutcome::Cycle { step, element } => {
                write!(f, "failure: cut {step} on element {element} would merge a sequent with itself (cycle)")
            }
            CutMergeOutcome::Disconnected { sequents } => {
                write!(f, "failure: {sequents} sequents remain after all cuts (disconnected)")
            }
            CutMergeOutcome::Uncuttable { element } => {
                write!(f, "failure: element {element} has the same polarity on both sides")
            }
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns false when both are already in the same set.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[rb] = ra;
        true
    }
}

/// Replays the main cut-reduction step: one abstract premise sequent per
/// class of `p` and of `q`, then one atomic cut per element (in increasing
/// order), each merging the two sequents that contain it.
pub fn simulate_cut_merge(p: &Partition, q: &Partition, mode: Mode) -> Result<CutMergeReport, PartitionError> {
    same_arity(p, q)?;
    let offset = p.num_classes();
    let mut sequents = UnionFind::new(offset + q.num_classes());
    let mut steps = Vec::new();
    for element in 1..=p.arity() {
        if mode == Mode::Polarized && p.is_checked(element) == q.is_checked(element) {
            return Ok(CutMergeReport { steps, outcome: CutMergeOutcome::Uncuttable { element } });
        }
        let a = sequents.find(p.class_of(element));
        let b = sequents.find(offset + q.class_of(element));
        if !sequents.union(a, b) {
            let step = steps.len() + 1;
            return Ok(CutMergeReport { steps, outcome: CutMergeOutcome::Cycle { step, element } });
        }
        steps.push(CutStep { element, joined: (a, b) });
    }
    let total = offset + q.num_classes();
    let roots = (0..total).filter(|&x| sequents.find(x) == x).count();
    let outcome = if roots == 1 { CutMergeOutcome::Success } else { CutMergeOutcome::Disconnected { sequents: roots } };
    Ok(CutMergeReport { steps, outcome })
}
