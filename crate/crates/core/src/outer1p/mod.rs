//! Upward outer-1-planarity of single-source DAGs.
//!
//! A single-source DAG is upward outer-1-planar iff it has an outer-1-planar
//! embedding whose planarization is acyclic, and that holds iff it holds for
//! every block. Each block is decomposed into its SPQR tree; every skeleton
//! gets its feasible embeddings, one is chosen per node so that no real edge
//! is moved twice, and the choices are glued back together.

mod assemble;
mod choice;
mod oracle;
mod skeleton;
mod spqr;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::dag::{blocks, Dag};
use crate::embedding::RotationSystem;
use crate::planarize::{PlanarEmbedding, PlanarizedGraph};

pub use assemble::{combine_embeddings, BlockEmbedding, InconsistentChoice};
pub use choice::{choice_is_consistent, consistent_choice};
pub use oracle::{oracle_o1p, oracle_o1p_by_planarization, oracle_o1p_witness, O1P_ORACLE_LIMIT};
pub use skeleton::{feasible_embeddings, Move, PCrossing, SkeletonEmbedding, MAX_CLASSES};
pub use spqr::{
    build_spqr, check_o1p_structure, orient_virtual_edges, structure_violation, Direction, EdgeKind, NodeKind,
    Skeleton, SkeletonEdge, SpqrError, SpqrNode, SpqrTree,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum O1pError {
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("inconsistent embedding choice: {0}")]
    InconsistentChoice(String),
}

/// The stage of the pipeline at which a block was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// An R-node that is not a suitable K4, or an oversized P-node.
    Structure,
    /// Some skeleton has no feasible embedding.
    Skeleton,
    /// No choice of feasible embeddings avoids moving a real edge twice.
    Consistency,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub stage: Stage,
    /// Index of the failing block among the graph's blocks.
    pub block: usize,
    pub detail: String,
}

/// Where a crossing came from: block index, SPQR node and its kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingSource {
    pub block: usize,
    pub node: usize,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outer1PlanarEmbedding {
    /// Planarization with dummy `n + i` at crossing `i`, its rotation system
    /// and a dart with the outer face on its left.
    pub planarized: PlanarizedGraph,
    pub provenance: Vec<CrossingSource>,
}

impl Outer1PlanarEmbedding {
    pub fn crossing_count(&self) -> usize {
        self.planarized.crossing_origin.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum O1pOutcome {
    Accepted(Outer1PlanarEmbedding),
    Rejected(Rejection),
}

impl O1pOutcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, O1pOutcome::Accepted(_))
    }
}

/// Runs the per-block pipeline; `Ok(Err(..))` is a rejection.
pub fn test_block(block: &Dag) -> Result<Result<BlockEmbedding, (Stage, String)>, O1pError> {
    let mut t = build_spqr(block).map_err(|_| O1pError::UnsupportedInput("block is not biconnected".into()))?;
    orient_virtual_edges(&mut t);
    if let Some(why) = structure_violation(&t) {
        return Ok(Err((Stage::Structure, why)));
    }
    let feasible: Vec<Vec<SkeletonEmbedding>> = (0..t.nodes.len()).map(|x| feasible_embeddings(&t, x)).collect();
    if let Some(x) = feasible.iter().position(Vec::is_empty) {
        return Ok(Err((Stage::Skeleton, format!("{:?}-node {x} has no feasible embedding", t.nodes[x].kind))));
    }
    let Some(choice) = consistent_choice(&t, &feasible) else {
        return Ok(Err((Stage::Consistency, "every choice moves some real edge twice".into())));
    };
    combine_embeddings(&t, &feasible, &choice)
        .map(Ok)
        .map_err(|e| O1pError::InconsistentChoice(e.0.into()))
}

/// Tests a connected single-source DAG for upward outer-1-planarity.
pub fn test_upward_o1p(g: &Dag) -> Result<O1pOutcome, O1pError> {
    if !g.is_acyclic() {
        return Err(O1pError::UnsupportedInput("graph has a directed cycle".into()));
    }
    if !g.is_connected() {
        return Err(O1pError::UnsupportedInput("graph is disconnected".into()));
    }
    let sources = g.sources().len();
    if sources != 1 {
        return Err(O1pError::UnsupportedInput(format!("graph has {sources} sources")));
    }
    let n = g.vertex_count();
    if g.edge_count() == 0 {
        let pg = PlanarizedGraph::from_crossings(g, &[], None).expect("valid graph");
        let emb = PlanarEmbedding { rotation: RotationSystem::new(vec![Vec::new(); n]), outer_dart: None };
        return Ok(O1pOutcome::Accepted(Outer1PlanarEmbedding {
            planarized: pg.with_embedding(emb),
            provenance: Vec::new(),
        }));
    }
    let bl = blocks(g).expect("connected");
    let mut done: Vec<BlockEmbedding> = Vec::with_capacity(bl.len());
    for (i, b) in bl.iter().enumerate() {
        match test_block(&b.dag)? {
            Ok(e) => done.push(e),
            Err((stage, detail)) => return Ok(O1pOutcome::Rejected(Rejection { stage, block: i, detail })),
        }
    }
    // global ids: crossings numbered block by block after the n vertices
    let mut pairs = Vec::new();
    let mut provenance = Vec::new();
    let mut global: Vec<Vec<Vec<usize>>> = Vec::with_capacity(bl.len());
    let mut darts = Vec::with_capacity(bl.len());
    for (i, (b, e)) in bl.iter().zip(&done).enumerate() {
        let nb = b.dag.vertex_count();
        let first = n + pairs.len();
        let map = |w: usize| if w < nb { b.vertices[w] } else { first + (w - nb) };
        for (&(x, y), &(node, kind)) in e.crossings.iter().zip(&e.sources) {
            pairs.push((b.edge_ids[x], b.edge_ids[y]));
            provenance.push(CrossingSource { block: i, node, kind });
        }
        let mut rot = vec![Vec::new(); n + pairs.len()];
        for (w, r) in e.rotation.iter().enumerate() {
            if !r.is_empty() {
                rot[map(w)] = r.iter().map(|&z| map(z)).collect();
            }
        }
        global.push(rot);
        darts.push((map(e.outer_dart.0), map(e.outer_dart.1)));
    }
    let total = n + pairs.len();
    let rotation = glue_blocks(&bl.iter().map(|b| b.vertices.clone()).collect::<Vec<_>>(), global, &darts, total)
        .map_err(|e| O1pError::InconsistentChoice(e.into()))?;
    let pg = PlanarizedGraph::from_crossings(g, &pairs, None)
        .map_err(|e| O1pError::InconsistentChoice(format!("{e:?}")))?;
    let emb = PlanarEmbedding { rotation, outer_dart: Some(darts[0]) };
    Ok(O1pOutcome::Accepted(Outer1PlanarEmbedding { planarized: pg.with_embedding(emb), provenance }))
}

/// Joins block rotations at cut vertices, inserting each new block into an
/// outer angle so that every vertex stays on the outer face.
fn glue_blocks(
    vertices: &[Vec<usize>],
    rots: Vec<Vec<Vec<usize>>>,
    darts: &[(usize, usize)],
    total: usize,
) -> Result<RotationSystem, &'static str> {
    let k = rots.len();
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut placed = vec![false; k];
    let mut present = vec![false; total];
    let put = |rotation: &mut Vec<Vec<usize>>, present: &mut Vec<bool>, r: &[Vec<usize>], skip: usize| {
        for (w, list) in r.iter().enumerate() {
            if !list.is_empty() && w != skip {
                rotation[w] = list.clone();
                present[w] = true;
            }
        }
    };
    put(&mut rotation, &mut present, &rots[0], usize::MAX);
    placed[0] = true;
    for _ in 1..k {
        let (bi, c) = (0..k)
            .filter(|&b| !placed[b])
            .find_map(|b| vertices[b].iter().find(|&&v| present[v]).map(|&v| (b, v)))
            .ok_or("blocks do not connect")?;
        // an outer angle at c: the outer face enters c along (x, c)
        let rs = RotationSystem::new(rotation.clone());
        let face = rs.face_of(darts[0].0, darts[0].1);
        let &(x, _) = face.darts.iter().find(|&&(_, y)| y == c).ok_or("cut vertex off the outer face")?;
        let i = rotation[c].iter().position(|&w| w == x).ok_or("bad rotation")?;
        let brs = RotationSystem::new(rots[bi].clone());
        let bface = brs.face_of(darts[bi].0, darts[bi].1);
        let &(y, _) = bface.darts.iter().find(|&&(_, z)| z == c).ok_or("cut vertex off its block's outer face")?;
        let br = &rots[bi][c];
        let j = br.iter().position(|&w| w == y).ok_or("bad rotation")?;
        // block sequence starting at y, inserted just before x
        let seq: Vec<usize> = (0..br.len()).map(|s| br[(j + s) % br.len()]).collect();
        rotation[c].splice(i..i, seq);
        put(&mut rotation, &mut present, &rots[bi], c);
        placed[bi] = true;
    }
    Ok(RotationSystem::new(rotation))
}

/// Independent checks of an accepted embedding: the planarization contracts
/// back to `g`, the rotation is a planar embedding of it, dummies alternate,
/// every original vertex lies on the outer face and there is no directed
/// cycle. Returns the first failed check.
pub fn check_o1p_embedding(g: &Dag, e: &Outer1PlanarEmbedding) -> Result<(), String> {
    let pg = &e.planarized;
    let Some(emb) = &pg.embedding else { return Err("no embedding".into()) };
    if pg.contract().as_ref().map(Dag::sorted_edges) != Some(g.sorted_edges()) {
        return Err("planarization does not contract to the graph".into());
    }
    let star = &pg.dag_star;
    let mut adj = star.undirected_adjacency();
    for a in &mut adj {
        a.sort_unstable();
    }
    for (v, r) in emb.rotation.rotation.iter().enumerate() {
        let mut s = r.clone();
        s.sort_unstable();
        if s != adj[v] {
            return Err(format!("rotation at {v} does not match the planarization"));
        }
    }
    if !emb.rotation.is_planar() {
        return Err("rotation system is not planar".into());
    }
    let mut per_edge = vec![0usize; g.edge_count()];
    for &(a, b) in &pg.crossing_origin {
        if a == b {
            return Err("edge crosses itself".into());
        }
        let (ea, eb) = (g.edges()[a], g.edges()[b]);
        if ea.0 == eb.0 || ea.0 == eb.1 || ea.1 == eb.0 || ea.1 == eb.1 {
            return Err("adjacent edges cross".into());
        }
        per_edge[a] += 1;
        per_edge[b] += 1;
    }
    if per_edge.iter().any(|&c| c > 1) {
        return Err("an edge is crossed twice".into());
    }
    if !pg.dummies_are_well_formed() {
        return Err("dummy rotation does not alternate".into());
    }
    if g.edge_count() > 0 {
        let outer = emb.outer_face();
        // isolated vertices cannot occur in a connected graph with edges
        if let Some(v) = (0..g.vertex_count()).find(|v| !outer.contains(v)) {
            return Err(format!("vertex {v} is not on the outer face"));
        }
    }
    if !pg.is_acyclic() {
        return Err("planarization has a directed cycle".into());
    }
    Ok(())
}
