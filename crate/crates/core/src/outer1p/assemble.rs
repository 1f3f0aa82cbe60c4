//! Gluing chosen skeleton embeddings into one embedding of the block.
//!
//! Every skeleton embedding is written as a rotation system over keyed
//! segments, so parallel edges of bonds stay distinguishable. Extension moves
//! first take real edges out of S-skeletons into the P-skeletons where they
//! cross. Skeletons are then merged by 2-clique sums along virtual edges,
//! mirroring the incoming piece when needed so that outer faces meet.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::skeleton::{Move, SkeletonEmbedding};
use super::spqr::{EdgeKind, NodeKind, SpqrTree};

type Entry = (EdgeKind, usize);
type Dart = (usize, Entry);

#[derive(Debug, Clone)]
struct KeyedRotation {
    rot: BTreeMap<usize, Vec<Entry>>,
    /// A dart whose left face is the outer face.
    outer: Dart,
}

impl KeyedRotation {
    fn next(&self, (w, (k, z)): Dart) -> Dart {
        let r = &self.rot[&z];
        let i = r.iter().position(|&e| e == (k, w)).expect("segment listed at both ends");
        (z, r[(i + r.len() - 1) % r.len()])
    }

    fn face(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut cur = self.next(d);
        while cur != d {
            out.push(cur);
            cur = self.next(cur);
        }
        out
    }

    fn mirror(&mut self) {
        for r in self.rot.values_mut() {
            r.reverse();
        }
        let (w, (k, z)) = self.outer;
        self.outer = (z, (k, w));
    }
}

/// A block embedding: rotation over block vertices then dummies, crossing
/// pairs of block edges in dummy order with the node that produced each,
/// and a dart with the outer face on its left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockEmbedding {
    pub rotation: Vec<Vec<usize>>,
    pub crossings: Vec<(usize, usize)>,
    pub sources: Vec<(usize, NodeKind)>,
    pub outer_dart: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InconsistentChoice(pub &'static str);

/// Extends the chosen P-node embeddings and folds all skeletons together.
pub fn combine_embeddings(
    t: &SpqrTree,
    feasible: &[Vec<SkeletonEmbedding>],
    choice: &[usize],
) -> Result<BlockEmbedding, InconsistentChoice> {
    let nb = t.block.vertex_count();
    if t.nodes.is_empty() {
        let (u, v) = t.block.edges()[0];
        let mut rotation = vec![Vec::new(); nb];
        rotation[u].push(v);
        rotation[v].push(u);
        return Ok(BlockEmbedding { rotation, crossings: Vec::new(), sources: Vec::new(), outer_dart: (u, v) });
    }
    let chosen: Vec<&SkeletonEmbedding> = (0..t.nodes.len()).map(|x| &feasible[x][choice[x]]).collect();
    let mut crossings = Vec::new();
    let mut sources = Vec::new();
    for (x, e) in chosen.iter().enumerate() {
        for c in e.real_crossings(t, x) {
            crossings.push(c);
            sources.push((x, t.nodes[x].kind));
        }
    }
    // S-cycles after the moves
    let mut moves_into: BTreeMap<usize, Vec<Move>> = BTreeMap::new();
    for (x, e) in chosen.iter().enumerate() {
        for m in e.moves() {
            moves_into.entry(t.refn(x, m.vid)).or_default().push(m);
        }
    }
    let mut pieces: Vec<KeyedRotation> = Vec::with_capacity(t.nodes.len());
    let mut dummy = nb;
    for (x, e) in chosen.iter().enumerate() {
        let piece = match e {
            SkeletonEmbedding::Cycle => {
                cycle_piece(t, x, moves_into.get(&x).map(Vec::as_slice).unwrap_or(&[]))?
            }
            SkeletonEmbedding::K4 { outer, diagonals } => {
                dummy += 1;
                k4_piece(t, x, *outer, *diagonals, dummy - 1)
            }
            SkeletonEmbedding::Bond { .. } => {
                let before = dummy;
                dummy += e.real_crossings(t, x).len();
                bond_piece(t, x, e, before)
            }
        };
        pieces.push(piece);
    }
    let mut poles: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for p in &pieces {
        for (&w, r) in &p.rot {
            for &(k, z) in r {
                if let EdgeKind::Virtual(id) = k {
                    poles.insert(id, (w.min(z), w.max(z)));
                }
            }
        }
    }
    let mut merged = pieces[0].clone();
    let mut seen = vec![false; t.nodes.len()];
    seen[0] = true;
    let mut q = VecDeque::from([0]);
    while let Some(x) = q.pop_front() {
        for (vid, y) in t.neighbors(x) {
            if seen[y] {
                continue;
            }
            seen[y] = true;
            q.push_back(y);
            splice(&mut merged, pieces[y].clone(), vid, poles[&vid])?;
        }
    }
    let mut rotation = vec![Vec::new(); dummy];
    for (w, r) in merged.rot {
        for (k, z) in r {
            if matches!(k, EdgeKind::Virtual(_)) {
                return Err(InconsistentChoice("virtual edge left after merging"));
            }
            rotation[w].push(z);
        }
    }
    let (w, (_, z)) = merged.outer;
    Ok(BlockEmbedding { rotation, crossings, sources, outer_dart: (w, z) })
}

fn cycle_piece(t: &SpqrTree, x: usize, moves: &[Move]) -> Result<KeyedRotation, InconsistentChoice> {
    let sk = &t.nodes[x].skeleton;
    let mut verts = sk.vertices.clone();
    let mut keys: Vec<EdgeKind> = sk.edges.iter().map(|e| e.kind).collect();
    for m in moves {
        let l = keys.len();
        let j = keys.iter().position(|&k| k == EdgeKind::Virtual(m.vid)).ok_or(InconsistentChoice("move"))?;
        verts.rotate_left((j + l - 1) % l);
        keys.rotate_left((j + l - 1) % l);
        // keys[1] is the virtual edge, joining verts[1] and verts[2]
        let (drop_key, drop_vertex) = if verts[1] == m.pole {
            (0, 1)
        } else if verts[2 % l] == m.pole {
            (2 % l, 2 % l)
        } else {
            return Err(InconsistentChoice("moved edge not at the pole"));
        };
        if keys[drop_key] != EdgeKind::Real(m.real) || l < 3 {
            return Err(InconsistentChoice("moved edge is not the first segment"));
        }
        keys.remove(drop_key);
        verts.remove(drop_vertex);
    }
    let l = keys.len();
    let mut rot = BTreeMap::new();
    for i in 0..l {
        let (prev, next) = (verts[(i + l - 1) % l], verts[(i + 1) % l]);
        rot.insert(verts[i], vec![(keys[i], next), (keys[(i + l - 1) % l], prev)]);
    }
    Ok(KeyedRotation { rot, outer: (verts[0], (keys[0], verts[1 % l])) })
}

fn k4_piece(t: &SpqrTree, x: usize, outer: [usize; 4], (i, j): (usize, usize), d: usize) -> KeyedRotation {
    let edges = &t.nodes[x].skeleton.edges;
    let key_between = |p: usize, q: usize| {
        edges.iter().find(|e| (e.a == p && e.b == q) || (e.a == q && e.b == p)).expect("K4").kind
    };
    let diag = |p: usize| if p == outer[0] || p == outer[2] { edges[i].kind } else { edges[j].kind };
    let mut rot = BTreeMap::new();
    for s in 0..4 {
        let (p, next, prev) = (outer[s], outer[(s + 1) % 4], outer[(s + 3) % 4]);
        rot.insert(p, vec![(key_between(p, next), next), (diag(p), d), (key_between(p, prev), prev)]);
    }
    rot.insert(d, outer.iter().map(|&p| (diag(p), p)).collect());
    let (a, dd) = (outer[0], outer[3]);
    KeyedRotation { rot, outer: (a, (key_between(a, dd), dd)) }
}

fn bond_piece(t: &SpqrTree, x: usize, e: &SkeletonEmbedding, first_dummy: usize) -> KeyedRotation {
    let SkeletonEmbedding::Bond { poles: (u, v), order, left, right } = e else { unreachable!() };
    let (u, v) = (*u, *v);
    let edges = &t.nodes[x].skeleton.edges;
    let k = order.len();
    // entries left to right at u and at v
    let mut at_u: Vec<Entry> = order.iter().map(|&i| (edges[i].kind, v)).collect();
    let mut at_v: Vec<Entry> = order.iter().map(|&i| (edges[i].kind, u)).collect();
    let mut rot = BTreeMap::new();
    let mut d = first_dummy;
    for (c, is_left) in left.iter().map(|c| (c, true)).chain(right.iter().map(|c| (c, false))) {
        let (mu, mv) = (c.move_u, c.move_v);
        let (c1, c2) = (mu.far, mv.far);
        let (su, sv) = if is_left { (0, 1) } else { (k - 1, k - 2) };
        // u-side: outer_u continues as its shortened virtual edge, outer_v
        // starts with its moved edge into the crossing
        at_u[su] = (EdgeKind::Virtual(mu.vid), c1);
        at_u[sv] = (EdgeKind::Real(mv.real), d);
        // v-side positions are swapped by the crossing
        at_v[su] = (EdgeKind::Virtual(mv.vid), c2);
        at_v[sv] = (EdgeKind::Real(mu.real), d);
        rot.insert(c1, vec![(EdgeKind::Virtual(mu.vid), u), (EdgeKind::Real(mu.real), d)]);
        rot.insert(c2, vec![(EdgeKind::Real(mv.real), d), (EdgeKind::Virtual(mv.vid), v)]);
        let (ru, rv) = (EdgeKind::Real(mu.real), EdgeKind::Real(mv.real));
        let around = if is_left {
            vec![(ru, v), (rv, c2), (ru, c1), (rv, u)]
        } else {
            vec![(ru, v), (rv, u), (ru, c1), (rv, c2)]
        };
        rot.insert(d, around);
        d += 1;
    }
    // counterclockwise: right to left at the bottom pole, left to right at the top
    let mut ru = at_u.clone();
    ru.reverse();
    let outer = (u, *ru.last().expect("bond has edges"));
    rot.insert(u, ru);
    rot.insert(v, at_v);
    KeyedRotation { rot, outer }
}

/// 2-clique sum of `piece` into `merged` along virtual edge `vid`.
fn splice(
    merged: &mut KeyedRotation,
    mut piece: KeyedRotation,
    vid: usize,
    (p, q): (usize, usize),
) -> Result<(), InconsistentChoice> {
    let key = EdgeKind::Virtual(vid);
    let outer_m = merged.face(merged.outer);
    let pq: Dart = (p, (key, q));
    let qp: Dart = (q, (key, p));
    // the face left of p->q in `merged` meets the face left of q->p in `piece`
    let need = if outer_m.contains(&pq) {
        qp
    } else if outer_m.contains(&qp) {
        pq
    } else {
        return Err(InconsistentChoice("virtual edge off the outer face"));
    };
    if !piece.face(piece.outer).contains(&need) {
        piece.mirror();
        if !piece.face(piece.outer).contains(&need) {
            return Err(InconsistentChoice("virtual edge off the outer face of its piece"));
        }
    }
    let outer_p = piece.face(piece.outer);
    let candidates: Vec<Dart> =
        outer_m.iter().chain(outer_p.iter()).copied().filter(|&(_, (k, _))| k != key).collect();
    for (w, z) in [(p, q), (q, p)] {
        let pr = piece.rot.remove(&w).ok_or(InconsistentChoice("pole missing"))?;
        let i = pr.iter().position(|&e| e == (key, z)).ok_or(InconsistentChoice("pole entry"))?;
        let seq: Vec<Entry> = (1..pr.len()).map(|s| pr[(i + s) % pr.len()]).collect();
        let mr = merged.rot.get_mut(&w).ok_or(InconsistentChoice("pole missing"))?;
        let j = mr.iter().position(|&e| e == (key, z)).ok_or(InconsistentChoice("pole entry"))?;
        mr.splice(j..=j, seq);
    }
    for (w, r) in piece.rot {
        if merged.rot.insert(w, r).is_some() {
            return Err(InconsistentChoice("skeletons share a non-pole vertex"));
        }
    }
    let real = candidates.iter().find(|&&(_, (k, _))| matches!(k, EdgeKind::Real(_)));
    merged.outer = *real.or(candidates.first()).ok_or(InconsistentChoice("empty outer face"))?;
    Ok(())
}
