//! The 3-Partition reduction: the graphs `G_A` (parallel chains) and `G_B`
//! (parallel paths), the hard instances wired with barriers, and the
//! combinatorial crossing witness built from a solution.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::gadgets::{add_chain, add_parallel, Gadget, GateEdges};
use super::{Builder, GeneratorError};
use crate::dag::Dag;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    pub elements: Vec<u64>,
    /// Number of bins, `k / 3`.
    pub b: usize,
    /// Target sum of every bin.
    pub w: u64,
}

impl ThreePartitionInstance {
    pub fn new(elements: Vec<u64>) -> Result<Self, GeneratorError> {
        let k = elements.len();
        if k == 0 || k % 3 != 0 {
            return Err(GeneratorError::InvalidInstance(format!("{k} elements is not a positive multiple of 3")));
        }
        if elements.contains(&0) {
            return Err(GeneratorError::InvalidInstance("elements must be positive".into()));
        }
        let b = k / 3;
        let total: u64 = elements.iter().sum();
        if total % b as u64 != 0 {
            return Err(GeneratorError::InvalidInstance(format!("sum {total} is not divisible by {b}")));
        }
        Ok(ThreePartitionInstance { elements, b, w: total / b as u64 })
    }

    /// One line of space-separated positive integers.
    pub fn parse(text: &str) -> Result<Self, GeneratorError> {
        let elements = text
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| GeneratorError::InvalidInstance(format!("not an integer: {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        ThreePartitionInstance::new(elements)
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    /// Length of every path of `G_B`: `W + (k - 3)(W + 1)`.
    pub fn path_length(&self) -> usize {
        (self.w + (self.k() as u64 - 3) * (self.w + 1)) as usize
    }
}

/// Wirings of the hard instance around `G_A` and `G_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionCase {
    /// Series-parallel, one source and one sink: barriers `s_A -> s_B`,
    /// `s_B -> t_A` and `t_A -> t_B`.
    SeriesParallel = 1,
    /// A subdivided K4 with one source and one sink: on the K4 with corners
    /// `s_A, t_A, s_B, t_B`, the edge `s_A t_A` becomes `G_A`, `s_B t_B`
    /// becomes `G_B`, `s_A -> t_B` and `s_B -> t_A` become barriers, and the
    /// edges `s_A s_B` and `t_A t_B` become two barriers each, meeting at a
    /// new source `S` and a new sink `T`.
    K4Pattern = 2,
    /// Series-parallel with one source and two sinks: barriers `S -> s_A`,
    /// `S -> s_B`, `s_A -> t_B` and `s_B -> t_A`; the sinks are `t_A, t_B`.
    TwoSinks = 3,
}

impl ReductionCase {
    pub fn from_number(c: u8) -> Option<Self> {
        match c {
            1 => Some(ReductionCase::SeriesParallel),
            2 => Some(ReductionCase::K4Pattern),
            3 => Some(ReductionCase::TwoSinks),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionGraphs {
    pub instance: ThreePartitionInstance,
    pub case: ReductionCase,
    /// Parallel composition of `k` `(b-1, W+1, a_i)`-chains.
    pub g_a: Gadget,
    /// A `(b, q)`-parallel.
    pub g_b: Gadget,
    /// `gate_index[i][j]`: the `j`-th gate (from `s_A`) of chain `i`, as
    /// edge ids of `g_a`; the `(a_i)`-gate sits at `j = b - 1`.
    pub gate_index: Vec<Vec<GateEdges>>,
    /// Edge ids of `g_b` along each of its paths, from `s_B`.
    pub b_paths: Vec<Vec<usize>>,
    /// Edges of `g_a` come first, then those of `g_b`, then the barriers.
    pub hard_instance: Dag,
    pub a_in_hard: Vec<usize>,
    pub b_in_hard: Vec<usize>,
    /// Poles of every barrier in `hard_instance`.
    pub barriers: Vec<(usize, usize)>,
    /// Paths per barrier: `m_A + m_B + 1`.
    pub barrier_width: usize,
}

pub fn gen_reduction(inst: &ThreePartitionInstance, case: ReductionCase) -> Result<ReductionGraphs, GeneratorError> {
    let (b, w, k) = (inst.b, inst.w as usize, inst.k());
    if b < 2 {
        return Err(GeneratorError::InvalidInstance("at least two bins are needed for simple chains".into()));
    }
    let mut ga = Builder::default();
    let (sa, ta) = (ga.vertex("sA"), ga.vertex("tA"));
    let mut gates: Vec<Vec<GateEdges>> = Vec::with_capacity(k);
    for (i, &a) in inst.elements.iter().enumerate() {
        gates.push(add_chain(&mut ga, sa, ta, b - 1, w + 1, a as usize, &format!("c{}.", i + 1)));
    }
    let (ga_dag, ga_map) = ga.finish(sa);
    let g_a = Gadget { dag: ga_dag, s: ga_map[sa], t: ga_map[ta] };

    let mut gb = Builder::default();
    let (sb, tb) = (gb.vertex("sB"), gb.vertex("tB"));
    let b_paths = add_parallel(&mut gb, sb, tb, b, inst.path_length(), "");
    let (gb_dag, gb_map) = gb.finish(sb);
    let g_b = Gadget { dag: gb_dag, s: gb_map[sb], t: gb_map[tb] };

    let d = g_a.dag.edge_count() + g_b.dag.edge_count() + 1;
    let mut h = Builder::default();
    let amap = h.absorb(&g_a.dag, "A.");
    let bmap = h.absorb(&g_b.dag, "B.");
    let (s_a, t_a, s_b, t_b) = (amap[g_a.s], amap[g_a.t], bmap[g_b.s], bmap[g_b.t]);
    let (root, poles) = match case {
        ReductionCase::SeriesParallel => (s_a, vec![(s_a, s_b), (s_b, t_a), (t_a, t_b)]),
        ReductionCase::K4Pattern => {
            let s = h.vertex("S");
            let t = h.vertex("T");
            (s, vec![(s, s_a), (s, s_b), (s_a, t_b), (s_b, t_a), (t_a, t), (t_b, t)])
        }
        ReductionCase::TwoSinks => {
            let s = h.vertex("S");
            (s, vec![(s, s_a), (s, s_b), (s_a, t_b), (s_b, t_a)])
        }
    };
    for (i, &(x, y)) in poles.iter().enumerate() {
        add_parallel(&mut h, x, y, d, 2, &format!("X{}.", i + 1));
    }
    let (hard, hmap) = h.finish(root);
    Ok(ReductionGraphs {
        instance: inst.clone(),
        case,
        g_a,
        g_b,
        gate_index: gates,
        b_paths,
        hard_instance: hard,
        a_in_hard: amap.iter().map(|&v| hmap[v]).collect(),
        b_in_hard: bmap.iter().map(|&v| hmap[v]).collect(),
        barriers: poles.iter().map(|&(x, y)| (hmap[x], hmap[y])).collect(),
        barrier_width: d,
    })
}

/// For every path of `G_B`, the `G_A` edges it crosses in order, each
/// paired with the position (from `s_B`) of the path edge crossing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingAssignment {
    pub crossings: Vec<Vec<(usize, usize)>>,
    /// Element indices of each bin, bin `j` belonging to path `j`.
    pub bins: Vec<[usize; 3]>,
}

/// Maps bins given by element values to element indices.
pub fn bins_from_values(inst: &ThreePartitionInstance, bins: &[Vec<u64>]) -> Result<Vec<[usize; 3]>, GeneratorError> {
    let mut used = vec![false; inst.k()];
    let mut out = Vec::with_capacity(bins.len());
    for bin in bins {
        if bin.len() != 3 {
            return Err(GeneratorError::NotASolution(format!("bin {bin:?} does not have three elements")));
        }
        let mut idx = [0usize; 3];
        for (slot, &x) in bin.iter().enumerate() {
            let i = (0..inst.k())
                .find(|&i| !used[i] && inst.elements[i] == x)
                .ok_or_else(|| GeneratorError::NotASolution(format!("no unused element {x}")))?;
            used[i] = true;
            idx[slot] = i;
        }
        out.push(idx);
    }
    Ok(out)
}

/// Routes each path through the gates dictated by `bins`: path `j` passes
/// the `(a)`-gate of every element of bin `j`, and the chain of any other
/// element below its `(a)`-gate if that element's bin comes later, above it
/// otherwise. Sums are not checked, so unsolvable partitions yield
/// assignments that fail verification.
pub fn route_partition(r: &ReductionGraphs, bins: &[[usize; 3]]) -> Result<CrossingAssignment, GeneratorError> {
    let (b, k) = (r.instance.b, r.instance.k());
    if bins.len() != b {
        return Err(GeneratorError::NotASolution(format!("{} bins for {b} paths", bins.len())));
    }
    let mut owner = vec![usize::MAX; k];
    for (j, bin) in bins.iter().enumerate() {
        for &i in bin {
            if i >= k || owner[i] != usize::MAX {
                return Err(GeneratorError::NotASolution(format!("element index {i} is missing or repeated")));
            }
            owner[i] = j;
        }
    }
    let crossings = (0..b)
        .map(|j| {
            let mut list = Vec::new();
            for (nu, chain) in r.gate_index.iter().enumerate() {
                let h = owner[nu];
                let pos = if h == j {
                    b - 1
                } else if h > j {
                    j
                } else {
                    b - 1 + j
                };
                for e in chain[pos].cut() {
                    list.push((e, list.len()));
                }
            }
            list
        })
        .collect();
    Ok(CrossingAssignment { crossings, bins: bins.to_vec() })
}

/// [`route_partition`] for a genuine solution: every bin must sum to `W`.
pub fn route_solution(r: &ReductionGraphs, bins: &[[usize; 3]]) -> Result<CrossingAssignment, GeneratorError> {
    for bin in bins {
        let sum: u64 = bin.iter().map(|&i| r.instance.elements.get(i).copied().unwrap_or(0)).sum();
        if sum != r.instance.w {
            return Err(GeneratorError::NotASolution(format!("bin {bin:?} sums to {sum}, not {}", r.instance.w)));
        }
    }
    route_partition(r, bins)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AssignmentReport {
    pub issues: Vec<String>,
}

impl AssignmentReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Checks the crossing budget and gate structure of an assignment.
pub fn verify_assignment(r: &ReductionGraphs, a: &CrossingAssignment) -> AssignmentReport {
    let inst = &r.instance;
    let (b, k, q) = (inst.b, inst.k(), inst.path_length());
    let mut issues = Vec::new();
    if a.crossings.len() != b {
        issues.push(format!("{} paths routed, expected {b}", a.crossings.len()));
        return AssignmentReport { issues };
    }
    // where every G_A edge lives: (chain, gate, which cut slot)
    let m = r.g_a.dag.edge_count();
    let mut home = vec![(usize::MAX, usize::MAX, usize::MAX); m];
    for (i, chain) in r.gate_index.iter().enumerate() {
        for (j, gate) in chain.iter().enumerate() {
            home[gate.direct] = (i, j, 0);
            for (p, path) in gate.paths.iter().enumerate() {
                for &e in path {
                    home[e] = (i, j, p + 1);
                }
            }
        }
    }
    let mut hits = vec![0usize; m];
    // gate position per chain and path
    let mut pos = vec![vec![usize::MAX; b]; k];
    let mut encoded: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); b];
    for (j, list) in a.crossings.iter().enumerate() {
        let mut seen_pos = vec![0usize; q];
        let mut stray = 0;
        for &(e, p) in list {
            if e >= m {
                issues.push(format!("path {j}: edge {e} is not in G_A"));
                continue;
            }
            hits[e] += 1;
            if p < q {
                seen_pos[p] += 1;
            } else {
                stray += 1;
            }
        }
        if stray > 0 || seen_pos.iter().any(|&c| c != 1) {
            issues.push(format!(
                "path {j}: {} crossings for {q} edges, edges crossed other than once: {}",
                list.len(),
                seen_pos.iter().filter(|&&c| c != 1).count() + stray
            ));
        }
        // per chain: exactly one gate, crossed through all of its paths
        let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
        for &(e, _) in list {
            if e < m {
                let (i, g, s) = home[e];
                slots[i].push((g, s));
            }
        }
        let (mut a_gates, mut q_gates) = (0, 0);
        for (i, sl) in slots.iter().enumerate() {
            let gates: BTreeSet<usize> = sl.iter().map(|&(g, _)| g).collect();
            if gates.len() != 1 {
                issues.push(format!("path {j}: chain {i} crossed at {} gates", gates.len()));
                continue;
            }
            let g = *gates.iter().next().unwrap();
            let width = r.gate_index[i][g].paths.len() + 1;
            let used: BTreeSet<usize> = sl.iter().map(|&(_, s)| s).collect();
            if used.len() != width || sl.len() != width {
                issues.push(format!("path {j}: gate {g} of chain {i} is not passed through"));
            }
            pos[i][j] = g;
            if g == b - 1 {
                a_gates += 1;
                encoded[j].insert(i);
            } else {
                q_gates += 1;
            }
        }
        if a_gates != 3 || q_gates != k - 3 {
            issues.push(format!("path {j}: {a_gates} element gates and {q_gates} other gates"));
        }
    }
    for (e, &c) in hits.iter().enumerate() {
        if c > 1 {
            issues.push(format!("G_A edge {e} crossed {c} times"));
        }
    }
    for (i, p) in pos.iter().enumerate() {
        if p.iter().all(|&x| x != usize::MAX) && p.windows(2).any(|w| w[0] >= w[1]) {
            issues.push(format!("chain {i}: paths pass its gates out of order"));
        }
    }
    // the bins the crossings encode
    for (j, set) in encoded.iter().enumerate() {
        let sum: u64 = set.iter().map(|&i| inst.elements[i]).sum();
        if set.len() == 3 && sum != inst.w {
            issues.push(format!("path {j}: encoded bin sums to {sum}, not {}", inst.w));
        }
        let claimed: Option<BTreeSet<usize>> = a.bins.get(j).map(|bin| bin.iter().copied().collect());
        if claimed.as_ref() != Some(set) {
            issues.push(format!("path {j}: crossings encode bin {set:?}, claimed {claimed:?}"));
        }
    }
    AssignmentReport { issues }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig_instance() -> ThreePartitionInstance {
        ThreePartitionInstance::new(vec![1, 1, 1, 2, 2, 2, 2, 3, 4]).unwrap()
    }

    #[test]
    fn instance_parameters() {
        let i = fig_instance();
        assert_eq!((i.b, i.w, i.path_length()), (3, 6, 48));
        assert!(ThreePartitionInstance::new(vec![1, 2]).is_err());
        assert!(ThreePartitionInstance::new(vec![1, 1, 2, 1, 1, 1]).is_err());
        assert_eq!(ThreePartitionInstance::parse("1 1 1 1 1 5").unwrap().w, 5);
    }

    #[test]
    fn case_one_has_one_source_and_one_sink() {
        let r = gen_reduction(&fig_instance(), ReductionCase::SeriesParallel).unwrap();
        let h = &r.hard_instance;
        assert_eq!(h.sources(), vec![r.a_in_hard[r.g_a.s]]);
        assert_eq!(h.sinks(), vec![r.b_in_hard[r.g_b.t]]);
        assert!(h.is_acyclic());
        assert_eq!(r.gate_index.len(), 9);
        assert!(r.gate_index.iter().all(|c| c.len() == 5));
    }

    #[test]
    fn figure_solution_verifies() {
        let inst = fig_instance();
        let r = gen_reduction(&inst, ReductionCase::SeriesParallel).unwrap();
        let bins = bins_from_values(&inst, &[vec![1, 1, 4], vec![2, 2, 2], vec![1, 2, 3]]).unwrap();
        let a = route_solution(&r, &bins).unwrap();
        assert!(a.crossings.iter().all(|c| c.len() == 48));
        let rep = verify_assignment(&r, &a);
        assert!(rep.is_valid(), "{:?}", rep.issues);
        let wrong = bins_from_values(&inst, &[vec![1, 1, 3], vec![2, 2, 2], vec![1, 2, 4]]).unwrap();
        assert!(matches!(route_solution(&r, &wrong), Err(GeneratorError::NotASolution(_))));
    }

    #[test]
    fn double_crossing_is_rejected() {
        let inst = fig_instance();
        let r = gen_reduction(&inst, ReductionCase::SeriesParallel).unwrap();
        let bins = bins_from_values(&inst, &[vec![1, 1, 4], vec![2, 2, 2], vec![1, 2, 3]]).unwrap();
        let mut a = route_solution(&r, &bins).unwrap();
        a.crossings[1][0].0 = a.crossings[0][0].0;
        assert!(!verify_assignment(&r, &a).is_valid());
    }
}
