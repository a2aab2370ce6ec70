//! Interconnections `Σ = Σ_1 ∧ ... ∧ Σ_N` of components sharing one signal
//! space.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::behavior::{KernelRep, SignalSpace};
use crate::polyalg::{BinaryMatrix, PolyMatrix};
use crate::{Error, Result};

/// Networks with at most this many components get an exhaustive partition
/// search; larger ones are merged greedily.
pub const EXHAUSTIVE_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub kernel: KernelRep,
}

/// Components over one shared signal space. The stacked matrix is never
/// stored; it is rebuilt by [`Network::interconnect`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    space: SignalSpace,
    components: Vec<Component>,
}

/// Binary `N x L` matrix; `S[i][j] = 0` iff block `j` is unconstrained in
/// component `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix(pub BinaryMatrix);

impl IncidenceMatrix {
    pub fn matrix(&self) -> &BinaryMatrix {
        &self.0
    }
}

impl fmt::Display for IncidenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegularityMode {
    Regular,
    RegularFeedback,
}

/// Partition of the component indices `0..N` into nonempty groups. Groups
/// are sorted internally and ordered by their smallest member.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentPartition {
    groups: Vec<Vec<usize>>,
}

impl ComponentPartition {
    pub fn new(mut groups: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = alloc::vec![false; n];
        for g in &mut groups {
            if g.is_empty() {
                return Err(Error::InvalidComponentPartition("empty group".to_string()));
            }
            g.sort_unstable();
            for &i in g.iter() {
                if i >= n {
                    return Err(Error::InvalidComponentPartition(format!(
                        "index {i} out of range for {n} components"
                    )));
                }
                if seen[i] {
                    return Err(Error::InvalidComponentPartition(format!(
                        "index {i} appears twice"
                    )));
                }
                seen[i] = true;
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidComponentPartition(format!(
                "index {i} not covered"
            )));
        }
        groups.sort_unstable_by_key(|g| g[0]);
        Ok(ComponentPartition { groups })
    }

    pub fn singletons(n: usize) -> Self {
        ComponentPartition {
            groups: (0..n).map(|i| alloc::vec![i]).collect(),
        }
    }

    pub fn whole(n: usize) -> Self {
        ComponentPartition {
            groups: alloc::vec![(0..n).collect()],
        }
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Number of groups `k`.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

impl fmt::Display for ComponentPartition {
    /// 1-based, e.g. `{1},{2,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.groups.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, i) in g.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", i + 1)?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// Result of [`Network::regularizing_partition`]. `exhaustive` is false when
/// the greedy search was used, in which case maximality of the group count
/// is not guaranteed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSearch {
    pub partition: ComponentPartition,
    pub exhaustive: bool,
}

/// Structural invariants of a network, computed in one pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkAnalysis {
    pub component_p: Vec<usize>,
    pub component_n: Vec<usize>,
    pub p: usize,
    pub n: usize,
    pub incidence: IncidenceMatrix,
    pub regular: bool,
    pub regular_feedback: bool,
}

impl Network {
    pub fn new(space: SignalSpace, components: Vec<(String, PolyMatrix)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyNetwork);
        }
        let components = components
            .into_iter()
            .map(|(name, r)| {
                Ok(Component {
                    name,
                    kernel: KernelRep::new(space.clone(), r)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Network { space, components })
    }

    pub fn from_components(components: Vec<Component>) -> Result<Self> {
        let first = components.first().ok_or(Error::EmptyNetwork)?;
        let space = first.kernel.space().clone();
        if components.iter().any(|c| c.kernel.space() != &space) {
            return Err(Error::SignalSpaceMismatch);
        }
        Ok(Network { space, components })
    }

    pub fn space(&self) -> &SignalSpace {
        &self.space
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    fn stack(&self, indices: impl IntoIterator<Item = usize>) -> KernelRep {
        let r = PolyMatrix::vstack(
            self.space.q(),
            indices.into_iter().map(|i| self.components[i].kernel.r()),
        )
        .expect("components share the signal space");
        KernelRep::new(self.space.clone(), r).expect("column count matches")
    }

    /// Kernel representation of the interconnection: all component rows
    /// stacked, whose kernel is the intersection of the behaviors.
    pub fn interconnect(&self) -> KernelRep {
        self.stack(0..self.components.len())
    }

    pub fn incidence(&self) -> IncidenceMatrix {
        IncidenceMatrix(BinaryMatrix::from_fn(
            self.components.len(),
            self.space.len(),
            |i, j| !self.components[i].kernel.block_is_zero(j),
        ))
    }

    pub fn analyze(&self) -> NetworkAnalysis {
        let component_p: Vec<usize> = self
            .components
            .iter()
            .map(|c| c.kernel.output_cardinality())
            .collect();
        let component_n: Vec<usize> = self
            .components
            .iter()
            .map(|c| c.kernel.mcmillan_degree())
            .collect();
        let whole = self.interconnect();
        let p = whole.output_cardinality();
        let n = whole.mcmillan_degree();
        let regular = p == component_p.iter().sum::<usize>();
        let regular_feedback = regular && n == component_n.iter().sum::<usize>();
        NetworkAnalysis {
            component_p,
            component_n,
            p,
            n,
            incidence: self.incidence(),
            regular,
            regular_feedback,
        }
    }

    /// `p(Σ) = Σ_i p(Σ_i)`.
    pub fn is_regular(&self) -> bool {
        let sum: usize = self
            .components
            .iter()
            .map(|c| c.kernel.output_cardinality())
            .sum();
        self.interconnect().output_cardinality() == sum
    }

    /// Regular, and `n(Σ) = Σ_i n(Σ_i)`.
    pub fn is_regular_feedback(&self) -> bool {
        if !self.is_regular() {
            return false;
        }
        let sum: usize = self
            .components
            .iter()
            .map(|c| c.kernel.mcmillan_degree())
            .sum();
        self.interconnect().mcmillan_degree() == sum
    }

    pub fn satisfies(&self, mode: RegularityMode) -> bool {
        match mode {
            RegularityMode::Regular => self.is_regular(),
            RegularityMode::RegularFeedback => self.is_regular_feedback(),
        }
    }

    /// Network whose `i`-th component stacks the components of group `i`.
    /// Merged names join the member names with `&`.
    pub fn merge(&self, part: &ComponentPartition) -> Result<Network> {
        let covered: usize = part.groups.iter().map(Vec::len).sum();
        if covered != self.components.len()
            || part
                .groups
                .iter()
                .flatten()
                .any(|&i| i >= self.components.len())
        {
            return Err(Error::InvalidComponentPartition(format!(
                "partition does not cover {} components",
                self.components.len()
            )));
        }
        let components = part
            .groups
            .iter()
            .map(|g| {
                if g.len() == 1 {
                    return self.components[g[0]].clone();
                }
                let name = g
                    .iter()
                    .map(|&i| self.components[i].name.as_str())
                    .collect::<Vec<_>>()
                    .join("&");
                Component {
                    name,
                    kernel: self.stack(g.iter().copied()),
                }
            })
            .collect();
        Ok(Network {
            space: self.space.clone(),
            components,
        })
    }

    /// Partition with as many groups as the search finds whose merge is a
    /// regular (feedback) interconnection.
    ///
    /// The stacked kernel, and hence `p(Σ)` and `n(Σ)`, does not depend on
    /// the partition, so a candidate qualifies iff the per-group invariants
    /// add up to those totals. Per-group invariants are memoised.
    ///
    /// Up to [`EXHAUSTIVE_LIMIT`] components all set partitions are tried in
    /// decreasing group count, lexicographically smallest group list first.
    /// Beyond that, groups are merged greedily: at each step the pair whose
    /// merge leaves the smallest deficit `(Σp - p, Σn - n)` is merged, lowest
    /// indices first on ties.
    pub fn regularizing_partition(&self, mode: RegularityMode) -> PartitionSearch {
        let mut eval = GroupEval::new(self, mode);
        let n = self.components.len();
        if n <= EXHAUSTIVE_LIMIT {
            let mut by_count: Vec<Vec<Vec<Vec<usize>>>> = alloc::vec![Vec::new(); n + 1];
            for groups in set_partitions(n) {
                by_count[groups.len()].push(groups);
            }
            for k in (1..=n).rev() {
                let mut candidates = core::mem::take(&mut by_count[k]);
                candidates.sort_unstable();
                for groups in candidates {
                    if eval.deficit(&groups) == (0, 0) {
                        return PartitionSearch {
                            partition: ComponentPartition { groups },
                            exhaustive: true,
                        };
                    }
                }
            }
            unreachable!("the single-group partition always qualifies");
        }

        let mut groups: Vec<Vec<usize>> = (0..n).map(|i| alloc::vec![i]).collect();
        while eval.deficit(&groups) != (0, 0) {
            let mut best: Option<((i64, i64), usize, usize)> = None;
            for a in 0..groups.len() {
                for b in a + 1..groups.len() {
                    let merged = merge_pair(&groups, a, b);
                    let d = eval.deficit(&merged);
                    if best.map_or(true, |(bd, _, _)| d < bd) {
                        best = Some((d, a, b));
                    }
                }
            }
            let (_, a, b) = best.expect("at least two groups remain while deficient");
            groups = merge_pair(&groups, a, b);
        }
        PartitionSearch {
            partition: ComponentPartition::new(groups, n).expect("valid by construction"),
            exhaustive: false,
        }
    }
}

fn merge_pair(groups: &[Vec<usize>], a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(groups.len() - 1);
    for (k, g) in groups.iter().enumerate() {
        if k == b {
            continue;
        }
        let mut g = g.clone();
        if k == a {
            g.extend_from_slice(&groups[b]);
            g.sort_unstable();
        }
        out.push(g);
    }
    out
}

/// Memoised `(p, n)` of merged groups.
struct GroupEval<'a> {
    net: &'a Network,
    mode: RegularityMode,
    total: (usize, usize),
    cache: BTreeMap<Vec<usize>, (usize, usize)>,
}

impl<'a> GroupEval<'a> {
    fn new(net: &'a Network, mode: RegularityMode) -> Self {
        let whole = net.interconnect();
        let p = whole.output_cardinality();
        let n = match mode {
            RegularityMode::Regular => 0,
            RegularityMode::RegularFeedback => whole.mcmillan_degree(),
        };
        GroupEval {
            net,
            mode,
            total: (p, n),
            cache: BTreeMap::new(),
        }
    }

    fn invariants(&mut self, group: &[usize]) -> (usize, usize) {
        if let Some(&v) = self.cache.get(group) {
            return v;
        }
        let k = self.net.stack(group.iter().copied());
        let p = k.output_cardinality();
        let n = match self.mode {
            RegularityMode::Regular => 0,
            RegularityMode::RegularFeedback => k.mcmillan_degree(),
        };
        self.cache.insert(group.to_vec(), (p, n));
        (p, n)
    }

    /// `(Σp - p, Σn - n)` for the candidate; `(0, 0)` means it qualifies.
    /// The McMillan part only counts once the candidate is regular.
    fn deficit(&mut self, groups: &[Vec<usize>]) -> (i64, i64) {
        let (mut sp, mut sn) = (0usize, 0usize);
        for g in groups {
            let (p, n) = self.invariants(g);
            sp += p;
            sn += n;
        }
        let dp = sp as i64 - self.total.0 as i64;
        let dn = sn as i64 - self.total.1 as i64;
        (dp, dn)
    }
}

/// All set partitions of `0..n`, each as groups ordered by smallest member.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for g in 0..cur.len() {
            cur[g].push(i);
            rec(i + 1, n, cur, out);
            cur[g].pop();
        }
        cur.push(alloc::vec![i]);
        rec(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pm(rows: &[&[&[i64]]]) -> PolyMatrix {
        PolyMatrix::from_i64s(rows)
    }

    fn circuit() -> Network {
        let space = SignalSpace::scalar(&["V", "V_C", "I1", "I2"]).unwrap();
        Network::new(
            space,
            vec![
                ("Σ1".into(), pm(&[&[&[1], &[-1], &[0, -1], &[0, -1]]])),
                ("Σ2".into(), pm(&[&[&[], &[0, -1], &[1], &[]]])),
                ("Σ3".into(), pm(&[&[&[], &[0, -1], &[], &[1]]])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn set_partition_counts_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(n).len(), b);
        }
    }

    #[test]
    fn partition_validation() {
        assert!(ComponentPartition::new(vec![vec![0], vec![0, 1]], 2).is_err());
        assert!(ComponentPartition::new(vec![vec![0]], 2).is_err());
        assert!(ComponentPartition::new(vec![vec![], vec![0, 1]], 2).is_err());
        assert!(ComponentPartition::new(vec![vec![2]], 2).is_err());
        let p = ComponentPartition::new(vec![vec![2, 1], vec![0]], 3).unwrap();
        assert_eq!(p.groups(), &[vec![0], vec![1, 2]]);
        assert_eq!(alloc::string::ToString::to_string(&p), "{1},{2,3}");
    }

    #[test]
    fn circuit_verdicts() {
        let net = circuit();
        let a = net.analyze();
        assert_eq!(a.component_p, vec![1, 1, 1]);
        assert_eq!(a.component_n, vec![1, 1, 1]);
        assert_eq!((a.p, a.n), (3, 2));
        assert!(a.regular && !a.regular_feedback);
        assert!(net.is_regular());
        assert!(!net.is_regular_feedback());
    }

    #[test]
    fn merged_circuit_is_regular_feedback() {
        let net = circuit();
        let part = ComponentPartition::new(vec![vec![0], vec![1, 2]], 3).unwrap();
        let merged = net.merge(&part).unwrap();
        assert_eq!(merged.len(), 2);
        assert_eq!(merged.components()[1].name, "Σ2&Σ3");
        assert!(merged.is_regular_feedback());
        let search = net.regularizing_partition(RegularityMode::RegularFeedback);
        assert_eq!(search.partition, part);
        assert!(search.exhaustive);
        let search = net.regularizing_partition(RegularityMode::Regular);
        assert_eq!(search.partition, ComponentPartition::singletons(3));
    }

    #[test]
    fn merge_identity_and_whole() {
        let net = circuit();
        assert_eq!(net.merge(&ComponentPartition::singletons(3)).unwrap(), net);
        let one = net.merge(&ComponentPartition::whole(3)).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one.is_regular_feedback());
        assert!(net.merge(&ComponentPartition::singletons(2)).is_err());
    }

    #[test]
    fn duplicated_component_is_not_regular() {
        let space = SignalSpace::scalar(&["a", "b"]).unwrap();
        let row = pm(&[&[&[0, 1], &[1]]]);
        let net = Network::new(space, vec![("A".into(), row.clone()), ("B".into(), row)]).unwrap();
        assert!(!net.is_regular());
        let search = net.regularizing_partition(RegularityMode::Regular);
        assert_eq!(search.partition, ComponentPartition::whole(2));
    }

    #[test]
    fn incidence_of_four_component_example() {
        let space = SignalSpace::scalar(&["w1", "w2", "w3", "w4"]).unwrap();
        let net = Network::new(
            space,
            vec![
                ("Σ1".into(), pm(&[&[&[1], &[0, 1], &[2], &[]]])),
                ("Σ2".into(), pm(&[&[&[], &[1, 1], &[], &[3]]])),
                ("Σ3".into(), pm(&[&[&[], &[], &[0, 1], &[1]]])),
                ("Σ4".into(), pm(&[&[&[], &[], &[1], &[0, 0, 1]]])),
            ],
        )
        .unwrap();
        let s = net.incidence();
        assert_eq!(
            s.0,
            BinaryMatrix::from_rows(&[&[1, 1, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1], &[0, 0, 1, 1]])
        );
        assert_eq!(net.interconnect().r().rows(), 4);
    }

    #[test]
    fn empty_network_rejected() {
        let space = SignalSpace::scalar(&["a"]).unwrap();
        assert_eq!(Network::new(space, vec![]), Err(Error::EmptyNetwork));
    }
}
