//! Regularity of subgroup tuples, base sizes, base and regularity numbers.
//!
//! A tuple `(H₁,…,H_k)` is regular when `⋂ H_i^{g_i} = 1` for some `g_i`.
//! Decisions follow a fixed ladder: the order bound, random search, then an
//! exhaustive orbit computation (double cosets for pairs).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::actions::{CosetAction, DEFAULT_INDEX_CEILING};
use crate::grp::{stabilizer_from_transversal, PermGroup};
use crate::perm::Perm;
use crate::search;
use crate::util;
use crate::Error;

/// Budgets and seed shared by all decisions.
#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    /// Random conjugator tuples tried before exhaustive search.
    pub random_budget: u64,
    /// Ceiling on `∏_{i≥2} |G:H_i|` for exhaustive search.
    pub exhaustive_ceiling: BigUint,
    /// Ceiling on each coset action's index.
    pub index_ceiling: u64,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            seed: 1,
            random_budget: 10_000,
            exhaustive_ceiling: BigUint::from(5_000_000u32),
            index_ceiling: DEFAULT_INDEX_CEILING,
        }
    }
}

/// Core-free components of a parent group, with class tags.
#[derive(Clone, Debug)]
pub struct SubgroupTuple {
    pub parent: PermGroup,
    pub components: Vec<PermGroup>,
    pub tags: Vec<String>,
}

impl SubgroupTuple {
    /// Checks containment and core-freeness of every component.
    pub fn new(
        parent: PermGroup,
        components: Vec<PermGroup>,
        tags: Vec<String>,
    ) -> Result<SubgroupTuple, Error> {
        for h in &components {
            if !parent.is_core_free(h)? {
                return Err(Error::Precondition("component is not core-free".into()));
            }
        }
        Ok(SubgroupTuple::trusted(parent, components, tags))
    }

    /// For components already verified (e.g. loaded from a checked catalog).
    pub fn trusted(
        parent: PermGroup,
        components: Vec<PermGroup>,
        mut tags: Vec<String>,
    ) -> SubgroupTuple {
        while tags.len() < components.len() {
            tags.push(format!("H{}", tags.len() + 1));
        }
        SubgroupTuple {
            parent,
            components,
            tags,
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Deduplication key: components sorted by (order, tag).
    pub fn key(&self) -> String {
        let mut v: Vec<(BigUint, &str)> = self
            .components
            .iter()
            .zip(&self.tags)
            .map(|(h, t)| (h.order(), t.as_str()))
            .collect();
        v.sort();
        v.iter().map(|(_, t)| *t).collect::<Vec<_>>().join(",")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `∏|H_i| = product > power = |G|^{k−1}`.
    OrderBound { product: BigUint, power: BigUint },
    /// Points of `Y` shown to lie in non-regular orbits, out of `total`.
    OrbitExhaustion { covered: BigUint, total: BigUint },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Effort {
    pub random_attempts: u64,
    pub orbits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularityVerdict {
    /// Conjugators `g_i`, one per component (`g₁ = 1`).
    Regular {
        witness: Vec<Perm>,
        effort: Effort,
    },
    NonRegular {
        certificate: Certificate,
        effort: Effort,
    },
    Unknown {
        effort: Effort,
        reason: String,
    },
}

impl RegularityVerdict {
    pub fn is_regular(&self) -> bool {
        matches!(self, RegularityVerdict::Regular { .. })
    }

    pub fn is_nonregular(&self) -> bool {
        matches!(self, RegularityVerdict::NonRegular { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, RegularityVerdict::Unknown { .. })
    }

    /// Ledger payload.
    pub fn payload(&self) -> String {
        match self {
            RegularityVerdict::Regular { witness, .. } => {
                let parts: Vec<String> = witness
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, g)| format!("g{}={}", i + 1, g))
                    .collect();
                if parts.is_empty() {
                    "REGULAR".to_string()
                } else {
                    format!("REGULAR {}", parts.join(" "))
                }
            }
            RegularityVerdict::NonRegular {
                certificate: Certificate::OrderBound { .. },
                ..
            } => "NONREGULAR order-bound".to_string(),
            RegularityVerdict::NonRegular {
                certificate: Certificate::OrbitExhaustion { covered, total },
                ..
            } => {
                format!("NONREGULAR orbit-exhaustion covered={covered} total={total}")
            }
            RegularityVerdict::Unknown { reason, .. } => format!("UNKNOWN {reason}"),
        }
    }
}

impl fmt::Display for RegularityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.payload())
    }
}

/// `⋂ H_i^{g_i}`, intersecting smallest groups first.
pub fn conjugate_intersection(comps: &[PermGroup], conj: &[Perm]) -> PermGroup {
    let mut groups: Vec<PermGroup> = comps
        .iter()
        .zip(conj)
        .map(|(h, g)| h.conjugate(g))
        .collect();
    groups.sort_by_key(|h| h.order());
    let mut l = groups[0].clone();
    for k in &groups[1..] {
        if l.order().is_one() {
            break;
        }
        l = search::intersection(&l, k);
    }
    l
}

/// Re-check a regularity witness by exact intersection.
pub fn verify_witness(t: &SubgroupTuple, witness: &[Perm]) -> bool {
    witness.len() == t.len()
        && witness.iter().all(|g| t.parent.contains(g))
        && conjugate_intersection(&t.components, witness)
            .order()
            .is_one()
}

/// Non-regular whenever `∏|H_i| > |G|^{k−1}`; never claims regularity.
pub fn order_bound(t: &SubgroupTuple) -> Option<RegularityVerdict> {
    let k = t.len() as u32;
    if k == 0 {
        return None;
    }
    let product: BigUint = t.components.iter().map(|h| h.order()).product();
    let power = t.parent.order().pow(k - 1);
    (product > power).then(|| RegularityVerdict::NonRegular {
        certificate: Certificate::OrderBound { product, power },
        effort: Effort::default(),
    })
}

/// Random conjugators; deterministic in `(budget, seed)`.
pub fn random_witness_search(
    t: &SubgroupTuple,
    budget: u64,
    seed: u64,
) -> (Option<Vec<Perm>>, u64) {
    let n = t.parent.degree();
    let id = Perm::identity(n);
    if t.components.iter().any(|h| h.order().is_one()) {
        return (Some(vec![id; t.len()]), 0);
    }
    let mut rng = util::rng(seed);
    // small components first; conjugating every component but the first
    let mut idx: Vec<usize> = (0..t.len()).collect();
    idx.sort_by_key(|&i| t.components[i].order());
    for attempt in 1..=budget {
        let mut conj = vec![id.clone(); t.len()];
        let mut l = t.components[idx[0]].clone();
        let mut ok = false;
        for &i in &idx[1..] {
            let g = t.parent.random_element(&mut rng);
            let k = t.components[i].conjugate(&g);
            conj[i] = g;
            l = search::intersection(&l, &k);
            if l.order().is_one() {
                ok = true;
                break;
            }
        }
        if ok {
            return (Some(conj), attempt);
        }
    }
    (None, budget)
}

struct Nested<'a> {
    actions: Vec<CosetAction>,
    sizes: Vec<BigUint>,
    orbits: u64,
    seed: u64,
    _t: &'a SubgroupTuple,
}

impl Nested<'_> {
    /// Orbits of `l` on coset space `j` (largest first), each with the
    /// stabilizer of its first point.
    fn orbits_with_stabilizers(&mut self, l: &PermGroup, j: usize) -> Vec<(u32, usize, PermGroup)> {
        let a = &self.actions[j];
        let gens = l.gens_or_strong();
        let imgs: Vec<Vec<u32>> = gens
            .iter()
            .map(|g| (0..a.index() as u32).map(|c| a.act(c, g)).collect())
            .collect();
        let mut seen = vec![false; a.index()];
        let mut orbs: Vec<(u32, Vec<u32>)> = Vec::new();
        for c in 0..a.index() {
            if seen[c] {
                continue;
            }
            seen[c] = true;
            let mut orb = vec![c as u32];
            let mut i = 0;
            while i < orb.len() {
                for im in &imgs {
                    let y = im[orb[i] as usize];
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orb.push(y);
                    }
                }
                i += 1;
            }
            orbs.push((c as u32, orb));
        }
        orbs.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
        self.orbits += orbs.len() as u64;
        let lord = l.order();
        orbs.into_iter()
            .map(|(rep, orb)| {
                let size = orb.len();
                if BigUint::from(size) == lord {
                    return (rep, size, PermGroup::trivial(l.degree()));
                }
                // transversal over the orbit by BFS with generator words
                let mut pos: HashMap<u32, usize> = HashMap::with_capacity(size);
                let mut pts = vec![rep];
                let mut tr = vec![Perm::identity(l.degree())];
                pos.insert(rep, 0);
                let mut i = 0;
                while i < pts.len() {
                    for (s, im) in imgs.iter().enumerate() {
                        let y = im[pts[i] as usize];
                        if let std::collections::hash_map::Entry::Vacant(e) = pos.entry(y) {
                            e.insert(pts.len());
                            pts.push(y);
                            tr.push(tr[i].then(&gens[s]));
                        }
                    }
                    i += 1;
                }
                let tinv: Vec<Perm> = tr.iter().map(Perm::inverse).collect();
                let target = &lord / size;
                let act = &self.actions[j];
                let stab = stabilizer_from_transversal(
                    l,
                    &target,
                    |r| tinv[pos[&act.act(rep, r)]].clone(),
                    self.seed ^ (j as u64) ^ ((rep as u64) << 8),
                );
                (rep, size, stab)
            })
            .collect()
    }

    fn search(&mut self, l: &PermGroup, j: usize, chosen: &mut Vec<u32>) -> bool {
        if l.order().is_one() {
            while chosen.len() < self.actions.len() {
                chosen.push(0);
            }
            return true;
        }
        if j == self.actions.len() {
            return false;
        }
        let rest: BigUint = self.sizes[j..].iter().product();
        if l.order() > rest {
            return false;
        }
        for (rep, _, stab) in self.orbits_with_stabilizers(l, j) {
            chosen.push(rep);
            if self.search(&stab, j + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Decide by orbits of the smallest component on the product of the other
/// coset spaces, refining through stabilizers.
pub fn exhaustive_decide(t: &SubgroupTuple, cfg: &Config) -> RegularityVerdict {
    let k = t.len();
    let n = t.parent.degree();
    if k == 0 {
        return RegularityVerdict::Unknown {
            effort: Effort::default(),
            reason: "empty tuple".into(),
        };
    }
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by_key(|&i| t.components[i].order());
    let h1 = &t.components[idx[0]];
    if h1.order().is_one() {
        return RegularityVerdict::Regular {
            witness: vec![Perm::identity(n); k],
            effort: Effort::default(),
        };
    }
    let sizes: Vec<BigUint> = idx[1..]
        .iter()
        .map(|&i| t.parent.order() / t.components[i].order())
        .collect();
    let total: BigUint = sizes.iter().product();
    if total > cfg.exhaustive_ceiling {
        return RegularityVerdict::Unknown {
            effort: Effort::default(),
            reason: format!(
                "product space {total} exceeds ceiling {}",
                cfg.exhaustive_ceiling
            ),
        };
    }
    let mut actions = Vec::new();
    for &i in &idx[1..] {
        match CosetAction::with_ceiling(&t.parent, &t.components[i], cfg.index_ceiling) {
            Ok(a) => actions.push(a),
            Err(e) => {
                return RegularityVerdict::Unknown {
                    effort: Effort::default(),
                    reason: e.to_string(),
                }
            }
        }
    }
    let mut nest = Nested {
        actions,
        sizes: sizes.clone(),
        orbits: 0,
        seed: cfg.seed,
        _t: t,
    };
    if k == 1 {
        return RegularityVerdict::NonRegular {
            certificate: Certificate::OrbitExhaustion {
                covered: BigUint::one(),
                total: BigUint::one(),
            },
            effort: Effort::default(),
        };
    }
    // top level with coverage accounting
    let tail: BigUint = sizes[1..].iter().product();
    let h1o = h1.order();
    let mut covered = BigUint::zero();
    let mut chosen = Vec::new();
    for (rep, size, stab) in nest.orbits_with_stabilizers(h1, 0) {
        chosen.clear();
        chosen.push(rep);
        if nest.search(&stab, 1, &mut chosen) {
            let mut witness = vec![Perm::identity(n); k];
            for (pos, &i) in idx[1..].iter().enumerate() {
                witness[i] = nest.actions[pos].rep(chosen[pos]);
            }
            let effort = Effort {
                random_attempts: 0,
                orbits: nest.orbits,
            };
            debug_assert!(verify_witness(t, &witness));
            return RegularityVerdict::Regular { witness, effort };
        }
        covered += BigUint::from(size) * &tail;
        if covered > &total - total.clone().min(h1o.clone()) {
            break;
        }
    }
    RegularityVerdict::NonRegular {
        certificate: Certificate::OrbitExhaustion { covered, total },
        effort: Effort {
            random_attempts: 0,
            orbits: nest.orbits,
        },
    }
}

/// Pairs: `(H₁,H₂)` is regular iff some double coset `H₁gH₂` has size `|H₁||H₂|`,
/// i.e. iff `H₂` has a regular orbit on `G/H₁`.
pub fn double_coset_decide(t: &SubgroupTuple, cfg: &Config) -> RegularityVerdict {
    assert_eq!(t.len(), 2, "double cosets need a pair");
    let (h1, h2) = (&t.components[0], &t.components[1]);
    let a = match CosetAction::with_ceiling(&t.parent, h1, cfg.index_ceiling) {
        Ok(a) => a,
        Err(e) => {
            return RegularityVerdict::Unknown {
                effort: Effort::default(),
                reason: e.to_string(),
            }
        }
    };
    let gens = h2.gens_or_strong();
    let imgs: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| (0..a.index() as u32).map(|c| a.act(c, g)).collect())
        .collect();
    let h2o = h2.order();
    let mut seen = vec![false; a.index()];
    let mut orbits = 0u64;
    for c in 0..a.index() {
        if seen[c] {
            continue;
        }
        orbits += 1;
        seen[c] = true;
        let mut orb = vec![c as u32];
        let mut i = 0;
        while i < orb.len() {
            for im in &imgs {
                let y = im[orb[i] as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orb.push(y);
                }
            }
            i += 1;
        }
        if BigUint::from(orb.len()) == h2o {
            let witness = vec![a.rep(c as u32), Perm::identity(t.parent.degree())];
            return RegularityVerdict::Regular {
                witness,
                effort: Effort {
                    random_attempts: 0,
                    orbits,
                },
            };
        }
    }
    let total = BigUint::from(a.index());
    RegularityVerdict::NonRegular {
        certificate: Certificate::OrbitExhaustion {
            covered: total.clone(),
            total,
        },
        effort: Effort {
            random_attempts: 0,
            orbits,
        },
    }
}

/// The escalation ladder.
pub fn decide(t: &SubgroupTuple, cfg: &Config) -> RegularityVerdict {
    if let Some(v) = order_bound(t) {
        return v;
    }
    let (w, attempts) = random_witness_search(t, cfg.random_budget, cfg.seed);
    if let Some(witness) = w {
        return RegularityVerdict::Regular {
            witness,
            effort: Effort {
                random_attempts: attempts,
                orbits: 0,
            },
        };
    }
    let mut v = if t.len() == 2 {
        double_coset_decide(t, cfg)
    } else {
        exhaustive_decide(t, cfg)
    };
    match &mut v {
        RegularityVerdict::Regular { effort, .. }
        | RegularityVerdict::NonRegular { effort, .. }
        | RegularityVerdict::Unknown { effort, .. } => effort.random_attempts = attempts,
    }
    v
}

#[derive(Clone, Debug)]
pub struct BaseSize {
    /// Exact when `lower == upper`.
    pub lower: usize,
    pub upper: Option<usize>,
    /// Conjugators `g_i` with `⋂ H^{g_i} = 1` (the base is `{Hg_i}`).
    pub witness: Vec<Perm>,
}

impl BaseSize {
    pub fn exact(&self) -> Option<usize> {
        (self.upper == Some(self.lower)).then_some(self.lower)
    }
}

/// `b(G,H)`: least `k` with `(H,…,H)` regular.
pub fn base_size(g: &PermGroup, h: &PermGroup, cfg: &Config) -> BaseSize {
    let mut k = 1usize;
    let (go, ho) = (g.order(), h.order());
    while ho.pow(k as u32) > go.pow(k as u32 - 1) {
        k += 1;
    }
    loop {
        let t = SubgroupTuple::trusted(g.clone(), vec![h.clone(); k], vec!["H".into(); k]);
        match decide(&t, cfg) {
            RegularityVerdict::Regular { witness, .. } => {
                return BaseSize {
                    lower: k,
                    upper: Some(k),
                    witness,
                }
            }
            RegularityVerdict::NonRegular { .. } => k += 1,
            RegularityVerdict::Unknown { .. } => {
                return BaseSize {
                    lower: k,
                    upper: None,
                    witness: Vec::new(),
                }
            }
        }
    }
}

/// Largest base size over a catalog of subgroups.
pub fn base_number(
    g: &PermGroup,
    catalog: &[PermGroup],
    cfg: &Config,
) -> Result<(usize, Vec<BaseSize>), Error> {
    let sizes: Vec<BaseSize> = catalog.iter().map(|h| base_size(g, h, cfg)).collect();
    let mut b = 0;
    for s in &sizes {
        match s.exact() {
            Some(x) => b = b.max(x),
            None => {
                return Err(Error::Precondition(format!(
                    "base size only bounded below by {}",
                    s.lower
                )))
            }
        }
    }
    Ok((b, sizes))
}

/// Outcome of the regularity-number search.
#[derive(Clone, Debug)]
pub struct RegularityNumber {
    /// `R`, or a lower bound when `exact` is false.
    pub r: usize,
    pub exact: bool,
    /// Non-regular `(R−1)`-tuples, as sorted catalog indices.
    pub nonregular: Vec<Vec<usize>>,
    /// Every decided tuple and its verdict.
    pub decided: Vec<(Vec<usize>, RegularityVerdict)>,
}

/// `R` over a catalog of class representatives: extends only non-regular
/// tuples, since a tuple is non-regular only if all its sub-tuples are.
pub fn regularity_number(
    g: &PermGroup,
    catalog: &[PermGroup],
    k_max: usize,
    cfg: &Config,
) -> RegularityNumber {
    let m = catalog.len();
    let mut decided = Vec::new();
    let mut current: BTreeSet<Vec<usize>> = (0..m)
        .filter(|&i| !catalog[i].order().is_one())
        .map(|i| vec![i])
        .collect();
    if current.is_empty() {
        return RegularityNumber {
            r: 1,
            exact: true,
            nonregular: Vec::new(),
            decided,
        };
    }
    let mut k = 1;
    loop {
        if k >= k_max {
            return RegularityNumber {
                r: k + 1,
                exact: false,
                nonregular: current.into_iter().collect(),
                decided,
            };
        }
        let mut next = BTreeSet::new();
        let mut unknown = false;
        for base in &current {
            let last = *base.last().unwrap();
            for i in last..m {
                let mut cand = base.clone();
                cand.push(i);
                // every k-sub-multiset must be non-regular
                let all_sub = (0..cand.len()).all(|d| {
                    let mut s = cand.clone();
                    s.remove(d);
                    current.contains(&s)
                });
                if !all_sub || next.contains(&cand) {
                    continue;
                }
                let t = SubgroupTuple::trusted(
                    g.clone(),
                    cand.iter().map(|&j| catalog[j].clone()).collect(),
                    cand.iter().map(|j| j.to_string()).collect(),
                );
                let v = decide(&t, cfg);
                if v.is_unknown() {
                    unknown = true;
                }
                if !v.is_regular() {
                    next.insert(cand.clone());
                }
                decided.push((cand, v));
            }
        }
        k += 1;
        if next.is_empty() {
            return RegularityNumber {
                r: k,
                exact: !unknown,
                nonregular: current.into_iter().collect(),
                decided,
            };
        }
        current = next;
    }
}

/// Drop points greedily while the pointwise stabilizer stays trivial.
pub fn minimize_base(g: &PermGroup, base: &[u32]) -> Result<Vec<u32>, Error> {
    if !g.pointwise_stabilizer(base).order().is_one() {
        return Err(Error::Precondition("not a base".into()));
    }
    let mut b = base.to_vec();
    let mut i = 0;
    while i < b.len() {
        let mut trial = b.clone();
        trial.remove(i);
        if g.pointwise_stabilizer(&trial).order().is_one() {
            b = trial;
        } else {
            i += 1;
        }
    }
    Ok(b)
}

/// Elements none of which lies in the subgroup generated by the others.
#[derive(Clone, Debug)]
pub struct IndependentSet {
    pub elements: Vec<Perm>,
}

impl IndependentSet {
    pub fn verify(&self, degree: usize) -> bool {
        (0..self.elements.len()).all(|i| {
            let others: Vec<Perm> = self
                .elements
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, x)| x.clone())
                .collect();
            !PermGroup::new(degree, others)
                .unwrap()
                .contains(&self.elements[i])
        })
    }
}

/// For each point of a minimal base, a nontrivial element fixing the others.
pub fn extract_independent_set(
    g: &PermGroup,
    minimal_base: &[u32],
) -> Result<IndependentSet, Error> {
    if !g.pointwise_stabilizer(minimal_base).order().is_one() {
        return Err(Error::Precondition("not a base".into()));
    }
    let mut elements = Vec::new();
    for i in 0..minimal_base.len() {
        let others: Vec<u32> = minimal_base
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .collect();
        let st = g.pointwise_stabilizer(&others);
        let x = st
            .strong_generators()
            .into_iter()
            .find(|x| !x.is_identity())
            .ok_or_else(|| Error::Precondition("base is not minimal".into()))?;
        elements.push(x);
    }
    let set = IndependentSet { elements };
    if !set.verify(g.degree()) {
        return Err(Error::Verification(
            "extracted set is not independent".into(),
        ));
    }
    Ok(set)
}

/// Random conjugator tuples; counts how many give a trivial intersection.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub trials: u64,
    pub trivial: u64,
}

pub fn tuple_probe(t: &SubgroupTuple, trials: u64, seed: u64) -> ProbeReport {
    let mut rng = util::rng(seed);
    let n = t.parent.degree();
    let mut trivial = 0;
    for _ in 0..trials {
        let conj: Vec<Perm> = (0..t.len())
            .map(|i| {
                if i == 0 {
                    Perm::identity(n)
                } else {
                    t.parent.random_element(&mut rng)
                }
            })
            .collect();
        if conjugate_intersection(&t.components, &conj)
            .order()
            .is_one()
        {
            trivial += 1;
        }
    }
    ProbeReport { trials, trivial }
}

/// `|H|` as a u64 when it fits (for display).
pub fn order_u64(h: &PermGroup) -> Option<u64> {
    h.order().to_u64()
}
