//! Constructive combinatorics for `Sₙ` and `Aₙ`: subset families and their
//! neighbourhoods, colour functions on uniform partitions, the partition
//! constructions, and witness builders for intransitive, imprimitive and
//! mixed tuples of maximal subgroups.
//!
//! Points are 0-based here; display is 1-based.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::actions::{partition_stabilizer, young_subgroup, UniformPartition};
use crate::grp::{prime_order_class_reps, PermGroup};
use crate::perm::Perm;
use crate::regularity::{self, Config, SubgroupTuple};
use crate::search;
use crate::Error;

fn pre(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// Subsets of `[n]` of size at most `n/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamily {
    n: usize,
    sets: Vec<Vec<u32>>,
}

impl SubsetFamily {
    pub fn new(n: usize, sets: Vec<Vec<u32>>) -> Result<SubsetFamily, Error> {
        let mut out = Vec::with_capacity(sets.len());
        for mut s in sets {
            s.sort_unstable();
            s.dedup();
            if s.len() > n / 2 || s.iter().any(|&x| x as usize >= n) {
                return Err(pre(format!("family member of size {} in [{n}]", s.len())));
            }
            out.push(s);
        }
        Ok(SubsetFamily { n, sets: out })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    /// Indices of the members containing `a`.
    pub fn neighborhood(&self, a: u32) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&i| self.sets[i].binary_search(&a).is_ok())
            .collect()
    }

    pub fn distinct_neighborhoods(&self) -> bool {
        let mut seen = BTreeSet::new();
        (0..self.n as u32).all(|a| seen.insert(self.neighborhood(a)))
    }

    /// Intersection of the setwise stabilizers in `Sₙ`.
    pub fn stabilizer_intersection(&self) -> PermGroup {
        search::structure_stabilizer(&PermGroup::symmetric(self.n), &self.sets, &[])
    }
}

/// The chained family: member `i` is `a_i` consecutive points from `i`,
/// read cyclically in `[n−1]`. Returns the family and the largest point `m`
/// of its last member; the stabilizer intersection fixes every point below
/// `k−1` and preserves `{k−1..m}` and `{m+1..n−1}`.
pub fn xi_family(n: usize, sizes: &[usize]) -> Result<(SubsetFamily, u32), Error> {
    let k = sizes.len();
    if k < 2 || k >= n {
        return Err(pre(format!("need 2 <= k < n, got k = {k}, n = {n}")));
    }
    if sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(pre("sizes must be ascending"));
    }
    if sizes.iter().any(|&a| a == 0 || a > n / 2) {
        return Err(pre("sizes must lie in 1..=n/2"));
    }
    let cyc = n - 1;
    let sets: Vec<Vec<u32>> = sizes
        .iter()
        .enumerate()
        .map(|(i, &a)| (0..a).map(|t| ((i + t) % cyc) as u32).collect())
        .collect();
    let m = *sets[k - 1].iter().max().unwrap();
    Ok((SubsetFamily::new(n, sets)?, m))
}

/// Colours points by the index of their part in an ordered partition.
#[derive(Clone, Debug)]
pub struct ColourFunction {
    partition: UniformPartition,
    colour: Vec<usize>,
}

impl ColourFunction {
    pub fn new(partition: UniformPartition) -> ColourFunction {
        let colour = partition.colour_of();
        ColourFunction { partition, colour }
    }

    pub fn partition(&self) -> &UniformPartition {
        &self.partition
    }

    pub fn colour(&self, x: u32) -> usize {
        self.colour[x as usize]
    }
}

/// Sorted multiset of colours met by `q`.
pub fn colour_sequence(c: &ColourFunction, q: &[u32]) -> Vec<usize> {
    let mut v: Vec<usize> = q.iter().map(|&x| c.colour(x)).collect();
    v.sort_unstable();
    v
}

fn multiplicities(c: &ColourFunction, q: &[u32]) -> Vec<usize> {
    let seq = colour_sequence(c, q);
    let mut m: Vec<usize> = seq.chunk_by(|a, b| a == b).map(|r| r.len()).collect();
    m.sort_unstable_by(|a, b| b.cmp(a));
    m
}

/// Equal up to a permutation of the colours.
pub fn colour_equivalent(c: &ColourFunction, q: &[u32], r: &[u32]) -> bool {
    multiplicities(c, q) == multiplicities(c, r)
}

fn sn_structure_stabilizer(n: usize, sets: &[Vec<u32>], parts: &[&UniformPartition]) -> PermGroup {
    let pv: Vec<Vec<Vec<u32>>> = parts.iter().map(|p| p.parts().to_vec()).collect();
    search::structure_stabilizer(&PermGroup::symmetric(n), sets, &pv)
}

/// Every generator maps `pts` onto itself.
fn fixes_setwise(h: &PermGroup, pts: &[u32]) -> bool {
    h.gens_or_strong()
        .iter()
        .all(|g| pts.iter().all(|&x| pts.contains(&g.at(x))))
}

fn fixes_pointwise(h: &PermGroup, pts: &[u32]) -> bool {
    h.gens_or_strong()
        .iter()
        .all(|g| pts.iter().all(|&x| g.at(x) == x))
}

fn check_pair_fixed(
    n: usize,
    x: &UniformPartition,
    y: &UniformPartition,
    a: u32,
    b: u32,
) -> Result<(), Error> {
    let h = sn_structure_stabilizer(n, &[], &[x, y]);
    if fixes_setwise(&h, &[a, b]) {
        Ok(())
    } else {
        Err(Error::Verification(format!(
            "stabilizer intersection moves {{{},{}}}",
            a + 1,
            b + 1
        )))
    }
}

/// `X^t` for `t = (a,b)`; the two stabilizers then meet in a group fixing
/// `{a,b}` setwise.
pub fn swap_partition(x: &UniformPartition, a: u32, b: u32) -> Result<UniformPartition, Error> {
    let n = x.degree();
    if x.part_size() < 3 {
        return Err(pre("swap needs parts of size at least 3"));
    }
    if a as usize >= n || b as usize >= n || x.part_of(a) == x.part_of(b) {
        return Err(pre("swapped points must lie in different parts"));
    }
    let y = x.image(&Perm::transposition(n, a, b));
    check_pair_fixed(n, x, &y, a, b)?;
    Ok(y)
}

fn perm_mapping(n: usize, from: &[u32], to: &[u32]) -> Perm {
    debug_assert_eq!(from.len(), to.len());
    let mut img = vec![u32::MAX; n];
    let mut used = vec![false; n];
    for (&f, &t) in from.iter().zip(to) {
        img[f as usize] = t;
        used[t as usize] = true;
    }
    let mut free = (0..n as u32).filter(|&t| !used[t as usize]);
    for v in img.iter_mut() {
        if *v == u32::MAX {
            *v = free.next().unwrap();
        }
    }
    Perm::from_images(img).expect("bijection")
}

fn one_based(parts: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    parts
        .into_iter()
        .map(|p| p.into_iter().map(|x| x - 1).collect())
        .collect()
}

fn range1(a: u32, b: u32) -> impl Iterator<Item = u32> {
    a..=b
}

/// `n/2`-partitions whose stabilizers meet in a group fixing `set`
/// pointwise (`n` even, `3 ≤ |set| < n`).
pub fn pointwise_partitions(n: usize, set: &[u32]) -> Result<Vec<UniformPartition>, Error> {
    let mut a: Vec<u32> = set.to_vec();
    a.sort_unstable();
    a.dedup();
    let m = a.len();
    if !n.is_multiple_of(2) || n < 8 {
        return Err(pre("pointwise partitions need n even and at least 8"));
    }
    if m < 3 || m >= n || a.iter().any(|&x| x as usize >= n) {
        return Err(pre(format!("need 3 <= |A| < n, got |A| = {m}")));
    }
    let l = (n / 2) as u32;
    let nn = n as u32;
    let mut ys: Vec<Vec<Vec<u32>>> = Vec::with_capacity(m);
    ys.push(vec![range1(1, l).collect(), range1(l + 1, nn).collect()]);
    ys.push(vec![
        range1(2, l + 1).collect(),
        std::iter::once(1).chain(range1(l + 2, nn)).collect(),
    ]);
    for i in 3..=m as u32 {
        if i <= l + 1 {
            let p1: Vec<u32> = range1(1, l + 1).filter(|&x| x != i - 1).collect();
            let p2: Vec<u32> = range1(l + 2, nn).chain(std::iter::once(i - 1)).collect();
            ys.push(vec![p1, p2]);
        } else {
            let p1: Vec<u32> = range1(2, l).chain(std::iter::once(i)).collect();
            let p2: Vec<u32> = std::iter::once(1)
                .chain(range1(l + 1, nn))
                .filter(|&x| x != i)
                .collect();
            ys.push(vec![p1, p2]);
        }
    }
    let b: Vec<u32> = if m as u32 <= l + 1 {
        range1(1, m as u32 - 1)
            .chain(std::iter::once(l + 1))
            .collect()
    } else {
        range1(1, m as u32).collect()
    };
    let b: Vec<u32> = b.into_iter().map(|x| x - 1).collect();
    let g = perm_mapping(n, &b, &a);
    let out: Vec<UniformPartition> = ys
        .into_iter()
        .map(|y| UniformPartition::new(n, one_based(y)).map(|p| p.image(&g)))
        .collect::<Result<_, _>>()?;
    let refs: Vec<&UniformPartition> = out.iter().collect();
    let h = sn_structure_stabilizer(n, &[], &refs);
    if !fixes_pointwise(&h, &a) {
        return Err(Error::Verification(
            "pointwise partitions do not fix the set".into(),
        ));
    }
    Ok(out)
}

fn chunk(order: &[u32], size: usize) -> Vec<Vec<u32>> {
    order.chunks(size).map(|c| c.to_vec()).collect()
}

/// Parts of `x` with `first` leading its own part (remaining points ascending),
/// ordered as `firsts` then the rest of the parts in their stored order.
fn ordered_parts(x: &UniformPartition, firsts: &[&[u32]]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut used = vec![false; x.parts().len()];
    for lead in firsts {
        let pi = x.part_of(lead[0]);
        used[pi] = true;
        let mut v: Vec<u32> = lead.to_vec();
        v.extend(x.parts()[pi].iter().filter(|p| !lead.contains(p)));
        out.push(v);
    }
    for (i, p) in x.parts().iter().enumerate() {
        if !used[i] {
            out.push(p.clone());
        }
    }
    out
}

/// A partition `X₃` into parts of size `a2` such that the stabilizers of
/// `x1` and `X₃` meet in a group fixing `{alpha, beta}` setwise. Needs
/// either `3 ≤ |part of x1| < n/2`, or `|part| = n/2`, `a2 ≥ 3` and the two
/// points in different parts.
pub fn two_sets_construct(
    x1: &UniformPartition,
    a2: usize,
    alpha: u32,
    beta: u32,
) -> Result<UniformPartition, Error> {
    let n = x1.degree();
    let a1 = x1.part_size();
    if alpha == beta || alpha as usize >= n || beta as usize >= n {
        return Err(pre("need two distinct points"));
    }
    if a2 < 2 || a2 > a1 || !n.is_multiple_of(a2) {
        return Err(pre(format!(
            "part size {a2} must divide {n} and lie in 2..={a1}"
        )));
    }
    let same = x1.part_of(alpha) == x1.part_of(beta);
    let out = if 3 <= a1 && 2 * a1 < n {
        if a2 >= 3 {
            if same {
                case_1b(x1, a2, alpha, beta)?
            } else {
                case_1a(x1, a2, alpha, beta)?
            }
        } else if same {
            case_2a(x1, alpha, beta)?
        } else {
            case_2b(x1, alpha, beta)?
        }
    } else if 2 * a1 == n && a2 >= 3 && !same {
        if 2 * a2 == n {
            return swap_partition(x1, alpha, beta);
        }
        case_ii(x1, a2, alpha, beta)?
    } else {
        return Err(pre("two-sets construction needs 3 <= a1 < n/2, or a1 = n/2, a2 >= 3, points in different parts"));
    };
    check_pair_fixed(n, x1, &out, alpha, beta)?;
    Ok(out)
}

fn case_1a(
    x1: &UniformPartition,
    a2: usize,
    alpha: u32,
    beta: u32,
) -> Result<UniformPartition, Error> {
    let n = x1.degree();
    let ps = ordered_parts(x1, &[&[alpha], &[beta]]);
    let mut q1 = vec![alpha];
    q1.extend_from_slice(&ps[1][1..a2]);
    let mut q2 = vec![beta];
    q2.extend_from_slice(&ps[0][1..a2]);
    let mut order: Vec<u32> = ps[0][a2..].to_vec();
    order.extend_from_slice(&ps[2]);
    order.extend_from_slice(&ps[1][a2..]);
    for p in &ps[3..] {
        order.extend_from_slice(p);
    }
    let mut parts = vec![q1, q2];
    parts.extend(chunk(&order, a2));
    UniformPartition::with_order(n, parts)
}

fn case_1b(
    x1: &UniformPartition,
    a2: usize,
    alpha: u32,
    beta: u32,
) -> Result<UniformPartition, Error> {
    let n = x1.degree();
    let a1 = x1.part_size();
    let ps = ordered_parts(x1, &[&[alpha, beta]]);
    let mut q1 = vec![alpha];
    q1.extend_from_slice(&ps[1][..a2 - 1]);
    let mut q2 = vec![beta];
    q2.extend_from_slice(&ps[2][..a2 - 1]);
    let mut parts = vec![q1.clone(), q2];
    let mut general: Vec<u32> = ps[1][a2 - 1..].to_vec();
    general.extend_from_slice(&ps[2][a2 - 1..]);
    for p in &ps[3..] {
        general.extend_from_slice(p);
    }
    let take = |general: &mut Vec<u32>, x: u32| general.retain(|&y| y != x);
    if a1 == 3 {
        let q3 = vec![ps[0][2], ps[1][2], ps[2][2]];
        for &x in &q3[1..] {
            take(&mut general, x);
        }
        parts.push(q3);
    } else {
        let rest1 = &ps[0][2..];
        let (s, r) = (rest1.len() / a2, rest1.len() % a2);
        parts.extend(chunk(&rest1[..s * a2], a2));
        let left = &rest1[s * a2..];
        if r > 0 {
            let mut q: Vec<u32> = left.to_vec();
            if r == 1 {
                // one point of each of the first three colours
                for x in [ps[1][a2 - 1], ps[2][a2 - 1]] {
                    take(&mut general, x);
                    q.push(x);
                }
            }
            while q.len() < a2 {
                q.push(general.remove(0));
            }
            parts.push(q);
        }
    }
    parts.extend(chunk(&general, a2));
    let mut y = parts;
    let colours = ColourFunction::new(x1.clone());
    let count_equiv = |y: &[Vec<u32>]| {
        y.iter()
            .filter(|r| colour_equivalent(&colours, &q1, r))
            .count()
    };
    // repair by transpositions until {Q₁,Q₂} is invariant
    loop {
        let yp = UniformPartition::with_order(n, y.clone())?;
        let h = sn_structure_stabilizer(n, &[], &[x1, &yp]);
        let set_of = |v: &[u32]| -> Vec<u32> {
            let mut s = v.to_vec();
            s.sort_unstable();
            s
        };
        let (s1, s2) = (set_of(&y[0]), set_of(&y[1]));
        let bad = h.gens_or_strong().into_iter().find(|x| {
            let im = set_of(&y[0].iter().map(|&p| x.at(p)).collect::<Vec<_>>());
            im != s1 && im != s2
        });
        let Some(x) = bad else { break };
        let img = |q: &[u32]| set_of(&q.iter().map(|&p| x.at(p)).collect::<Vec<_>>());
        let (ia, ib) = (img(&y[0]), img(&y[1]));
        let find = |s: &[u32]| y.iter().position(|r| set_of(r) == s);
        let (pa, pb) = (find(&ia), find(&ib));
        let (Some(pa), Some(pb)) = (pa, pb) else {
            return Err(Error::Verification("image of a part is not a part".into()));
        };
        if pa < 2 || pb < 2 || pa == pb {
            return Err(Error::Verification("repair step met Q1 or Q2".into()));
        }
        let i = colours.colour(x.at(alpha));
        let gamma = ia.iter().copied().filter(|&p| colours.colour(p) != i).min();
        let delta = ib.iter().copied().filter(|&p| colours.colour(p) != i).min();
        let (Some(gamma), Some(delta)) = (gamma, delta) else {
            return Err(Error::Verification(
                "repair step found no recolourable point".into(),
            ));
        };
        let before = count_equiv(&y);
        for r in y.iter_mut() {
            for p in r.iter_mut() {
                if *p == gamma {
                    *p = delta;
                } else if *p == delta {
                    *p = gamma;
                }
            }
        }
        let after = count_equiv(&y);
        if after >= before {
            return Err(Error::Verification(format!(
                "repair measure did not decrease ({before} -> {after})"
            )));
        }
    }
    UniformPartition::with_order(n, y)
}

/// Points labelled `p₁..p_n` part by part, with the given leads first.
fn flat_labels(x1: &UniformPartition, firsts: &[&[u32]]) -> Vec<u32> {
    ordered_parts(x1, firsts).concat()
}

fn case_2a(x1: &UniformPartition, alpha: u32, beta: u32) -> Result<UniformPartition, Error> {
    let n = x1.degree();
    let p = flat_labels(x1, &[&[alpha, beta]]);
    let at = |i: usize| p[i - 1];
    let mut parts = vec![vec![at(1), at(2)]];
    for i in 3..=n / 2 + 1 {
        parts.push(vec![at(i), at(n / 2 - 1 + i)]);
    }
    UniformPartition::with_order(n, parts)
}

fn case_2b(x1: &UniformPartition, alpha: u32, beta: u32) -> Result<UniformPartition, Error> {
    let n = x1.degree();
    let a1 = x1.part_size();
    let p = flat_labels(x1, &[&[alpha], &[beta]]);
    let at = |i: usize| p[i - 1];
    let mut parts = Vec::new();
    if a1 % 2 == 1 {
        parts.push(vec![at(1), at(a1 + 1)]);
        for i in (2..a1).step_by(2) {
            parts.push(vec![at(i), at(i + 1)]);
        }
        for i in (a1 + 2..2 * a1).step_by(2) {
            parts.push(vec![at(i), at(i + 1)]);
        }
        let k = n / a1;
        for blk in (2..k).step_by(2) {
            for i in blk * a1 + 1..=(blk + 1) * a1 {
                parts.push(vec![at(i), at(a1 + i)]);
            }
        }
    } else {
        parts.push(vec![at(1), at(2 * a1 + 1)]);
        parts.push(vec![at(a1 + 1), at(2 * a1 + 2)]);
        for i in 2..=a1 {
            parts.push(vec![at(i), at(a1 + i)]);
        }
        for i in (2 * a1 + 3..n).step_by(2) {
            parts.push(vec![at(i), at(i + 1)]);
        }
    }
    UniformPartition::with_order(n, parts)
}

fn case_ii(
    x1: &UniformPartition,
    a2: usize,
    alpha: u32,
    beta: u32,
) -> Result<UniformPartition, Error> {
    let n = x1.degree();
    let h = n / 2;
    let p = flat_labels(x1, &[&[alpha], &[beta]]);
    let at = |i: usize| p[i - 1];
    let mut q1 = vec![at(1)];
    q1.extend((h + 2..=h + a2).map(at));
    let mut q2 = vec![at(h + 1)];
    q2.extend((2..=a2).map(at));
    let order: Vec<u32> = (a2 + 1..=h).chain(h + a2 + 1..=n).map(at).collect();
    let mut parts = vec![q1, q2];
    parts.extend(chunk(&order, a2));
    UniformPartition::with_order(n, parts)
}

/// `Sₙ` or `Aₙ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grade {
    Symmetric,
    Alternating,
}

impl Grade {
    pub fn group(self, n: usize) -> PermGroup {
        match self {
            Grade::Symmetric => PermGroup::symmetric(n),
            Grade::Alternating => PermGroup::alternating(n),
        }
    }

    /// Length of the tuples the witness builders handle: `n−1` or `n−2`.
    pub fn tuple_length(self, n: usize) -> usize {
        match self {
            Grade::Symmetric => n - 1,
            Grade::Alternating => n - 2,
        }
    }
}

/// A maximal-subgroup type of `Sₙ`/`Aₙ` as a tuple component.
#[derive(Clone, Debug)]
pub enum Component {
    /// Stabilizer of a `k`-set, `k ≤ n/2`.
    Intransitive(usize),
    /// Stabilizer of a partition into parts of the given size.
    Imprimitive(usize),
    /// A primitive subgroup, used as given.
    Primitive(PermGroup),
}

impl Component {
    /// The component's standard representative in `G`.
    pub fn standard(&self, n: usize, grade: Grade) -> Result<PermGroup, Error> {
        let h = match self {
            Component::Intransitive(k) => young_subgroup(n, &(0..*k as u32).collect::<Vec<_>>())?,
            Component::Imprimitive(a) => partition_stabilizer(&UniformPartition::standard(n, *a)?),
            Component::Primitive(p) => return Ok(p.clone()),
        };
        Ok(match grade {
            Grade::Symmetric => h,
            Grade::Alternating => search::intersection(&h, &PermGroup::alternating(n)),
        })
    }

    fn rank(&self) -> usize {
        match self {
            Component::Intransitive(_) => 0,
            Component::Imprimitive(_) => 1,
            Component::Primitive(_) => 2,
        }
    }
}

/// Where a component was placed.
#[derive(Clone, Debug)]
pub enum Placement {
    Set(Vec<u32>),
    Partition(UniformPartition),
    /// A primitive component conjugated by the given element.
    Conjugated(Perm),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    Trivial,
    /// The intersection is `⟨(a,b)⟩`.
    Transposition(u32, u32),
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Trivial => write!(f, "CONCLUSION intersection = 1"),
            Conclusion::Transposition(a, b) => {
                write!(f, "CONCLUSION intersection <= <({},{})>", a + 1, b + 1)
            }
        }
    }
}

/// Placements, conjugators of the standard representatives, and the
/// exactly computed conclusion.
#[derive(Clone, Debug)]
pub struct Witness {
    pub n: usize,
    pub grade: Grade,
    pub components: Vec<Component>,
    pub placements: Vec<Placement>,
    pub conjugators: Vec<Perm>,
    pub intersection_order: BigUint,
    pub conclusion: Conclusion,
}

fn fmt_set(s: &[u32]) -> String {
    format!(
        "{{{}}}",
        s.iter()
            .map(|x| (x + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

impl Witness {
    fn assemble(
        n: usize,
        grade: Grade,
        components: Vec<Component>,
        placements: Vec<Placement>,
    ) -> Result<Witness, Error> {
        let g = grade.group(n);
        let mut conjugators = Vec::with_capacity(components.len());
        let mut sets = Vec::new();
        let mut parts = Vec::new();
        let mut prims = Vec::new();
        for (c, p) in components.iter().zip(&placements) {
            let conj = match (c, p) {
                (Component::Intransitive(k), Placement::Set(s)) => {
                    if s.len() != *k {
                        return Err(Error::Verification("set of the wrong size".into()));
                    }
                    sets.push(s.clone());
                    let std: Vec<u32> = (0..*k as u32).collect();
                    let rest_std: Vec<u32> = (*k as u32..n as u32).collect();
                    let rest: Vec<u32> = (0..n as u32).filter(|x| !s.contains(x)).collect();
                    let mut s = s.clone();
                    s.sort_unstable();
                    let g0 = perm_mapping(n, &[std, rest_std].concat(), &[s, rest].concat());
                    let fix = if *k >= 2 {
                        Perm::transposition(n, 0, 1)
                    } else {
                        Perm::transposition(n, 1, 2)
                    };
                    even_fix(grade, g0, &fix)
                }
                (Component::Imprimitive(a), Placement::Partition(x)) => {
                    if x.part_size() != *a {
                        return Err(Error::Verification(
                            "partition of the wrong part size".into(),
                        ));
                    }
                    parts.push(x.clone());
                    let std = UniformPartition::standard(n, *a)?;
                    let g0 = perm_mapping(n, &std.parts().concat(), &x.parts().concat());
                    even_fix(grade, g0, &Perm::transposition(n, 0, 1))
                }
                (Component::Primitive(h), Placement::Conjugated(c)) => {
                    prims.push(h.conjugate(c));
                    c.clone()
                }
                _ => {
                    return Err(Error::Verification(
                        "placement does not match component".into(),
                    ))
                }
            };
            if !g.contains(&conj) {
                return Err(Error::Verification("conjugator outside the group".into()));
            }
            conjugators.push(conj);
        }
        let pv: Vec<Vec<Vec<u32>>> = parts.iter().map(|p| p.parts().to_vec()).collect();
        let mut inter = search::structure_stabilizer(&g, &sets, &pv);
        for p in &prims {
            if inter.order().is_one() {
                break;
            }
            inter = search::intersection(&inter, p);
        }
        let conclusion = conclusion_of(&inter)?;
        Ok(Witness {
            n,
            grade,
            components,
            placements,
            conjugators,
            intersection_order: inter.order(),
            conclusion,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.conclusion == Conclusion::Trivial
    }

    /// Recompute `⋂ H_i^{g_i}` from the standard representatives.
    pub fn verify(&self) -> Result<bool, Error> {
        let reps: Vec<PermGroup> = self
            .components
            .iter()
            .map(|c| c.standard(self.n, self.grade))
            .collect::<Result<_, _>>()?;
        let inter = regularity::conjugate_intersection(&reps, &self.conjugators);
        Ok(conclusion_of(&inter).ok().as_ref() == Some(&self.conclusion))
    }

    /// Bracket notation, one line per component, then the conclusion.
    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, p) in self.placements.iter().enumerate() {
            let body = match p {
                Placement::Set(s) => {
                    let mut s = s.clone();
                    s.sort_unstable();
                    format!("set {}", fmt_set(&s))
                }
                Placement::Partition(x) => {
                    let c = x.canonical();
                    format!(
                        "partition [{}]",
                        c.parts()
                            .iter()
                            .map(|q| fmt_set(q))
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                }
                Placement::Conjugated(g) => format!("primitive conjugated by {g}"),
            };
            out.push(format!("X{} {}", i + 1, body));
        }
        out.push(self.conclusion.to_string());
        out
    }
}

fn even_fix(grade: Grade, g: Perm, odd_in_standard: &Perm) -> Perm {
    if grade == Grade::Alternating && !g.is_even() {
        odd_in_standard.then(&g)
    } else {
        g
    }
}

fn conclusion_of(h: &PermGroup) -> Result<Conclusion, Error> {
    let ord = h.order();
    if ord.is_one() {
        return Ok(Conclusion::Trivial);
    }
    if ord == BigUint::from(2u32) {
        if let Some(t) = h.gens_or_strong().into_iter().find(|x| !x.is_identity()) {
            let s: Vec<u32> = (0..h.degree() as u32).filter(|&x| t.at(x) != x).collect();
            if s.len() == 2 {
                return Ok(Conclusion::Transposition(s[0], s[1]));
            }
        }
    }
    Err(Error::Verification(format!(
        "intersection of order {ord} is not inside a transposition subgroup"
    )))
}

/// Least support of a nontrivial element (attained at prime order).
pub fn minimal_degree(g: &PermGroup) -> Result<usize, Error> {
    if g.is_trivial() {
        return Err(pre("trivial group has no minimal degree"));
    }
    Ok(prime_order_class_reps(g)?
        .iter()
        .map(|c| c.rep.support())
        .min()
        .unwrap_or(g.degree()))
}

/// A partition into parts of size `b` in which as many points moved by `l`
/// as possible (ascending) share their part only with points fixed by `l`.
/// Such a point is fixed by `l` ∩ the partition's stabilizer.
fn pin_partition(n: usize, b: usize, l: &PermGroup) -> Result<UniformPartition, Error> {
    let gens = l.gens_or_strong();
    let moved: Vec<u32> = (0..n as u32)
        .filter(|&x| gens.iter().any(|g| g.at(x) != x))
        .collect();
    let mut fixed: Vec<u32> = (0..n as u32).filter(|x| !moved.contains(x)).collect();
    let mut parts = Vec::new();
    let mut rest = Vec::new();
    for &u in &moved {
        if fixed.len() >= b - 1 && parts.len() + 1 < n / b {
            let mut p = vec![u];
            p.extend(fixed.drain(..b - 1));
            parts.push(p);
        } else {
            rest.push(u);
        }
    }
    rest.extend(fixed);
    parts.extend(chunk(&rest, b));
    UniformPartition::with_order(n, parts)
}

struct Builder {
    n: usize,
    sets: Vec<Vec<u32>>,
    parts: Vec<UniformPartition>,
}

impl Builder {
    fn current(&self) -> PermGroup {
        let refs: Vec<&UniformPartition> = self.parts.iter().collect();
        sn_structure_stabilizer(self.n, &self.sets, &refs)
    }
}

/// Partitions with part sizes `sizes` (descending) whose stabilizers,
/// together with `external`, fix `0..sizes.len()` pointwise, or meet
/// trivially. Points are chain labels; the caller relabels.
fn imprimitive_chain(
    n: usize,
    sizes: &[usize],
    external: &[Vec<u32>],
    grade: Grade,
    cfg: &Config,
) -> Result<Vec<UniformPartition>, Error> {
    let m = sizes.len();
    let half = n / 2;
    let mut b = Builder {
        n,
        sets: external.to_vec(),
        parts: Vec::new(),
    };
    if m == 0 {
        return Ok(Vec::new());
    }
    if m >= 3 && sizes[m - 3] == 2 {
        // three copies of S₂ ≀ S_{n/2} already have a base of size 3
        let g = grade.group(n);
        let std = UniformPartition::standard(n, 2)?;
        let h = Component::Imprimitive(2).standard(n, grade)?;
        let t = SubgroupTuple::trusted(g, vec![h.clone(), h.clone(), h], Vec::new());
        let (w, _) = regularity::random_witness_search(&t, cfg.random_budget.max(200), cfg.seed);
        let w = w.ok_or_else(|| {
            Error::Verification("no three 2-partitions with trivial stabilizer found".into())
        })?;
        let mut out: Vec<UniformPartition> = sizes[..m - 3]
            .iter()
            .map(|&a| UniformPartition::standard(n, a))
            .collect::<Result<_, _>>()?;
        out.extend(w.iter().map(|g| std.image(g)));
        return Ok(out);
    }
    let h = sizes.iter().take_while(|&&a| a == half).count();
    let one = |v: Vec<Vec<u32>>| UniformPartition::with_order(n, one_based(v));
    let nn = n as u32;
    let hh = half as u32;
    let mut s;
    match h {
        0 => {
            b.parts.push(UniformPartition::standard(n, sizes[0])?);
            s = 1;
        }
        1 => {
            b.parts.push(one(vec![
                std::iter::once(1).chain(range1(3, hh + 1)).collect(),
                std::iter::once(2).chain(range1(hh + 2, nn)).collect(),
            ])?);
            s = 1;
        }
        2 => {
            b.parts.push(one(vec![
                std::iter::once(1).chain(range1(4, hh + 2)).collect(),
                [2, 3].into_iter().chain(range1(hh + 3, nn)).collect(),
            ])?);
            b.parts.push(one(vec![
                std::iter::once(2).chain(range1(4, hh + 2)).collect(),
                [1, 3].into_iter().chain(range1(hh + 3, nn)).collect(),
            ])?);
            s = 2;
        }
        _ => {
            b.parts
                .extend(pointwise_partitions(n, &(0..h as u32).collect::<Vec<_>>())?);
            s = h;
        }
    }
    if h >= 1 && s < m {
        let a = sizes[s];
        let (lo, hi) = (s as u32 - 1, s as u32);
        if a >= 3 {
            let j = if h >= 3 {
                (0..h)
                    .find(|&j| b.parts[j].part_of(lo) != b.parts[j].part_of(hi))
                    .ok_or_else(|| {
                        Error::Verification(
                            "no half-partition separates consecutive fixed points".into(),
                        )
                    })?
            } else {
                s - 1
            };
            let x = two_sets_construct(&b.parts[j], a, lo, hi)?;
            b.parts.push(x);
        } else {
            let x = pin_partition(n, a, &b.current())?;
            b.parts.push(x);
        }
        s += 1;
    }
    for i in s..m {
        let prev = sizes[i - 1];
        let x = if prev >= 3 && prev < half {
            two_sets_construct(&b.parts[i - 1], sizes[i], i as u32 - 1, i as u32)?
        } else {
            pin_partition(n, sizes[i], &b.current())?
        };
        b.parts.push(x);
    }
    Ok(b.parts)
}

fn relabel_to(n: usize, targets: &[u32]) -> Perm {
    let labels: Vec<u32> = (0..targets.len() as u32).collect();
    perm_mapping(n, &labels, targets)
}

/// A set of size `k` containing `a` but not `b`.
fn separating_set(n: usize, k: usize, a: u32, b: u32) -> Vec<u32> {
    let mut s = vec![a];
    s.extend((0..n as u32).filter(|&x| x != a && x != b).take(k - 1));
    s
}

/// A partition into parts of size `k` with `a` and `b` in different parts.
fn separating_partition(n: usize, k: usize, a: u32, b: u32) -> Result<UniformPartition, Error> {
    let std = UniformPartition::standard(n, k)?;
    std.image(&perm_mapping(n, &[0, k as u32], &[a, b]))
        .canonical()
        .pipe(Ok)
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}
impl<T> Pipe for T {}

/// The general construction: the first `n−2` components (intransitive
/// ascending, imprimitive descending, then primitive) meet in at most a
/// transposition subgroup; an optional extra component separates it.
fn construct(n: usize, grade: Grade, comps: &[Component], cfg: &Config) -> Result<Witness, Error> {
    let len = comps.len();
    if len + 2 < n || len > n - 1 {
        return Err(pre(format!(
            "tuple length {len} must be n-2 or n-1 for n = {n}"
        )));
    }
    let mut idx: Vec<usize> = (0..len).collect();
    let key = |c: &Component| match c {
        Component::Intransitive(k) => (0usize, *k as i64),
        Component::Imprimitive(a) => (1, -(*a as i64)),
        Component::Primitive(p) => (2, -(p.order().bits() as i64)),
    };
    idx.sort_by_key(|&i| key(&comps[i]));
    let mut placements: Vec<Option<Placement>> = vec![None; len];
    let id = Perm::identity(n);
    let prim: Vec<usize> = idx
        .iter()
        .copied()
        .filter(|&i| comps[i].rank() == 2)
        .collect();

    if prim.len() >= 2 {
        // two primitive components already give a regular pair
        let g = grade.group(n);
        let (p1, p2) = match (&comps[prim[0]], &comps[prim[1]]) {
            (Component::Primitive(a), Component::Primitive(b)) => (a.clone(), b.clone()),
            _ => unreachable!(),
        };
        let t = SubgroupTuple::trusted(g, vec![p1, p2], Vec::new());
        let (w, _) = regularity::random_witness_search(&t, cfg.random_budget.max(200), cfg.seed);
        let w = w.ok_or_else(|| {
            Error::Verification("no regular pair of primitive components found".into())
        })?;
        for (pos, &i) in idx.iter().enumerate() {
            placements[i] = Some(match &comps[i] {
                Component::Intransitive(k) => Placement::Set((0..*k as u32).collect()),
                Component::Imprimitive(a) => {
                    Placement::Partition(UniformPartition::standard(n, *a)?)
                }
                Component::Primitive(_) => Placement::Conjugated(if i == prim[1] {
                    w[1].clone()
                } else {
                    id.clone()
                }),
            });
            let _ = pos;
        }
        return Witness::assemble(
            n,
            grade,
            comps.to_vec(),
            placements.into_iter().map(Option::unwrap).collect(),
        );
    }

    // the extra component, if any, is the last in the sorted order
    let (main, extra) = if len == n - 1 {
        (&idx[..n - 2], Some(idx[n - 2]))
    } else {
        (&idx[..], None)
    };
    let intr: Vec<usize> = main
        .iter()
        .copied()
        .filter(|&i| comps[i].rank() == 0)
        .collect();
    let impr: Vec<usize> = main
        .iter()
        .copied()
        .filter(|&i| comps[i].rank() == 1)
        .collect();
    let has_prim = main.iter().any(|&i| comps[i].rank() == 2);
    let k = intr.len();

    let sizes_of = |v: &[usize]| -> Vec<usize> {
        v.iter()
            .map(|&i| match comps[i] {
                Component::Intransitive(a) | Component::Imprimitive(a) => a,
                _ => unreachable!(),
            })
            .collect()
    };
    let mut b = Builder {
        n,
        sets: Vec::new(),
        parts: Vec::new(),
    };
    if k >= 2 {
        let (fam, _) = xi_family(n, &sizes_of(&intr))?;
        b.sets = fam.sets().to_vec();
    } else if k == 1 {
        b.sets.push((0..sizes_of(&intr)[0] as u32).collect());
    }
    for (j, &i) in intr.iter().enumerate() {
        placements[i] = Some(Placement::Set(b.sets[j].clone()));
    }

    let isz = sizes_of(&impr);
    if !impr.is_empty() {
        let pinning = k > 0 && (k + 4 >= n || (has_prim && k + 6 >= n));
        let xs = if pinning {
            let mut xs = Vec::new();
            for &a in &isz {
                let x = pin_partition(n, a, &b.current())?;
                b.parts.push(x.clone());
                xs.push(x);
            }
            xs
        } else {
            // chain on the points after those the sets already fix
            let targets: Vec<u32> = (k as u32..(k + impr.len()) as u32).collect();
            let pi = relabel_to(n, &targets);
            let pinv = pi.inverse();
            let ext: Vec<Vec<u32>> = b
                .sets
                .iter()
                .map(|s| s.iter().map(|&x| pinv.at(x)).collect())
                .collect();
            let chain = imprimitive_chain(n, &isz, &ext, grade, cfg)?;
            chain.iter().map(|x| x.image(&pi)).collect()
        };
        for (j, &i) in impr.iter().enumerate() {
            placements[i] = Some(Placement::Partition(xs[j].clone()));
        }
        b.parts = xs;
    }
    for &i in main {
        if comps[i].rank() == 2 {
            placements[i] = Some(Placement::Conjugated(id.clone()));
        }
    }
    if let Some(e) = extra {
        let partial: Vec<usize> = main.to_vec();
        let sub_comps: Vec<Component> = partial.iter().map(|&i| comps[i].clone()).collect();
        let sub_pl: Vec<Placement> = partial
            .iter()
            .map(|&i| placements[i].clone().unwrap())
            .collect();
        let w = Witness::assemble(n, Grade::Symmetric, sub_comps, sub_pl)?;
        let (a, bb) = match w.conclusion {
            Conclusion::Transposition(a, b) => (a, b),
            Conclusion::Trivial => (0, 1),
        };
        placements[e] = Some(match &comps[e] {
            Component::Intransitive(kk) => Placement::Set(separating_set(n, *kk, a, bb)),
            Component::Imprimitive(s) => Placement::Partition(separating_partition(n, *s, a, bb)?),
            Component::Primitive(_) => Placement::Conjugated(id.clone()),
        });
    }
    Witness::assemble(
        n,
        grade,
        comps.to_vec(),
        placements.into_iter().map(Option::unwrap).collect(),
    )
}

fn witness_by_search(
    n: usize,
    grade: Grade,
    comps: &[Component],
    cfg: &Config,
) -> Result<Witness, Error> {
    let g = grade.group(n);
    let reps: Vec<PermGroup> = comps
        .iter()
        .map(|c| c.standard(n, grade))
        .collect::<Result<_, _>>()?;
    let t = SubgroupTuple::trusted(g, reps, Vec::new());
    let v = regularity::decide(&t, cfg);
    let regularity::RegularityVerdict::Regular { witness, .. } = v else {
        return Err(Error::Verification(format!("tuple is not regular: {v}")));
    };
    let placements = comps
        .iter()
        .zip(&witness)
        .map(|(c, gi)| {
            Ok(match c {
                Component::Intransitive(k) => {
                    Placement::Set((0..*k as u32).map(|x| gi.at(x)).collect())
                }
                Component::Imprimitive(a) => {
                    Placement::Partition(UniformPartition::standard(n, *a)?.image(gi))
                }
                Component::Primitive(_) => Placement::Conjugated(gi.clone()),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Witness::assemble(n, grade, comps.to_vec(), placements)
}

/// Intransitive tuples: sizes `a_i ≤ n/2`, length `n−2` (either grade) or
/// `n−1` (`Sₙ`). For length `n−2` in `Sₙ` the intersection lies in a
/// transposition subgroup; otherwise it is trivial.
pub fn intransitive_witness(
    n: usize,
    grade: Grade,
    sizes: &[usize],
    cfg: &Config,
) -> Result<Witness, Error> {
    if n < 5 {
        return Err(pre("n must be at least 5"));
    }
    let len = sizes.len();
    if !(len == n - 2 || (grade == Grade::Symmetric && len == n - 1)) {
        return Err(pre(format!(
            "tuple length {len} is not admissible for n = {n}"
        )));
    }
    if sizes.iter().any(|&a| a == 0 || a > n / 2) {
        return Err(pre("sizes must lie in 1..=n/2"));
    }
    let comps: Vec<Component> = sizes.iter().map(|&a| Component::Intransitive(a)).collect();
    construct(n, grade, &comps, cfg)
}

/// Imprimitive tuples: part sizes `a_i` dividing `n`, `2 ≤ a_i ≤ n/2`.
/// Degrees below 8 are decided by the exhaustive engine.
pub fn imprimitive_witness(
    n: usize,
    grade: Grade,
    sizes: &[usize],
    cfg: &Config,
) -> Result<Witness, Error> {
    let len = sizes.len();
    if !(len == n - 2 || (grade == Grade::Symmetric && len == n - 1)) {
        return Err(pre(format!(
            "tuple length {len} is not admissible for n = {n}"
        )));
    }
    if sizes
        .iter()
        .any(|&a| a < 2 || 2 * a > n || !n.is_multiple_of(a))
    {
        return Err(pre("part sizes must divide n and lie in 2..=n/2"));
    }
    let comps: Vec<Component> = sizes.iter().map(|&a| Component::Imprimitive(a)).collect();
    if n < 8 {
        return witness_by_search(n, grade, &comps, cfg);
    }
    construct(n, grade, &comps, cfg)
}

/// Mixed tuples for `n ≥ 13`, length `n−2` (either grade) or `n−1` (`Sₙ`).
pub fn mixed_witness(
    n: usize,
    grade: Grade,
    comps: &[Component],
    cfg: &Config,
) -> Result<Witness, Error> {
    if n < 13 {
        return Err(pre("mixed constructions need n >= 13"));
    }
    let len = comps.len();
    if !(len == n - 2 || (grade == Grade::Symmetric && len == n - 1)) {
        return Err(pre(format!(
            "tuple length {len} is not admissible for n = {n}"
        )));
    }
    for c in comps {
        match c {
            Component::Intransitive(a) if *a == 0 || 2 * a > n => {
                return Err(pre("set size out of range"))
            }
            Component::Imprimitive(a) if *a < 2 || 2 * a > n || !n.is_multiple_of(*a) => {
                return Err(pre("part size out of range"))
            }
            Component::Primitive(p) => {
                if p.degree() != n || !p.is_transitive() || !p.is_primitive()? {
                    return Err(pre("primitive component is not primitive on [n]"));
                }
                let ms = minimal_degree(p)?;
                if ms < 8 {
                    return Err(pre(format!(
                        "primitive component has an element of support {ms} < 8"
                    )));
                }
            }
            _ => {}
        }
    }
    construct(n, grade, comps, cfg)
}

/// All multisets of `len` values from `1..=hi`, ascending.
fn multisets(len: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=hi {
            cur.push(v);
            rec(len, v, hi, cur, out);
            cur.pop();
        }
    }
    rec(len, 1, hi, &mut cur, &mut out);
    out
}

/// Decide every intransitive `(n−2)`-tuple of set stabilizers in `Sₙ` and
/// return the non-regular ones (as ascending set sizes). Errors if they are
/// not exactly the tuples `(1,…,1,k)`.
pub fn classify_intransitive_maximal_tuples(
    n: usize,
    ceiling: usize,
    cfg: &Config,
) -> Result<Vec<Vec<usize>>, Error> {
    if n < 5 || n > ceiling {
        return Err(Error::IndexCeiling {
            index: n.to_string(),
            ceiling: ceiling.to_string(),
        });
    }
    let g = PermGroup::symmetric(n);
    let young: Vec<PermGroup> = (1..=n / 2)
        .map(|a| young_subgroup(n, &(0..a as u32).collect::<Vec<_>>()))
        .collect::<Result<_, _>>()?;
    let mut nonregular = Vec::new();
    for sizes in multisets(n - 2, n / 2) {
        let t = SubgroupTuple::trusted(
            g.clone(),
            sizes.iter().map(|&a| young[a - 1].clone()).collect(),
            Vec::new(),
        );
        let v = regularity::decide(&t, cfg);
        if v.is_unknown() {
            return Err(Error::Verification(format!(
                "undecided tuple {sizes:?}: {v}"
            )));
        }
        if v.is_nonregular() {
            nonregular.push(sizes);
        }
    }
    let expected: Vec<Vec<usize>> = (1..=n / 2)
        .map(|k| {
            let mut v = vec![1; n - 3];
            v.push(k);
            v
        })
        .collect();
    if nonregular != expected {
        return Err(Error::Verification(format!(
            "non-regular tuples {nonregular:?} differ from the expected shape"
        )));
    }
    Ok(nonregular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util;
    use rand::seq::SliceRandom;
    use rand::Rng as _;

    fn cfg() -> Config {
        Config {
            random_budget: 50,
            ..Config::default()
        }
    }

    fn setwise_oracle(n: usize, sets: &[Vec<u32>]) -> Vec<Perm> {
        // brute force over Sₙ
        PermGroup::symmetric(n)
            .elements()
            .into_iter()
            .filter(|g| {
                sets.iter().all(|s| {
                    let mut im: Vec<u32> = s.iter().map(|&x| g.at(x)).collect();
                    im.sort_unstable();
                    im == *s
                })
            })
            .collect()
    }

    #[test]
    fn neighborhood_example() {
        let f = SubsetFamily::new(5, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(f.neighborhood(1), vec![0, 1]);
        assert!(f.neighborhood(3).is_empty() && f.neighborhood(4).is_empty());
        assert!(!f.distinct_neighborhoods());
    }

    #[test]
    fn neighborhoods_match_orbits() {
        let mut rng = util::rng(7);
        for n in 5..=7 {
            for _ in 0..40 {
                let k = rng.gen_range(1..=n);
                let sets: Vec<Vec<u32>> = (0..k)
                    .map(|_| {
                        let sz = rng.gen_range(1..=n / 2);
                        let mut pts: Vec<u32> = (0..n as u32).collect();
                        pts.shuffle(&mut rng);
                        let mut s = pts[..sz].to_vec();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                let f = SubsetFamily::new(n, sets.clone()).unwrap();
                let h = f.stabilizer_intersection();
                let brute = setwise_oracle(n, &sets);
                assert_eq!(h.order(), BigUint::from(brute.len()));
                assert_eq!(f.distinct_neighborhoods(), h.order().is_one());
                for a in 0..n as u32 {
                    let orb = h.orbit(a);
                    for b in 0..n as u32 {
                        assert_eq!(orb.contains(&b), f.neighborhood(a) == f.neighborhood(b));
                    }
                }
            }
        }
    }

    #[test]
    fn xi_conclusion_exhaustive() {
        for n in 5..=9 {
            for k in 2..n {
                for sizes in multisets(k, n / 2) {
                    let (f, m) = xi_family(n, &sizes).unwrap();
                    let h = f.stabilizer_intersection();
                    let mid: Vec<u32> = (k as u32 - 1..=m).collect();
                    let top: Vec<u32> = (m + 1..n as u32).collect();
                    assert!(
                        fixes_pointwise(&h, &(0..k as u32 - 1).collect::<Vec<_>>()),
                        "n={n} {sizes:?}"
                    );
                    assert!(
                        fixes_setwise(&h, &mid) && fixes_setwise(&h, &top),
                        "n={n} {sizes:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn xi_examples() {
        let (f, m) = xi_family(6, &[2, 3]).unwrap();
        assert_eq!(f.sets(), &[vec![0, 1], vec![1, 2, 3]]);
        assert_eq!(m, 3);
        let (f, _) = xi_family(8, &[1; 6]).unwrap();
        assert!(fixes_pointwise(
            &f.stabilizer_intersection(),
            &[0, 1, 2, 3, 4, 5]
        ));
        let (f, _) = xi_family(13, &[1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 6]).unwrap();
        let h = f.stabilizer_intersection();
        assert!(h.order() <= BigUint::from(2u32));
    }

    #[test]
    fn colours() {
        let p = UniformPartition::standard(9, 3).unwrap();
        let c = ColourFunction::new(p.clone());
        assert!(colour_equivalent(&c, &[0, 1, 2], &[3, 4, 5]));
        assert!(!colour_equivalent(&c, &[0, 1, 3], &[0, 1, 2]));
        let mut rng = util::rng(3);
        for n in [6usize, 8, 9, 12] {
            for l in (2..n).filter(|l| n % l == 0) {
                for _ in 0..5 {
                    let mut pts: Vec<u32> = (0..n as u32).collect();
                    pts.shuffle(&mut rng);
                    let x = UniformPartition::new(n, chunk(&pts, l)).unwrap();
                    pts.shuffle(&mut rng);
                    let l2 = *(2..n)
                        .filter(|d| n % d == 0)
                        .collect::<Vec<_>>()
                        .choose(&mut rng)
                        .unwrap();
                    let y = UniformPartition::new(n, chunk(&pts, l2)).unwrap();
                    let h = sn_structure_stabilizer(n, &[], &[&x, &y]);
                    let c = ColourFunction::new(x.clone());
                    for g in h.gens_or_strong() {
                        for q in y.parts() {
                            let im: Vec<u32> = q.iter().map(|&p| g.at(p)).collect();
                            assert!(colour_equivalent(&c, q, &im));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn swaps() {
        let x = UniformPartition::standard(9, 3).unwrap();
        let y = swap_partition(&x, 0, 3).unwrap();
        let brute = setwise_oracle(9, &[]).len(); // sanity on oracle size
        assert_eq!(brute, 362880);
        let h = sn_structure_stabilizer(9, &[], &[&x, &y]);
        assert!(fixes_setwise(&h, &[0, 3]));
        assert_eq!(y.image(&Perm::transposition(9, 0, 3)), x);
        let x8 = UniformPartition::standard(8, 4).unwrap();
        assert!(swap_partition(&x8, 1, 6).is_ok());
        assert!(swap_partition(&x8, 1, 2).is_err());
    }

    #[test]
    fn pointwise_examples() {
        let ps = pointwise_partitions(8, &[0, 1, 2]).unwrap();
        assert_eq!(ps.len(), 3);
        let ps = pointwise_partitions(10, &[0, 2, 3, 5, 6, 8, 9]).unwrap();
        assert_eq!(ps.len(), 7);
        assert!(pointwise_partitions(8, &[0, 1]).is_err());
        for n in [8usize, 10, 12] {
            for m in 3..n {
                let mut rng = util::rng(m as u64);
                let mut pts: Vec<u32> = (0..n as u32).collect();
                pts.shuffle(&mut rng);
                pointwise_partitions(n, &pts[..m]).unwrap();
            }
        }
    }

    #[test]
    fn two_sets_all_cases() {
        for n in [8usize, 9, 10, 12, 15, 16, 18] {
            for a1 in (3..=n / 2).filter(|a| n % a == 0) {
                let x1 = UniformPartition::standard(n, a1).unwrap();
                for a2 in (2..=a1).filter(|a| n % a == 0) {
                    for (alpha, beta) in [
                        (0u32, 1u32),
                        (0, a1 as u32),
                        (a1 as u32 + 1, n as u32 - 1),
                        (2, 0),
                    ] {
                        let half = 2 * a1 == n;
                        let same = x1.part_of(alpha) == x1.part_of(beta);
                        let ok = (!half) || (a2 >= 3 && !same);
                        let r = two_sets_construct(&x1, a2, alpha, beta);
                        assert_eq!(
                            r.is_ok(),
                            ok,
                            "n={n} a1={a1} a2={a2} ({alpha},{beta}): {r:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn intransitive_witnesses() {
        let w = intransitive_witness(6, Grade::Symmetric, &[1; 5], &cfg()).unwrap();
        assert!(w.is_trivial());
        let w = intransitive_witness(9, Grade::Symmetric, &[2, 2, 3, 3, 4, 4, 4], &cfg()).unwrap();
        assert!(matches!(w.conclusion, Conclusion::Transposition(..)));
        assert!(w.verify().unwrap());
        for sizes in multisets(6, 4) {
            let w = intransitive_witness(8, Grade::Alternating, &sizes, &cfg()).unwrap();
            assert!(w.is_trivial());
        }
        for sizes in multisets(6, 3) {
            let w = intransitive_witness(7, Grade::Symmetric, &sizes, &cfg()).unwrap();
            assert!(w.is_trivial() && w.verify().unwrap());
        }
    }

    fn divisor_multisets(n: usize, len: usize) -> Vec<Vec<usize>> {
        let ds: Vec<usize> = (2..=n / 2).filter(|d| n.is_multiple_of(*d)).collect();
        multisets(len, ds.len())
            .into_iter()
            .map(|v| v.into_iter().map(|i| ds[i - 1]).collect())
            .collect()
    }

    #[test]
    fn imprimitive_claim_small() {
        for n in [8usize, 9, 10] {
            for sizes in divisor_multisets(n, n - 2) {
                let w = imprimitive_witness(n, Grade::Symmetric, &sizes[..n - 2], &cfg())
                    .unwrap_or_else(|e| panic!("n={n} {sizes:?}: {e}"));
                if let Conclusion::Transposition(a, b) = w.conclusion {
                    assert_eq!((a, b), (n as u32 - 2, n as u32 - 1), "n={n} {sizes:?}");
                }
                let wa = imprimitive_witness(n, Grade::Alternating, &sizes, &cfg()).unwrap();
                assert!(wa.is_trivial());
            }
        }
    }

    #[test]
    fn imprimitive_examples() {
        let w = imprimitive_witness(
            12,
            Grade::Symmetric,
            &[6, 6, 4, 3, 3, 2, 2, 2, 2, 2],
            &cfg(),
        )
        .unwrap();
        assert!(w.intersection_order <= BigUint::from(2u32));
        let w = imprimitive_witness(
            12,
            Grade::Alternating,
            &[6, 6, 4, 3, 3, 2, 2, 2, 2, 2],
            &cfg(),
        )
        .unwrap();
        assert!(w.is_trivial());
        let w = imprimitive_witness(6, Grade::Symmetric, &[3, 3, 2, 2, 2], &cfg()).unwrap();
        assert!(w.is_trivial());
    }

    fn agl1(p: usize) -> PermGroup {
        let shift = Perm::from_images((0..p as u32).map(|x| (x + 1) % p as u32).collect()).unwrap();
        let root = 2u32; // a primitive root mod 13
        assert_eq!(p, 13);
        let mul =
            Perm::from_images((0..p as u32).map(|x| (x * root) % p as u32).collect()).unwrap();
        PermGroup::new(p, vec![shift, mul]).unwrap()
    }

    #[test]
    fn mixed_examples() {
        let c = cfg();
        let comps: Vec<Component> = (0..11).map(|_| Component::Intransitive(1)).collect();
        assert!(mixed_witness(13, Grade::Symmetric, &comps, &c).is_ok());
        let mut comps: Vec<Component> = [1, 1, 1, 2, 2, 3, 3, 4, 5, 6]
            .iter()
            .map(|&a| Component::Intransitive(a))
            .collect();
        comps.push(Component::Primitive(agl1(13)));
        let w = mixed_witness(13, Grade::Symmetric, &comps, &c).unwrap();
        assert!(w.is_trivial());
        let mut comps: Vec<Component> = [1, 2, 3, 5, 7]
            .iter()
            .map(|&a| Component::Intransitive(a))
            .collect();
        comps.extend(
            [7, 7, 2, 2, 2, 2, 2]
                .iter()
                .map(|&a| Component::Imprimitive(a)),
        );
        let w = mixed_witness(14, Grade::Symmetric, &comps, &c).unwrap();
        assert!(w.intersection_order <= BigUint::from(2u32));
        comps.push(Component::Imprimitive(7));
        assert!(mixed_witness(14, Grade::Symmetric, &comps, &c)
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn classify_small() {
        let c = Config {
            random_budget: 40,
            ..Config::default()
        };
        for n in 5..=7 {
            let v = classify_intransitive_maximal_tuples(n, 9, &c).unwrap();
            assert_eq!(v.len(), n / 2);
        }
    }
}
