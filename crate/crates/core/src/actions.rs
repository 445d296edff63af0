//! Explicit actions: cosets `G/H`, Young subgroups, uniform-partition
//! stabilizers and fixed-point counts.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::grp::{Chain, PermGroup};
use crate::perm::Perm;
use crate::util;
use crate::Error;

pub const DEFAULT_INDEX_CEILING: u64 = 5_000_000;

enum KeyMap {
    Packed(HashMap<u128, u32>),
    Wide(HashMap<Box<[u32]>, u32>),
}

/// The action of `G` on the right cosets of `H`, cosets numbered from 0 in
/// breadth-first order from `H` itself.
pub struct CosetAction {
    parent: PermGroup,
    sub: PermGroup,
    hchain: Chain,
    n: usize,
    index: usize,
    reps: Vec<u32>,
    images: Vec<Vec<u32>>,
    map: KeyMap,
}

impl std::fmt::Debug for CosetAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CosetAction(index {})", self.index)
    }
}

impl CosetAction {
    pub fn new(g: &PermGroup, h: &PermGroup) -> Result<CosetAction, Error> {
        CosetAction::with_ceiling(g, h, DEFAULT_INDEX_CEILING)
    }

    pub fn with_ceiling(g: &PermGroup, h: &PermGroup, ceiling: u64) -> Result<CosetAction, Error> {
        if g.degree() != h.degree() {
            return Err(Error::DegreeMismatch(g.degree(), h.degree()));
        }
        if !h.is_subgroup_of(g) {
            return Err(Error::NotASubgroup("coset action of a non-subgroup".into()));
        }
        let index_big = g.order() / h.order();
        let index = match index_big.to_u64() {
            Some(i) if i <= ceiling => i as usize,
            _ => {
                return Err(Error::IndexCeiling {
                    index: index_big.to_string(),
                    ceiling: ceiling.to_string(),
                })
            }
        };
        let n = g.degree();
        // keys are images of a base of G, minimised over H along that base
        let hchain = h.chain_with_base(&g.chain().base());
        let key_len = hchain.levels.len();
        let packed = n < 256 && key_len <= 16;
        let mut act = CosetAction {
            parent: g.clone(),
            sub: h.clone(),
            hchain,
            n,
            index,
            reps: Vec::with_capacity(index * n),
            images: Vec::new(),
            map: if packed {
                KeyMap::Packed(HashMap::with_capacity(index))
            } else {
                KeyMap::Wide(HashMap::new())
            },
        };
        let gens = g.gens_or_strong();
        act.images = vec![vec![0u32; index]; gens.len()];
        let id = Perm::identity(n);
        let mut buf = Vec::new();
        act.insert(&id, &mut buf);
        let mut c = 0usize;
        while c < act.reps.len() / n {
            let r = act.rep(c as u32);
            for (s, gen) in gens.iter().enumerate() {
                let x = r.then(gen);
                let idx = match act.lookup_with(&x, &mut buf) {
                    Some(i) => i,
                    None => act.insert(&x, &mut buf),
                };
                act.images[s][c] = idx;
            }
            c += 1;
        }
        if act.reps.len() / n != index {
            return Err(Error::Verification(format!(
                "coset enumeration found {} cosets, expected {index}",
                act.reps.len() / n
            )));
        }
        Ok(act)
    }

    /// Lexicographically least image of `G`'s base under the coset `Hg`.
    fn key_into(&self, g: &Perm, buf: &mut Vec<u32>) {
        buf.clear();
        let mut cur = g.clone();
        let last = self.hchain.levels.len();
        for (k, lvl) in self.hchain.levels.iter().enumerate() {
            let mut best = (u32::MAX, 0usize);
            for (i, &d) in lvl.orbit.iter().enumerate() {
                let y = cur.at(d);
                if y < best.0 {
                    best = (y, i);
                }
            }
            buf.push(best.0);
            if best.1 != 0 && k + 1 < last {
                cur = lvl.transversal(best.1).then(&cur);
            }
        }
    }

    fn pack(buf: &[u32]) -> u128 {
        buf.iter().fold(0u128, |acc, &x| (acc << 8) | x as u128) | ((buf.len() as u128) << 124)
    }

    fn lookup_with(&self, x: &Perm, buf: &mut Vec<u32>) -> Option<u32> {
        self.key_into(x, buf);
        match &self.map {
            KeyMap::Packed(m) if buf.len() <= 15 => m.get(&Self::pack(buf)).copied(),
            KeyMap::Packed(_) => self.wide_lookup_packed(buf),
            KeyMap::Wide(m) => m.get(&buf[..]).copied(),
        }
    }

    // 16 one-byte entries fill the u128 exactly; no room for the length tag.
    fn wide_lookup_packed(&self, buf: &[u32]) -> Option<u32> {
        match &self.map {
            KeyMap::Packed(m) => m
                .get(&buf.iter().fold(0u128, |acc, &x| (acc << 8) | x as u128))
                .copied(),
            KeyMap::Wide(_) => unreachable!(),
        }
    }

    fn insert(&mut self, x: &Perm, buf: &mut Vec<u32>) -> u32 {
        self.key_into(x, buf);
        let idx = (self.reps.len() / self.n) as u32;
        match &mut self.map {
            KeyMap::Packed(m) => {
                let k = if buf.len() <= 15 {
                    Self::pack(buf)
                } else {
                    buf.iter().fold(0u128, |acc, &x| (acc << 8) | x as u128)
                };
                m.insert(k, idx);
            }
            KeyMap::Wide(m) => {
                m.insert(buf.clone().into_boxed_slice(), idx);
            }
        }
        self.reps.extend_from_slice(x.images());
        idx
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn point_stabilizer(&self) -> &PermGroup {
        &self.sub
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Representative `g` of coset `c` (so the coset is `Hg`).
    pub fn rep(&self, c: u32) -> Perm {
        let c = c as usize;
        Perm::from_vec_unchecked(self.reps[c * self.n..(c + 1) * self.n].to_vec())
    }

    /// Images of the parent's generators (`gens_or_strong`) on coset indices.
    pub fn generator_images(&self) -> &[Vec<u32>] {
        &self.images
    }

    /// Index of the coset `Hx`.
    pub fn coset_of(&self, x: &Perm) -> u32 {
        let mut buf = Vec::new();
        self.lookup_with(x, &mut buf)
            .expect("element outside the parent group")
    }

    /// Image of coset `c` under `x`.
    pub fn act(&self, c: u32, x: &Perm) -> u32 {
        let c = c as usize;
        let r = &self.reps[c * self.n..(c + 1) * self.n];
        let y = Perm::from_vec_unchecked(r.iter().map(|&p| x.at(p)).collect());
        self.coset_of(&y)
    }

    /// `x` as a permutation of the coset indices.
    pub fn image_perm(&self, x: &Perm) -> Perm {
        Perm::from_vec_unchecked((0..self.index as u32).map(|c| self.act(c, x)).collect())
    }

    /// The image of the parent in `Sym(G/H)`.
    pub fn as_group(&self) -> PermGroup {
        let gens = self
            .images
            .iter()
            .map(|v| Perm::from_vec_unchecked(v.clone()))
            .collect();
        PermGroup::new(self.index, gens).expect("coset images")
    }

    /// Stabilizer of coset `Hg`, namely `H^g`.
    pub fn stabilizer_of(&self, c: u32) -> PermGroup {
        self.sub.conjugate(&self.rep(c))
    }

    pub fn fixed_points(&self, x: &Perm) -> Result<usize, Error> {
        if !self.parent.contains(x) {
            return Err(Error::NotASubgroup(format!(
                "{x} is not in the parent group"
            )));
        }
        if x.is_identity() {
            return Ok(self.index);
        }
        Ok((0..self.index as u32)
            .filter(|&c| self.act(c, x) == c)
            .count())
    }

    /// Pairwise-membership oracle: `Hx = Hy` iff `x y⁻¹ ∈ H`.
    pub fn same_coset_oracle(&self, x: &Perm, y: &Perm) -> bool {
        self.sub.contains(&x.then(&y.inverse()))
    }
}

/// A partition of `[n]` into parts of equal size, parts ordered by their
/// smallest point unless an explicit ordering is supplied.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniformPartition {
    n: usize,
    parts: Vec<Vec<u32>>,
}

impl UniformPartition {
    pub fn new(n: usize, parts: Vec<Vec<u32>>) -> Result<UniformPartition, Error> {
        let mut p = UniformPartition::with_order(n, parts)?;
        p.parts.sort_by_key(|q| q[0]);
        Ok(p)
    }

    /// Keep the given part order (colour `i` is the `i`-th part).
    pub fn with_order(n: usize, mut parts: Vec<Vec<u32>>) -> Result<UniformPartition, Error> {
        if parts.is_empty() {
            return Err(Error::Precondition("empty partition".into()));
        }
        let l = parts[0].len();
        if l <= 1 || l >= n || !n.is_multiple_of(l) || parts.len() != n / l {
            return Err(Error::Precondition(format!(
                "not a uniform partition of {n} into parts of size {l}"
            )));
        }
        let mut seen = vec![false; n];
        for q in &mut parts {
            if q.len() != l {
                return Err(Error::Precondition("parts of unequal size".into()));
            }
            q.sort_unstable();
            for &x in q.iter() {
                if x as usize >= n || seen[x as usize] {
                    return Err(Error::Precondition("parts overlap or leave [n]".into()));
                }
                seen[x as usize] = true;
            }
        }
        Ok(UniformPartition { n, parts })
    }

    /// Consecutive blocks `{1..ℓ}, {ℓ+1..2ℓ}, …`.
    pub fn standard(n: usize, l: usize) -> Result<UniformPartition, Error> {
        if l == 0 {
            return Err(Error::Precondition("part size 0".into()));
        }
        let parts = (0..n / l)
            .map(|b| ((b * l) as u32..((b + 1) * l) as u32).collect())
            .collect();
        UniformPartition::new(n, parts)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn part_size(&self) -> usize {
        self.parts[0].len()
    }

    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }

    /// Part index of every point.
    pub fn colour_of(&self) -> Vec<usize> {
        let mut c = vec![0; self.n];
        for (i, q) in self.parts.iter().enumerate() {
            for &x in q {
                c[x as usize] = i;
            }
        }
        c
    }

    pub fn part_of(&self, x: u32) -> usize {
        self.parts
            .iter()
            .position(|q| q.contains(&x))
            .expect("point in partition")
    }

    /// Image under `g`, keeping part order.
    pub fn image(&self, g: &Perm) -> UniformPartition {
        let parts = self
            .parts
            .iter()
            .map(|q| {
                let mut v: Vec<u32> = q.iter().map(|&x| g.at(x)).collect();
                v.sort_unstable();
                v
            })
            .collect();
        UniformPartition { n: self.n, parts }
    }

    /// Canonical form (parts sorted) for hashing partitions as objects.
    pub fn canonical(&self) -> UniformPartition {
        let mut p = self.clone();
        p.parts.sort_by_key(|q| q[0]);
        p
    }

    pub fn stabilizer(&self) -> PermGroup {
        partition_stabilizer(self)
    }
}

fn full_symmetric_gens(n: usize, pts: &[u32]) -> Vec<Perm> {
    let mut out = Vec::new();
    if pts.len() >= 2 {
        out.push(Perm::transposition(n, pts[0], pts[1]));
    }
    if pts.len() >= 3 {
        out.push(Perm::from_cycles(n, &[pts.to_vec()]).unwrap());
    }
    out
}

/// `Sym(S) × Sym([n] ∖ S)`.
pub fn young_subgroup(n: usize, set: &[u32]) -> Result<PermGroup, Error> {
    let mut s: Vec<u32> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() || s.len() >= n || s.iter().any(|&x| x as usize >= n) {
        return Err(Error::Precondition(
            "Young subgroup needs a proper nonempty subset".into(),
        ));
    }
    let rest: Vec<u32> = (0..n as u32)
        .filter(|x| s.binary_search(x).is_err())
        .collect();
    let mut gens = full_symmetric_gens(n, &s);
    gens.extend(full_symmetric_gens(n, &rest));
    let order = util::factorial(s.len() as u64) * util::factorial(rest.len() as u64);
    PermGroup::with_order(n, gens, order)
}

/// Direct product of full symmetric groups on the given disjoint sets.
pub fn direct_symmetric(n: usize, sets: &[Vec<u32>]) -> PermGroup {
    let mut gens = Vec::new();
    let mut order = BigUint::from(1u32);
    for s in sets {
        gens.extend(full_symmetric_gens(n, s));
        order *= util::factorial(s.len() as u64);
    }
    PermGroup::with_order(n, gens, order).expect("product of symmetric groups")
}

/// `S_ℓ ≀ S_{n/ℓ}` preserving the partition.
pub fn partition_stabilizer(p: &UniformPartition) -> PermGroup {
    let n = p.n;
    let parts = &p.parts;
    let b = parts.len();
    let l = p.part_size();
    let mut gens = full_symmetric_gens(n, &parts[0]);
    let shift = |k: usize| -> Perm {
        // part i → part i+1 (or the swap of parts 0 and 1 for k == 1)
        let mut img: Vec<u32> = (0..n as u32).collect();
        for i in 0..b {
            let j = if k == 1 {
                [1, 0].get(i).copied().unwrap_or(i)
            } else {
                (i + 1) % b
            };
            for t in 0..l {
                img[parts[i][t] as usize] = parts[j][t];
            }
        }
        Perm::from_images(img).unwrap()
    };
    if b >= 2 {
        gens.push(shift(1));
    }
    if b >= 3 {
        gens.push(shift(2));
    }
    let order = util::factorial(l as u64).pow(b as u32) * util::factorial(b as u64);
    PermGroup::with_order(n, gens, order).expect("wreath product")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn natural_action_as_cosets() {
        let s5 = PermGroup::symmetric(5);
        let h = s5.point_stabilizer(0);
        let a = CosetAction::new(&s5, &h).unwrap();
        assert_eq!(a.index(), 5);
        assert!(a.as_group().is_transitive());
        assert_eq!(a.as_group().order(), BigUint::from(120u32));
        assert_eq!(a.fixed_points(&p("(1,2)", 5)).unwrap(), 3);
        assert_eq!(a.fixed_points(&Perm::identity(5)).unwrap(), 5);
        for c in 0..5 {
            assert_eq!(a.stabilizer_of(c).order(), BigUint::from(24u32));
        }
    }

    #[test]
    fn keys_agree_with_membership_oracle() {
        let s6 = PermGroup::symmetric(6);
        let h = young_subgroup(6, &[0, 1]).unwrap();
        let a = CosetAction::new(&s6, &h).unwrap();
        assert_eq!(a.index(), 15);
        let mut rng = util::rng(4);
        for _ in 0..200 {
            let x = s6.random_element(&mut rng);
            let y = s6.random_element(&mut rng);
            assert_eq!(
                a.coset_of(&x) == a.coset_of(&y),
                a.same_coset_oracle(&x, &y)
            );
        }
    }

    #[test]
    fn kernel_is_core() {
        let s4 = PermGroup::symmetric(4);
        let d8 = PermGroup::new(4, vec![p("(1,2,3,4)", 4), p("(1,3)", 4)]).unwrap();
        let a = CosetAction::new(&s4, &d8).unwrap();
        assert_eq!(a.index(), 3);
        let core = s4.core(&d8).unwrap();
        assert_eq!(a.as_group().order(), s4.order() / core.order());
    }

    #[test]
    fn young_and_wreath_orders() {
        assert_eq!(
            young_subgroup(5, &[0, 1]).unwrap().order(),
            BigUint::from(12u32)
        );
        let y = young_subgroup(8, &[0, 1, 2, 3]).unwrap();
        assert_eq!(y.order(), BigUint::from(576u32));
        let s8 = PermGroup::symmetric(8);
        assert!(y.same_group(&search::setwise_stabilizer(&s8, &[0, 1, 2, 3])));
        assert!(young_subgroup(5, &[]).is_err());
        let w = partition_stabilizer(&UniformPartition::standard(8, 4).unwrap());
        assert_eq!(w.order(), BigUint::from(1152u32));
        let w6 = partition_stabilizer(&UniformPartition::standard(6, 2).unwrap());
        assert_eq!(w6.order(), BigUint::from(48u32));
        let s6 = PermGroup::symmetric(6);
        let parts = UniformPartition::standard(6, 2).unwrap();
        assert!(w6.same_group(&search::partition_stabilizer_in(&s6, parts.parts())));
        assert!(UniformPartition::standard(7, 2).is_err());
    }

    #[test]
    fn ceiling_is_enforced() {
        let s8 = PermGroup::symmetric(8);
        let t = PermGroup::trivial(8);
        assert!(matches!(
            CosetAction::with_ceiling(&s8, &t, 1000),
            Err(Error::IndexCeiling { .. })
        ));
    }
}
