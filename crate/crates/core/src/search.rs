//! Base-image backtrack search over a stabilizer chain.
//!
//! A [`Prop`] prunes partial base images; `subgroup_search` collects
//! generators of the subgroup of elements satisfying the property, level by
//! level from the bottom of the chain, skipping images already reachable.

use crate::grp::{Chain, PermGroup};
use crate::perm::Perm;

const NONE: u32 = u32::MAX;

/// A subgroup (or coset) property checked on partial base images.
///
/// `enter` returns `false` without changing state when the image `gamma` of
/// base point `beta` at `level` cannot extend to a solution; otherwise it
/// records state that `leave` undoes.
pub trait Prop {
    fn enter(&mut self, level: usize, beta: u32, gamma: u32) -> bool;
    fn leave(&mut self, level: usize);
    fn accept(&mut self, g: &Perm) -> bool;
}

fn dfs<P: Prop>(ch: &Chain, prop: &mut P, lvl: usize, partial: &Perm) -> Option<Perm> {
    if lvl == ch.levels.len() {
        return prop.accept(partial).then(|| partial.clone());
    }
    let level = &ch.levels[lvl];
    let mut cands: Vec<(u32, usize)> = level
        .orbit
        .iter()
        .enumerate()
        .map(|(i, &d)| (partial.at(d), i))
        .collect();
    cands.sort_unstable();
    for (gamma, i) in cands {
        if prop.enter(lvl, level.base, gamma) {
            let next = level.transversal(i).then(partial);
            let r = dfs(ch, prop, lvl + 1, &next);
            prop.leave(lvl);
            if r.is_some() {
                return r;
            }
        }
    }
    None
}

/// First element (in base-image order) of the chain's group satisfying `prop`.
pub fn find_element<P: Prop>(ch: &Chain, prop: &mut P) -> Option<Perm> {
    dfs(ch, prop, 0, &Perm::identity(ch.degree()))
}

/// The subgroup of elements satisfying `prop` (which must define a subgroup).
pub fn subgroup_search<P: Prop>(ch: &Chain, prop: &mut P) -> PermGroup {
    let n = ch.degree();
    let base = ch.base();
    let k = base.len();
    let mut found: Vec<Perm> = Vec::new();
    let mut lch = Chain::schreier_sims(n, &[], &base);
    for i in (0..k).rev() {
        for (j, &b) in base.iter().enumerate().take(i) {
            let ok = prop.enter(j, b, b);
            assert!(ok, "identity pruned by a subgroup property");
        }
        let level = &ch.levels[i];
        let mut cands: Vec<(u32, usize)> = level
            .orbit
            .iter()
            .enumerate()
            .map(|(idx, &d)| (d, idx))
            .collect();
        cands.sort_unstable();
        for (gamma, idx) in cands {
            if gamma == level.base || lch.levels[i].contains(gamma) {
                continue;
            }
            // only the smallest point of each orbit of the found level-i group
            let lg = &lch.levels[i].gens;
            if !lg.is_empty()
                && crate::grp::orbit_of(n, lg, gamma)
                    .iter()
                    .any(|&x| x < gamma)
            {
                continue;
            }
            if prop.enter(i, level.base, gamma) {
                let r = dfs(ch, prop, i + 1, level.transversal(idx));
                prop.leave(i);
                if let Some(g) = r {
                    found.push(g);
                    lch = Chain::schreier_sims(n, &found, &base);
                }
            }
        }
        for j in (0..i).rev() {
            prop.leave(j);
        }
    }
    PermGroup::from_chain(n, found, lch)
}

/// Conjoin two properties.
pub struct Both<A, B>(pub A, pub B);

impl<A: Prop, B: Prop> Prop for Both<A, B> {
    fn enter(&mut self, level: usize, beta: u32, gamma: u32) -> bool {
        if !self.0.enter(level, beta, gamma) {
            return false;
        }
        if !self.1.enter(level, beta, gamma) {
            self.0.leave(level);
            return false;
        }
        true
    }
    fn leave(&mut self, level: usize) {
        self.1.leave(level);
        self.0.leave(level);
    }
    fn accept(&mut self, g: &Perm) -> bool {
        self.0.accept(g) && self.1.accept(g)
    }
}

/// Membership in a second group whose chain shares the search base.
pub struct InGroup<'a> {
    k: &'a Chain,
    stack: Vec<(Perm, Perm)>,
}

impl<'a> InGroup<'a> {
    pub fn new(k: &'a Chain) -> InGroup<'a> {
        let id = Perm::identity(k.degree());
        InGroup {
            k,
            stack: vec![(id.clone(), id)],
        }
    }
}

impl Prop for InGroup<'_> {
    fn enter(&mut self, level: usize, beta: u32, gamma: u32) -> bool {
        let lvl = &self.k.levels[level];
        debug_assert_eq!(lvl.base, beta);
        let (q, qinv) = self.stack.last().unwrap();
        let d = qinv.at(gamma);
        match lvl.position(d) {
            None => false,
            Some(p) => {
                let nq = lvl.transversal(p).then(q);
                let nqi = qinv.then(lvl.transversal_inv(p));
                self.stack.push((nq, nqi));
                true
            }
        }
    }
    fn leave(&mut self, _level: usize) {
        self.stack.pop();
    }
    fn accept(&mut self, g: &Perm) -> bool {
        &self.stack.last().unwrap().0 == g
    }
}

/// Chains for `h` and `k` over one common base.
pub fn common_base_chains(h: &PermGroup, k: &PermGroup) -> (Chain, Chain) {
    let bh = h.chain().base();
    let ck = k.chain_with_base(&bh);
    let bk = ck.base();
    let ch = if bk.len() > bh.len() {
        h.chain_with_base(&bk)
    } else {
        h.chain().clone()
    };
    (ch, ck)
}

/// `H ∩ K` by base-image backtrack pruned by both chains.
pub fn intersection(h: &PermGroup, k: &PermGroup) -> PermGroup {
    assert_eq!(h.degree(), k.degree(), "degree mismatch");
    if h.order() > k.order() {
        return intersection(k, h);
    }
    let (ch, ck) = common_base_chains(h, k);
    subgroup_search(&ch, &mut InGroup::new(&ck))
}

/// Preserve each listed set (setwise) and each partition (as a partition).
pub struct Structure {
    sets: Vec<Vec<bool>>,
    parts: Vec<Vec<u32>>,
    mapped: Vec<(u32, u32)>,
    pushed: Vec<bool>,
}

impl Structure {
    pub fn new(n: usize, sets: &[Vec<u32>], partitions: &[Vec<Vec<u32>>]) -> Structure {
        let sets = sets
            .iter()
            .map(|s| {
                let mut m = vec![false; n];
                for &x in s {
                    m[x as usize] = true;
                }
                m
            })
            .collect();
        let parts = partitions
            .iter()
            .map(|p| {
                let mut id = vec![NONE; n];
                for (i, part) in p.iter().enumerate() {
                    for &x in part {
                        id[x as usize] = i as u32;
                    }
                }
                id
            })
            .collect();
        Structure {
            sets,
            parts,
            mapped: Vec::new(),
            pushed: Vec::new(),
        }
    }

    fn preserves(&self, g: &Perm) -> bool {
        let n = g.degree();
        for s in &self.sets {
            if (0..n).any(|x| s[x] != s[g.at(x as u32) as usize]) {
                return false;
            }
        }
        for id in &self.parts {
            let mut img_of_part: Vec<u32> = vec![NONE; n];
            for x in 0..n {
                let a = id[x];
                let b = id[g.at(x as u32) as usize];
                if a == NONE || b == NONE {
                    if a != b {
                        return false;
                    }
                    continue;
                }
                if img_of_part[a as usize] == NONE {
                    img_of_part[a as usize] = b;
                } else if img_of_part[a as usize] != b {
                    return false;
                }
            }
            let mut used = vec![false; n];
            for &b in img_of_part.iter().filter(|&&b| b != NONE) {
                if used[b as usize] {
                    return false;
                }
                used[b as usize] = true;
            }
        }
        true
    }
}

impl Prop for Structure {
    fn enter(&mut self, _level: usize, beta: u32, gamma: u32) -> bool {
        for s in &self.sets {
            if s[beta as usize] != s[gamma as usize] {
                return false;
            }
        }
        for id in &self.parts {
            for &(b, c) in &self.mapped {
                let same_src = id[b as usize] == id[beta as usize];
                let same_img = id[c as usize] == id[gamma as usize];
                if same_src != same_img {
                    return false;
                }
            }
        }
        self.mapped.push((beta, gamma));
        self.pushed.push(true);
        true
    }
    fn leave(&mut self, _level: usize) {
        self.pushed.pop();
        self.mapped.pop();
    }
    fn accept(&mut self, g: &Perm) -> bool {
        self.preserves(g)
    }
}

/// Elements `g` with `x^g = y`, propagated along cycles.
pub struct Conjugates<'a> {
    x: &'a Perm,
    y: &'a Perm,
    f: Vec<u32>,
    finv: Vec<u32>,
    trail: Vec<u32>,
    marks: Vec<usize>,
}

impl<'a> Conjugates<'a> {
    pub fn new(x: &'a Perm, y: &'a Perm) -> Conjugates<'a> {
        let n = x.degree();
        Conjugates {
            x,
            y,
            f: vec![NONE; n],
            finv: vec![NONE; n],
            trail: Vec::new(),
            marks: Vec::new(),
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let b = self.trail.pop().unwrap();
            let c = self.f[b as usize];
            self.f[b as usize] = NONE;
            self.finv[c as usize] = NONE;
        }
    }
}

impl Prop for Conjugates<'_> {
    fn enter(&mut self, _level: usize, beta: u32, gamma: u32) -> bool {
        let mark = self.trail.len();
        let (mut b, mut c) = (beta, gamma);
        loop {
            let fb = self.f[b as usize];
            if fb != NONE {
                if fb != c {
                    self.undo_to(mark);
                    return false;
                }
                break;
            }
            if self.finv[c as usize] != NONE {
                self.undo_to(mark);
                return false;
            }
            self.f[b as usize] = c;
            self.finv[c as usize] = b;
            self.trail.push(b);
            b = self.x.at(b);
            c = self.y.at(c);
        }
        self.marks.push(mark);
        true
    }
    fn leave(&mut self, _level: usize) {
        let mark = self.marks.pop().unwrap();
        self.undo_to(mark);
    }
    fn accept(&mut self, g: &Perm) -> bool {
        &self.x.conjugate_by(g) == self.y
    }
}

/// Some `g ∈ G` with `x^g = y`, if one exists.
pub fn is_conjugate(g: &PermGroup, x: &Perm, y: &Perm) -> Option<Perm> {
    if x.analyze().cycle_type != y.analyze().cycle_type {
        return None;
    }
    find_element(g.chain(), &mut Conjugates::new(x, y))
}

pub fn centralizer(g: &PermGroup, x: &Perm) -> PermGroup {
    subgroup_search(g.chain(), &mut Conjugates::new(x, x))
}

pub fn setwise_stabilizer(g: &PermGroup, set: &[u32]) -> PermGroup {
    subgroup_search(
        g.chain(),
        &mut Structure::new(g.degree(), &[set.to_vec()], &[]),
    )
}

/// Stabilizer of a partition (parts may be permuted among themselves).
pub fn partition_stabilizer_in(g: &PermGroup, parts: &[Vec<u32>]) -> PermGroup {
    subgroup_search(
        g.chain(),
        &mut Structure::new(g.degree(), &[], &[parts.to_vec()]),
    )
}

/// Joint stabilizer of several sets and partitions.
pub fn structure_stabilizer(
    g: &PermGroup,
    sets: &[Vec<u32>],
    partitions: &[Vec<Vec<u32>>],
) -> PermGroup {
    subgroup_search(g.chain(), &mut Structure::new(g.degree(), sets, partitions))
}
