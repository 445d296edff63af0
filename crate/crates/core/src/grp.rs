//! Permutation groups: stabilizer chains (Schreier–Sims), membership, random
//! elements, orbits, stabilizers, conjugacy classes and structural predicates.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng as _;

use crate::perm::Perm;
use crate::search;
use crate::util::{self, Rng};
use crate::Error;

const NONE: u32 = u32::MAX;

/// One level of a stabilizer chain: the basic orbit of `base` under the
/// stabilizer of all earlier base points, with explicit transversal.
#[derive(Clone, Debug)]
pub struct Level {
    pub base: u32,
    pub gens: Vec<Perm>,
    pub orbit: Vec<u32>,
    pos: Vec<u32>,
    trans: Vec<Perm>,
    tinv: Vec<Perm>,
    /// Schreier generators verified so far, per generator.
    checked: Vec<usize>,
}

impl Level {
    fn new(n: usize, base: u32) -> Level {
        let mut pos = vec![NONE; n];
        pos[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            trans: vec![Perm::identity(n)],
            tinv: vec![Perm::identity(n)],
            checked: Vec::new(),
        }
    }

    #[inline]
    pub fn contains(&self, pt: u32) -> bool {
        self.pos[pt as usize] != NONE
    }

    #[inline]
    pub fn position(&self, pt: u32) -> Option<usize> {
        let p = self.pos[pt as usize];
        (p != NONE).then_some(p as usize)
    }

    /// Transversal element mapping the base point to `orbit[i]`.
    #[inline]
    pub fn transversal(&self, i: usize) -> &Perm {
        &self.trans[i]
    }

    #[inline]
    pub fn transversal_inv(&self, i: usize) -> &Perm {
        &self.tinv[i]
    }

    fn add_gen(&mut self, g: Perm) {
        let first_new = self.gens.len();
        self.gens.push(g);
        self.checked.push(0);
        let old_len = self.orbit.len();
        let mut i = 0;
        while i < self.orbit.len() {
            let from = if i < old_len { first_new } else { 0 };
            for s in from..self.gens.len() {
                let y = self.gens[s].at(self.orbit[i]);
                if self.pos[y as usize] == NONE {
                    let t = self.trans[i].then(&self.gens[s]);
                    self.pos[y as usize] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    self.tinv.push(t.inverse());
                    self.trans.push(t);
                }
            }
            i += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct Chain {
    n: usize,
    pub levels: Vec<Level>,
}

impl Chain {
    pub fn trivial(n: usize) -> Chain {
        Chain {
            n,
            levels: Vec::new(),
        }
    }

    fn with_base(n: usize, base: &[u32]) -> Chain {
        Chain {
            n,
            levels: base.iter().map(|&b| Level::new(n, b)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * l.orbit.len())
    }

    /// Sift from level `start`; returns the residue and the level where it
    /// dropped out (`levels.len()` if it passed every level).
    pub fn sift_from(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for (i, lvl) in self.levels.iter().enumerate().skip(start) {
            let img = g.at(lvl.base);
            match lvl.position(img) {
                None => return (g, i),
                Some(p) => {
                    if p != 0 {
                        g = g.then(&lvl.tinv[p]);
                    }
                }
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.n && self.sift_from(g.clone(), 0).0.is_identity()
    }

    fn new_base_point(&self, h: &Perm) -> u32 {
        h.first_moved().expect("identity has no moved point")
    }

    /// Add `h` (fixing the first `from` base points) as a strong generator of
    /// levels `from..=upto`, creating a new level when `upto == len`.
    fn add_strong(&mut self, h: Perm, from: usize, upto: usize) {
        if upto == self.levels.len() {
            let b = self.new_base_point(&h);
            self.levels.push(Level::new(self.n, b));
        }
        for l in from..=upto {
            self.levels[l].add_gen(h.clone());
        }
    }

    /// Deterministic Schreier–Sims. `prescribed` base points come first, in
    /// order; further base points are smallest moved points of residues.
    pub fn schreier_sims(n: usize, gens: &[Perm], prescribed: &[u32]) -> Chain {
        let mut ch = Chain::with_base(n, prescribed);
        let gens: Vec<Perm> = dedup_nontrivial(gens);
        for g in &gens {
            if ch.levels.iter().all(|l| g.at(l.base) == l.base) {
                let b = ch.new_base_point(g);
                ch.levels.push(Level::new(n, b));
            }
        }
        for g in &gens {
            for l in 0..ch.levels.len() {
                ch.levels[l].add_gen(g.clone());
                if g.at(ch.levels[l].base) != ch.levels[l].base {
                    break;
                }
            }
        }
        let mut i = ch.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            let mut restart = None;
            'scan: for s in 0..ch.levels[li].gens.len() {
                while ch.levels[li].checked[s] < ch.levels[li].orbit.len() {
                    let p = ch.levels[li].checked[s];
                    let lvl = &ch.levels[li];
                    let y = lvl.gens[s].at(lvl.orbit[p]);
                    let q = lvl.pos[y as usize] as usize;
                    let us = lvl.trans[p].then(&lvl.gens[s]);
                    if us != lvl.trans[q] {
                        let h = us.then(&lvl.tinv[q]);
                        let (res, j) = ch.sift_from(h, li + 1);
                        if !res.is_identity() {
                            ch.levels[li].checked[s] += 1;
                            ch.add_strong(res, li + 1, j);
                            restart = Some(j);
                            break 'scan;
                        }
                    }
                    ch.levels[li].checked[s] += 1;
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        ch
    }

    /// Randomised Schreier–Sims for a group of known order: sift elements
    /// drawn from `next` until the chain reaches `target`.
    pub fn random_schreier_sims(
        n: usize,
        target: &BigUint,
        prescribed: &[u32],
        mut next: impl FnMut() -> Perm,
    ) -> Result<Chain, Error> {
        let mut ch = Chain::with_base(n, prescribed);
        let mut order = BigUint::one();
        let mut stale = 0usize;
        while &order < target {
            let g = next();
            let (res, j) = ch.sift_from(g, 0);
            if res.is_identity() {
                stale += 1;
                if stale > 400 {
                    return Err(Error::OrderMismatch {
                        expected: target.to_string(),
                        computed: format!("stalled at {order}"),
                    });
                }
                continue;
            }
            stale = 0;
            ch.add_strong(res, 0, j);
            order = ch.order();
        }
        if &order != target {
            return Err(Error::OrderMismatch {
                expected: target.to_string(),
                computed: order.to_string(),
            });
        }
        Ok(ch)
    }

    /// Uniformly random element: product of random transversal elements.
    pub fn random_element(&self, rng: &mut Rng) -> Perm {
        let mut g = Perm::identity(self.n);
        for lvl in self.levels.iter().rev() {
            let i = rng.gen_range(0..lvl.orbit.len());
            if i != 0 {
                g = g.then(&lvl.trans[i]);
            }
        }
        g
    }

    /// The chain of `g⁻¹Kg`, obtained by relabelling points through `g`.
    pub fn conjugate(&self, g: &Perm) -> Chain {
        let ginv = g.inverse();
        let levels = self
            .levels
            .iter()
            .map(|l| {
                let mut pos = vec![NONE; self.n];
                for (i, &x) in l.orbit.iter().enumerate() {
                    pos[g.at(x) as usize] = i as u32;
                }
                let cj = |p: &Perm| ginv.then(p).then(g);
                Level {
                    base: g.at(l.base),
                    gens: l.gens.iter().map(cj).collect(),
                    orbit: l.orbit.iter().map(|&x| g.at(x)).collect(),
                    pos,
                    trans: l.trans.iter().map(cj).collect(),
                    tinv: l.tinv.iter().map(cj).collect(),
                    checked: l.checked.clone(),
                }
            })
            .collect();
        Chain { n: self.n, levels }
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels
            .first()
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    /// The stabilizer of the first `k` base points, as a chain of its own.
    pub fn tail(&self, k: usize) -> Chain {
        Chain {
            n: self.n,
            levels: self.levels[k.min(self.levels.len())..].to_vec(),
        }
    }

    /// Every element, in a fixed order (for small groups only).
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.n)];
        for lvl in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lvl.orbit.len());
            for t in &lvl.trans {
                for x in &out {
                    next.push(x.then(t));
                }
            }
            out = next;
        }
        out
    }
}

fn dedup_nontrivial(gens: &[Perm]) -> Vec<Perm> {
    let mut seen = HashSet::new();
    gens.iter()
        .filter(|g| !g.is_identity() && seen.insert((*g).clone()))
        .cloned()
        .collect()
}

/// Product-replacement generator of (approximately uniform) random elements.
pub struct ProductReplacement {
    state: Vec<Perm>,
    acc: Perm,
    rng: Rng,
}

impl ProductReplacement {
    pub fn new(n: usize, gens: &[Perm], seed: u64) -> ProductReplacement {
        let mut state: Vec<Perm> = gens.to_vec();
        if state.is_empty() {
            state.push(Perm::identity(n));
        }
        let base = state.clone();
        while state.len() < 10 {
            state.extend(base.iter().cloned());
        }
        let mut pr = ProductReplacement {
            state,
            acc: Perm::identity(n),
            rng: util::rng(seed),
        };
        for _ in 0..50 {
            pr.sample();
        }
        pr
    }

    pub fn sample(&mut self) -> Perm {
        let k = self.state.len();
        let i = self.rng.gen_range(0..k);
        let mut j = self.rng.gen_range(0..k - 1);
        if j >= i {
            j += 1;
        }
        let s = if self.rng.gen_bool(0.5) {
            self.state[j].clone()
        } else {
            self.state[j].inverse()
        };
        self.state[i] = if self.rng.gen_bool(0.5) {
            self.state[i].then(&s)
        } else {
            s.then(&self.state[i])
        };
        self.acc = self.acc.then(&self.state[i]);
        self.acc.clone()
    }
}

/// A permutation group given by generators, with a lazily built chain.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    order_hint: Option<BigUint>,
    chain: Arc<OnceLock<Chain>>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, {} gens",
            self.degree,
            self.gens.len()
        )?;
        if let Some(c) = self.chain.get() {
            write!(f, ", order {}", c.order())?;
        }
        write!(f, ")")
    }
}

const CHAIN_SEED: u64 = 0x5eed_c4a1;

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup, Error> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(PermGroup {
            degree,
            gens,
            order_hint: None,
            chain: Arc::new(OnceLock::new()),
        })
    }

    /// Group whose order is known in advance; the chain is built by the
    /// randomised algorithm and the order is verified.
    pub fn with_order(degree: usize, gens: Vec<Perm>, order: BigUint) -> Result<PermGroup, Error> {
        let mut g = PermGroup::new(degree, gens)?;
        g.order_hint = Some(order);
        g.try_chain()?;
        Ok(g)
    }

    pub fn from_chain(degree: usize, gens: Vec<Perm>, chain: Chain) -> PermGroup {
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        PermGroup {
            degree,
            gens,
            order_hint: None,
            chain: Arc::new(cell),
        }
    }

    /// Group generated by the strong generators of a chain.
    pub fn from_chain_only(chain: Chain) -> PermGroup {
        let gens = chain.strong_generators();
        PermGroup::from_chain(chain.degree(), gens, chain)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_chain(degree, Vec::new(), Chain::trivial(degree))
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::transposition(n, 0, 1));
        }
        if n >= 3 {
            gens.push(Perm::from_vec_unchecked(
                (0..n as u32).map(|i| (i + 1) % n as u32).collect(),
            ));
        }
        let base: Vec<u32> = (0..n.saturating_sub(1) as u32).collect();
        let chain = Chain::random_schreier_sims(n, &util::factorial(n as u64), &base, {
            let mut pr = ProductReplacement::new(n, &gens, CHAIN_SEED);
            move || pr.sample()
        })
        .expect("symmetric group chain");
        PermGroup::from_chain(n, gens, chain)
    }

    pub fn alternating(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        for i in 2..n as u32 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1, i]]).unwrap());
        }
        if n < 3 {
            return PermGroup::trivial(n);
        }
        let base: Vec<u32> = (0..n.saturating_sub(2) as u32).collect();
        let chain = Chain::random_schreier_sims(n, &(util::factorial(n as u64) / 2u32), &base, {
            let mut pr = ProductReplacement::new(n, &gens, CHAIN_SEED);
            move || pr.sample()
        })
        .expect("alternating group chain");
        PermGroup::from_chain(n, gens, chain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    fn try_chain(&self) -> Result<&Chain, Error> {
        if let Some(c) = self.chain.get() {
            return Ok(c);
        }
        let c = self.build_chain(&[])?;
        let _ = self.chain.set(c);
        Ok(self.chain.get().unwrap())
    }

    fn build_chain(&self, prescribed: &[u32]) -> Result<Chain, Error> {
        match &self.order_hint {
            Some(order) => {
                let mut pr = ProductReplacement::new(self.degree, &self.gens, CHAIN_SEED);
                Chain::random_schreier_sims(self.degree, order, prescribed, || pr.sample())
            }
            None => Ok(Chain::schreier_sims(self.degree, &self.gens, prescribed)),
        }
    }

    pub fn chain(&self) -> &Chain {
        self.try_chain().expect("stabilizer chain")
    }

    /// A chain whose base starts with `prescribed` (exactly, in order).
    pub fn chain_with_base(&self, prescribed: &[u32]) -> Chain {
        let order = self.order();
        let mut rng = util::rng(CHAIN_SEED ^ prescribed.len() as u64);
        let ch = self.chain();
        Chain::random_schreier_sims(self.degree, &order, prescribed, || {
            ch.random_element(&mut rng)
        })
        .expect("base change")
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u64(&self) -> u64 {
        self.order().to_u64().expect("order fits u64")
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(Perm::is_identity)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.chain().contains(p)
    }

    pub fn random_element(&self, rng: &mut Rng) -> Perm {
        self.chain().random_element(rng)
    }

    /// Deterministic random element from a seed (fresh product-replacement
    /// stream when no chain exists yet).
    pub fn random_element_seeded(&self, seed: u64) -> Perm {
        let mut rng = util::rng(seed);
        match self.chain.get() {
            Some(c) => c.random_element(&mut rng),
            None => {
                let mut pr = ProductReplacement::new(self.degree, &self.gens, seed);
                pr.sample()
            }
        }
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.chain().strong_generators()
    }

    /// Smallest generating set we have: the given generators if any.
    pub fn gens_or_strong(&self) -> Vec<Perm> {
        let g: Vec<Perm> = self
            .gens
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        if g.is_empty() {
            self.strong_generators()
        } else {
            g
        }
    }

    pub fn check_point(&self, point: usize) -> Result<(), Error> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point: point + 1,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Orbit of a 0-based point, in BFS order.
    pub fn orbit(&self, point: u32) -> Vec<u32> {
        orbit_of(self.degree, &self.gens, point)
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree as u32 {
            if !seen[p as usize] {
                let o = self.orbit(p);
                for &x in &o {
                    seen[x as usize] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Pointwise stabilizer of a sequence of points.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> PermGroup {
        let ch = self.chain_with_base(points);
        let tail = ch.tail(points.len());
        PermGroup::from_chain_only(tail)
    }

    pub fn point_stabilizer(&self, point: u32) -> PermGroup {
        self.pointwise_stabilizer(&[point])
    }

    /// Subgroup generated by `gens` (must lie in `self`; checked).
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup, Error> {
        for g in &gens {
            if !self.contains(g) {
                return Err(Error::NotASubgroup(format!("{g} not in parent")));
            }
        }
        PermGroup::new(self.degree, gens)
    }

    /// Subgroup generated by `gens`, with a known order.
    pub fn subgroup_with_order(&self, gens: Vec<Perm>, order: BigUint) -> Result<PermGroup, Error> {
        for g in &gens {
            if !self.contains(g) {
                return Err(Error::NotASubgroup(format!("{g} not in parent")));
            }
        }
        PermGroup::with_order(self.degree, gens, order)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        let gens = self.gens.iter().map(|x| x.conjugate_by(g)).collect();
        PermGroup::from_chain(self.degree, gens, self.chain().conjugate(g))
    }

    pub fn elements(&self) -> Vec<Perm> {
        self.chain().elements()
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Normal closure of `gens` in `self`.
    pub fn normal_closure(&self, gens: &[Perm]) -> PermGroup {
        let mut ngens: Vec<Perm> = dedup_nontrivial(gens);
        let mut chain = Chain::schreier_sims(self.degree, &ngens, &[]);
        let mut i = 0;
        while i < ngens.len() {
            let mut added = false;
            for s in &self.gens {
                let c = ngens[i].conjugate_by(s);
                if !chain.contains(&c) {
                    ngens.push(c);
                    added = true;
                }
            }
            if added {
                chain = Chain::schreier_sims(self.degree, &ngens, &[]);
            }
            i += 1;
        }
        PermGroup::from_chain(self.degree, ngens, chain)
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let g = self.gens_or_strong();
        let mut comms = Vec::new();
        for a in &g {
            for b in &g {
                let c = a.inverse().then(&b.inverse()).then(a).then(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    pub fn is_soluble(&self) -> bool {
        let mut g = self.clone();
        loop {
            if g.order().is_one() {
                return true;
            }
            let d = g.derived_subgroup();
            if d.order() == g.order() {
                return false;
            }
            g = d;
        }
    }

    /// Nilpotent iff, for every prime p, the normal closure of the p-parts of
    /// the generators is a p-group and these orders multiply to |G|.
    pub fn is_nilpotent(&self) -> bool {
        let order = self.order();
        if order.is_one() {
            return true;
        }
        let mut prod = BigUint::one();
        for (p, _) in util::factorize(&order) {
            let parts: Vec<Perm> = self.gens.iter().map(|g| p_part(g, p)).collect();
            let q = self.normal_closure(&parts);
            let qo = q.order();
            if util::factorize(&qo).iter().any(|&(r, _)| r != p) {
                return false;
            }
            prod *= qo;
        }
        prod == order
    }

    /// Natural-action primitivity (minimal-block test).
    pub fn is_primitive(&self) -> Result<bool, Error> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        if self.degree <= 2 {
            return Ok(true);
        }
        let imgs: Vec<&[u32]> = self.gens.iter().map(|g| g.images()).collect();
        let stab = self.point_stabilizer(0);
        for rep in orbit_reps(self.degree, stab.generators()) {
            if rep == 0 {
                continue;
            }
            let blk = minimal_block(self.degree, &imgs, 0, rep);
            if blk.len() < self.degree {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Normal core: the kernel of the action on cosets of `h`.
    pub fn core(&self, h: &PermGroup) -> Result<PermGroup, Error> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotASubgroup("core of a non-subgroup".into()));
        }
        // ⋂_g H^g over a transversal suffices; iterate conjugation by generators
        // until the intersection stabilises under them.
        let mut k = h.clone();
        loop {
            let mut changed = false;
            for s in &self.gens {
                let ks = k.conjugate(s);
                if !k.is_subgroup_of(&ks) {
                    k = search::intersection(&k, &ks);
                    changed = true;
                }
            }
            if !changed {
                return Ok(k);
            }
        }
    }

    pub fn is_core_free(&self, h: &PermGroup) -> Result<bool, Error> {
        Ok(self.core(h)?.order().is_one())
    }

    pub fn involution_count(&self) -> BigUint {
        self.elements()
            .iter()
            .filter(|x| !x.is_identity() && x.then(x).is_identity())
            .count()
            .into()
    }
}

/// The p-part of `g` (a generator of the Sylow p-subgroup of ⟨g⟩).
pub fn p_part(g: &Perm, p: u64) -> Perm {
    let mut r = g.order_u64();
    while r.is_multiple_of(p) {
        r /= p;
    }
    g.pow(r as i64)
}

pub fn orbit_of(n: usize, gens: &[Perm], point: u32) -> Vec<u32> {
    let mut seen = vec![false; n];
    seen[point as usize] = true;
    let mut out = vec![point];
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for g in gens {
            let y = g.at(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// Smallest point of each orbit, ascending.
pub fn orbit_reps(n: usize, gens: &[Perm]) -> Vec<u32> {
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for p in 0..n as u32 {
        if !seen[p as usize] {
            reps.push(p);
            for x in orbit_of(n, gens, p) {
                seen[x as usize] = true;
            }
        }
    }
    reps
}

/// Minimal block containing `a` and `b` for the group generated by the image
/// arrays `gens` (Atkinson's union–find closure). Returns the block's points.
pub fn minimal_block(n: usize, gens: &[&[u32]], a: u32, b: u32) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let p = parent[x as usize];
            parent[x as usize] = parent[p as usize];
            x = p;
        }
        x
    }
    let mut queue = VecDeque::new();
    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
    if ra != rb {
        parent[rb as usize] = ra;
        queue.push_back(rb);
    }
    // Each queued root r was merged into its parent; images of r and its
    // representative must be merged too.
    let mut rep_of: Vec<u32> = (0..n as u32).collect();
    rep_of[rb as usize] = ra;
    while let Some(r) = queue.pop_front() {
        let other = rep_of[r as usize];
        for g in gens {
            let x = find(&mut parent, g[r as usize]);
            let y = find(&mut parent, g[other as usize]);
            if x != y {
                parent[y as usize] = x;
                rep_of[y as usize] = x;
                queue.push_back(y);
            }
        }
    }
    let root = find(&mut parent, a);
    (0..n as u32)
        .filter(|&x| find(&mut parent, x) == root)
        .collect()
}

/// Orbit and stabilizer in an arbitrary action on hashable objects.
/// Returns the orbit (as objects) and the stabilizer of `x0`.
pub fn orbit_stabilizer<T, F>(g: &PermGroup, x0: T, act: F, seed: u64) -> (Vec<T>, PermGroup)
where
    T: Hash + Eq + Clone,
    F: Fn(&T, &Perm) -> T,
{
    let gens = g.gens_or_strong();
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut pts = vec![x0.clone()];
    let mut trans = vec![Perm::identity(g.degree())];
    index.insert(x0, 0);
    let mut i = 0;
    while i < pts.len() {
        for s in &gens {
            let y = act(&pts[i], s);
            if !index.contains_key(&y) {
                index.insert(y.clone(), pts.len());
                trans.push(trans[i].then(s));
                pts.push(y);
            }
        }
        i += 1;
    }
    let target = g.order() / pts.len();
    let stab = stabilizer_from_transversal(
        g,
        &target,
        |r| {
            let y = act(&pts[0], r);
            trans[index[&y]].inverse()
        },
        seed,
    );
    (pts, stab)
}

/// Stabilizer of order `target` from uniformly random `r ∈ G` and a function
/// returning `u⁻¹` for the transversal element `u` with the same image as `r`.
pub fn stabilizer_from_transversal(
    g: &PermGroup,
    target: &BigUint,
    mut tinv_of: impl FnMut(&Perm) -> Perm,
    seed: u64,
) -> PermGroup {
    if target.is_one() {
        return PermGroup::trivial(g.degree());
    }
    let ch = g.chain();
    let mut rng = util::rng(seed);
    let stab = Chain::random_schreier_sims(g.degree(), target, &[], || {
        let r = ch.random_element(&mut rng);
        let u = tinv_of(&r);
        r.then(&u)
    })
    .expect("stabilizer order");
    PermGroup::from_chain_only(stab)
}

/// A prime-order conjugacy class: representative, prime and class size.
#[derive(Clone, Debug)]
pub struct ClassDatum {
    pub rep: Perm,
    pub r: u64,
    pub class_size: BigUint,
}

/// Conjugacy classes of elements of prime order.
///
/// Small groups (|G| ≤ 10⁶) are enumerated exhaustively; larger groups are
/// sampled, with class sizes from centralizer orders and completeness checked
/// against Frobenius' congruence (`1 + #{x : x^p = 1, x ≠ 1} ≡ 0 mod p`).
pub fn prime_order_class_reps(g: &PermGroup) -> Result<Vec<ClassDatum>, Error> {
    let order = g.order();
    if order.is_one() {
        return Ok(Vec::new());
    }
    if order <= BigUint::from(1_000_000u32) {
        Ok(prime_order_classes_enumerated(g))
    } else {
        prime_order_classes_sampled(g, 0xc1a55, 100_000)
    }
}

/// Exhaustive class enumeration (also the oracle for the sampled route).
pub fn prime_order_classes_enumerated(g: &PermGroup) -> Vec<ClassDatum> {
    let elts = g.elements();
    let mut seen: HashSet<Perm> = HashSet::new();
    let gens = g.gens_or_strong();
    let mut out = Vec::new();
    let mut candidates: Vec<Perm> = elts
        .into_iter()
        .filter(|x| {
            let o = x.order_u64();
            o > 1 && util::is_prime(o)
        })
        .collect();
    candidates.sort();
    for x in candidates {
        if seen.contains(&x) {
            continue;
        }
        let mut class = vec![x.clone()];
        seen.insert(x.clone());
        let mut i = 0;
        while i < class.len() {
            for s in &gens {
                let y = class[i].conjugate_by(s);
                if seen.insert(y.clone()) {
                    class.push(y);
                }
            }
            i += 1;
        }
        out.push(ClassDatum {
            r: x.order_u64(),
            class_size: BigUint::from(class.len()),
            rep: x,
        });
    }
    out
}

/// Sampled class enumeration for large groups.
pub fn prime_order_classes_sampled(
    g: &PermGroup,
    seed: u64,
    burn_in: usize,
) -> Result<Vec<ClassDatum>, Error> {
    let order = g.order();
    let primes: Vec<u64> = util::factorize(&order)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let mut rng = util::rng(seed);
    let mut reps: Vec<ClassDatum> = Vec::new();
    let mut since_new = 0usize;
    while since_new < burn_in {
        since_new += 1;
        let x = g.random_element(&mut rng);
        let o = x.order_u64();
        for &p in &primes {
            if !o.is_multiple_of(p) {
                continue;
            }
            let y = x.pow((o / p) as i64);
            let ct = y.analyze().cycle_type;
            let known = reps
                .iter()
                .filter(|d| d.r == p && d.rep.analyze().cycle_type == ct)
                .any(|d| search::is_conjugate(g, &d.rep, &y).is_some());
            if !known {
                let c = search::centralizer(g, &y);
                reps.push(ClassDatum {
                    rep: y,
                    r: p,
                    class_size: &order / c.order(),
                });
                since_new = 0;
            }
        }
    }
    for &p in &primes {
        let total: BigUint = reps
            .iter()
            .filter(|d| d.r == p)
            .map(|d| d.class_size.clone())
            .sum();
        if !((total + 1u32) % p).is_zero() {
            return Err(Error::IncompleteClasses(format!(
                "prime {p} fails the Frobenius congruence"
            )));
        }
    }
    reps.sort_by(|a, b| (a.r, &a.class_size).cmp(&(b.r, &b.class_size)));
    Ok(reps)
}

/// Sylow-free helper: exponent of `g` as lcm of generator orders is not the
/// group exponent; this is only used for sanity checks.
pub fn divides(a: &BigUint, b: &BigUint) -> bool {
    !a.is_zero() && b.is_multiple_of(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    fn m11() -> PermGroup {
        PermGroup::new(
            11,
            vec![
                p("(1,2,3,4,5,6,7,8,9,10,11)", 11),
                p("(3,7,11,8)(4,10,5,6)", 11),
            ],
        )
        .unwrap()
    }

    #[test]
    fn orders() {
        let s5 = PermGroup::new(5, vec![p("(1,2)", 5), p("(1,2,3,4,5)", 5)]).unwrap();
        assert_eq!(s5.order(), BigUint::from(120u32));
        assert_eq!(m11().order(), BigUint::from(7920u32));
        assert_eq!(PermGroup::new(4, vec![]).unwrap().order(), BigUint::one());
        assert_eq!(PermGroup::symmetric(9).order(), util::factorial(9));
        assert_eq!(PermGroup::alternating(7).order(), BigUint::from(2520u32));
    }

    #[test]
    fn membership() {
        let a5 = PermGroup::alternating(5);
        assert!(a5.contains(&p("(1,2,3)", 5)));
        assert!(!a5.contains(&p("(1,2)", 5)));
    }

    #[test]
    fn stabilizers_and_orbits() {
        let g = m11();
        assert_eq!(g.point_stabilizer(0).order(), BigUint::from(720u32));
        assert_eq!(g.orbit(0).len(), 11);
        let s5 = PermGroup::symmetric(5);
        assert_eq!(s5.point_stabilizer(0).order(), BigUint::from(24u32));
        let y = PermGroup::new(5, vec![p("(1,2)", 5), p("(3,4,5)", 5), p("(3,4)", 5)]).unwrap();
        assert_eq!(y.orbit(0), vec![0, 1]);
    }

    #[test]
    fn deterministic_and_random_chains_agree() {
        let g = m11();
        let h = PermGroup::with_order(11, g.generators().to_vec(), BigUint::from(7920u32)).unwrap();
        assert_eq!(h.order(), g.order());
        assert!(
            PermGroup::with_order(11, g.generators().to_vec(), BigUint::from(7919u32)).is_err()
        );
    }

    #[test]
    fn predicates() {
        let a5 = PermGroup::alternating(5);
        assert!(!a5.is_soluble());
        assert!(a5.is_primitive().unwrap());
        let s4 = PermGroup::symmetric(4);
        assert!(s4.is_soluble());
        assert!(!s4.is_nilpotent());
        let d8 = PermGroup::new(4, vec![p("(1,2,3,4)", 4), p("(1,3)", 4)]).unwrap();
        assert!(d8.is_nilpotent());
        let y = PermGroup::new(4, vec![p("(1,2)", 4)]).unwrap();
        assert!(y.is_primitive().is_err());
        let wr = PermGroup::new(4, vec![p("(1,2)", 4), p("(1,3)(2,4)", 4)]).unwrap();
        assert!(!wr.is_primitive().unwrap());
    }

    #[test]
    fn cores() {
        let s5 = PermGroup::symmetric(5);
        let a5 = PermGroup::alternating(5);
        assert_eq!(s5.core(&a5).unwrap().order(), BigUint::from(60u32));
        assert!(s5.is_core_free(&s5.point_stabilizer(0)).unwrap());
        let s4 = PermGroup::symmetric(4);
        let d8 = PermGroup::new(4, vec![p("(1,2,3,4)", 4), p("(1,3)", 4)]).unwrap();
        // brute force over the three conjugates
        let mut common: HashSet<Perm> = d8.elements().into_iter().collect();
        for g in s4.elements() {
            let conj: HashSet<Perm> = d8.elements().iter().map(|x| x.conjugate_by(&g)).collect();
            common = common.intersection(&conj).cloned().collect();
        }
        assert_eq!(common.len(), 4);
        assert_eq!(s4.core(&d8).unwrap().order(), BigUint::from(4u32));
    }

    #[test]
    fn prime_classes() {
        let s5 = PermGroup::symmetric(5);
        let mut sizes: Vec<u64> = prime_order_class_reps(&s5)
            .unwrap()
            .iter()
            .map(|d| d.class_size.to_u64().unwrap())
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![10, 15, 20, 24]);
        let a5 = PermGroup::alternating(5);
        let mut sizes: Vec<u64> = prime_order_class_reps(&a5)
            .unwrap()
            .iter()
            .map(|d| d.class_size.to_u64().unwrap())
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![12, 12, 15, 20]);
        assert!(prime_order_class_reps(&PermGroup::trivial(3))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn sampled_classes_match_enumeration() {
        let g = m11();
        let a = prime_order_classes_enumerated(&g);
        let b = prime_order_classes_sampled(&g, 7, 3000).unwrap();
        let mut sa: Vec<(u64, BigUint)> = a.iter().map(|d| (d.r, d.class_size.clone())).collect();
        let mut sb: Vec<(u64, BigUint)> = b.iter().map(|d| (d.r, d.class_size.clone())).collect();
        sa.sort();
        sb.sort();
        assert_eq!(sa, sb);
    }

    #[test]
    fn uniform_sampling() {
        let s5 = PermGroup::symmetric(5);
        let mut rng = util::rng(1);
        let mut counts: HashMap<Perm, usize> = HashMap::new();
        let trials = 100_000;
        for _ in 0..trials {
            *counts.entry(s5.random_element(&mut rng)).or_default() += 1;
        }
        assert_eq!(counts.len(), 120);
        let expect = trials as f64 / 120.0;
        for &c in counts.values() {
            assert!((c as f64 - expect).abs() < 0.2 * expect);
        }
    }

    #[test]
    fn generic_orbit_stabilizer() {
        let s6 = PermGroup::symmetric(6);
        let set: Vec<u32> = vec![0, 1];
        let (orb, stab) = orbit_stabilizer(
            &s6,
            set,
            |s, g| {
                let mut v: Vec<u32> = s.iter().map(|&x| g.at(x)).collect();
                v.sort();
                v
            },
            3,
        );
        assert_eq!(orb.len(), 15);
        assert_eq!(stab.order(), BigUint::from(48u32));
    }
}
