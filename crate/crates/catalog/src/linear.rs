//! Small linear groups as permutation groups on the 1-spaces of `F_p^n`.
//!
//! Matrices act on row vectors from the right, so `x.then(y)` is the matrix
//! product `XY`, matching permutation composition.

use num_bigint::BigUint;
use regnum::{search, util, Error, Perm, PermGroup};

use crate::format::{GroupRecord, Shape, Tag};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearKind {
    /// `L_n(2)`, `n ∈ {3,4,5}`.
    Ln2(usize),
    /// `SL_3(q)`, `q = 3`.
    SL3(u32),
}

impl LinearKind {
    fn dim_and_field(self) -> Result<(usize, u32), Error> {
        match self {
            LinearKind::Ln2(n) if (3..=5).contains(&n) => Ok((n, 2)),
            LinearKind::SL3(3) => Ok((3, 3)),
            other => Err(Error::Precondition(format!(
                "unsupported linear group {other:?}"
            ))),
        }
    }

    pub fn name(self) -> String {
        match self {
            LinearKind::Ln2(n) => format!("L{n}(2)"),
            LinearKind::SL3(q) => format!("SL3({q})"),
        }
    }
}

/// Projective points of `F_p^n`: vectors whose first nonzero entry is 1.
pub struct ProjectiveSpace {
    pub dim: usize,
    pub p: u32,
    pub points: Vec<Vec<u32>>,
}

impl ProjectiveSpace {
    pub fn new(dim: usize, p: u32) -> ProjectiveSpace {
        let total = (p as usize).pow(dim as u32);
        let mut points = Vec::new();
        for code in 1..total {
            let mut v = vec![0u32; dim];
            let mut c = code;
            for x in v.iter_mut().rev() {
                *x = (c % p as usize) as u32;
                c /= p as usize;
            }
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                points.push(v);
            }
        }
        // ⟨e_1⟩ is point 1
        let e1 = points
            .iter()
            .position(|v| v[0] == 1 && v[1..].iter().all(|&x| x == 0))
            .unwrap();
        let first = points.remove(e1);
        points.insert(0, first);
        ProjectiveSpace { dim, p, points }
    }

    fn normalize(&self, v: &mut [u32]) {
        let p = self.p;
        if let Some(&lead) = v.iter().find(|&&x| x != 0) {
            let inv = (1..p).find(|&i| i * lead % p == 1).unwrap();
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
        }
    }

    pub fn index_of(&self, v: &[u32]) -> Option<u32> {
        let mut w = v.to_vec();
        self.normalize(&mut w);
        self.points.iter().position(|x| *x == w).map(|i| i as u32)
    }

    /// Permutation induced by a nonsingular matrix (rows).
    pub fn matrix_perm(&self, m: &[Vec<u32>]) -> Result<Perm, Error> {
        let p = self.p;
        let mut img = Vec::with_capacity(self.points.len());
        for v in &self.points {
            let w: Vec<u32> = (0..self.dim)
                .map(|j| (0..self.dim).map(|i| v[i] * m[i][j]).sum::<u32>() % p)
                .collect();
            if w.iter().all(|&x| x == 0) {
                return Err(Error::Precondition("singular matrix".into()));
            }
            img.push(self.index_of(&w).expect("normalized vector is a point"));
        }
        Perm::from_images(img)
    }

    /// Points of the hyperplane `x_n = 0`.
    pub fn hyperplane(&self) -> Vec<u32> {
        (0..self.points.len() as u32)
            .filter(|&i| self.points[i as usize][self.dim - 1] == 0)
            .collect()
    }
}

/// `I + E_{ij}`.
pub fn transvection(dim: usize, i: usize, j: usize) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = (0..dim)
        .map(|r| (0..dim).map(|c| u32::from(r == c)).collect())
        .collect();
    m[i][j] = 1;
    m
}

/// `|SL_n(p)| / gcd(n, p−1)`, the order of the image on 1-spaces.
pub fn projective_order(dim: usize, p: u32) -> BigUint {
    let q = BigUint::from(p);
    let mut o = q.pow((dim * (dim - 1) / 2) as u32);
    for i in 2..=dim as u32 {
        o *= q.pow(i) - 1u32;
    }
    let g = (1..=dim as u32)
        .filter(|d| (dim as u32).is_multiple_of(*d) && (p - 1).is_multiple_of(*d))
        .max()
        .unwrap();
    o / g
}

#[derive(Clone, Debug)]
pub struct LinearGroup {
    pub group: GroupRecord,
    /// Stabilizer of `⟨e_1⟩`.
    pub p1: GroupRecord,
    /// Stabilizer of the hyperplane `x_n = 0`.
    pub hyperplane: GroupRecord,
    /// Remaining maximal-subgroup classes, where shipped (`SL3(3)` only).
    pub others: Vec<GroupRecord>,
}

impl LinearGroup {
    /// `P1`, the hyperplane stabilizer, then the others.
    pub fn maximals(&self) -> Vec<&GroupRecord> {
        let mut v = vec![&self.p1, &self.hyperplane];
        v.extend(self.others.iter());
        v
    }
}

fn computed_record(
    name: String,
    h: &PermGroup,
    parent: &str,
    order: BigUint,
    provenance: &str,
) -> GroupRecord {
    let mut tags = vec![Tag::Shape(Shape::of(h))];
    if h.is_soluble() {
        tags.push(Tag::Soluble);
    }
    if h.is_nilpotent() {
        tags.push(Tag::Nilpotent);
    }
    tags.push(Tag::MaximalIn(parent.to_string()));
    GroupRecord {
        name,
        degree: h.degree(),
        generators: h.gens_or_strong(),
        expected_order: order,
        provenance: provenance.to_string(),
        tags,
    }
}

pub fn linear_group(kind: LinearKind) -> Result<LinearGroup, Error> {
    let (dim, p) = kind.dim_and_field()?;
    let space = ProjectiveSpace::new(dim, p);
    let npts = space.points.len();
    let mut gens = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                gens.push(space.matrix_perm(&transvection(dim, i, j))?);
            }
        }
    }
    let order = projective_order(dim, p);
    let name = kind.name();
    let g = PermGroup::with_order(npts, gens.clone(), order.clone())?;
    let group = GroupRecord {
        name: name.clone(),
        degree: npts,
        generators: gens,
        expected_order: order.clone(),
        provenance: "constructed: elementary transvections acting on 1-spaces".into(),
        tags: vec![Tag::Shape(Shape::Primitive)],
    };
    let parabolic_order = &order / npts;
    let p1 = g.point_stabilizer(0);
    let hyp = search::setwise_stabilizer(&g, &space.hyperplane());
    let p1 = computed_record(
        "P1".into(),
        &p1,
        &name,
        parabolic_order.clone(),
        "constructed: stabilizer of <e1>",
    );
    let hyperplane = computed_record(
        format!("P{}", dim - 1),
        &hyp,
        &name,
        parabolic_order,
        "constructed: stabilizer of the hyperplane x_n = 0",
    );
    let mut others = Vec::new();
    if kind == LinearKind::SL3(3) {
        others.push(singer_normalizer(&g, &name)?);
        others.push(monomial_subgroup(&space, &g, &name)?);
    }
    Ok(LinearGroup {
        group,
        p1,
        hyperplane,
        others,
    })
}

/// `13:3`: a Singer cycle and an element conjugating it to its cube.
fn singer_normalizer(g: &PermGroup, parent: &str) -> Result<GroupRecord, Error> {
    let mut rng = util::rng(13);
    let c = (0..10_000)
        .map(|_| g.random_element(&mut rng))
        .find_map(|x| {
            let o = x.order_u64();
            (o % 13 == 0).then(|| x.pow((o / 13) as i64))
        })
        .ok_or_else(|| Error::Verification("no element of order 13 found".into()))?;
    let y = search::is_conjugate(g, &c, &c.pow(3))
        .ok_or_else(|| Error::Verification("Singer cycle not conjugate to its cube".into()))?;
    let h = g.subgroup(vec![c, y])?;
    Ok(computed_record(
        "13:3".into(),
        &h,
        parent,
        BigUint::from(39u32),
        "constructed: normalizer of a Singer cycle",
    ))
}

/// `S4`: the monomial matrices of determinant 1.
fn monomial_subgroup(
    space: &ProjectiveSpace,
    g: &PermGroup,
    parent: &str,
) -> Result<GroupRecord, Error> {
    let frame: Vec<u32> = (0..3)
        .map(|i| {
            let v: Vec<u32> = (0..3).map(|j| u32::from(i == j)).collect();
            space.index_of(&v).unwrap()
        })
        .collect();
    let h = search::setwise_stabilizer(g, &frame);
    Ok(computed_record(
        "S4".into(),
        &h,
        parent,
        BigUint::from(24u32),
        "constructed: stabilizer of the coordinate frame",
    ))
}
