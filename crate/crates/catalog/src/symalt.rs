//! Maximal-subgroup catalogs of `Sₙ` and `Aₙ`.
//!
//! Intransitive and imprimitive entries are constructed; primitive entries
//! come from the shipped data (5 ≤ n ≤ 24). Names use the CLI shorthand:
//! `S3xS4`, `S2wrS4` (two-point blocks, four of them), `S6` for the point
//! stabilizer of `S7`; in `Aₙ` these become `(S3xS4)∩A7` and so on.

use num_bigint::BigUint;
use regnum::actions::{direct_symmetric, partition_stabilizer, UniformPartition};
use regnum::symalt::Grade;
use regnum::{util, Error, Perm, PermGroup};

use crate::format::{parse_group_records, GroupRecord, Shape, Tag};

pub const PRIMITIVE_RANGE: std::ops::RangeInclusive<usize> = 5..=24;
pub const CONSTRUCTED_MAX: usize = 64;

/// Which entries to return.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    All,
    Intransitive,
    Imprimitive,
    Primitive,
    /// Soluble entries, maximal or not.
    Soluble,
    /// Soluble entries that are maximal in the parent.
    SolubleMaximal,
    /// Entries maximal in `Sₙ` or `Aₙ` (the large subgroups used for `R`).
    Maximal,
}

impl Filter {
    fn needs_primitive(self) -> bool {
        !matches!(self, Filter::Intransitive | Filter::Imprimitive)
    }

    fn needs_constructed(self) -> bool {
        self != Filter::Primitive
    }
}

pub fn parent_name(n: usize, grade: Grade) -> String {
    match grade {
        Grade::Symmetric => format!("S{n}"),
        Grade::Alternating => format!("A{n}"),
    }
}

macro_rules! symalt_data {
    ($($n:literal),*) => {
        fn primitive_text(n: usize, grade: Grade) -> Option<&'static str> {
            match (grade, n) {
                $(
                    (Grade::Symmetric, $n) => Some(include_str!(concat!("../data/symalt/S", $n, ".grp"))),
                    (Grade::Alternating, $n) => Some(include_str!(concat!("../data/symalt/A", $n, ".grp"))),
                )*
                _ => None,
            }
        }
    };
}

symalt_data!(5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24);

/// Primitive entries as shipped (parsed, not yet built).
pub fn primitive_records(n: usize, grade: Grade) -> Result<Vec<GroupRecord>, Error> {
    let text = primitive_text(n, grade).ok_or_else(|| {
        Error::Precondition(format!(
            "no primitive data for degree {n} (supported: 5..=24)"
        ))
    })?;
    parse_group_records(text)
}

/// Generators of `H ∩ Aₙ` from Schreier generators for the transversal `{1, t}`.
pub fn even_part(gens: &[Perm]) -> Vec<Perm> {
    let Some(t) = gens.iter().find(|g| !g.is_even()).cloned() else {
        return gens.to_vec();
    };
    let tinv = t.inverse();
    let mut out = Vec::new();
    let mut push = |p: Perm| {
        if !p.is_identity() && !out.contains(&p) {
            out.push(p);
        }
    };
    for s in gens {
        if s.is_even() {
            push(s.clone());
            push(t.then(s).then(&tinv));
        } else {
            push(s.then(&tinv));
            push(t.then(s));
        }
    }
    out
}

fn soluble_symmetric(k: usize) -> bool {
    k <= 4
}

#[allow(clippy::too_many_arguments)]
fn record(
    n: usize,
    grade: Grade,
    name: String,
    gens: Vec<Perm>,
    s_order: BigUint,
    shape: Shape,
    soluble: bool,
    maximal: bool,
    provenance: String,
) -> GroupRecord {
    let (name, gens, order) = match grade {
        Grade::Symmetric => (name, gens, s_order),
        Grade::Alternating => (name, even_part(&gens), s_order / 2u32),
    };
    let mut tags = vec![Tag::Shape(shape)];
    if soluble {
        tags.push(Tag::Soluble);
    }
    if maximal {
        tags.push(Tag::MaximalIn(parent_name(n, grade)));
    }
    GroupRecord {
        name,
        degree: n,
        generators: gens,
        expected_order: order,
        provenance,
        tags,
    }
}

fn a_name(n: usize, grade: Grade, s_name: String) -> String {
    match grade {
        Grade::Symmetric => s_name,
        Grade::Alternating => format!("({s_name})∩A{n}"),
    }
}

/// `S_k × S_{n−k}` (or its even part), `1 ≤ k ≤ n/2`. Maximal iff `k < n/2`.
pub fn intransitive_record(n: usize, k: usize, grade: Grade) -> Result<GroupRecord, Error> {
    if k == 0 || 2 * k > n {
        return Err(Error::Precondition(format!(
            "need 1 ≤ k ≤ n/2, got k = {k}, n = {n}"
        )));
    }
    let first: Vec<u32> = (0..k as u32).collect();
    let rest: Vec<u32> = (k as u32..n as u32).collect();
    let h = direct_symmetric(n, &[first, rest]);
    let name = if k == 1 {
        match grade {
            Grade::Symmetric => format!("S{}", n - 1),
            Grade::Alternating => format!("A{}", n - 1),
        }
    } else {
        a_name(n, grade, format!("S{k}xS{}", n - k))
    };
    let order = util::factorial(k as u64) * util::factorial((n - k) as u64);
    Ok(record(
        n,
        grade,
        name,
        h.generators().to_vec(),
        order,
        Shape::Intransitive,
        soluble_symmetric(k) && soluble_symmetric(n - k),
        2 * k < n,
        "constructed: stabilizer of the set {1..k}".into(),
    ))
}

/// `S_a ≀ S_b` with `b` blocks of size `a` (or its even part).
pub fn imprimitive_record(n: usize, a: usize, grade: Grade) -> Result<GroupRecord, Error> {
    if a <= 1 || a >= n || !n.is_multiple_of(a) {
        return Err(Error::Precondition(format!(
            "block size {a} is not a proper divisor of {n}"
        )));
    }
    let b = n / a;
    let h = partition_stabilizer(&UniformPartition::standard(n, a)?);
    let order = util::factorial(a as u64).pow(b as u32) * util::factorial(b as u64);
    // the only non-maximal case among these: (S2 wr S4) ∩ A8 < AGL3(2)
    let maximal = !(grade == Grade::Alternating && n == 8 && a == 2);
    Ok(record(
        n,
        grade,
        a_name(n, grade, format!("S{a}wrS{b}")),
        h.generators().to_vec(),
        order,
        Shape::Imprimitive,
        soluble_symmetric(a) && soluble_symmetric(b),
        maximal,
        "constructed: stabilizer of the partition into consecutive blocks".into(),
    ))
}

/// Maximal in the parent, or (for `Sₙ`) a self-normalizing maximal of `Aₙ`.
pub fn is_maximal_here(r: &GroupRecord, n: usize, grade: Grade) -> bool {
    let p = parent_name(n, grade);
    // ℳ′(Sₙ) also holds self-normalizing maximals of Aₙ
    let alt = parent_name(n, Grade::Alternating);
    r.maximal_in()
        .any(|m| m == p || (grade == Grade::Symmetric && m == alt))
}

/// Entries of the catalog for `Sₙ` or `Aₙ`, in a fixed order: intransitive
/// by `k`, imprimitive by block size, then primitive as shipped.
pub fn symalt_maximal_catalog(
    n: usize,
    grade: Grade,
    filter: Filter,
) -> Result<Vec<GroupRecord>, Error> {
    if n < 5 {
        return Err(Error::Precondition(format!("degree {n} below 5")));
    }
    let mut out = Vec::new();
    if filter.needs_constructed() {
        if n > CONSTRUCTED_MAX {
            return Err(Error::Precondition(format!(
                "degree {n} above {CONSTRUCTED_MAX}"
            )));
        }
        for k in 1..=n / 2 {
            out.push(intransitive_record(n, k, grade)?);
        }
        for a in 2..n {
            if n.is_multiple_of(a) {
                out.push(imprimitive_record(n, a, grade)?);
            }
        }
    }
    if filter.needs_primitive() {
        // beyond the data range, mixed filters would silently miss
        // primitive members, so they fail too
        out.extend(primitive_records(n, grade)?);
    }
    out.retain(|r| match filter {
        Filter::All => true,
        Filter::Intransitive => r.shape() == Some(Shape::Intransitive),
        Filter::Imprimitive => r.shape() == Some(Shape::Imprimitive),
        Filter::Primitive => r.shape() == Some(Shape::Primitive),
        Filter::Soluble => r.is_soluble(),
        Filter::SolubleMaximal => r.is_soluble() && is_maximal_here(r, n, grade),
        Filter::Maximal => is_maximal_here(r, n, grade),
    });
    Ok(out)
}

/// Builds every record with the order gate and tag checks.
pub fn load_all(recs: &[GroupRecord]) -> Result<Vec<PermGroup>, Error> {
    recs.iter().map(|r| r.load()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize, grade: Grade, f: Filter) -> Vec<String> {
        symalt_maximal_catalog(n, grade, f)
            .unwrap()
            .into_iter()
            .map(|r| r.name)
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(
            names(8, Grade::Alternating, Filter::Primitive),
            ["AGL3(2)_1", "AGL3(2)_2"]
        );
        assert_eq!(names(6, Grade::Symmetric, Filter::Primitive), ["PGL2(5)"]);
        let sol = symalt_maximal_catalog(9, Grade::Symmetric, Filter::SolubleMaximal).unwrap();
        assert!(sol.iter().any(|r| r.name == "S3wrS3" && r.is_soluble()));
        assert_eq!(
            names(5, Grade::Symmetric, Filter::Maximal),
            ["S4", "S2xS3", "AGL1(5)"]
        );
        assert_eq!(
            names(8, Grade::Symmetric, Filter::Intransitive),
            ["S7", "S2xS6", "S3xS5", "S4xS4"]
        );
        assert_eq!(
            names(8, Grade::Alternating, Filter::Imprimitive),
            ["(S2wrS4)∩A8", "(S4wrS2)∩A8"]
        );
        assert!(!names(8, Grade::Alternating, Filter::Maximal).contains(&"(S2wrS4)∩A8".to_string()));
        assert!(!names(8, Grade::Symmetric, Filter::Maximal).contains(&"S4xS4".to_string()));
        assert!(symalt_maximal_catalog(25, Grade::Symmetric, Filter::Primitive).is_err());
        assert_eq!(
            symalt_maximal_catalog(40, Grade::Symmetric, Filter::Imprimitive)
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn closed_form_orders_and_core_freeness() {
        for n in 5..=10 {
            for grade in [Grade::Symmetric, Grade::Alternating] {
                let g = grade.group(n);
                for r in symalt_maximal_catalog(n, grade, Filter::All).unwrap() {
                    let h = r.load().unwrap();
                    assert!(h.is_subgroup_of(&g), "{}", r.name);
                    assert!(g.is_core_free(&h).unwrap(), "{}", r.name);
                }
            }
        }
        for n in [12, 16, 24, 36, 64] {
            let r = imprimitive_record(n, 4, Grade::Symmetric).unwrap();
            let b = (n / 4) as u32;
            assert_eq!(
                r.expected_order,
                BigUint::from(24u32).pow(b) * util::factorial(b as u64)
            );
            assert_eq!(r.build().unwrap().order(), r.expected_order);
            let y = intransitive_record(n, 3, Grade::Alternating).unwrap();
            assert_eq!(
                y.build().unwrap().order(),
                util::factorial(3) * util::factorial(n as u64 - 3) / 2u32
            );
        }
    }

    #[test]
    fn even_part_matches_intersection() {
        let h = direct_symmetric(7, &[vec![0, 1, 2], vec![3, 4, 5, 6]]);
        let e = PermGroup::new(7, even_part(h.generators())).unwrap();
        let brute = h.elements().into_iter().filter(|x| x.is_even()).count();
        assert_eq!(e.order(), BigUint::from(brute));
        assert!(e.generators().iter().all(|x| x.is_even() && h.contains(x)));
    }
}
