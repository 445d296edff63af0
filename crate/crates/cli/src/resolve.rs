//! Group and subgroup references.
//!
//! Parents: `S<n>`, `A<n>`, the supported sporadic names, `PGL2(9)`, `M10`,
//! `A6.2^2`, `L3(2)`, `L4(2)`, `L5(2)`, `SL3(3)`, or `file:<path>` (a group
//! file whose first record is the parent and the rest its subgroups).
//!
//! Subgroups resolve relative to the parent: catalog names verbatim, or for
//! `Sₙ`/`Aₙ` the shorthands `S<k>xS<m>` (`k+m = n`), `S<n−1>`/`A<n−1>` and
//! `S<a>wrS<b>` (`ab = n`), which in `Aₙ` denote the even part. A name that
//! only matches several numbered classes (`L2(7)` against `L2(7)_1`,
//! `L2(7)_2`) is ambiguous and rejected.

use std::path::Path;

use regnum::symalt::Grade;
use regnum::{Error, PermGroup};
use regnum_catalog::format::Shape;
use regnum_catalog::sporadic::{A6_EXTENSION_NAMES, SPORADIC_NAMES};
use regnum_catalog::symalt::{
    imprimitive_record, intransitive_record, is_maximal_here, CONSTRUCTED_MAX, PRIMITIVE_RANGE,
};
use regnum_catalog::{
    a6_extension_catalog, linear_group, parse_group_records, sporadic_catalog,
    symalt_maximal_catalog, Filter, GroupRecord, LinearKind, Tag,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParentKind {
    SymAlt(usize, Grade),
    Sporadic,
    /// `PGL2(9)`, `M10`, `A6.2^2` on 10 points.
    A6Extension,
    Linear,
    File,
}

/// Subgroup classes a regularity number can be restricted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    /// Every large subgroup in the catalog.
    All,
    /// Primitive on the natural points (of the socle, for `A6` extensions).
    Primitive,
    /// Soluble large subgroups.
    SolubleMaximal,
}

#[derive(Clone, Debug)]
pub struct Parent {
    pub name: String,
    pub kind: ParentKind,
    pub record: GroupRecord,
    pub group: PermGroup,
    /// Everything resolvable by name, large or not.
    pub records: Vec<GroupRecord>,
    /// Indices into `records` of the large subgroups used for `R` and `B`.
    pub large: Vec<usize>,
}

/// A resolved component: its class name and group.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub name: String,
    pub record: GroupRecord,
    pub group: PermGroup,
}

fn symalt_ref(s: &str) -> Option<(usize, Grade)> {
    let grade = match s.chars().next()? {
        'S' => Grade::Symmetric,
        'A' => Grade::Alternating,
        _ => return None,
    };
    let digits = &s[1..];
    let n: usize = digits.parse().ok()?;
    digits
        .chars()
        .all(|c| c.is_ascii_digit())
        .then_some((n, grade))
}

fn linear_ref(s: &str) -> Option<LinearKind> {
    match s {
        "L3(2)" => Some(LinearKind::Ln2(3)),
        "L4(2)" => Some(LinearKind::Ln2(4)),
        "L5(2)" => Some(LinearKind::Ln2(5)),
        "SL3(3)" => Some(LinearKind::SL3(3)),
        _ => None,
    }
}

fn usage(msg: String) -> Error {
    Error::Precondition(msg)
}

pub fn resolve_parent(reference: &str) -> Result<Parent, Error> {
    if let Some(path) = reference.strip_prefix("file:") {
        return parent_from_file(Path::new(path));
    }
    if let Some((n, grade)) = symalt_ref(reference) {
        if !(5..=CONSTRUCTED_MAX).contains(&n) {
            return Err(usage(format!(
                "{reference}: degree must lie in 5..={CONSTRUCTED_MAX}"
            )));
        }
        let mut records = Vec::new();
        for k in 1..=n / 2 {
            records.push(intransitive_record(n, k, grade)?);
        }
        for a in 2..n {
            if n % a == 0 {
                records.push(imprimitive_record(n, a, grade)?);
            }
        }
        if PRIMITIVE_RANGE.contains(&n) {
            records.extend(symalt_maximal_catalog(n, grade, Filter::Primitive)?);
        }
        let large = (0..records.len())
            .filter(|&i| is_maximal_here(&records[i], n, grade))
            .collect();
        let group = grade.group(n);
        let record = GroupRecord {
            name: reference.to_string(),
            degree: n,
            generators: group.generators().to_vec(),
            expected_order: group.order(),
            provenance: "natural action".into(),
            tags: vec![Tag::Shape(Shape::Primitive)],
        };
        return Ok(Parent {
            name: reference.into(),
            kind: ParentKind::SymAlt(n, grade),
            record,
            group,
            records,
            large,
        });
    }
    if SPORADIC_NAMES.contains(&reference) || A6_EXTENSION_NAMES.contains(&reference) {
        let (c, kind) = if SPORADIC_NAMES.contains(&reference) {
            (sporadic_catalog(reference)?, ParentKind::Sporadic)
        } else {
            (a6_extension_catalog(reference)?, ParentKind::A6Extension)
        };
        let group = c.group.load()?;
        let large = (0..c.maximals.len()).collect();
        return Ok(Parent {
            name: reference.into(),
            kind,
            record: c.group,
            group,
            records: c.maximals,
            large,
        });
    }
    if let Some(kind) = linear_ref(reference) {
        let lg = linear_group(kind)?;
        let group = lg.group.build()?;
        let records: Vec<GroupRecord> = lg.maximals().into_iter().cloned().collect();
        let large = (0..records.len()).collect();
        return Ok(Parent {
            name: reference.into(),
            kind: ParentKind::Linear,
            record: lg.group,
            group,
            records,
            large,
        });
    }
    if reference == "A6.2" {
        return Err(usage("A6.2 is ambiguous: S6, PGL2(9) or M10".into()));
    }
    Err(usage(format!("unknown group '{reference}'")))
}

fn parent_from_file(path: &Path) -> Result<Parent, Error> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let mut recs = parse_group_records(&text)?;
    if recs.is_empty() {
        return Err(usage(format!("{}: no records", path.display())));
    }
    let record = recs.remove(0);
    let group = record.load()?;
    let large = (0..recs.len()).collect();
    Ok(Parent {
        name: record.name.clone(),
        kind: ParentKind::File,
        record,
        group,
        records: recs,
        large,
    })
}

fn strip_class_suffix(name: &str) -> &str {
    match name.rsplit_once('_') {
        Some((base, idx)) if !idx.is_empty() && idx.chars().all(|c| c.is_ascii_digit()) => base,
        _ => name,
    }
}

impl Parent {
    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    fn shorthand(&self, s: &str) -> Option<Result<GroupRecord, Error>> {
        let ParentKind::SymAlt(n, grade) = self.kind else {
            return None;
        };
        let num = |t: &str| -> Option<usize> { t.strip_prefix('S')?.parse().ok() };
        if let Some((a, b)) = s.split_once("wr") {
            let (a, b) = (num(a)?, num(b)?);
            if a * b != n {
                return Some(Err(usage(format!("{s}: {a}·{b} ≠ {n}"))));
            }
            return Some(imprimitive_record(n, a, grade));
        }
        if let Some((a, b)) = s.split_once('x') {
            let (a, b) = (num(a)?, num(b)?);
            if a + b != n {
                return Some(Err(usage(format!("{s}: {a}+{b} ≠ {n}"))));
            }
            return Some(intransitive_record(n, a.min(b), grade));
        }
        let c = s.chars().next()?;
        let m: usize = s.get(c.len_utf8()..)?.parse().ok()?;
        if m + 1 == n && (c == 'S' || (c == 'A' && grade == Grade::Alternating)) {
            return Some(intransitive_record(n, 1, grade));
        }
        None
    }

    /// The record a reference names.
    pub fn resolve_record(&self, reference: &str) -> Result<GroupRecord, Error> {
        if let Some(path) = reference.strip_prefix("file:") {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
            let mut recs = parse_group_records(&text)?;
            if recs.len() != 1 {
                return Err(usage(format!("{path}: expected one record")));
            }
            return Ok(recs.remove(0));
        }
        let exact: Vec<&GroupRecord> = self
            .records
            .iter()
            .filter(|r| r.name == reference)
            .collect();
        match exact.len() {
            1 => return Ok(exact[0].clone()),
            0 => {}
            _ => {
                return Err(usage(format!(
                    "'{reference}' names several catalog entries"
                )))
            }
        }
        if let Some(r) = self.shorthand(reference) {
            return r;
        }
        let numbered: Vec<&str> = self
            .records
            .iter()
            .filter(|r| strip_class_suffix(&r.name) == reference && r.name != reference)
            .map(|r| r.name.as_str())
            .collect();
        if !numbered.is_empty() {
            return Err(usage(format!(
                "'{reference}' is ambiguous in {}: {}",
                self.name,
                numbered.join(", ")
            )));
        }
        let names: Vec<&str> = self.records.iter().map(|r| r.name.as_str()).collect();
        Err(usage(format!(
            "unknown subgroup '{reference}' of {} (known: {})",
            self.name,
            names.join(", ")
        )))
    }

    /// Resolves and builds a component, checking containment and core-freeness.
    pub fn resolve(&self, reference: &str) -> Result<Resolved, Error> {
        let record = self.resolve_record(reference)?;
        if record.degree != self.degree() {
            return Err(Error::DegreeMismatch(self.degree(), record.degree));
        }
        let group = record.load()?;
        if !group.generators().iter().all(|x| self.group.contains(x)) {
            return Err(Error::NotASubgroup(format!(
                "{} in {}",
                record.name, self.name
            )));
        }
        if !self.group.is_core_free(&group)? {
            return Err(Error::Precondition(format!(
                "{} is not core-free in {}",
                record.name, self.name
            )));
        }
        Ok(Resolved {
            name: record.name.clone(),
            record,
            group,
        })
    }

    fn in_class(&self, r: &GroupRecord, class: Class) -> bool {
        match class {
            Class::All => true,
            Class::SolubleMaximal => r.is_soluble(),
            Class::Primitive => match self.kind {
                ParentKind::A6Extension => r.has_tag(&Tag::Socle(Shape::Primitive)),
                _ => r.shape() == Some(Shape::Primitive),
            },
        }
    }

    /// Large subgroups in a class, built and checked, in catalog order.
    pub fn large_members(&self, class: Class) -> Result<Vec<Resolved>, Error> {
        if let ParentKind::SymAlt(n, _) = self.kind {
            if !PRIMITIVE_RANGE.contains(&n) && class != Class::SolubleMaximal {
                return Err(usage(format!("no primitive subgroup data for degree {n}")));
            }
        }
        let mut out = Vec::new();
        for &i in &self.large {
            let r = &self.records[i];
            if self.in_class(r, class) {
                let group = r.load()?;
                out.push(Resolved {
                    name: r.name.clone(),
                    record: r.clone(),
                    group,
                });
            }
        }
        Ok(out)
    }
}
