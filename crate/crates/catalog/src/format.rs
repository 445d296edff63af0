//! Line-oriented group files.
//!
//! ```text
//! # comment
//! name M11
//! degree 11
//! order 7920
//! tag primitive
//! provenance ...
//! gen (1,2,3,4,5,6,7,8,9,10,11)
//! gen (3,7,11,8)(4,10,5,6)
//! ```
//!
//! A file may hold several records; each starts at a `name` line.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use regnum::{Error, Perm, PermGroup};

/// Shape of a group on its natural points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    Intransitive,
    Imprimitive,
    Primitive,
}

impl Shape {
    pub fn of(g: &PermGroup) -> Shape {
        if !g.is_transitive() {
            Shape::Intransitive
        } else if g.is_primitive().unwrap_or(false) {
            Shape::Primitive
        } else {
            Shape::Imprimitive
        }
    }

    fn word(self) -> &'static str {
        match self {
            Shape::Intransitive => "intransitive",
            Shape::Imprimitive => "imprimitive",
            Shape::Primitive => "primitive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Shape(Shape),
    /// Shape of the intersection with the socle's natural action; used for
    /// groups whose natural action is not the one the classification refers to.
    Socle(Shape),
    Soluble,
    Nilpotent,
    MaximalIn(String),
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Shape(s) => f.write_str(s.word()),
            Tag::Socle(s) => write!(f, "socle-{}", s.word()),
            Tag::Soluble => f.write_str("soluble"),
            Tag::Nilpotent => f.write_str("nilpotent"),
            Tag::MaximalIn(g) => write!(f, "maximal-in:{g}"),
        }
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> Result<Tag, String> {
        let shape = |w: &str| match w {
            "intransitive" => Some(Shape::Intransitive),
            "imprimitive" => Some(Shape::Imprimitive),
            "primitive" => Some(Shape::Primitive),
            _ => None,
        };
        if let Some(sh) = shape(s) {
            return Ok(Tag::Shape(sh));
        }
        if let Some(sh) = s.strip_prefix("socle-").and_then(shape) {
            return Ok(Tag::Socle(sh));
        }
        match s {
            "soluble" => Ok(Tag::Soluble),
            "nilpotent" => Ok(Tag::Nilpotent),
            _ => match s.strip_prefix("maximal-in:") {
                Some(g) if !g.is_empty() => Ok(Tag::MaximalIn(g.to_string())),
                _ => Err(format!("unknown tag '{s}'")),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRecord {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub expected_order: BigUint,
    pub provenance: String,
    /// Kept in file order; duplicates are rejected.
    pub tags: Vec<Tag>,
}

impl GroupRecord {
    pub fn has_tag(&self, t: &Tag) -> bool {
        self.tags.contains(t)
    }

    pub fn shape(&self) -> Option<Shape> {
        self.tags.iter().find_map(|t| match t {
            Tag::Shape(s) => Some(*s),
            _ => None,
        })
    }

    pub fn is_soluble(&self) -> bool {
        self.has_tag(&Tag::Soluble)
    }

    pub fn maximal_in(&self) -> impl Iterator<Item = &str> {
        self.tags.iter().filter_map(|t| match t {
            Tag::MaximalIn(g) => Some(g.as_str()),
            _ => None,
        })
    }

    /// Builds the group; the order gate is exact (a chain reaching the
    /// expected order from genuine elements cannot overshoot it).
    pub fn build(&self) -> Result<PermGroup, Error> {
        let g = PermGroup::new(self.degree, self.generators.clone())?;
        if self.generators.is_empty() {
            if self.expected_order != BigUint::from(1u32) {
                return Err(Error::OrderMismatch {
                    expected: self.expected_order.to_string(),
                    computed: "1".into(),
                });
            }
            return Ok(g);
        }
        match PermGroup::with_order(
            self.degree,
            self.generators.clone(),
            self.expected_order.clone(),
        ) {
            Ok(g) => Ok(g),
            Err(Error::OrderMismatch { expected, .. }) => Err(Error::OrderMismatch {
                expected,
                computed: g.order().to_string(),
            }),
            Err(e) => Err(e),
        }
    }

    /// Re-checks every tag with a computable predicate.
    pub fn verify_tags(&self, g: &PermGroup) -> Result<(), Error> {
        let fail = |what: String| Err(Error::Verification(format!("{}: {what}", self.name)));
        let shape = Shape::of(g);
        let shapes: Vec<Shape> = self
            .tags
            .iter()
            .filter_map(|t| match t {
                Tag::Shape(s) => Some(*s),
                _ => None,
            })
            .collect();
        if shapes.len() > 1 {
            return fail("more than one shape tag".into());
        }
        if let Some(&s) = shapes.first() {
            if s != shape {
                return fail(format!("tagged {} but computed {}", s.word(), shape.word()));
            }
        }
        let sol = g.is_soluble();
        if sol != self.is_soluble() {
            return fail(format!(
                "soluble tag disagrees with computed solubility ({sol})"
            ));
        }
        let nil = g.is_nilpotent();
        if nil != self.has_tag(&Tag::Nilpotent) {
            return fail(format!(
                "nilpotent tag disagrees with computed nilpotency ({nil})"
            ));
        }
        Ok(())
    }

    /// Build, then verify tags.
    pub fn load(&self) -> Result<PermGroup, Error> {
        let g = self.build()?;
        self.verify_tags(&g)?;
        Ok(g)
    }
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

#[derive(Default)]
struct Partial {
    line: usize,
    name: String,
    degree: Option<usize>,
    order: Option<BigUint>,
    gens: Vec<(usize, usize, String)>,
    tags: Vec<Tag>,
    provenance: Option<String>,
}

impl Partial {
    fn finish(self) -> Result<GroupRecord, Error> {
        let degree = self.degree.ok_or_else(|| {
            parse_err(self.line, 1, format!("record '{}' lacks degree", self.name))
        })?;
        let order = self.order.ok_or_else(|| {
            parse_err(self.line, 1, format!("record '{}' lacks order", self.name))
        })?;
        let mut generators = Vec::new();
        for (line, col, text) in self.gens {
            let p = Perm::parse(&text, degree).map_err(|e| match e {
                Error::Parse { col: c, msg, .. } => parse_err(line, col + c - 1, msg),
                other => parse_err(line, col, other.to_string()),
            })?;
            generators.push(p);
        }
        Ok(GroupRecord {
            name: self.name,
            degree,
            generators,
            expected_order: order,
            provenance: self.provenance.unwrap_or_default(),
            tags: self.tags,
        })
    }
}

/// All records of a file, in order. Parsing only; nothing is built.
pub fn parse_group_records(text: &str) -> Result<Vec<GroupRecord>, Error> {
    let mut out = Vec::new();
    let mut cur: Option<Partial> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_start();
        let indent = raw.len() - trimmed.len();
        let trimmed = trimmed.trim_end();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, rest) = match trimmed.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (trimmed, ""),
        };
        let val_col = indent + trimmed.len() - rest.len() + 1;
        if key == "name" {
            if rest.is_empty() {
                return Err(parse_err(line, val_col, "empty name"));
            }
            if let Some(p) = cur.take() {
                out.push(p.finish()?);
            }
            cur = Some(Partial {
                line,
                name: rest.to_string(),
                ..Partial::default()
            });
            continue;
        }
        let p = cur
            .as_mut()
            .ok_or_else(|| parse_err(line, indent + 1, "directive before 'name'"))?;
        match key {
            "degree" => {
                if p.degree.is_some() {
                    return Err(parse_err(line, indent + 1, "duplicate degree"));
                }
                p.degree = Some(
                    rest.parse()
                        .map_err(|_| parse_err(line, val_col, "bad degree"))?,
                );
            }
            "order" => {
                if p.order.is_some() {
                    return Err(parse_err(line, indent + 1, "duplicate order"));
                }
                let o: BigUint = rest
                    .parse()
                    .map_err(|_| parse_err(line, val_col, "bad order"))?;
                p.order = Some(o);
            }
            "gen" => p.gens.push((line, val_col, rest.to_string())),
            "tag" => {
                let t: Tag = rest
                    .parse()
                    .map_err(|m: String| parse_err(line, val_col, m))?;
                if p.tags.contains(&t) {
                    return Err(parse_err(line, val_col, format!("duplicate tag '{t}'")));
                }
                p.tags.push(t);
            }
            "provenance" => p.provenance = Some(rest.to_string()),
            other => {
                return Err(parse_err(
                    line,
                    indent + 1,
                    format!("unknown directive '{other}'"),
                ))
            }
        }
    }
    if let Some(p) = cur {
        out.push(p.finish()?);
    }
    Ok(out)
}

/// Exactly one record, built and order-checked.
pub fn parse_group_file(text: &str) -> Result<GroupRecord, Error> {
    let mut recs = parse_group_records(text)?;
    if recs.len() != 1 {
        return Err(parse_err(
            1,
            1,
            format!("expected one record, found {}", recs.len()),
        ));
    }
    let rec = recs.pop().unwrap();
    rec.build()?;
    Ok(rec)
}

pub fn write_group_file(rec: &GroupRecord) -> String {
    let mut s = format!(
        "name {}\ndegree {}\norder {}\n",
        rec.name, rec.degree, rec.expected_order
    );
    for t in &rec.tags {
        s += &format!("tag {t}\n");
    }
    if !rec.provenance.is_empty() {
        s += &format!("provenance {}\n", rec.provenance);
    }
    for g in &rec.generators {
        s += &format!("gen {g}\n");
    }
    s
}

pub fn write_group_records(recs: &[GroupRecord]) -> String {
    recs.iter()
        .map(write_group_file)
        .collect::<Vec<_>>()
        .join("\n")
}
