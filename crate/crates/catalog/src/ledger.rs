//! Append-only results ledger: one record per line, tab-separated
//! `key=value` fields. Tabs, newlines and backslashes in values are escaped.
//!
//! Single writer, any number of readers. Unreadable lines are skipped and
//! counted rather than aborting a query.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use regnum::regularity::verify_witness;
use regnum::{Perm, SubgroupTuple};

#[derive(Debug, thiserror::Error)]
pub enum LedgerError {
    #[error("ledger I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Group(#[from] regnum::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerRecord {
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub parent: String,
    /// Component class names, in tuple order.
    pub components: Vec<String>,
    /// Deduplication key (see `SubgroupTuple::key`).
    pub key: String,
    /// `REGULAR`, `NONREGULAR` or `UNKNOWN`.
    pub verdict: String,
    /// Certificate: conjugators for regular tuples.
    pub payload: String,
    pub seed: u64,
    pub budget: u64,
    pub version: String,
}

const FIELDS: [&str; 9] = [
    "ts",
    "parent",
    "components",
    "key",
    "verdict",
    "payload",
    "seed",
    "budget",
    "version",
];

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

/// Components are escaped individually (`;` included) and joined with `;`;
/// the field is then stored as is.
fn join_components(comps: &[String]) -> String {
    comps
        .iter()
        .map(|c| escape(c).replace(';', "\\;"))
        .collect::<Vec<_>>()
        .join(";")
}

fn split_components(field: &str) -> Option<Vec<String>> {
    if field.is_empty() {
        return Some(Vec::new());
    }
    let mut parts = Vec::new();
    let mut cur = String::new();
    let mut it = field.chars();
    while let Some(c) = it.next() {
        match c {
            '\\' => {
                cur.push(c);
                cur.push(it.next()?);
            }
            ';' => parts.push(unescape(&std::mem::take(&mut cur))?),
            c => cur.push(c),
        }
    }
    parts.push(unescape(&cur)?);
    Some(parts)
}

fn unescape(s: &str) -> Option<String> {
    let mut out = String::with_capacity(s.len());
    let mut it = s.chars();
    while let Some(c) = it.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        out.push(match it.next()? {
            '\\' => '\\',
            't' => '\t',
            'n' => '\n',
            'r' => '\r',
            ';' => ';',
            _ => return None,
        });
    }
    Some(out)
}

impl LedgerRecord {
    pub fn to_line(&self) -> String {
        let vals = [
            self.timestamp.to_string(),
            self.parent.clone(),
            join_components(&self.components),
            self.key.clone(),
            self.verdict.clone(),
            self.payload.clone(),
            self.seed.to_string(),
            self.budget.to_string(),
            self.version.clone(),
        ];
        FIELDS
            .iter()
            .zip(vals)
            .map(|(k, v)| {
                if *k == "components" {
                    format!("{k}={v}")
                } else {
                    format!("{k}={}", escape(&v))
                }
            })
            .collect::<Vec<_>>()
            .join("\t")
    }

    pub fn from_line(line: &str) -> Option<LedgerRecord> {
        let mut vals: Vec<Option<String>> = vec![None; FIELDS.len()];
        for field in line.split('\t') {
            let (k, v) = field.split_once('=')?;
            let i = FIELDS.iter().position(|f| *f == k)?;
            if vals[i].is_some() {
                return None;
            }
            vals[i] = Some(if k == "components" {
                v.to_string()
            } else {
                unescape(v)?
            });
        }
        let mut v = vals
            .into_iter()
            .collect::<Option<Vec<String>>>()?
            .into_iter();
        let mut next = || v.next().unwrap();
        let timestamp = next().parse().ok()?;
        let parent = next();
        let comps = next();
        let components = split_components(&comps)?;
        let key = next();
        let verdict = next();
        if !matches!(verdict.as_str(), "REGULAR" | "NONREGULAR" | "UNKNOWN") {
            return None;
        }
        let payload = next();
        let seed = next().parse().ok()?;
        let budget = next().parse().ok()?;
        let version = next();
        Some(LedgerRecord {
            timestamp,
            parent,
            components,
            key,
            verdict,
            payload,
            seed,
            budget,
            version,
        })
    }

    /// Conjugators from a `REGULAR g2=… g3=…` payload (`g1 = 1`).
    pub fn witness(&self, degree: usize, len: usize) -> Result<Vec<Perm>, regnum::Error> {
        let bad = |m: &str| regnum::Error::Parse {
            line: 0,
            col: 0,
            msg: m.to_string(),
        };
        let mut toks = self.payload.split_whitespace();
        if toks.next() != Some("REGULAR") {
            return Err(bad("not a regular payload"));
        }
        let mut w = vec![Perm::identity(degree); len];
        for t in toks {
            let (name, cyc) = t
                .split_once('=')
                .ok_or_else(|| bad("malformed conjugator"))?;
            let i: usize = name
                .strip_prefix('g')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad index"))?;
            if i < 2 || i > len {
                return Err(bad("conjugator index out of range"));
            }
            w[i - 1] = Perm::parse(cyc, degree)?;
        }
        Ok(w)
    }
}

pub fn ledger_append(path: &Path, rec: &LedgerRecord) -> Result<(), LedgerError> {
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    f.write_all(format!("{}\n", rec.to_line()).as_bytes())?;
    f.sync_data()?;
    Ok(())
}

/// Every readable record, and the number of corrupt lines skipped.
pub fn ledger_read(path: &Path) -> Result<(Vec<LedgerRecord>, usize), LedgerError> {
    let f = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok((Vec::new(), 0)),
        Err(e) => return Err(e.into()),
    };
    let mut recs = Vec::new();
    let mut corrupt = 0;
    for line in BufReader::new(f).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match LedgerRecord::from_line(&line) {
            Some(r) => recs.push(r),
            None => corrupt += 1,
        }
    }
    Ok((recs, corrupt))
}

/// Records whose tuple key and parent match.
pub fn ledger_query(
    path: &Path,
    parent: &str,
    key: &str,
) -> Result<(Vec<LedgerRecord>, usize), LedgerError> {
    let (recs, corrupt) = ledger_read(path)?;
    Ok((
        recs.into_iter()
            .filter(|r| r.parent == parent && r.key == key)
            .collect(),
        corrupt,
    ))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReplayReport {
    pub regular: usize,
    pub verified: usize,
    /// `(record index, reason)` for every regular record that failed.
    pub failures: Vec<(usize, String)>,
    pub corrupt: usize,
}

/// Re-verifies the witness of every regular record; `resolve` rebuilds the
/// tuple a record refers to.
pub fn ledger_replay<F>(path: &Path, mut resolve: F) -> Result<ReplayReport, LedgerError>
where
    F: FnMut(&LedgerRecord) -> Result<SubgroupTuple, regnum::Error>,
{
    let (recs, corrupt) = ledger_read(path)?;
    let mut rep = ReplayReport {
        corrupt,
        ..ReplayReport::default()
    };
    for (i, r) in recs
        .iter()
        .enumerate()
        .filter(|(_, r)| r.verdict == "REGULAR")
    {
        rep.regular += 1;
        let res = resolve(r).and_then(|t| {
            let w = r.witness(t.parent.degree(), t.len())?;
            Ok(verify_witness(&t, &w))
        });
        match res {
            Ok(true) => rep.verified += 1,
            Ok(false) => rep
                .failures
                .push((i, "witness does not give a trivial intersection".into())),
            Err(e) => rep.failures.push((i, e.to_string())),
        }
    }
    Ok(rep)
}
