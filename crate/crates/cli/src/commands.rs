//! Subcommand implementations. Each returns the lines to print and an exit
//! status; nothing here writes to stdout directly.

use std::collections::HashMap;
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use num_rational::BigRational;
use regnum::qhat::{primitive_pair_certificate, qhat, ratio_to_f64};
use regnum::regularity::{base_size, decide, regularity_number, Certificate, Config};
use regnum::symalt::{imprimitive_witness, intransitive_witness, mixed_witness, Component, Grade};
use regnum::{Error, RegularityVerdict, SubgroupTuple};
use regnum_catalog::sporadic::{A6_EXTENSION_NAMES, SPORADIC_NAMES};
use regnum_catalog::{ledger_append, ledger_replay, LedgerRecord, Shape};

use crate::config::{Format, RunConfig};
use crate::expected::{expected_rows, tuples_agree, ExpectedRow, TableId};
use crate::resolve::{resolve_parent, Class, Parent, ParentKind, Resolved};

/// Process exit status, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Unknown = 2,
    Mismatch = 1,
    Usage = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn worst(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Ok => 0,
            Status::Unknown => 1,
            Status::Mismatch => 2,
            Status::Usage => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub lines: Vec<String>,
    pub status: Status,
}

impl Report {
    fn new() -> Report {
        Report {
            lines: Vec::new(),
            status: Status::Ok,
        }
    }

    fn push(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn error(e: &Error) -> Report {
        Report {
            lines: vec![format!("error: {e}")],
            status: Status::Usage,
        }
    }
}

fn fmt_tuple(t: &[String]) -> String {
    format!("({})", t.join(", "))
}

fn machine_tuple(t: &[String]) -> String {
    t.join(",")
}

fn machine_tuples(ts: &[Vec<String>]) -> String {
    if ts.is_empty() {
        return "-".into();
    }
    ts.iter()
        .map(|t| machine_tuple(t))
        .collect::<Vec<_>>()
        .join(";")
}

// ---------------------------------------------------------------- check-tuple

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Regular,
    NonRegular,
}

fn verdict_word(v: &RegularityVerdict) -> &'static str {
    match v {
        RegularityVerdict::Regular { .. } => "REGULAR",
        RegularityVerdict::NonRegular { .. } => "NONREGULAR",
        RegularityVerdict::Unknown { .. } => "UNKNOWN",
    }
}

fn verdict_status(v: &RegularityVerdict) -> Status {
    if v.is_unknown() {
        Status::Unknown
    } else {
        Status::Ok
    }
}

pub fn check_tuple(
    group: &str,
    comps: &[String],
    rc: &RunConfig,
    expect: Option<Expect>,
) -> Result<Report, Error> {
    if comps.is_empty() {
        return Err(Error::Precondition(
            "check-tuple needs at least one component".into(),
        ));
    }
    let parent = resolve_parent(group)?;
    let resolved: Vec<Resolved> = comps
        .iter()
        .map(|c| parent.resolve(c))
        .collect::<Result<_, _>>()?;
    let names: Vec<String> = resolved.iter().map(|r| r.name.clone()).collect();
    let t = SubgroupTuple::trusted(
        parent.group.clone(),
        resolved.iter().map(|r| r.group.clone()).collect(),
        names.clone(),
    );
    let v = decide(&t, &rc.engine());
    let mut rep = Report::new();
    let effort = match &v {
        RegularityVerdict::Regular { effort, .. }
        | RegularityVerdict::NonRegular { effort, .. }
        | RegularityVerdict::Unknown { effort, .. } => effort.clone(),
    };
    match rc.format {
        Format::Machine => {
            rep.push(format!("group={}", parent.name));
            rep.push(format!("degree={}", parent.degree()));
            rep.push(format!("order={}", parent.group.order()));
            rep.push(format!("components={}", machine_tuple(&names)));
            rep.push(format!("key={}", t.key()));
            rep.push(format!("verdict={}", verdict_word(&v)));
            rep.push(format!("certificate={}", v.payload()));
            rep.push(format!("random_attempts={}", effort.random_attempts));
            rep.push(format!("orbits={}", effort.orbits));
        }
        Format::Text => {
            rep.push(format!(
                "{} (degree {}, order {}): {}",
                parent.name,
                parent.degree(),
                parent.group.order(),
                fmt_tuple(&names)
            ));
            let detail = match &v {
                RegularityVerdict::Regular { witness, .. } => {
                    let gs: Vec<String> = witness
                        .iter()
                        .enumerate()
                        .skip(1)
                        .map(|(i, g)| format!("g{}={g}", i + 1))
                        .collect();
                    if gs.is_empty() {
                        "trivial component".to_string()
                    } else {
                        format!("conjugators {}", gs.join(" "))
                    }
                }
                RegularityVerdict::NonRegular {
                    certificate: Certificate::OrderBound { product, power },
                    ..
                } => {
                    format!("order bound: product of orders {product} exceeds |G|^(k-1) = {power}")
                }
                RegularityVerdict::NonRegular {
                    certificate: Certificate::OrbitExhaustion { covered, total },
                    ..
                } => {
                    format!("exhaustive: all {covered} of {total} points lie in non-regular orbits")
                }
                RegularityVerdict::Unknown { reason, .. } => format!("undecided: {reason}"),
            };
            rep.push(format!("{}: {detail}", verdict_word(&v)));
            rep.push(format!(
                "effort: {} random tuples, {} orbits",
                effort.random_attempts, effort.orbits
            ));
        }
    }
    rep.status = verdict_status(&v);
    if let Some(e) = expect {
        let ok = match e {
            Expect::Regular => v.is_regular(),
            Expect::NonRegular => v.is_nonregular(),
        };
        if !ok && !v.is_unknown() {
            rep.status = Status::Mismatch;
            rep.push(format!(
                "mismatch: expected {}",
                if e == Expect::Regular {
                    "REGULAR"
                } else {
                    "NONREGULAR"
                }
            ));
        }
    }
    if let Some(path) = &rc.ledger {
        let rec = LedgerRecord {
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            parent: parent.name.clone(),
            components: names,
            key: t.key(),
            verdict: verdict_word(&v).to_string(),
            payload: v.payload(),
            seed: rc.seed,
            budget: rc.random_budget,
            version: env!("CARGO_PKG_VERSION").to_string(),
        };
        ledger_append(path, &rec).map_err(|e| Error::Precondition(e.to_string()))?;
    }
    Ok(rep)
}

// ------------------------------------------------------- regularity numbers

/// `R` over a class of large subgroups, with tuples named.
#[derive(Clone, Debug)]
pub struct NamedRegularity {
    pub members: Vec<String>,
    pub r: usize,
    pub exact: bool,
    pub nonregular: Vec<Vec<String>>,
    pub decided: usize,
}

pub const K_MAX: usize = 10;

pub fn regularity_of(
    parent: &Parent,
    class: Class,
    cfg: &Config,
) -> Result<Option<NamedRegularity>, Error> {
    let members = parent.large_members(class)?;
    if members.is_empty() {
        return Ok(None);
    }
    let groups: Vec<_> = members.iter().map(|m| m.group.clone()).collect();
    let res = regularity_number(&parent.group, &groups, K_MAX, cfg);
    let names: Vec<String> = members.iter().map(|m| m.name.clone()).collect();
    Ok(Some(NamedRegularity {
        nonregular: res
            .nonregular
            .iter()
            .map(|t| t.iter().map(|&i| names[i].clone()).collect())
            .collect(),
        members: names,
        r: res.r,
        exact: res.exact,
        decided: res.decided.len(),
    }))
}

/// Overall `B`, then each member's base size.
pub type BaseNumbers = (Option<usize>, Vec<(String, Option<usize>)>);

/// `B` over all large subgroups: `None` if some base size stayed undecided.
pub fn base_number_of(parent: &Parent, cfg: &Config) -> Result<BaseNumbers, Error> {
    let members = parent.large_members(Class::All)?;
    let mut sizes = Vec::new();
    for m in &members {
        sizes.push((
            m.name.clone(),
            base_size(&parent.group, &m.group, cfg).exact(),
        ));
    }
    let b = sizes
        .iter()
        .map(|(_, b)| *b)
        .collect::<Option<Vec<usize>>>()
        .map(|v| v.into_iter().max().unwrap_or(1));
    Ok((b, sizes))
}

pub fn regularity(group: &str, class: Class, rc: &RunConfig) -> Result<Report, Error> {
    let parent = resolve_parent(group)?;
    let cfg = rc.engine();
    let mut rep = Report::new();
    let Some(res) = regularity_of(&parent, class, &cfg)? else {
        rep.push(format!("{}: no large subgroups in this class", parent.name));
        return Ok(rep);
    };
    let (b, sizes) = if class == Class::All {
        base_number_of(&parent, &cfg)?
    } else {
        (None, Vec::new())
    };
    match rc.format {
        Format::Machine => {
            rep.push(format!("group={}", parent.name));
            rep.push(format!("members={}", machine_tuple(&res.members)));
            for (name, s) in &sizes {
                rep.push(format!(
                    "base_size {name}={}",
                    s.map_or("?".into(), |x| x.to_string())
                ));
            }
            if class == Class::All {
                rep.push(format!("B={}", b.map_or("?".into(), |x| x.to_string())));
            }
            rep.push(format!("R={}", res.r));
            rep.push(format!("exact={}", res.exact));
            rep.push(format!("nonregular={}", machine_tuples(&res.nonregular)));
        }
        Format::Text => {
            rep.push(format!(
                "{}: large subgroups {}",
                parent.name,
                res.members.join(", ")
            ));
            for (name, s) in &sizes {
                rep.push(format!(
                    "  b({}, {name}) = {}",
                    parent.name,
                    s.map_or("?".into(), |x| x.to_string())
                ));
            }
            if class == Class::All {
                rep.push(format!(
                    "B = {}",
                    b.map_or("undecided".into(), |x| x.to_string())
                ));
            }
            let bound = if res.exact { "" } else { " (lower bound only)" };
            rep.push(format!(
                "R = {}{bound}; non-regular {}-tuples:",
                res.r,
                res.r - 1
            ));
            for t in &res.nonregular {
                rep.push(format!("  {}", fmt_tuple(t)));
            }
        }
    }
    if !res.exact || (class == Class::All && b.is_none()) {
        rep.status = Status::Unknown;
    }
    Ok(rep)
}

// ----------------------------------------------------------------- tables

pub const PRIM_MAX_N: usize = 24;
pub const MAXSOL_MAX_N: usize = 16;
/// Rows run by `table prim|maxsol` without `--max-n` or `--groups`.
pub const DEFAULT_MAX_N: usize = 9;

/// Groups with socle `Aₙ`, `5 ≤ n ≤ max_n`, in table order.
pub fn socle_an_groups(max_n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 5..=max_n {
        out.push(format!("A{n}"));
        out.push(format!("S{n}"));
        if n == 6 {
            out.extend(A6_EXTENSION_NAMES.iter().map(|s| s.to_string()));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct RowResult {
    pub group: String,
    pub expected: Option<ExpectedRow>,
    pub computed: Option<NamedRegularity>,
    pub b: Option<Option<usize>>,
    pub status: Status,
    pub note: String,
}

fn expected_tuples_named(parent: &Parent, row: &ExpectedRow) -> Vec<Vec<String>> {
    // references become catalog names; ambiguous class names are kept and
    // match any class
    row.tuples
        .iter()
        .map(|t| {
            t.iter()
                .map(|r| {
                    parent
                        .resolve_record(r)
                        .map(|x| x.name)
                        .unwrap_or_else(|_| r.clone())
                })
                .collect()
        })
        .collect()
}

fn compute_row(
    table: TableId,
    group: &str,
    expected: Option<ExpectedRow>,
    cfg: &Config,
) -> RowResult {
    let mut out = RowResult {
        group: group.to_string(),
        expected: expected.clone(),
        computed: None,
        b: None,
        status: Status::Ok,
        note: String::new(),
    };
    let parent = match resolve_parent(group) {
        Ok(p) => p,
        Err(e) => {
            out.status = Status::Usage;
            out.note = e.to_string();
            return out;
        }
    };
    let class = match table {
        TableId::Prim => Class::Primitive,
        TableId::MaxSol => Class::SolubleMaximal,
        TableId::Sporadic => Class::All,
    };
    let computed = match regularity_of(&parent, class, cfg) {
        Ok(c) => c,
        Err(e) => {
            out.status = Status::Usage;
            out.note = e.to_string();
            return out;
        }
    };
    if table == TableId::Sporadic {
        match base_number_of(&parent, cfg) {
            Ok((b, _)) => out.b = Some(b),
            Err(e) => {
                out.status = Status::Usage;
                out.note = e.to_string();
                return out;
            }
        }
    }
    let Some(c) = computed else {
        out.status = if expected.is_some() {
            Status::Mismatch
        } else {
            Status::Ok
        };
        out.note = "no subgroups in this class".into();
        return out;
    };
    let (exp_r, exp_tuples) = match &expected {
        Some(row) => (row.r, expected_tuples_named(&parent, row)),
        None => (2, Vec::new()),
    };
    let b_ok = match (&expected, out.b) {
        (Some(row), Some(Some(b))) => row.b.is_none_or(|x| x == b),
        (_, Some(None)) => {
            out.status = Status::Unknown;
            out.note = "a base size is undecided".into();
            true
        }
        _ => true,
    };
    if !c.exact {
        out.status = Status::Unknown;
        out.note = "regularity number only bounded below".into();
    } else if c.r != exp_r || !b_ok {
        out.status = Status::Mismatch;
    } else if !tuples_agree(&exp_tuples, &c.nonregular, table == TableId::Sporadic) {
        out.status = Status::Mismatch;
        out.note = "non-regular tuples differ".into();
    }
    out.computed = Some(c);
    out
}

fn run_rows(table: TableId, groups: &[String], cfg: &Config, workers: usize) -> Vec<RowResult> {
    let rows = expected_rows(table);
    let results: Mutex<Vec<Option<RowResult>>> = Mutex::new(vec![None; groups.len()]);
    std::thread::scope(|s| {
        for w in 0..workers.min(groups.len()).max(1) {
            let (rows, results) = (&rows, &results);
            s.spawn(move || {
                for i in (w..groups.len()).step_by(workers.max(1)) {
                    let exp = rows.iter().find(|r| r.group == groups[i]).cloned();
                    let r = compute_row(table, &groups[i], exp, cfg);
                    results.lock().unwrap()[i] = Some(r);
                }
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.unwrap())
        .collect()
}

pub fn table(
    table: TableId,
    max_n: Option<usize>,
    groups: Option<Vec<String>>,
    rc: &RunConfig,
) -> Result<Report, Error> {
    let cfg = rc.engine();
    let mut rep = Report::new();
    let (list, unsupported): (Vec<String>, Vec<String>) = match table {
        TableId::Sporadic => {
            let want =
                groups.unwrap_or_else(|| SPORADIC_NAMES.iter().map(|s| s.to_string()).collect());
            want.into_iter()
                .partition(|g| SPORADIC_NAMES.contains(&g.as_str()))
        }
        TableId::Prim | TableId::MaxSol => {
            let limit = if table == TableId::Prim {
                PRIM_MAX_N
            } else {
                MAXSOL_MAX_N
            };
            // explicit groups may reach the whole supported range
            let max_n = max_n.unwrap_or(if groups.is_some() {
                limit
            } else {
                DEFAULT_MAX_N
            });
            let mut all = socle_an_groups(max_n.min(limit));
            if let Some(g) = &groups {
                all.retain(|x| g.contains(x));
            }
            let mut unsupported: Vec<String> = Vec::new();
            if max_n > limit {
                unsupported.push(format!("degrees {}..={max_n}", limit + 1));
            }
            if let Some(g) = &groups {
                unsupported.extend(g.iter().filter(|x| !all.contains(x)).cloned());
            }
            // stored rows outside the requested range are reported as skipped
            (all, unsupported)
        }
    };
    for u in &unsupported {
        rep.push(match rc.format {
            Format::Machine => format!("table={} group={u} status=unsupported", table.name()),
            Format::Text => format!("{u}: unsupported (outside the supported range)"),
        });
        rep.status = rep.status.worst(Status::Usage);
    }
    for r in run_rows(table, &list, &cfg, rc.workers) {
        rep.status = rep.status.worst(r.status);
        let status_word = match r.status {
            Status::Ok => "match",
            Status::Mismatch => "mismatch",
            Status::Unknown => "unknown",
            Status::Usage => "error",
        };
        let exp_r = r.expected.as_ref().map_or(2, |e| e.r);
        let comp_r = r
            .computed
            .as_ref()
            .map_or("-".to_string(), |c| c.r.to_string());
        let tuples = r
            .computed
            .as_ref()
            .map(|c| c.nonregular.clone())
            .unwrap_or_default();
        let line_ref = r
            .expected
            .as_ref()
            .map(|e| format!("{}.txt:{}", table.name(), e.line));
        match rc.format {
            Format::Machine => {
                let mut l = format!(
                    "table={} group={} expected_R={exp_r} computed_R={comp_r}",
                    table.name(),
                    r.group
                );
                if let Some(b) = r.b {
                    let eb = r
                        .expected
                        .as_ref()
                        .and_then(|e| e.b)
                        .map_or("-".into(), |x| x.to_string());
                    l += &format!(
                        " expected_B={eb} computed_B={}",
                        b.map_or("?".into(), |x| x.to_string())
                    );
                }
                l += &format!(
                    " nonregular={} status={status_word}",
                    machine_tuples(&tuples)
                );
                rep.push(l);
            }
            Format::Text => {
                let mut l = format!("{:<8} R = {comp_r} (expected {exp_r})", r.group);
                if let Some(b) = r.b {
                    let eb = r
                        .expected
                        .as_ref()
                        .and_then(|e| e.b)
                        .map_or("-".into(), |x| x.to_string());
                    l += &format!(
                        ", B = {} (expected {eb})",
                        b.map_or("?".into(), |x| x.to_string())
                    );
                }
                l += &format!("  {status_word}");
                if !r.note.is_empty() {
                    l += &format!(" — {}", r.note);
                }
                if r.status == Status::Mismatch {
                    if let Some(lr) = &line_ref {
                        l += &format!(" [expected row {lr}]");
                    }
                }
                rep.push(l);
                for t in &tuples {
                    rep.push(format!("         non-regular {}", fmt_tuple(t)));
                }
            }
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------- certify

pub fn certify(from: u64, to: u64, rc: &RunConfig) -> Result<Report, Error> {
    if from > to {
        return Err(Error::Precondition(format!("empty range {from}..={to}")));
    }
    if from < 60 {
        return Err(Error::Precondition(format!(
            "certificate needs n ≥ 60, got {from}"
        )));
    }
    let mut rep = Report::new();
    for n in from..=to {
        let c = primitive_pair_certificate(n)?;
        if !c.certified {
            rep.status = Status::Mismatch;
        }
        let f = |r: &BigRational| format!("{:.3e}", ratio_to_f64(r));
        rep.push(match rc.format {
            Format::Machine => format!(
                "n={n} ell={} ell_prime={} large={} alpha={} beta={} certified={}",
                c.inputs.ell, c.inputs.ell_prime, c.large_mindeg_expr, c.alpha, c.beta, c.certified
            ),
            Format::Text => format!(
                "n={n}  ℓ={}  ℓ′={}  large≈{}  α≈{}  β≈{}  {}",
                c.inputs.ell,
                c.inputs.ell_prime,
                f(&c.large_mindeg_expr),
                f(&c.alpha),
                f(&c.beta),
                if c.certified {
                    "certified"
                } else {
                    "NOT certified"
                }
            ),
        });
    }
    Ok(rep)
}

// ---------------------------------------------------------------- witness

fn component_of(r: &Resolved) -> Result<Component, Error> {
    match r.record.shape() {
        Some(Shape::Intransitive) => {
            let k = r.group.orbits().iter().map(|o| o.len()).min().unwrap_or(0);
            Ok(Component::Intransitive(k))
        }
        Some(Shape::Imprimitive) => {
            let name = r.name.trim_start_matches('(');
            let a = name
                .strip_prefix('S')
                .and_then(|s| s.split_once("wr"))
                .and_then(|(a, _)| a.parse().ok())
                .ok_or_else(|| {
                    Error::Precondition(format!("{}: not a wreath-product entry", r.name))
                })?;
            Ok(Component::Imprimitive(a))
        }
        _ => Ok(Component::Primitive(r.group.clone())),
    }
}

pub fn witness(group: &str, comps: &[String], rc: &RunConfig) -> Result<Report, Error> {
    let parent = resolve_parent(group)?;
    let ParentKind::SymAlt(n, grade) = parent.kind else {
        return Err(Error::Precondition(
            "witness constructions are for S_n and A_n".into(),
        ));
    };
    let resolved: Vec<Resolved> = comps
        .iter()
        .map(|c| parent.resolve(c))
        .collect::<Result<_, _>>()?;
    let components: Vec<Component> = resolved
        .iter()
        .map(component_of)
        .collect::<Result<_, _>>()?;
    let cfg = rc.engine();
    let all_intrans = components
        .iter()
        .all(|c| matches!(c, Component::Intransitive(_)));
    let all_imprim = components
        .iter()
        .all(|c| matches!(c, Component::Imprimitive(_)));
    let sizes: Vec<usize> = components
        .iter()
        .map(|c| match c {
            Component::Intransitive(k) | Component::Imprimitive(k) => *k,
            Component::Primitive(_) => 0,
        })
        .collect();
    let w = if n >= 13 {
        mixed_witness(n, grade, &components, &cfg)?
    } else if all_intrans {
        intransitive_witness(n, grade, &sizes, &cfg)?
    } else if all_imprim {
        imprimitive_witness(n, grade, &sizes, &cfg)?
    } else {
        return Err(Error::Precondition(
            "mixed tuples need n ≥ 13; use check-tuple for smaller degrees".into(),
        ));
    };
    let mut rep = Report::new();
    let ok = w.verify()?;
    rep.lines.extend(w.lines());
    rep.push(format!("VERIFIED {ok}"));
    if !ok {
        rep.status = Status::Mismatch;
    }
    let _ = grade == Grade::Symmetric;
    Ok(rep)
}

// ------------------------------------------------------------------- qhat

pub fn qhat_cmd(group: &str, comps: &[String]) -> Result<Report, Error> {
    let parent = resolve_parent(group)?;
    let resolved: Vec<Resolved> = comps
        .iter()
        .map(|c| parent.resolve(c))
        .collect::<Result<_, _>>()?;
    let groups: Vec<_> = resolved.iter().map(|r| r.group.clone()).collect();
    let tag = resolved
        .iter()
        .map(|r| r.name.as_str())
        .collect::<Vec<_>>()
        .join(",");
    let q = qhat::<BigRational>(&parent.group, &groups, &tag)?;
    let mut rep = Report::new();
    rep.push(format!("group={} components={tag}", parent.name));
    rep.lines.extend(q.lines());
    Ok(rep)
}

// ---------------------------------------------------------------- catalog

pub fn catalog_list(group: &str, rc: &RunConfig) -> Result<Report, Error> {
    let parent = resolve_parent(group)?;
    let mut rep = Report::new();
    for (i, r) in parent.records.iter().enumerate() {
        let tags: Vec<String> = r.tags.iter().map(|t| t.to_string()).collect();
        let large = parent.large.contains(&i);
        rep.push(match rc.format {
            Format::Machine => {
                format!(
                    "name={} order={} large={large} tags={}",
                    r.name,
                    r.expected_order,
                    tags.join(",")
                )
            }
            Format::Text => format!(
                "{:<24} order {:<12} {}{}",
                r.name,
                r.expected_order,
                tags.join(" "),
                if large { "" } else { "  (not large)" }
            ),
        });
    }
    Ok(rep)
}

/// Every group name `catalog verify all` covers.
pub fn all_catalog_groups() -> Vec<String> {
    let mut v: Vec<String> = SPORADIC_NAMES.iter().map(|s| s.to_string()).collect();
    v.extend(
        socle_an_groups(24)
            .into_iter()
            .filter(|g| !A6_EXTENSION_NAMES.contains(&g.as_str())),
    );
    v.extend(A6_EXTENSION_NAMES.iter().map(|s| s.to_string()));
    v.extend(["L3(2)", "L4(2)", "L5(2)", "SL3(3)"].map(String::from));
    v
}

pub fn catalog_verify(groups: &[String], rc: &RunConfig) -> Result<Report, Error> {
    let mut rep = Report::new();
    for g in groups {
        let res = resolve_parent(g).and_then(|p| {
            for r in &p.records {
                p.resolve(&r.name)?;
            }
            Ok(p.records.len())
        });
        match res {
            Ok(k) => rep.push(match rc.format {
                Format::Machine => format!("group={g} records={k} status=ok"),
                Format::Text => format!("{g}: {k} subgroups verified"),
            }),
            Err(e) => {
                rep.status = Status::Usage;
                rep.push(format!("{g}: FAILED {e}"));
            }
        }
    }
    Ok(rep)
}

// ----------------------------------------------------------------- ledger

pub fn replay(rc: &RunConfig) -> Result<Report, Error> {
    let path = rc
        .ledger
        .as_ref()
        .ok_or_else(|| Error::Precondition("replay needs --ledger".into()))?;
    let mut parents: HashMap<String, Parent> = HashMap::new();
    let res = ledger_replay(path, |rec| {
        if !parents.contains_key(&rec.parent) {
            parents.insert(rec.parent.clone(), resolve_parent(&rec.parent)?);
        }
        let p = &parents[&rec.parent];
        let comps: Vec<Resolved> = rec
            .components
            .iter()
            .map(|c| p.resolve(c))
            .collect::<Result<_, _>>()?;
        Ok(SubgroupTuple::trusted(
            p.group.clone(),
            comps.iter().map(|c| c.group.clone()).collect(),
            comps.iter().map(|c| c.name.clone()).collect(),
        ))
    })
    .map_err(|e| Error::Precondition(e.to_string()))?;
    let mut rep = Report::new();
    rep.push(format!(
        "regular={} verified={} failed={} corrupt_lines={}",
        res.regular,
        res.verified,
        res.failures.len(),
        res.corrupt
    ));
    for (i, why) in &res.failures {
        rep.push(format!("record {i}: {why}"));
    }
    if !res.failures.is_empty() {
        rep.status = Status::Mismatch;
    }
    Ok(rep)
}
