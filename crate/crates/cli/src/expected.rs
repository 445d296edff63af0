//! Stored expected values and the comparison of tuple lists.

use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableId {
    Prim,
    MaxSol,
    Sporadic,
}

impl TableId {
    pub fn parse(s: &str) -> Option<TableId> {
        match s {
            "prim" => Some(TableId::Prim),
            "maxsol" => Some(TableId::MaxSol),
            "sporadic" => Some(TableId::Sporadic),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TableId::Prim => "prim",
            TableId::MaxSol => "maxsol",
            TableId::Sporadic => "sporadic",
        }
    }

    fn text(self) -> &'static str {
        match self {
            TableId::Prim => include_str!("../data/prim.txt"),
            TableId::MaxSol => include_str!("../data/maxsol.txt"),
            TableId::Sporadic => include_str!("../data/sporadic.txt"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedRow {
    pub group: String,
    pub r: usize,
    pub b: Option<usize>,
    /// Non-regular tuples of length `r − 1`: all of them for the sporadic
    /// table, one example otherwise.
    pub tuples: Vec<Vec<String>>,
    /// Line of the row in its data file.
    pub line: usize,
}

pub fn parse_table(text: &str) -> Result<Vec<ExpectedRow>, String> {
    let mut rows: Vec<ExpectedRow> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("row") => {
                let group = words
                    .next()
                    .ok_or(format!("line {}: missing group", i + 1))?
                    .to_string();
                let r = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or(format!("line {}: bad R", i + 1))?;
                let b = match words.next() {
                    Some(w) => Some(w.parse().map_err(|_| format!("line {}: bad B", i + 1))?),
                    None => None,
                };
                rows.push(ExpectedRow {
                    group,
                    r,
                    b,
                    tuples: Vec::new(),
                    line: i + 1,
                });
            }
            Some("tuple") => {
                let row = rows
                    .last_mut()
                    .ok_or(format!("line {}: tuple before row", i + 1))?;
                let t: Vec<String> = words.map(str::to_string).collect();
                if t.len() + 1 != row.r {
                    return Err(format!(
                        "line {}: tuple length {} but R = {}",
                        i + 1,
                        t.len(),
                        row.r
                    ));
                }
                row.tuples.push(t);
            }
            _ => return Err(format!("line {}: unknown directive", i + 1)),
        }
    }
    Ok(rows)
}

pub fn expected_rows(t: TableId) -> Vec<ExpectedRow> {
    parse_table(t.text()).expect("shipped expectation table parses")
}

/// `("M11", Some(2))` for `M11_2`.
pub fn split_class(name: &str) -> (&str, Option<u32>) {
    match name.rsplit_once('_') {
        Some((base, idx)) if !idx.is_empty() && idx.chars().all(|c| c.is_ascii_digit()) => {
            (base, idx.parse().ok())
        }
        _ => (name, None),
    }
}

fn component_matches(e: &str, c: &str) -> bool {
    e == c || (split_class(e).1.is_none() && split_class(c).0 == e)
}

/// Multiset match of one tuple, with unsubscripted expected names matching
/// any class of that name.
fn tuple_matches(e: &[String], c: &[String]) -> bool {
    fn go(e: &[String], rest: &mut Vec<&String>) -> bool {
        let Some((first, tail)) = e.split_first() else {
            return rest.is_empty();
        };
        for i in 0..rest.len() {
            if component_matches(first, rest[i]) {
                let x = rest.remove(i);
                if go(tail, rest) {
                    return true;
                }
                rest.insert(i, x);
            }
        }
        false
    }
    e.len() == c.len() && go(e, &mut c.iter().collect())
}

fn permutations(v: &[u32]) -> Vec<Vec<u32>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// All consistent relabellings of numbered classes in the expected tuples.
fn relabellings(expected: &[Vec<String>], computed: &[Vec<String>]) -> Vec<Vec<Vec<String>>> {
    let mut labels: BTreeMap<String, Vec<u32>> = BTreeMap::new();
    for name in expected.iter().chain(computed).flatten() {
        if let (base, Some(i)) = split_class(name) {
            let l = labels.entry(base.to_string()).or_default();
            if !l.contains(&i) {
                l.push(i);
            }
        }
    }
    let mut maps: Vec<BTreeMap<String, BTreeMap<u32, u32>>> = vec![BTreeMap::new()];
    for (base, ls) in &labels {
        let mut sorted = ls.clone();
        sorted.sort_unstable();
        let mut next = Vec::new();
        for m in &maps {
            for p in permutations(&sorted) {
                let mut m = m.clone();
                m.insert(base.clone(), sorted.iter().copied().zip(p).collect());
                next.push(m);
            }
        }
        maps = next;
    }
    maps.into_iter()
        .map(|m| {
            expected
                .iter()
                .map(|t| {
                    t.iter()
                        .map(|name| match split_class(name) {
                            (base, Some(i)) => format!("{base}_{}", m[base][&i]),
                            _ => name.clone(),
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Every expected tuple occurs among the computed ones (and, when `exact`,
/// the two lists correspond one-to-one), under some relabelling of classes.
pub fn tuples_agree(expected: &[Vec<String>], computed: &[Vec<String>], exact: bool) -> bool {
    if exact && expected.len() != computed.len() {
        return false;
    }
    relabellings(expected, computed).into_iter().any(|exp| {
        let mut used = vec![false; computed.len()];
        exp.iter().all(|e| {
            match (0..computed.len()).find(|&j| !used[j] && tuple_matches(e, &computed[j])) {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn shipped_tables_parse() {
        assert_eq!(expected_rows(TableId::Prim)[0].r, 6);
        assert_eq!(expected_rows(TableId::Sporadic).len(), 8);
        assert!(expected_rows(TableId::MaxSol)
            .iter()
            .all(|r| r.tuples.len() == 1));
        assert!(parse_table("row S5 3\ntuple A A A\n").is_err());
    }

    #[test]
    fn matching() {
        let e = vec![t(&["A_1", "A_1", "A_1", "A_2", "A_2"])];
        assert!(tuples_agree(
            &e,
            &[t(&["A_2", "A_2", "A_1", "A_2", "A_1"])],
            true
        ));
        assert!(!tuples_agree(
            &e,
            &[t(&["A_2", "A_2", "A_1", "A_1", "A_1"]), t(&["A_1"; 5])],
            true
        ));
        assert!(tuples_agree(
            &[t(&["P", "P"])],
            &[t(&["P_2", "P_2"])],
            false
        ));
        assert!(!tuples_agree(&[t(&["P", "P"])], &[t(&["Q", "P_2"])], false));
        let both = vec![t(&["M_1", "M_1", "M_2"]), t(&["M_1", "M_2", "M_2"])];
        let swapped = vec![t(&["M_2", "M_2", "M_1"]), t(&["M_2", "M_1", "M_1"])];
        assert!(tuples_agree(&both, &swapped, true));
        assert!(!tuples_agree(&both, &swapped[..1], true));
        assert!(tuples_agree(&both[..1], &swapped, false));
    }
}
