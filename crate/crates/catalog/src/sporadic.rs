//! Shipped catalogs for small sporadic groups and the three proper
//! extensions of `A6` (`PGL2(9)`, `M10`, `A6.2^2`) on 10 points.
//!
//! Each file starts with the group itself, followed by its large subgroups.
//! For a sporadic `G` the list covers the core-free maximal subgroups of `G`
//! and, for `G = T.2`, the maximal subgroups `H` of `T` with `N_G(H) = H`
//! (tagged `maximal-in:T`). For the `A6` extensions the list is every
//! core-free subgroup maximal in some overgroup of `A6`.

use regnum::{Error, PermGroup};

use crate::format::{parse_group_records, GroupRecord};

pub const SPORADIC_NAMES: [&str; 8] = ["M11", "M12", "M12.2", "M22", "M22.2", "J1", "J2", "J2.2"];
pub const A6_EXTENSION_NAMES: [&str; 3] = ["PGL2(9)", "M10", "A6.2^2"];

#[derive(Clone, Debug)]
pub struct Catalog {
    pub group: GroupRecord,
    pub maximals: Vec<GroupRecord>,
}

/// A catalog with every record built, order-gated and tag-checked.
#[derive(Clone, Debug)]
pub struct LoadedCatalog {
    pub catalog: Catalog,
    pub group: PermGroup,
    pub maximals: Vec<PermGroup>,
}

impl Catalog {
    fn from_text(text: &str) -> Result<Catalog, Error> {
        let mut recs = parse_group_records(text)?;
        if recs.is_empty() {
            return Err(Error::Precondition("empty catalog file".into()));
        }
        let group = recs.remove(0);
        Ok(Catalog {
            group,
            maximals: recs,
        })
    }

    pub fn names(&self) -> Vec<&str> {
        self.maximals.iter().map(|r| r.name.as_str()).collect()
    }

    pub fn find(&self, name: &str) -> Option<&GroupRecord> {
        self.maximals.iter().find(|r| r.name == name)
    }

    /// Builds everything; members must lie in the group and be core-free.
    pub fn load(&self) -> Result<LoadedCatalog, Error> {
        let group = self.group.load()?;
        let mut maximals = Vec::new();
        for r in &self.maximals {
            if r.degree != self.group.degree {
                return Err(Error::DegreeMismatch(self.group.degree, r.degree));
            }
            let h = r.load()?;
            if !h.generators().iter().all(|x| group.contains(x)) {
                return Err(Error::NotASubgroup(format!(
                    "{} in {}",
                    r.name, self.group.name
                )));
            }
            if !group.is_core_free(&h)? {
                return Err(Error::Verification(format!(
                    "{} is not core-free in {}",
                    r.name, self.group.name
                )));
            }
            maximals.push(h);
        }
        Ok(LoadedCatalog {
            catalog: self.clone(),
            group,
            maximals,
        })
    }
}

fn sporadic_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "M11" => include_str!("../data/sporadic/M11.grp"),
        "M12" => include_str!("../data/sporadic/M12.grp"),
        "M12.2" => include_str!("../data/sporadic/M12.2.grp"),
        "M22" => include_str!("../data/sporadic/M22.grp"),
        "M22.2" => include_str!("../data/sporadic/M22.2.grp"),
        "J1" => include_str!("../data/sporadic/J1.grp"),
        "J2" => include_str!("../data/sporadic/J2.grp"),
        "J2.2" => include_str!("../data/sporadic/J2.2.grp"),
        _ => return None,
    })
}

fn a6_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "PGL2(9)" => include_str!("../data/a6ext/PGL2-9.grp"),
        "M10" => include_str!("../data/a6ext/M10.grp"),
        "A6.2^2" => include_str!("../data/a6ext/A6.2^2.grp"),
        _ => return None,
    })
}

pub fn sporadic_catalog(name: &str) -> Result<Catalog, Error> {
    let text = sporadic_text(name).ok_or_else(|| {
        Error::Precondition(format!(
            "unsupported sporadic group '{name}' (supported: {})",
            SPORADIC_NAMES.join(", ")
        ))
    })?;
    Catalog::from_text(text)
}

pub fn a6_extension_catalog(name: &str) -> Result<Catalog, Error> {
    let text = a6_text(name).ok_or_else(|| {
        Error::Precondition(format!(
            "unsupported extension '{name}' (supported: {})",
            A6_EXTENSION_NAMES.join(", ")
        ))
    })?;
    Catalog::from_text(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn m11_members() {
        let c = sporadic_catalog("M11").unwrap();
        assert_eq!(c.group.degree, 11);
        assert_eq!(c.names(), ["M10", "L2(11)", "M9:2", "S5", "2S4"]);
        let orders: Vec<u32> = c
            .maximals
            .iter()
            .map(|r| r.expected_order.clone().try_into().unwrap())
            .collect();
        assert_eq!(orders, [720, 660, 144, 120, 48]);
        let l = c.load().unwrap();
        assert_eq!(l.group.order(), BigUint::from(7920u32));
    }

    #[test]
    fn named_members_exist() {
        let j1 = sporadic_catalog("J1").unwrap();
        assert_eq!(
            j1.find("L2(11)").unwrap().expected_order,
            BigUint::from(660u32)
        );
        assert_eq!(
            j1.find("19:6").unwrap().expected_order,
            BigUint::from(114u32)
        );
        let j2 = sporadic_catalog("J2").unwrap();
        assert_eq!(
            j2.find("U3(3)").unwrap().expected_order,
            BigUint::from(6048u32)
        );
        assert!(sporadic_catalog("M24").is_err());
    }

    #[test]
    fn a6_extensions_load() {
        for name in A6_EXTENSION_NAMES {
            let c = a6_extension_catalog(name).unwrap();
            let l = c.load().unwrap();
            assert_eq!(
                l.group.order(),
                BigUint::from(if name == "A6.2^2" { 1440u32 } else { 720 })
            );
        }
        assert_eq!(a6_extension_catalog("A6.2^2").unwrap().maximals.len(), 15);
    }
}
