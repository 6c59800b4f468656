use std::collections::BTreeMap;
use std::fmt;

use crate::base_group::{BaseElement, BaseGroup};
use crate::error::{Error, Result};

/// A finitely supported lamp configuration `η : Γ → Z_r`.
///
/// Only nonzero states are stored, so the map's key set is exactly
/// `supp(η)` and equality is plain map equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    modulus: u8,
    sites: BTreeMap<BaseElement, u8>,
}

impl Configuration {
    pub fn zero(modulus: u8) -> Self {
        assert!(modulus >= 2, "lamp modulus must be at least 2");
        Configuration { modulus, sites: BTreeMap::new() }
    }

    /// `δ_x`: a single lamp in state 1.
    pub fn delta(site: BaseElement, modulus: u8) -> Self {
        let mut c = Configuration::zero(modulus);
        c.sites.insert(site, 1);
        c
    }

    /// Builds a configuration from `(site, state)` pairs; states are taken
    /// mod `r` and repeated sites accumulate.
    pub fn from_sites(modulus: u8, sites: impl IntoIterator<Item = (BaseElement, i64)>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidArgument("lamp modulus must be at least 2".into()));
        }
        let mut c = Configuration::zero(modulus);
        for (site, state) in sites {
            c.add_at(site, state.rem_euclid(i64::from(modulus)) as u8)?;
        }
        Ok(c)
    }

    /// Parses a comma-separated site list, each lit in state 1.
    pub fn parse_sites(group: &BaseGroup, modulus: u8, s: &str) -> Result<Self> {
        let sites = crate::base_group::notation::split_top_level(s)
            .into_iter()
            .map(|t| group.parse_element(t).map(|x| (x, 1)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_sites(modulus, sites)
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn get(&self, site: &BaseElement) -> u8 {
        self.sites.get(site).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &BaseElement> {
        self.sites.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BaseElement, u8)> {
        self.sites.iter().map(|(k, &v)| (k, v))
    }

    fn check_site(&self, site: &BaseElement) -> Result<()> {
        match self.sites.keys().next() {
            Some(first) => first.check_compatible(site),
            None => Ok(()),
        }
    }

    /// Adds `delta` to the state at `site`, returning the new state.
    pub fn add_at(&mut self, site: BaseElement, delta: u8) -> Result<u8> {
        self.check_site(&site)?;
        Ok(self.add_at_unchecked(site, delta))
    }

    pub(crate) fn add_at_unchecked(&mut self, site: BaseElement, delta: u8) -> u8 {
        let delta = delta % self.modulus;
        if delta == 0 {
            return self.get(&site);
        }
        use std::collections::btree_map::Entry;
        match self.sites.entry(site) {
            Entry::Vacant(v) => {
                v.insert(delta);
                delta
            }
            Entry::Occupied(mut o) => {
                let next = ((u16::from(*o.get()) + u16::from(delta)) % u16::from(self.modulus)) as u8;
                if next == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = next;
                }
                next
            }
        }
    }

    pub fn set(&mut self, site: BaseElement, state: u8) -> Result<()> {
        self.check_site(&site)?;
        let state = state % self.modulus;
        if state == 0 {
            self.sites.remove(&site);
        } else {
            self.sites.insert(site, state);
        }
        Ok(())
    }

    /// `T_x η`, i.e. `(T_x η)(y) = η(x⁻¹y)`: the support is shifted to `x·supp(η)`.
    pub fn translate(&self, x: &BaseElement) -> Result<Configuration> {
        self.check_site(x)?;
        let mut sites = BTreeMap::new();
        for (s, &v) in &self.sites {
            sites.insert(x.multiply(s)?, v);
        }
        Ok(Configuration { modulus: self.modulus, sites })
    }

    fn check_modulus(&self, other: &Configuration) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: other.modulus });
        }
        Ok(())
    }

    /// Sitewise sum mod `r`.
    pub fn add(&self, other: &Configuration) -> Result<Configuration> {
        self.check_modulus(other)?;
        let mut out = self.clone();
        for (s, &v) in &other.sites {
            out.add_at(s.clone(), v)?;
        }
        Ok(out)
    }

    /// Sitewise negation mod `r`.
    pub fn negate(&self) -> Configuration {
        let sites = self.sites.iter().map(|(k, &v)| (k.clone(), self.modulus - v)).collect();
        Configuration { modulus: self.modulus, sites }
    }

    /// `η △ η′`: the sites where the two configurations differ.
    pub fn differing_sites(&self, other: &Configuration) -> Result<Vec<BaseElement>> {
        self.check_modulus(other)?;
        let mut out: Vec<BaseElement> = self
            .sites
            .iter()
            .filter(|(k, &v)| other.get(k) != v)
            .map(|(k, _)| k.clone())
            .collect();
        out.extend(other.sites.keys().filter(|k| !self.sites.contains_key(*k)).cloned());
        out.sort();
        Ok(out)
    }

    /// The restriction of `η` to the sites satisfying `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&BaseElement) -> bool) -> Configuration {
        let sites = self.sites.iter().filter(|(k, _)| keep(k)).map(|(k, &v)| (k.clone(), v)).collect();
        Configuration { modulus: self.modulus, sites }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.sites.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}:{v}")?;
        }
        f.write_str("}")
    }
}
