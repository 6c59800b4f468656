use std::fmt;

use super::Configuration;
use crate::base_group::{BaseElement, BaseGroup};
use crate::error::{Error, Result};

/// An element `(η, x)` of the wreath product `Z_r ≀ Γ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LampElement {
    pub config: Configuration,
    pub pos: BaseElement,
}

impl LampElement {
    pub fn new(config: Configuration, pos: BaseElement) -> Result<Self> {
        if let Some(site) = config.support().next() {
            site.check_compatible(&pos)?;
        }
        Ok(LampElement { config, pos })
    }

    /// `id = (0, e)`.
    pub fn identity(group: &BaseGroup, modulus: u8) -> Self {
        LampElement { config: Configuration::zero(modulus), pos: group.identity() }
    }

    /// `(0, x)`: pure travel.
    pub fn travel(pos: BaseElement, modulus: u8) -> Self {
        LampElement { config: Configuration::zero(modulus), pos }
    }

    pub fn modulus(&self) -> u8 {
        self.config.modulus()
    }

    pub fn is_identity(&self) -> bool {
        self.config.is_empty() && self.pos.is_identity()
    }

    /// `(η, x)(η′, x′) = (η ⊕ T_x η′, x x′)`.
    pub fn multiply(&self, other: &LampElement) -> Result<LampElement> {
        if self.modulus() != other.modulus() {
            return Err(Error::ModulusMismatch { left: self.modulus(), right: other.modulus() });
        }
        self.pos.check_compatible(&other.pos)?;
        let config = self.config.add(&other.config.translate(&self.pos)?)?;
        Ok(LampElement { config, pos: self.pos.multiply(&other.pos)? })
    }

    /// `(T_{x⁻¹}(−η), x⁻¹)`.
    pub fn inverse(&self) -> LampElement {
        let pos = self.pos.inverse();
        let config = self
            .config
            .negate()
            .translate(&pos)
            .expect("configuration sites share the position's variant");
        LampElement { config, pos }
    }

    /// The generating set `S_G`: `(k·δ_e, e)` for `k ∈ Z_r ∖ 0` and `(0, s)` for `s ∈ S_Γ`.
    pub fn generators(group: &BaseGroup, modulus: u8) -> Vec<LampElement> {
        let e = group.identity();
        let lamps = (1..modulus).map(|k| LampElement {
            config: Configuration::from_sites(modulus, [(e.clone(), i64::from(k))]).expect("valid modulus"),
            pos: e.clone(),
        });
        lamps
            .chain(group.generators().into_iter().map(|s| LampElement::travel(s, modulus)))
            .collect()
    }
}

impl fmt::Display for LampElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.config, self.pos)
    }
}

pub fn lamp_multiply(g: &LampElement, h: &LampElement) -> Result<LampElement> {
    g.multiply(h)
}

pub fn lamp_inverse(g: &LampElement) -> LampElement {
    g.inverse()
}
