//! Named step measures.

use num_traits::{Signed, Zero};

use super::measure::StepMeasure;
use crate::base_group::{BaseElement, BaseGroup, LatticeVector};
use crate::error::{Error, Result};
use crate::lamplighter::{Configuration, LampElement};
use crate::Rational;

/// Uniform on the base generators `(0, s)`; the lamps never change.
pub fn srw(group: BaseGroup, modulus: u8) -> Result<StepMeasure> {
    let gens = group.generators();
    let p = Rational::new(1, gens.len() as i64);
    let atoms = gens.into_iter().map(|s| (LampElement::travel(s, modulus), p)).collect();
    StepMeasure::new_degenerate(group, modulus, atoms)
}

/// Uniform on `(0, s)` for `s ∈ S_Γ` together with the toggle `(δ_e, e)`.
pub fn srw_lamp(group: BaseGroup, modulus: u8) -> Result<StepMeasure> {
    let gens = group.generators();
    let p = Rational::new(1, gens.len() as i64 + 1);
    let mut atoms: Vec<_> = gens.into_iter().map(|s| (LampElement::travel(s, modulus), p)).collect();
    atoms.push((toggle(&group, modulus)?, p));
    StepMeasure::new(group, modulus, atoms)
}

/// The deterministic walk `μ = δ_(0, s)` along the first generator.
pub fn ray(group: BaseGroup, modulus: u8) -> Result<StepMeasure> {
    let s = group.generators().swap_remove(0);
    StepMeasure::new_degenerate(group, modulus, vec![(LampElement::travel(s, modulus), Rational::from_integer(1))])
}

/// The deterministic walk `μ = δ_(δ_e, s)`: light the current site, then step.
pub fn ray_lamp(group: BaseGroup, modulus: u8) -> Result<StepMeasure> {
    let s = group.generators().swap_remove(0);
    let atom = LampElement::new(Configuration::delta(group.identity(), modulus), s)?;
    StepMeasure::new_degenerate(group, modulus, vec![(atom, Rational::from_integer(1))])
}

/// Nearest-neighbour walk on `Z^d` with drift `m`: `ν(±e_i) = 1/(2d) ± m_i/2`.
/// With `lamp` the toggle `(δ_e, e)` is added with weight `1/(2d+1)` and the
/// moves are scaled by `2d/(2d+1)`, so the drift becomes `2d/(2d+1)·m`.
pub fn drift(group: BaseGroup, modulus: u8, m: &[Rational], lamp: bool) -> Result<StepMeasure> {
    let BaseGroup::Lattice { dim } = group else {
        return Err(Error::InvalidMeasure("drift presets need a lattice base group".into()));
    };
    if m.len() != dim {
        return Err(Error::InvalidMeasure(format!("drift has {} components, expected {dim}", m.len())));
    }
    let base = Rational::new(1, 2 * dim as i64);
    let half = Rational::new(1, 2);
    let mut atoms = Vec::new();
    for (i, mi) in m.iter().enumerate() {
        if (half * mi).abs() > base {
            return Err(Error::InvalidMeasure(format!("drift component {mi} exceeds 1/{dim}")));
        }
        for sign in [1, -1] {
            let p = base + half * mi * Rational::from_integer(sign);
            if !p.is_zero() {
                atoms.push((BaseElement::Lattice(LatticeVector::unit(dim, i, sign)), p));
            }
        }
    }
    let mut atoms: Vec<_> = atoms.into_iter().map(|(x, p)| (LampElement::travel(x, modulus), p)).collect();
    if lamp {
        let scale = Rational::new(2 * dim as i64, 2 * dim as i64 + 1);
        for (_, p) in &mut atoms {
            *p *= scale;
        }
        atoms.push((toggle(&group, modulus)?, Rational::new(1, 2 * dim as i64 + 1)));
    }
    StepMeasure::new_degenerate(group, modulus, atoms)
}

fn toggle(group: &BaseGroup, modulus: u8) -> Result<LampElement> {
    LampElement::new(Configuration::delta(group.identity(), modulus), group.identity())
}
