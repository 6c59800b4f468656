//! Seeded random instances for the fuzz and invariant suites.

use lampwalk::base_group::Letter;
use lampwalk::{BaseElement, BaseGroup, BoundaryPoint, Configuration, End, FreeWord, LampElement};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn letter(rng: &mut impl Rng, rank: u8) -> Letter {
    let l = rng.random_range(1..=rank as Letter);
    if rng.random_bool(0.5) {
        l
    } else {
        -l
    }
}

/// A reduced word of length at most `max_len`.
pub fn word(rng: &mut impl Rng, rank: u8, max_len: usize) -> FreeWord {
    let len = rng.random_range(0..=max_len);
    let letters: Vec<Letter> = (0..len).map(|_| letter(rng, rank)).collect();
    FreeWord::from_letters(letters).expect("letters are nonzero")
}

pub fn element(rng: &mut impl Rng, group: &BaseGroup, radius: usize) -> BaseElement {
    match *group {
        BaseGroup::Free { rank } => BaseElement::Free(word(rng, rank, radius)),
        BaseGroup::Lattice { dim } => {
            let r = radius as i64;
            BaseElement::lattice((0..dim).map(|_| rng.random_range(-r..=r)).collect::<Vec<_>>())
        }
    }
}

/// Up to `max_sites` lamps at random states within distance `radius` of `e`.
pub fn configuration(rng: &mut impl Rng, group: &BaseGroup, modulus: u8, max_sites: usize, radius: usize) -> Configuration {
    let k = rng.random_range(0..=max_sites);
    let sites: Vec<(BaseElement, i64)> =
        (0..k).map(|_| (element(rng, group, radius), rng.random_range(1..i64::from(modulus)))).collect();
    Configuration::from_sites(modulus, sites).expect("sites lie in the group")
}

pub fn lamp_element(rng: &mut impl Rng, group: &BaseGroup, modulus: u8, max_sites: usize, radius: usize) -> LampElement {
    let config = configuration(rng, group, modulus, max_sites, radius);
    LampElement::new(config, element(rng, group, radius)).expect("same group")
}

/// An exact eventually periodic end with short prefix and period.
pub fn end(rng: &mut impl Rng, rank: u8) -> End {
    loop {
        let prefix = word(rng, rank, 3);
        let mut period = word(rng, rank, 3);
        if period.is_empty() {
            period = FreeWord::generator(letter(rng, rank));
        }
        if let Ok(e) = End::periodic(&prefix, &period) {
            return e;
        }
    }
}

/// Two distinct exact ends.
pub fn end_pair(rng: &mut impl Rng, rank: u8) -> (BoundaryPoint, BoundaryPoint) {
    loop {
        let (u, v) = (end(rng, rank), end(rng, rank));
        if u.common_prefix_with(&v).ok().flatten().is_some() {
            return (BoundaryPoint::End(u), BoundaryPoint::End(v));
        }
    }
}
