#![allow(dead_code)]

use lampwalk::base_group::{BoundaryPoint, End};
use lampwalk::{BaseElement, BaseGroup, Configuration, FreeWord, LampElement, Letter};
use proptest::prelude::*;

pub fn f2() -> BaseGroup {
    BaseGroup::free(2).unwrap()
}

pub fn z3() -> BaseGroup {
    BaseGroup::lattice(3).unwrap()
}

pub fn letter(rank: i8) -> impl Strategy<Value = Letter> {
    (1..=rank, any::<bool>()).prop_map(|(l, neg)| if neg { -l } else { l })
}

pub fn word(rank: i8, max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec(letter(rank), 0..=max_len).prop_map(|ls| FreeWord::from_letters(ls).unwrap())
}

pub fn free_element(max_len: usize) -> impl Strategy<Value = BaseElement> {
    word(2, max_len).prop_map(BaseElement::Free)
}

pub fn lattice_element(dim: usize, bound: i64) -> impl Strategy<Value = BaseElement> {
    prop::collection::vec(-bound..=bound, dim).prop_map(BaseElement::lattice)
}

pub fn base_element(group: BaseGroup, size: usize) -> BoxedStrategy<BaseElement> {
    match group {
        BaseGroup::Free { .. } => free_element(size).boxed(),
        BaseGroup::Lattice { dim } => lattice_element(dim, size as i64 / 2 + 1).boxed(),
    }
}

pub fn configuration(group: BaseGroup, modulus: u8, max_sites: usize, size: usize) -> BoxedStrategy<Configuration> {
    prop::collection::vec((base_element(group, size), 1..modulus), 0..=max_sites)
        .prop_map(move |sites| {
            Configuration::from_sites(modulus, sites.into_iter().map(|(s, v)| (s, i64::from(v)))).unwrap()
        })
        .boxed()
}

pub fn lamp_element(group: BaseGroup, modulus: u8, max_sites: usize, size: usize) -> BoxedStrategy<LampElement> {
    (configuration(group, modulus, max_sites, size), base_element(group, size))
        .prop_map(|(c, x)| LampElement::new(c, x).unwrap())
        .boxed()
}

/// Exact eventually periodic ends of `F_2`.
pub fn end() -> impl Strategy<Value = End> {
    (word(2, 4), word(2, 3))
        .prop_filter_map("period must be usable", |(p, q)| End::periodic(&p, &q).ok())
}

pub fn end_pair() -> impl Strategy<Value = (End, End)> {
    (end(), end()).prop_filter("ends must differ", |(u, v)| u != v)
}

pub fn point(u: &End) -> BoundaryPoint {
    BoundaryPoint::End(u.clone())
}
