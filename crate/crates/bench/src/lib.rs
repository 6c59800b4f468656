//! Deterministic inputs shared by the benchmarks.

use lampwalk::{BaseElement, BaseGroup, Configuration, LampElement};

/// `k` distinct sites spread through `B(e, radius)`, taken at a fixed stride.
pub fn spread_sites(group: &BaseGroup, radius: u32, k: usize) -> Vec<BaseElement> {
    let ball = group.enumerate_ball(&group.identity(), radius).expect("radius within the cap").elements;
    let stride = (ball.len() / k.max(1)).max(1);
    ball.into_iter().step_by(stride).take(k).collect()
}

/// An element whose lamps sit on [`spread_sites`] and whose position is the last site.
pub fn lamp_target(group: &BaseGroup, radius: u32, k: usize) -> LampElement {
    let sites = spread_sites(group, radius, k);
    let pos = sites.last().cloned().unwrap_or_else(|| group.identity());
    let config = Configuration::from_sites(2, sites.into_iter().map(|s| (s, 1))).expect("modulus 2");
    LampElement::new(config, pos).expect("same group")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sites_are_distinct_and_counted() {
        let f2 = BaseGroup::free(2).unwrap();
        let mut s = spread_sites(&f2, 4, 12);
        assert_eq!(s.len(), 12);
        s.dedup();
        assert_eq!(s.len(), 12);
        assert_eq!(lamp_target(&f2, 4, 12).config.len(), 12);
    }
}
