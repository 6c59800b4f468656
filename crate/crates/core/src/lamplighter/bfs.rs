use std::collections::{HashMap, VecDeque};

use super::LampElement;
use crate::base_group::BaseGroup;
use crate::error::{Error, Result};

/// Largest radius the breadth-first oracle accepts.
pub const BFS_MAX_RADIUS: u32 = 12;

/// Breadth-first distances from `id` to every element of `B_G(id, radius)`
/// in the Cayley graph of `Z_r ≀ Γ` with generators [`LampElement::generators`].
/// With unit lamp cost this is `d_G` computed without any tour solver.
pub fn bfs_ball(group: &BaseGroup, modulus: u8, radius: u32) -> Result<HashMap<LampElement, u32>> {
    if radius > BFS_MAX_RADIUS {
        return Err(Error::InvalidArgument(format!("BFS radius {radius} exceeds {BFS_MAX_RADIUS}")));
    }
    let gens = LampElement::generators(group, modulus);
    let id = LampElement::identity(group, modulus);
    let mut dist = HashMap::from([(id.clone(), 0u32)]);
    let mut frontier = VecDeque::from([id]);
    while let Some(x) = frontier.pop_front() {
        let d = dist[&x];
        if d == radius {
            continue;
        }
        for s in &gens {
            let y = x.multiply(s)?;
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                frontier.push_back(y);
            }
        }
    }
    Ok(dist)
}

/// Breadth-first distance from `id` to `target`, valid as a metric oracle when `c = 1`.
pub fn bfs_distance_oracle(group: &BaseGroup, target: &LampElement, max_radius: u32) -> Result<u32> {
    if max_radius > BFS_MAX_RADIUS {
        return Err(Error::InvalidArgument(format!("BFS radius {max_radius} exceeds {BFS_MAX_RADIUS}")));
    }
    group.check_contains(&target.pos)?;
    let modulus = target.modulus();
    let id = LampElement::identity(group, modulus);
    if &id == target {
        return Ok(0);
    }
    let gens = LampElement::generators(group, modulus);
    let mut seen = std::collections::HashSet::from([id.clone()]);
    let mut shell = vec![id];
    for d in 1..=max_radius {
        let mut next = Vec::new();
        for x in &shell {
            for s in &gens {
                let y = x.multiply(s)?;
                if &y == target {
                    return Ok(d);
                }
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        shell = next;
    }
    Err(Error::BfsRadiusExhausted { radius: max_radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_group::BaseElement;
    use crate::lamplighter::Configuration;

    fn f(s: &str) -> BaseElement {
        BaseElement::Free(s.parse().unwrap())
    }

    #[test]
    fn oracle_examples() {
        let f2 = BaseGroup::free(2).unwrap();
        let id = LampElement::identity(&f2, 2);
        assert_eq!(bfs_distance_oracle(&f2, &id, 4).unwrap(), 0);
        assert_eq!(bfs_distance_oracle(&f2, &LampElement::travel(f("a"), 2), 4).unwrap(), 1);
        let two = LampElement::new(Configuration::from_sites(2, [(f("e"), 1), (f("a"), 1)]).unwrap(), f("e")).unwrap();
        // toggle, step to a, toggle, step back
        assert_eq!(bfs_distance_oracle(&f2, &two, 6).unwrap(), 4);
    }

    #[test]
    fn radius_exhausted() {
        let f2 = BaseGroup::free(2).unwrap();
        let far = LampElement::travel(f("abab"), 2);
        assert_eq!(bfs_distance_oracle(&f2, &far, 3), Err(Error::BfsRadiusExhausted { radius: 3 }));
        assert!(bfs_distance_oracle(&f2, &far, 13).is_err());
    }

    #[test]
    fn small_ball_sizes() {
        let f2 = BaseGroup::free(2).unwrap();
        let ball = bfs_ball(&f2, 2, 1).unwrap();
        assert_eq!(ball.len(), 6);
    }
}
