use std::collections::BTreeSet;

use crate::base_group::{cp_ratio, BaseElement};
use crate::error::Result;
use crate::walk::Trajectory;

/// Checks `supp(η_n) ⊆ ⋃_i supp(T_{X_{i−1}} f_i)` by replaying the increments.
pub fn support_contained(traj: &Trajectory) -> Result<bool> {
    let mut touched: BTreeSet<BaseElement> = BTreeSet::new();
    let mut pos = traj.group().identity();
    for atom in traj.increments() {
        for site in atom.config.translate(&pos)?.support() {
            touched.insert(site.clone());
        }
        pos = pos.multiply(&atom.pos)?;
    }
    Ok(traj.final_config().support().all(|s| touched.contains(s)))
}

/// Mean of `cp_ratio(X_t, y_t) = d(X_t, y_t)/|X_t|` over the final quarter of
/// the walk, where `y_t` ranges over the sites touched at step `t`. `None`
/// when no lamp was touched there.
pub fn cp_witness(traj: &Trajectory) -> Result<Option<f64>> {
    let n = traj.steps();
    let from = n - n / 4;
    let mut prev = traj.group().identity();
    let mut sum = 0.0;
    let mut count = 0u64;
    for (t, atom) in (1..).zip(traj.increments()) {
        let next = prev.multiply(&atom.pos)?;
        if t > from && !next.is_identity() {
            for s in atom.config.support() {
                let y = prev.multiply(s)?;
                let r = cp_ratio(&next, &y)?;
                sum += *r.numer() as f64 / *r.denom() as f64;
                count += 1;
            }
        }
        prev = next;
    }
    Ok((count > 0).then(|| sum / count as f64))
}
