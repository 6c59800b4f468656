use super::partition::{glue_configuration, half_space_partition, PartitionScheme};
use super::strip::{base_strip, BaseStrip};
use crate::base_group::{BaseElement, BaseGroup, BoundaryPoint, End, FreeWord};
use crate::boundary::{LimitEndEstimate, OmegaPointEstimate};
use crate::error::{Error, Result};
use crate::lamplighter::{lamp_distance_bounds, Configuration, LampElement, MetricParams};

/// A point `b = (φ, 𝔲)` of `Ω` with an exact boundary component.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaPoint {
    pub config: Configuration,
    pub end: BoundaryPoint,
    /// The end was completed from a finite-horizon estimate.
    pub promoted: bool,
}

impl OmegaPoint {
    pub fn new(config: Configuration, end: BoundaryPoint) -> Result<Self> {
        if let BoundaryPoint::End(u) = &end {
            if !u.is_exact() {
                return Err(Error::InexactEnd);
            }
        }
        Ok(OmegaPoint { config, end, promoted: false })
    }

    /// Completes a simulated `Z_∞` estimate: the stable prefix is extended by
    /// `period^∞` (free groups) and the settled lamps become `φ`.
    pub fn promote(est: &OmegaPointEstimate, period: &FreeWord) -> Result<Self> {
        let end = match &est.point {
            LimitEndEstimate::Free { prefix, .. } => BoundaryPoint::End(End::estimate(prefix.clone()).promote(period)?),
            LimitEndEstimate::Direction { direction, .. } => BoundaryPoint::Direction(direction.clone()),
        };
        Ok(OmegaPoint { config: est.config.settled_config(), end, promoted: true })
    }

    /// `g·b = (η ⊕ T_γ φ, γ𝔲)` for `g = (η, γ)`.
    pub fn act(&self, g: &LampElement) -> Result<OmegaPoint> {
        Ok(OmegaPoint {
            config: g.config.add(&self.config.translate(&g.pos)?)?,
            end: self.end.act(&g.pos)?,
            promoted: self.promoted,
        })
    }
}

/// `(Φ(b₊, b₋, x), x)`.
pub fn lifted_strip_element(
    b_plus: &OmegaPoint,
    b_minus: &OmegaPoint,
    x: &BaseElement,
    scheme: &PartitionScheme,
) -> Result<LampElement> {
    let partition = half_space_partition(&b_plus.end, &b_minus.end, x, scheme)?;
    let phi = glue_configuration(&b_plus.config, &b_minus.config, &partition)?;
    LampElement::new(phi, x.clone())
}

/// `|S(b₊, b₋) ∩ B_G(id, n)|` and `|𝔰(𝔲, 𝔳) ∩ B(e, n)|`.
///
/// Only strip points in `B(e, n)` can lift into `B_G(id, n)`. Distances come
/// from certified bounds and must decide membership; an undecided element
/// is an error.
pub fn lifted_strip_count(
    b_plus: &OmegaPoint,
    b_minus: &OmegaPoint,
    scheme: &PartitionScheme,
    n: u32,
    params: &MetricParams,
) -> Result<(u128, u128)> {
    let strip = base_strip(&b_plus.end, &b_minus.end)?;
    let points = strip.points_within(n)?;
    let id = LampElement::identity(&group_of(&strip), b_plus.config.modulus());
    let radius = crate::Rational::from_integer(i64::from(n));
    let mut count_g = 0;
    for x in &points {
        let z = lifted_strip_element(b_plus, b_minus, x, scheme)?;
        let d = lamp_distance_bounds(&id, &z, params)?;
        if d.upper <= radius {
            count_g += 1;
        } else if d.lower <= radius {
            return Err(Error::TspCapExceeded { sites: z.config.len(), cap: params.exact_tsp_max_lamps });
        }
    }
    Ok((count_g, points.len() as u128))
}

fn group_of(strip: &BaseStrip) -> BaseGroup {
    match strip {
        // any rank works for the identity element
        BaseStrip::TreeGeodesic { .. } => BaseGroup::Free { rank: 1 },
        BaseStrip::FullLattice { dim } => BaseGroup::Lattice { dim: *dim },
    }
}

/// Outcome of comparing both sides of the equivariance identities.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct EquivarianceReport {
    /// Elements tested in the ball.
    pub checked: usize,
    /// `y` with `y ∈ 𝔰(𝔲, 𝔳)` but `γy ∉ 𝔰(γ𝔲, γ𝔳)` or vice versa.
    pub strip_mismatches: Vec<BaseElement>,
    /// `y` whose side in `Γ±(𝔲, 𝔳, x)` differs from the side of `γy` in `Γ±(γ𝔲, γ𝔳, γx)`.
    pub partition_mismatches: Vec<BaseElement>,
    /// `(g·(Φ, x), (Φ(gb₊, gb₋, γx), γx))` when they differ.
    pub lift_mismatch: Option<(LampElement, LampElement)>,
}

impl EquivarianceReport {
    pub fn is_ok(&self) -> bool {
        self.strip_mismatches.is_empty() && self.partition_mismatches.is_empty() && self.lift_mismatch.is_none()
    }
}

/// Checks `γ𝔰 = 𝔰(γ𝔲, γ𝔳)`, `γΓ± = Γ±(γ𝔲, γ𝔳, γx)` on `B(e, radius)`, and
/// `g·(Φ(b₊, b₋, x), x) = (Φ(gb₊, gb₋, γx), γx)` for `g = (η, γ)`.
pub fn check_equivariance(
    g: &LampElement,
    b_plus: &OmegaPoint,
    b_minus: &OmegaPoint,
    x: &BaseElement,
    scheme: &PartitionScheme,
    group: &BaseGroup,
    radius: u32,
) -> Result<EquivarianceReport> {
    let gamma = &g.pos;
    let strip = base_strip(&b_plus.end, &b_minus.end)?;
    let moved_strip = strip.act(gamma)?;
    let gb_plus = b_plus.act(g)?;
    let gb_minus = b_minus.act(g)?;
    let gx = gamma.multiply(x)?;
    let partition = half_space_partition(&b_plus.end, &b_minus.end, x, scheme)?;
    let moved_partition = half_space_partition(&gb_plus.end, &gb_minus.end, &gx, scheme)?;

    let mut report = EquivarianceReport::default();
    for y in group.enumerate_ball(&group.identity(), radius)?.elements {
        let gy = gamma.multiply(&y)?;
        if strip.contains(&y) != moved_strip.contains(&gy) {
            report.strip_mismatches.push(y.clone());
        }
        if partition.classify(&y)? != moved_partition.classify(&gy)? {
            report.partition_mismatches.push(y);
        }
        report.checked += 1;
    }

    let lhs = g.multiply(&lifted_strip_element(b_plus, b_minus, x, scheme)?)?;
    let rhs = lifted_strip_element(&gb_plus, &gb_minus, &gx, scheme)?;
    if lhs != rhs {
        report.lift_mismatch = Some((lhs, rhs));
    }
    Ok(report)
}
