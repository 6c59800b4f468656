use std::fmt;

use num_integer::Integer;

use super::strip::base_strip;
use crate::base_group::{BaseElement, BoundaryPoint, Direction, End, FreeWord, LatticeVector, Letter};
use crate::error::{Error, Result};
use crate::lamplighter::Configuration;
use crate::Rational;

/// `β_𝔲(x, y) = lim_{z→𝔲} d(x, z) − d(y, z)` on a tree, from confluence points:
/// `|x| − 2·(x|𝔲) − |y| + 2·(y|𝔲)`.
pub fn busemann(u: &BoundaryPoint, x: &BaseElement, y: &BaseElement) -> Result<i64> {
    let u = u.as_end().ok_or_else(|| Error::VariantMismatch(format!("Busemann functions need a free-group end, got {u}")))?;
    let (x, y) = match (x, y) {
        (BaseElement::Free(x), BaseElement::Free(y)) => (x, y),
        _ => return Err(Error::VariantMismatch(format!("{x} and {y} are not free words"))),
    };
    Ok(end_busemann(u, x, y))
}

pub(crate) fn end_busemann(u: &End, x: &FreeWord, y: &FreeWord) -> i64 {
    let gromov = |w: &FreeWord| u.common_prefix_with_word(w.letters()) as i64;
    x.len() as i64 - 2 * gromov(x) - y.len() as i64 + 2 * gromov(y)
}

/// How `Γ` is split into half-spaces around a strip point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionScheme {
    /// Cut the tree edge leaving `x` toward `𝔲`.
    TreeEdgeCut,
    /// `Γ₊ = H_x(𝔲)`, `Γ₋ = H_x(𝔳) ∖ Γ₊`.
    Horosphere,
    /// The hyperplane through `x` orthogonal to the drift `m`.
    Hyperplane { drift: Vec<Rational> },
}

impl fmt::Display for PartitionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionScheme::TreeEdgeCut => f.write_str("tree-edge-cut"),
            PartitionScheme::Horosphere => f.write_str("horosphere"),
            PartitionScheme::Hyperplane { .. } => f.write_str("hyperplane"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Plus,
    Minus,
    Neither,
}

/// A classifier `Γ → {Γ₊, Γ₋, rest}` together with its defining datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfSpacePartition {
    /// `Γ₊ = {y : x⁻¹y starts with s}`: the far side of the edge `(x, xs)`.
    TreeEdgeCut { x: FreeWord, toward_u: Letter },
    Horosphere { x: FreeWord, u: End, v: End },
    /// `Γ₊ = {y : ⟨y − x, m⟩ > 0}`; ties go to `Γ₋`. `normal` is `m` scaled to coprime integers.
    Hyperplane { x: LatticeVector, normal: Vec<i64> },
}

impl HalfSpacePartition {
    pub fn classify(&self, y: &BaseElement) -> Result<Side> {
        match (self, y) {
            (HalfSpacePartition::TreeEdgeCut { x, toward_u }, BaseElement::Free(y)) => {
                let rel = x.inverse().multiply(y);
                Ok(if rel.letters().first() == Some(toward_u) { Side::Plus } else { Side::Minus })
            }
            (HalfSpacePartition::Horosphere { x, u, v }, BaseElement::Free(y)) => {
                Ok(if end_busemann(u, x, y) == 0 {
                    Side::Plus
                } else if end_busemann(v, x, y) == 0 {
                    Side::Minus
                } else {
                    Side::Neither
                })
            }
            (HalfSpacePartition::Hyperplane { x, normal }, BaseElement::Lattice(y)) if y.dim() == x.dim() => {
                let dot: i128 = y
                    .coords()
                    .iter()
                    .zip(x.coords())
                    .zip(normal)
                    .map(|((&a, &b), &m)| i128::from(a - b) * i128::from(m))
                    .sum();
                Ok(if dot > 0 { Side::Plus } else { Side::Minus })
            }
            _ => Err(Error::VariantMismatch(format!("{y} cannot be classified by this partition"))),
        }
    }
}

/// The partition `Γ±(𝔲, 𝔳, x)` for `x` on the strip.
pub fn half_space_partition(
    u: &BoundaryPoint,
    v: &BoundaryPoint,
    x: &BaseElement,
    scheme: &PartitionScheme,
) -> Result<HalfSpacePartition> {
    let strip = base_strip(u, v)?;
    strip.check_contains(x)?;
    match (scheme, u, v, x) {
        (PartitionScheme::TreeEdgeCut, BoundaryPoint::End(u), BoundaryPoint::End(_), BaseElement::Free(w)) => {
            let toward_u = if u.has_prefix(w.letters()) {
                u.letter(w.len()).expect("exact end")
            } else {
                // x is on the v branch past the confluence point: step back toward it
                -w.last().expect("v-branch points are nonempty")
            };
            Ok(HalfSpacePartition::TreeEdgeCut { x: w.clone(), toward_u })
        }
        (PartitionScheme::Horosphere, BoundaryPoint::End(u), BoundaryPoint::End(v), BaseElement::Free(w)) => {
            Ok(HalfSpacePartition::Horosphere { x: w.clone(), u: u.clone(), v: v.clone() })
        }
        (
            PartitionScheme::Hyperplane { drift },
            BoundaryPoint::Direction(du),
            BoundaryPoint::Direction(dv),
            BaseElement::Lattice(p),
        ) => {
            if drift.len() != p.dim() {
                return Err(Error::SchemeMismatch(format!("drift has {} components, lattice has {}", drift.len(), p.dim())));
            }
            let m: Vec<f64> = drift.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect();
            let unit = Direction::normalize(&m).map_err(|_| Error::SchemeMismatch("zero drift".into()))?;
            let minus: Vec<f64> = unit.components().iter().map(|c| -c).collect();
            let tol = 1e-6;
            if unit.distance(du) > tol || Direction::new(minus)?.distance(dv) > tol {
                return Err(Error::SchemeMismatch(format!("ends {u} and {v} are not ±m/|m| for the drift")));
            }
            Ok(HalfSpacePartition::Hyperplane { x: p.clone(), normal: integer_normal(drift) })
        }
        _ => Err(Error::SchemeMismatch(format!("{scheme} does not apply to {u} and {v}"))),
    }
}

fn integer_normal(drift: &[Rational]) -> Vec<i64> {
    let lcm = drift.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
    let ints: Vec<i64> = drift.iter().map(|r| r.numer() * (lcm / r.denom())).collect();
    let g = ints.iter().fold(0i64, |acc, &c| acc.gcd(&c)).max(1);
    ints.into_iter().map(|c| c / g).collect()
}

/// `Φ = φ₋` on `Γ₊`, `φ₊` on `Γ₋`, `0` elsewhere.
pub fn glue_configuration(
    phi_plus: &Configuration,
    phi_minus: &Configuration,
    partition: &HalfSpacePartition,
) -> Result<Configuration> {
    if phi_plus.modulus() != phi_minus.modulus() {
        return Err(Error::ModulusMismatch { left: phi_plus.modulus(), right: phi_minus.modulus() });
    }
    let mut out = Configuration::zero(phi_plus.modulus());
    for (site, state) in phi_minus.iter() {
        if partition.classify(site)? == Side::Plus {
            out.set(site.clone(), state)?;
        }
    }
    for (site, state) in phi_plus.iter() {
        if partition.classify(site)? == Side::Minus {
            out.set(site.clone(), state)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn end(s: &str) -> BoundaryPoint {
        BoundaryPoint::End(s.parse().unwrap())
    }

    fn f(s: &str) -> BaseElement {
        BaseElement::Free(s.parse().unwrap())
    }

    fn dir(v: &[f64]) -> BoundaryPoint {
        BoundaryPoint::Direction(Direction::normalize(v).unwrap())
    }

    fn config(sites: &[&str]) -> Configuration {
        Configuration::from_sites(2, sites.iter().map(|s| (f(s), 1))).unwrap()
    }

    #[test]
    fn busemann_examples() {
        let u = end("a.a");
        assert_eq!(busemann(&u, &f("ab"), &f("ab")).unwrap(), 0);
        assert_eq!(busemann(&u, &f("e"), &f("a")).unwrap(), 1);
        assert_eq!(busemann(&u, &f("aa"), &f("a")).unwrap(), -1);
        // d(e, a^(1+i)) − d(ab, a^(1+i)) = (1+i) − (i+1) = 0
        assert_eq!(busemann(&u, &f("e"), &f("ab")).unwrap(), 0);
        assert!(busemann(&dir(&[1.0]), &f("a"), &f("a")).is_err());
    }

    #[test]
    fn busemann_matches_truncated_limit() {
        let u: End = "ab.bA".parse().unwrap();
        for (x, y) in [("e", "aB"), ("abbA", "B"), ("ba", "abbAbA")] {
            let z = BaseElement::Free(u.initial_segment(40).unwrap());
            let lim = z.word_distance(&f(x)).unwrap() as i64 - z.word_distance(&f(y)).unwrap() as i64;
            assert_eq!(busemann(&BoundaryPoint::End(u.clone()), &f(x), &f(y)).unwrap(), lim);
        }
    }

    #[test]
    fn edge_cut_examples() {
        let p = half_space_partition(&end("a.a"), &end("A.A"), &f("e"), &PartitionScheme::TreeEdgeCut).unwrap();
        assert_eq!(p.classify(&f("aaaaab")).unwrap(), Side::Plus);
        assert_eq!(p.classify(&f("b")).unwrap(), Side::Minus);
        assert_eq!(p.classify(&f("e")).unwrap(), Side::Minus);
        let p = half_space_partition(&end("a.a"), &end("b.b"), &f("bb"), &PartitionScheme::TreeEdgeCut).unwrap();
        assert_eq!(p, HalfSpacePartition::TreeEdgeCut { x: "bb".parse().unwrap(), toward_u: -2 });
        assert_eq!(p.classify(&f("b")).unwrap(), Side::Plus);
        assert_eq!(p.classify(&f("bbb")).unwrap(), Side::Minus);
        assert!(matches!(
            half_space_partition(&end("a.a"), &end("A.A"), &f("b"), &PartitionScheme::TreeEdgeCut),
            Err(Error::NotOnStrip(_))
        ));
    }

    #[test]
    fn horosphere_examples() {
        let p = half_space_partition(&end("a.a"), &end("A.A"), &f("e"), &PartitionScheme::Horosphere).unwrap();
        assert_eq!(p.classify(&f("e")).unwrap(), Side::Plus);
        assert_eq!(p.classify(&f("ab")).unwrap(), Side::Plus);
        assert_eq!(p.classify(&f("a")).unwrap(), Side::Neither);
        assert_eq!(p.classify(&f("Ab")).unwrap(), Side::Minus);
    }

    #[test]
    fn hyperplane_examples() {
        let m = vec![Rational::from_integer(1), Rational::from_integer(0), Rational::from_integer(0)];
        let (u, v) = (dir(&[1.0, 0.0, 0.0]), dir(&[-1.0, 0.0, 0.0]));
        let x = BaseElement::lattice([2, 0, 0]);
        let p = half_space_partition(&u, &v, &x, &PartitionScheme::Hyperplane { drift: m.clone() }).unwrap();
        assert_eq!(p.classify(&BaseElement::lattice([3, 0, 0])).unwrap(), Side::Plus);
        assert_eq!(p.classify(&BaseElement::lattice([2, 5, 0])).unwrap(), Side::Minus);
        let scheme = PartitionScheme::Hyperplane { drift: m };
        assert!(matches!(half_space_partition(&v, &u, &x, &scheme), Err(Error::SchemeMismatch(_))));
        assert!(matches!(
            half_space_partition(&end("a.a"), &end("A.A"), &f("e"), &scheme),
            Err(Error::SchemeMismatch(_))
        ));
        assert_eq!(integer_normal(&[Rational::new(1, 3), Rational::new(-1, 6), Rational::from_integer(0)]), vec![2, -1, 0]);
    }

    #[test]
    fn glue_examples() {
        let p = half_space_partition(&end("a.a"), &end("A.A"), &f("a"), &PartitionScheme::TreeEdgeCut).unwrap();
        let zero = Configuration::zero(2);
        assert_eq!(glue_configuration(&zero, &zero, &p).unwrap(), zero);
        // φ₊ lives on its own side and φ₋ on its own side: nothing survives
        assert_eq!(glue_configuration(&config(&["aa", "aaab"]), &config(&["A", "b"]), &p).unwrap(), zero);
        let glued = glue_configuration(&config(&["e", "a"]), &config(&["aa"]), &p).unwrap();
        assert_eq!(glued, config(&["e", "a", "aa"]));
    }
}
