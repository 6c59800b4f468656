use crate::base_group::{BaseElement, BaseGroup, BoundaryPoint, End, FreeWord, DEFAULT_BALL_CAP};
use crate::error::{Error, Result};

/// The base strip `𝔰(𝔲, 𝔳)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseStrip {
    /// The bi-infinite geodesic joining two distinct ends of a free group:
    /// the prefixes of `u` and of `v` that are at least as long as their
    /// confluence word.
    TreeGeodesic { u: End, v: End, confluence: FreeWord },
    /// All of `Z^d`.
    FullLattice { dim: usize },
}

pub fn base_strip(u: &BoundaryPoint, v: &BoundaryPoint) -> Result<BaseStrip> {
    match (u, v) {
        (BoundaryPoint::End(u), BoundaryPoint::End(v)) => {
            let lcp = u.common_prefix_with(v)?.ok_or(Error::IdenticalEnds)?;
            let confluence = u.initial_segment(lcp).expect("exact ends are infinite");
            Ok(BaseStrip::TreeGeodesic { u: u.clone(), v: v.clone(), confluence })
        }
        (BoundaryPoint::Direction(a), BoundaryPoint::Direction(b)) if a.dim() == b.dim() => {
            Ok(BaseStrip::FullLattice { dim: a.dim() })
        }
        _ => Err(Error::VariantMismatch(format!("no strip joins {u} and {v}"))),
    }
}

impl BaseStrip {
    pub fn contains(&self, x: &BaseElement) -> bool {
        match (self, x) {
            (BaseStrip::TreeGeodesic { u, v, confluence }, BaseElement::Free(w)) => {
                w.len() >= confluence.len() && (u.has_prefix(w.letters()) || v.has_prefix(w.letters()))
            }
            (BaseStrip::FullLattice { dim }, BaseElement::Lattice(p)) => p.dim() == *dim,
            _ => false,
        }
    }

    pub fn check_contains(&self, x: &BaseElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotOnStrip(x.to_string()))
        }
    }

    /// `γ·𝔰(𝔲, 𝔳) = 𝔰(γ𝔲, γ𝔳)`.
    pub fn act(&self, gamma: &BaseElement) -> Result<BaseStrip> {
        match (self, gamma) {
            (BaseStrip::TreeGeodesic { u, v, .. }, BaseElement::Free(g)) => {
                base_strip(&BoundaryPoint::End(u.act(g)), &BoundaryPoint::End(v.act(g)))
            }
            (BaseStrip::FullLattice { dim }, BaseElement::Lattice(p)) if p.dim() == *dim => Ok(self.clone()),
            _ => Err(Error::VariantMismatch(format!("{gamma} cannot act on this strip"))),
        }
    }

    /// `𝔰 ∩ B(e, n)`, ordered from the `v` side to the `u` side for trees.
    pub fn points_within(&self, n: u32) -> Result<Vec<BaseElement>> {
        if n > DEFAULT_BALL_CAP {
            return Err(Error::BallCapExceeded { requested: n, cap: DEFAULT_BALL_CAP });
        }
        match self {
            BaseStrip::TreeGeodesic { u, v, confluence } => {
                let c = confluence.len();
                let n = n as usize;
                if n < c {
                    return Ok(Vec::new());
                }
                let side = |end: &End, len: usize| BaseElement::Free(end.initial_segment(len).expect("exact end"));
                let mut out: Vec<BaseElement> = (c + 1..=n).rev().map(|l| side(v, l)).collect();
                out.push(BaseElement::Free(confluence.clone()));
                out.extend((c + 1..=n).map(|l| side(u, l)));
                Ok(out)
            }
            BaseStrip::FullLattice { dim } => {
                let group = BaseGroup::lattice(*dim)?;
                Ok(group.enumerate_ball(&group.identity(), n)?.elements)
            }
        }
    }
}

/// `|𝔰 ∩ B(e, n)|`, by enumeration.
pub fn strip_ball_count(strip: &BaseStrip, n: u32) -> Result<u128> {
    Ok(strip.points_within(n)?.len() as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_group::Direction;

    fn end(s: &str) -> BoundaryPoint {
        BoundaryPoint::End(s.parse().unwrap())
    }

    fn f(s: &str) -> BaseElement {
        BaseElement::Free(s.parse().unwrap())
    }

    // x separates u from v iff it lies on the path between deep points of the two rays.
    fn separates(strip: &BaseStrip, x: &BaseElement) -> bool {
        let BaseStrip::TreeGeodesic { u, v, .. } = strip else { unreachable!() };
        let depth = x.norm() as usize + 8;
        let a = f(&u.initial_segment(depth).unwrap().to_string());
        let b = f(&v.initial_segment(depth).unwrap().to_string());
        a.word_distance(x).unwrap() + x.word_distance(&b).unwrap() == a.word_distance(&b).unwrap()
    }

    #[test]
    fn axis_strip() {
        let s = base_strip(&end("a.a"), &end("A.A")).unwrap();
        let pts: Vec<String> = s.points_within(2).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(pts, ["AA", "A", "e", "a", "aa"]);
        assert!(s.contains(&f("aaaaaaa")) && !s.contains(&f("ab")));
    }

    #[test]
    fn corner_strip() {
        let s = base_strip(&end("a.a"), &end("b.b")).unwrap();
        let pts: Vec<String> = s.points_within(2).unwrap().iter().map(|x| x.to_string()).collect();
        assert_eq!(pts, ["bb", "b", "e", "a", "aa"]);
    }

    #[test]
    fn counts_through_e_and_shifted() {
        let through = base_strip(&end("a.a"), &end("b.b")).unwrap();
        let shifted = base_strip(&end("ab.a"), &end("ab.b")).unwrap();
        for n in 0..=12 {
            assert_eq!(strip_ball_count(&through, n).unwrap(), 2 * n as u128 + 1);
            let k = strip_ball_count(&shifted, n).unwrap();
            assert!(k <= 2 * n as u128 + 1);
            assert_eq!(k, if n >= 2 { 2 * (n as u128 - 2) + 1 } else { 0 });
        }
        assert_eq!(strip_ball_count(&through, 3).unwrap(), 7);
        assert!(strip_ball_count(&through, 15).is_err());
    }

    #[test]
    fn every_point_separates() {
        for (u, v) in [("a.a", "A.A"), ("ab.a", "aB.AB"), ("ba.ab", "b.b")] {
            let s = base_strip(&end(u), &end(v)).unwrap();
            for x in s.points_within(7).unwrap() {
                assert!(separates(&s, &x), "{x} on {u}/{v}");
            }
        }
    }

    #[test]
    fn lattice_and_errors() {
        let d = |v: &[f64]| BoundaryPoint::Direction(Direction::normalize(v).unwrap());
        let s = base_strip(&d(&[1.0, 0.0, 0.0]), &d(&[-1.0, 0.0, 0.0])).unwrap();
        assert_eq!(s, BaseStrip::FullLattice { dim: 3 });
        assert_eq!(strip_ball_count(&s, 2).unwrap(), 25);
        assert_eq!(base_strip(&end("a.a"), &end(".aa")), Err(Error::IdenticalEnds));
        assert!(base_strip(&end("a.a"), &d(&[1.0])).is_err());
        let estimate = BoundaryPoint::End(End::estimate("ab".parse().unwrap()));
        assert_eq!(base_strip(&end("a.a"), &estimate), Err(Error::InexactEnd));
    }
}
