//! Combs and the comb (pseudo-)metric on their completion.
//!
//! A comb is a nonnegative function on a compact interval that is zero except
//! at finitely many *teeth*. Two zeros `s < t` of the comb are at distance
//! `sup f` over the open interval `(s, t)`. Completing this metric space adds,
//! at every tooth, a *left face* (limit of increasing sequences) and a
//! *right face* (limit of decreasing sequences); see [`Face`].
//!
//! Teeth are kept sorted, so the supremum over an interval reduces to a
//! range-maximum query over the teeth it contains ([`RangeMaxIndex`]).

mod format;
mod rmq;

use std::cmp::Ordering;

pub use rmq::RangeMaxIndex;

use crate::error::{Error, Result};
use crate::metric;

/// Which point of the completion sits at a given position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    /// Limit of sequences increasing to the position.
    Left,
    /// Limit of sequences decreasing to the position.
    Right,
    /// A zero of the comb; only valid where no tooth sits.
    Interior,
}

/// A position together with a face tag: an element of the completed space.
#[derive(Debug, Clone, PartialEq)]
pub struct FacePoint<P> {
    pub position: P,
    pub face: Face,
}

impl<P> FacePoint<P> {
    pub fn new(position: P, face: Face) -> Self {
        Self { position, face }
    }

    pub fn interior(position: P) -> Self {
        Self::new(position, Face::Interior)
    }

    pub fn left(position: P) -> Self {
        Self::new(position, Face::Left)
    }

    pub fn right(position: P) -> Self {
        Self::new(position, Face::Right)
    }
}

/// Point of the completion of a floating-point [`Comb`].
pub type CombPoint = FacePoint<f64>;

/// Anything that behaves as a comb: a height at each position, and a
/// supremum over open intervals.
///
/// [`face_distance`] derives the completed metric from these two queries, so
/// exact-arithmetic combs (see [`crate::padic::PAryComb`]) share the face
/// conventions of [`Comb`].
pub trait CombFunction {
    type Position: PartialOrd;
    type Height: PartialOrd + Clone;

    fn zero(&self) -> Self::Height;

    fn height_at(&self, position: &Self::Position) -> Self::Height;

    /// `sup f` over the open interval `(lo, hi)`, with `lo < hi`.
    fn open_sup(&self, lo: &Self::Position, hi: &Self::Position) -> Self::Height;

    /// Rejects points outside the domain and interior faces on teeth.
    fn check(&self, point: &FacePoint<Self::Position>) -> Result<()>;
}

fn max_of<H: PartialOrd>(a: H, b: H) -> H {
    if b > a {
        b
    } else {
        a
    }
}

/// Distance between two points of the completion of `comb`.
///
/// For `s < t` the supremum runs over `(s, t)`, extended to include `s` when
/// the lower point is a left face and `t` when the upper point is a right
/// face. At equal positions a left and a right face are at distance `f(t)`;
/// all other pairs are at distance 0.
pub fn face_distance<C>(
    comb: &C,
    a: &FacePoint<C::Position>,
    b: &FacePoint<C::Position>,
) -> Result<C::Height>
where
    C: CombFunction + ?Sized,
{
    comb.check(a)?;
    comb.check(b)?;
    let (lower, upper) = match a.position.partial_cmp(&b.position) {
        Some(Ordering::Less) => (a, b),
        Some(Ordering::Greater) => (b, a),
        Some(Ordering::Equal) => {
            let opposite = matches!(
                (a.face, b.face),
                (Face::Left, Face::Right) | (Face::Right, Face::Left)
            );
            return Ok(if opposite {
                comb.height_at(&a.position)
            } else {
                comb.zero()
            });
        }
        None => return Err(Error::InvalidParameter("unordered positions".into())),
    };
    let mut d = comb.open_sup(&lower.position, &upper.position);
    if lower.face == Face::Left {
        d = max_of(d, comb.height_at(&lower.position));
    }
    if upper.face == Face::Right {
        d = max_of(d, comb.height_at(&upper.position));
    }
    Ok(d)
}

/// A tooth: a strictly positive height at a position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tooth {
    pub position: f64,
    pub height: f64,
}

impl Tooth {
    pub fn new(position: f64, height: f64) -> Self {
        Self { position, height }
    }
}

/// A comb with finitely many teeth on `[lo, hi]`.
///
/// Immutable once built; the range-maximum index is built with it.
#[derive(Debug, Clone)]
pub struct Comb {
    lo: f64,
    hi: f64,
    teeth: Vec<Tooth>,
    index: RangeMaxIndex,
}

impl PartialEq for Comb {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo && self.hi == other.hi && self.teeth == other.teeth
    }
}

/// Side from which a sequence approaches its limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approach {
    /// Increasing sequence; the limit is the left face.
    FromLeft,
    /// Decreasing sequence; the limit is the right face.
    FromRight,
}

impl Comb {
    /// Builds a comb, checking that positions strictly increase inside the
    /// open interval `(lo, hi)` and that heights are finite and positive.
    pub fn new(lo: f64, hi: f64, teeth: Vec<Tooth>) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidComb(format!("bad interval [{lo}, {hi}]")));
        }
        for (i, tooth) in teeth.iter().enumerate() {
            if !(tooth.position > lo && tooth.position < hi) {
                return Err(Error::InvalidComb(format!(
                    "tooth {i} at {} is not inside ({lo}, {hi})",
                    tooth.position
                )));
            }
            if !(tooth.height.is_finite() && tooth.height > 0.0) {
                return Err(Error::InvalidComb(format!(
                    "tooth {i} has non-positive height {}",
                    tooth.height
                )));
            }
            if i > 0 && teeth[i - 1].position >= tooth.position {
                return Err(Error::InvalidComb(format!(
                    "tooth positions not strictly increasing at index {i}"
                )));
            }
        }
        let heights: Vec<f64> = teeth.iter().map(|t| t.height).collect();
        Ok(Self {
            lo,
            hi,
            teeth,
            index: RangeMaxIndex::new(&heights),
        })
    }

    /// Comb without teeth: every point of the interval is identified.
    pub fn empty(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, Vec::new())
    }

    /// Builds a comb from teeth in any order.
    pub fn from_unsorted(lo: f64, hi: f64, mut teeth: Vec<Tooth>) -> Result<Self> {
        teeth.sort_by(|a, b| a.position.total_cmp(&b.position));
        Self::new(lo, hi, teeth)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn teeth(&self) -> &[Tooth] {
        &self.teeth
    }

    pub fn len(&self) -> usize {
        self.teeth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.teeth.is_empty()
    }

    pub fn index(&self) -> &RangeMaxIndex {
        &self.index
    }

    pub fn contains(&self, position: f64) -> bool {
        position >= self.lo && position <= self.hi
    }

    /// Index of the tooth at exactly `position`.
    pub fn tooth_at(&self, position: f64) -> Option<usize> {
        self.teeth
            .binary_search_by(|t| t.position.total_cmp(&position))
            .ok()
    }

    /// `f(position)`.
    pub fn height(&self, position: f64) -> f64 {
        self.tooth_at(position)
            .map_or(0.0, |i| self.teeth[i].height)
    }

    /// Indices of the teeth strictly inside `(lo, hi)`.
    pub fn teeth_between(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let start = self.teeth.partition_point(|t| t.position <= lo);
        let end = self.teeth.partition_point(|t| t.position < hi);
        start..end.max(start)
    }

    /// `sup f` over the open interval between `a` and `b` (0 when empty).
    pub fn open_sup(&self, a: f64, b: f64) -> f64 {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        self.index.sup(self.teeth_between(lo, hi))
    }

    /// Comb distance between two points of the completion.
    pub fn distance(&self, a: &CombPoint, b: &CombPoint) -> Result<f64> {
        face_distance(self, a, b)
    }

    /// Distance between two zeros of the comb.
    pub fn distance_between_zeros(&self, s: f64, t: f64) -> Result<f64> {
        self.distance(&CombPoint::interior(s), &CombPoint::interior(t))
    }

    /// Checks the strong triangle inequality over every triple of `points`.
    ///
    /// Always true for a valid comb; the check exists as a test oracle.
    pub fn verify_ultrametric(&self, points: &[CombPoint]) -> Result<bool> {
        let n = points.len();
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..i {
                let v = self.distance(&points[i], &points[j])?;
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
            self.check(&points[i])?;
        }
        Ok(metric::is_ultrametric(n, |i, j| d[i * n + j]))
    }

    /// Distances from the face of `target` reached by `approach` to each of
    /// the zeros in `sequence`.
    ///
    /// The sequence must be strictly monotone towards `target` and stay on
    /// the approached side. The returned distances are nonincreasing and tend
    /// to 0, which is how increasing and decreasing limits converge to the
    /// two faces of a tooth.
    pub fn face_limit_distance(
        &self,
        target: f64,
        approach: Approach,
        sequence: &[f64],
    ) -> Result<Vec<f64>> {
        let face = match approach {
            Approach::FromLeft => CombPoint::left(target),
            Approach::FromRight => CombPoint::right(target),
        };
        self.check(&face)?;
        let mut previous: Option<f64> = None;
        for &x in sequence {
            let on_side = match approach {
                Approach::FromLeft => x < target,
                Approach::FromRight => x > target,
            };
            let advancing = previous.is_none_or(|p| match approach {
                Approach::FromLeft => x > p,
                Approach::FromRight => x < p,
            });
            if !(on_side && advancing) {
                return Err(Error::NotMonotone { target });
            }
            previous = Some(x);
        }
        sequence
            .iter()
            .map(|&x| self.distance(&face, &CombPoint::interior(x)))
            .collect()
    }

    /// One zero per gap: midpoints between consecutive teeth and the ends of
    /// the interval.
    pub fn gap_midpoints(&self) -> Vec<f64> {
        let mut cuts = Vec::with_capacity(self.teeth.len() + 2);
        cuts.push(self.lo);
        cuts.extend(self.teeth.iter().map(|t| t.position));
        cuts.push(self.hi);
        cuts.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// The maximum tooth height, 0 for an empty comb.
    pub fn max_height(&self) -> f64 {
        self.index.sup(0..self.teeth.len())
    }
}

impl CombFunction for Comb {
    type Position = f64;
    type Height = f64;

    fn zero(&self) -> f64 {
        0.0
    }

    fn height_at(&self, position: &f64) -> f64 {
        self.height(*position)
    }

    fn open_sup(&self, lo: &f64, hi: &f64) -> f64 {
        Comb::open_sup(self, *lo, *hi)
    }

    fn check(&self, point: &CombPoint) -> Result<()> {
        if !self.contains(point.position) {
            return Err(Error::OutsideInterval {
                position: point.position,
                lo: self.lo,
                hi: self.hi,
            });
        }
        if point.face == Face::Interior && self.tooth_at(point.position).is_some() {
            return Err(Error::InteriorOnTooth(point.position));
        }
        Ok(())
    }
}

/// Builds the range-maximum index over the tooth heights of `comb`.
pub fn build_index(comb: &Comb) -> RangeMaxIndex {
    comb.index().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comb(lo: f64, hi: f64, teeth: &[(f64, f64)]) -> Comb {
        Comb::new(lo, hi, teeth.iter().map(|&(p, h)| Tooth::new(p, h)).collect()).unwrap()
    }

    #[test]
    fn rejects_invalid_combs() {
        assert!(Comb::new(0.0, 1.0, vec![Tooth::new(0.0, 1.0)]).is_err());
        assert!(Comb::new(0.0, 1.0, vec![Tooth::new(0.5, 0.0)]).is_err());
        assert!(Comb::new(0.0, 1.0, vec![Tooth::new(0.5, 1.0), Tooth::new(0.5, 2.0)]).is_err());
        assert!(Comb::new(1.0, 1.0, vec![]).is_err());
        assert!(Comb::new(0.0, 1.0, vec![Tooth::new(0.5, f64::NAN)]).is_err());
    }

    #[test]
    fn same_point_is_at_distance_zero() {
        let c = comb(0.0, 1.0, &[(0.5, 2.0)]);
        let x = CombPoint::interior(0.25);
        assert_eq!(c.distance(&x, &x).unwrap(), 0.0);
    }

    #[test]
    fn equal_position_conventions() {
        let c = comb(0.0, 1.0, &[(0.5, 2.0)]);
        let (l, r) = (CombPoint::left(0.5), CombPoint::right(0.5));
        assert_eq!(c.distance(&l, &r).unwrap(), 2.0);
        assert_eq!(c.distance(&r, &l).unwrap(), 2.0);
        assert_eq!(c.distance(&l, &l).unwrap(), 0.0);
        assert_eq!(c.distance(&r, &r).unwrap(), 0.0);
        // faces of a zero are identified
        assert_eq!(
            c.distance(&CombPoint::left(0.3), &CombPoint::right(0.3)).unwrap(),
            0.0
        );
        assert_eq!(
            c.distance(&CombPoint::left(0.3), &CombPoint::interior(0.3)).unwrap(),
            0.0
        );
    }

    #[test]
    fn left_faces_include_the_lower_tooth() {
        let c = comb(0.0, 1.0, &[(0.25, 1.0), (0.5, 3.0)]);
        let d = c.distance(&CombPoint::left(0.25), &CombPoint::left(0.5)).unwrap();
        assert_eq!(d, 1.0);
        assert_eq!(c.distance(&CombPoint::right(0.25), &CombPoint::left(0.5)).unwrap(), 0.0);
        assert_eq!(c.distance(&CombPoint::right(0.25), &CombPoint::right(0.5)).unwrap(), 3.0);
        assert_eq!(c.distance(&CombPoint::left(0.25), &CombPoint::right(0.5)).unwrap(), 3.0);
        // symmetric
        assert_eq!(c.distance(&CombPoint::left(0.5), &CombPoint::left(0.25)).unwrap(), 1.0);
    }

    #[test]
    fn domain_errors() {
        let c = comb(0.0, 1.0, &[(0.5, 2.0)]);
        assert!(matches!(
            c.distance(&CombPoint::interior(1.5), &CombPoint::interior(0.2)),
            Err(Error::OutsideInterval { .. })
        ));
        assert!(matches!(
            c.distance(&CombPoint::interior(0.5), &CombPoint::interior(0.2)),
            Err(Error::InteriorOnTooth(_))
        ));
    }

    #[test]
    fn empty_comb_identifies_everything() {
        let c = Comb::empty(0.0, 2.0).unwrap();
        assert_eq!(c.distance(&CombPoint::left(0.1), &CombPoint::right(1.9)).unwrap(), 0.0);
        assert_eq!(c.gap_midpoints(), vec![1.0]);
        assert_eq!(c.max_height(), 0.0);
    }

    #[test]
    fn straddling_triple_is_ultrametric() {
        let c = comb(0.0, 3.0, &[(1.0, 1.0), (2.0, 3.0)]);
        let pts: Vec<CombPoint> = [0.5, 1.5, 2.5].map(CombPoint::interior).to_vec();
        assert!(c.verify_ultrametric(&pts).unwrap());
        assert_eq!(c.distance(&pts[0], &pts[2]).unwrap(), 3.0);
    }

    #[test]
    fn face_limit_rejects_bad_sequences() {
        let c = comb(0.0, 1.0, &[(0.5, 2.0)]);
        assert!(matches!(
            c.face_limit_distance(0.5, Approach::FromLeft, &[0.2, 0.1]),
            Err(Error::NotMonotone { .. })
        ));
        assert!(matches!(
            c.face_limit_distance(0.5, Approach::FromLeft, &[0.2, 0.6]),
            Err(Error::NotMonotone { .. })
        ));
        assert!(matches!(
            c.face_limit_distance(0.5, Approach::FromRight, &[0.4]),
            Err(Error::NotMonotone { .. })
        ));
        let d = c
            .face_limit_distance(0.5, Approach::FromLeft, &[0.25, 0.375, 0.4375])
            .unwrap();
        assert_eq!(d, vec![0.0, 0.0, 0.0]);
    }
}
