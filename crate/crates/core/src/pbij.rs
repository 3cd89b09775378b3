//! Partial bijections of a finite set, the concrete element model.
//!
//! A [`PartialBijection`] of degree `n` is an injective partial self-map of
//! `{0, .., n-1}`, stored as one image slot per point. Under composition and
//! inversion these maps form an inverse semigroup; the rest of the crate
//! either builds carriers out of them or works with bare multiplication
//! tables.

use std::fmt;

use thiserror::Error;

/// Why an image sequence is not a partial bijection, or why two maps cannot
/// be composed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PbijError {
    #[error("image {value} of point {point} is not in 0..{degree}")]
    ImageOutOfRange {
        point: usize,
        value: usize,
        degree: usize,
    },
    #[error("points {first} and {second} share the image {value}")]
    DuplicateImage {
        first: usize,
        second: usize,
        value: usize,
    },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
}

/// An injective partial self-map of `{0, .., degree-1}`.
///
/// The representation is canonical: two values are equal iff they have the
/// same degree and the same image sequence, so there is no aliasing of "the
/// same map written differently". The derived `Ord` (lexicographic on image
/// slots, with undefined sorting before defined) is the canonical element
/// order used whenever a carrier must be listed deterministically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    images: Vec<Option<usize>>,
}

impl PartialBijection {
    /// Validates an image sequence; the degree is its length.
    pub fn new(images: Vec<Option<usize>>) -> Result<Self, PbijError> {
        let degree = images.len();
        // seen[v] = first point already mapping to v
        let mut seen: Vec<Option<usize>> = vec![None; degree];
        for (point, img) in images.iter().enumerate() {
            if let Some(value) = *img {
                if value >= degree {
                    return Err(PbijError::ImageOutOfRange {
                        point,
                        value,
                        degree,
                    });
                }
                if let Some(first) = seen[value] {
                    return Err(PbijError::DuplicateImage {
                        first,
                        second: point,
                        value,
                    });
                }
                seen[value] = Some(point);
            }
        }
        Ok(Self { images })
    }

    /// The identity on all of `{0, .., degree-1}`.
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).map(Some).collect(),
        }
    }

    /// The nowhere-defined map of the given degree.
    pub fn empty(degree: usize) -> Self {
        Self {
            images: vec![None; degree],
        }
    }

    /// The identity restricted to the given points.
    pub fn partial_identity(degree: usize, points: &[usize]) -> Result<Self, PbijError> {
        let mut images = vec![None; degree];
        for &p in points {
            if p >= degree {
                return Err(PbijError::ImageOutOfRange {
                    point: p,
                    value: p,
                    degree,
                });
            }
            images[p] = Some(p);
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of one point, `None` where the map is undefined.
    pub fn image(&self, point: usize) -> Option<usize> {
        self.images[point]
    }

    pub fn images(&self) -> &[Option<usize>] {
        &self.images
    }

    /// Number of points where the map is defined.
    pub fn rank(&self) -> usize {
        self.images.iter().filter(|i| i.is_some()).count()
    }

    /// Composite "apply `other`, then `self`": `(p ∘ q)(i) = p(q(i))`,
    /// defined exactly where both steps are. This convention is used for
    /// every product table in the crate.
    pub fn compose(&self, other: &Self) -> Result<Self, PbijError> {
        if self.degree() != other.degree() {
            return Err(PbijError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let images = other
            .images
            .iter()
            .map(|i| i.and_then(|v| self.images[v]))
            .collect();
        // injectivity survives composition, no revalidation needed
        Ok(Self { images })
    }

    /// The converse relation: maps `p(i)` back to `i`.
    pub fn invert(&self) -> Self {
        let mut images = vec![None; self.degree()];
        for (point, img) in self.images.iter().enumerate() {
            if let Some(value) = *img {
                images[value] = Some(point);
            }
        }
        Self { images }
    }

    /// Idempotents of this model are exactly the partial identities.
    pub fn is_partial_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(p, i)| i.is_none() || *i == Some(p))
    }

    /// Union of graphs, if that is still a partial bijection.
    ///
    /// This is the concrete criterion for joins in the partial-bijection
    /// model: a family has a join exactly when the union of its graphs is a
    /// partial bijection, and then the union is the join.
    pub fn union(&self, other: &Self) -> Option<Self> {
        if self.degree() != other.degree() {
            return None;
        }
        let mut images = self.images.clone();
        for (point, img) in other.images.iter().enumerate() {
            if let Some(value) = *img {
                match images[point] {
                    None => images[point] = Some(value),
                    Some(existing) if existing == value => {}
                    Some(_) => return None,
                }
            }
        }
        Self::new(images).ok()
    }

    /// Intersection of graphs: the largest common restriction.
    pub fn intersection(&self, other: &Self) -> Self {
        let images = self
            .images
            .iter()
            .zip(other.images.iter())
            .map(|(a, b)| if a == b { *a } else { None })
            .collect();
        Self { images }
    }

    /// Every partial bijection of the given degree, in canonical order.
    pub fn enumerate_all(degree: usize) -> Vec<Self> {
        // odometer over image slots, slot value 0 = undefined, 1+v = point v;
        // counting order coincides with the canonical Ord
        let mut out = Vec::new();
        let mut slots = vec![0usize; degree];
        loop {
            let images: Vec<Option<usize>> = slots
                .iter()
                .map(|&s| if s == 0 { None } else { Some(s - 1) })
                .collect();
            if let Ok(p) = Self::new(images) {
                out.push(p);
            }
            let mut pos = degree;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if slots[pos] < degree {
                    slots[pos] += 1;
                    break;
                }
                slots[pos] = 0;
            }
        }
    }
}

impl fmt::Display for PartialBijection {
    /// Compact slot notation: `[1,-,0]` maps 0 to 1, leaves 1 undefined and
    /// maps 2 to 0.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, img) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match img {
                Some(v) => write!(f, "{v}")?,
                None => write!(f, "-")?,
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialBijection({self})")
    }
}
