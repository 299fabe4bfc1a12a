//! The inverse symmetric semigroup on the two-point set `{1, 2}`.
//!
//! Every level of the wreath recursion is labelled by one of these seven
//! partial bijections. Composition is diagrammatic: in `f.then(g)` the left
//! operand acts first, so `(f.then(g))(x) = g(f(x))`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A partial bijection of `{1, 2}`.
///
/// Stored as the pair of images with `0` meaning "undefined", which is also
/// the serialized form (`[2,1]` is the transposition, `[0,0]` the empty map).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct I2Element([u8; 2]);

impl I2Element {
    pub const IDENTITY: I2Element = I2Element([1, 2]);
    pub const TRANSPOSITION: I2Element = I2Element([2, 1]);
    pub const EMPTY: I2Element = I2Element([0, 0]);

    /// All seven elements in canonical order: lexicographic on
    /// `(image_of_1, image_of_2)` with undefined sorted last.
    pub const ALL: [I2Element; 7] = [
        I2Element([1, 2]),
        I2Element([1, 0]),
        I2Element([2, 1]),
        I2Element([2, 0]),
        I2Element([0, 1]),
        I2Element([0, 2]),
        I2Element([0, 0]),
    ];

    /// Builds an element from its two images (`0` = undefined).
    ///
    /// Returns `None` for out-of-range images or a non-injective pair.
    pub fn new(image_of_1: u8, image_of_2: u8) -> Option<Self> {
        if image_of_1 > 2 || image_of_2 > 2 {
            return None;
        }
        if image_of_1 != 0 && image_of_1 == image_of_2 {
            return None;
        }
        Some(I2Element([image_of_1, image_of_2]))
    }

    /// Image of `point` (1 or 2), or `None` if `point` is outside the domain.
    #[inline]
    pub fn apply(self, point: u8) -> Option<u8> {
        match self.0[usize::from(point) - 1] {
            0 => None,
            y => Some(y),
        }
    }

    #[inline]
    pub fn images(self) -> [u8; 2] {
        self.0
    }

    #[inline]
    pub fn in_domain(self, point: u8) -> bool {
        self.apply(point).is_some()
    }

    /// Points of the domain in increasing order.
    pub fn domain(self) -> impl Iterator<Item = u8> {
        (1..=2).filter(move |&p| self.in_domain(p))
    }

    pub fn domain_size(self) -> usize {
        self.0.iter().filter(|&&y| y != 0).count()
    }

    /// Diagrammatic composition: `self` first, then `next`.
    pub fn then(self, next: I2Element) -> I2Element {
        let image = |p: u8| self.apply(p).and_then(|q| next.apply(q)).unwrap_or(0);
        I2Element([image(1), image(2)])
    }

    pub fn inverse(self) -> I2Element {
        let mut inv = [0u8; 2];
        for p in 1..=2u8 {
            if let Some(q) = self.apply(p) {
                inv[usize::from(q) - 1] = p;
            }
        }
        I2Element(inv)
    }

    pub fn is_idempotent(self) -> bool {
        self.then(self) == self
    }

    /// Extends to a permutation of `{1, 2}`: defined images are kept and the
    /// undefined slots receive the unused images in increasing order.
    pub fn complete_to_permutation(self) -> I2Element {
        let mut images = self.0;
        let mut unused = (1..=2u8).filter(|q| !self.0.contains(q));
        for slot in images.iter_mut() {
            if *slot == 0 {
                *slot = unused.next().expect("a partial bijection leaves enough free images");
            }
        }
        I2Element(images)
    }

    /// Restriction of the identity to the domain of `self`.
    pub fn domain_idempotent(self) -> I2Element {
        let keep = |p: u8| if self.in_domain(p) { p } else { 0 };
        I2Element([keep(1), keep(2)])
    }

    /// Position of `self` in [`I2Element::ALL`].
    pub fn canonical_index(self) -> usize {
        I2Element::ALL
            .iter()
            .position(|&e| e == self)
            .expect("every valid element is listed")
    }

    fn sort_key(self) -> [u8; 2] {
        self.0.map(|y| if y == 0 { 3 } else { y })
    }
}

/// `compose_i2(f, g)`: `f` acts first.
pub fn compose_i2(f: I2Element, g: I2Element) -> I2Element {
    f.then(g)
}

pub fn enumerate_i2() -> Vec<I2Element> {
    I2Element::ALL.to_vec()
}

pub fn inverse_i2(f: I2Element) -> I2Element {
    f.inverse()
}

impl Ord for I2Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for I2Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for I2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |y: u8| if y == 0 { "-".to_string() } else { y.to_string() };
        write!(f, "(1→{}, 2→{})", show(self.0[0]), show(self.0[1]))
    }
}

impl fmt::Display for I2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0[0], self.0[1])
    }
}

impl Serialize for I2Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for I2Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [a, b] = <[u8; 2]>::deserialize(deserializer)?;
        I2Element::new(a, b)
            .ok_or_else(|| serde::de::Error::custom(format!("[{a},{b}] is not a partial bijection of {{1,2}}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(a: u8, b: u8) -> I2Element {
        I2Element::new(a, b).unwrap()
    }

    #[test]
    fn composition_examples() {
        let id = I2Element::IDENTITY;
        let t = I2Element::TRANSPOSITION;
        assert_eq!(compose_i2(id, id), id);
        assert_eq!(compose_i2(t, t), id);
        assert_eq!(compose_i2(el(1, 0), t), el(2, 0));
    }

    #[test]
    fn enumeration_has_seven_distinct_elements() {
        let all = enumerate_i2();
        assert_eq!(all.len(), 7);
        assert!(all.contains(&I2Element::EMPTY));
        assert!(all.contains(&I2Element::TRANSPOSITION));
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all, "ALL is listed in canonical order");
        // brute force over all 9 image pairs
        let valid = (0..=2u8)
            .flat_map(|a| (0..=2u8).map(move |b| (a, b)))
            .filter_map(|(a, b)| I2Element::new(a, b))
            .count();
        assert_eq!(valid, 7);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_i2(I2Element::TRANSPOSITION), I2Element::TRANSPOSITION);
        assert_eq!(inverse_i2(el(2, 0)), el(0, 1));
        assert_eq!(inverse_i2(I2Element::EMPTY), I2Element::EMPTY);
    }

    #[test]
    fn domain_size_and_idempotents() {
        assert_eq!(I2Element::IDENTITY.domain_size(), 2);
        assert!(I2Element::IDENTITY.is_idempotent());
        assert_eq!(I2Element::TRANSPOSITION.domain_size(), 2);
        assert!(!I2Element::TRANSPOSITION.is_idempotent());
        assert_eq!(el(1, 0).domain_size(), 1);
        assert!(el(1, 0).is_idempotent());
        let idempotents: Vec<_> = I2Element::ALL.into_iter().filter(|e| e.is_idempotent()).collect();
        assert_eq!(idempotents, vec![el(1, 2), el(1, 0), el(0, 2), el(0, 0)]);
    }

    #[test]
    fn semigroup_axioms_exhaustive() {
        for f in I2Element::ALL {
            for g in I2Element::ALL {
                assert!(I2Element::ALL.contains(&f.then(g)));
                for h in I2Element::ALL {
                    assert_eq!(f.then(g).then(h), f.then(g.then(h)));
                }
            }
            let inv = f.inverse();
            assert_eq!(f.then(inv).then(f), f);
            assert_eq!(inv.then(f).then(inv), inv);
        }
        for e in I2Element::ALL.into_iter().filter(|e| e.is_idempotent()) {
            for k in I2Element::ALL.into_iter().filter(|e| e.is_idempotent()) {
                assert_eq!(e.then(k), k.then(e));
            }
        }
    }

    #[test]
    fn rejects_non_injective_pairs() {
        assert!(I2Element::new(1, 1).is_none());
        assert!(I2Element::new(2, 2).is_none());
        assert!(I2Element::new(3, 0).is_none());
        assert!(serde_json::from_str::<I2Element>("[1,1]").is_err());
    }

    #[test]
    fn completion_and_domain_idempotent() {
        for f in I2Element::ALL {
            let s = f.complete_to_permutation();
            assert_eq!(s.domain_size(), 2);
            assert_eq!(f.domain_idempotent().then(s), f);
        }
        assert_eq!(el(0, 0).complete_to_permutation(), I2Element::IDENTITY);
        assert_eq!(el(0, 1).complete_to_permutation(), I2Element::TRANSPOSITION);
    }

    #[test]
    fn serializes_as_pair() {
        assert_eq!(serde_json::to_string(&I2Element::TRANSPOSITION).unwrap(), "[2,1]");
        assert_eq!(serde_json::to_string(&I2Element::EMPTY).unwrap(), "[0,0]");
    }
}
