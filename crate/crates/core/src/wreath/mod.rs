//! Partial wreath powers of the inverse symmetric semigroup on `{1, 2}`.
//!
//! An element of level `n` is a pair `(f, a)`: a label `a` on the top node and,
//! for every branch `y` in the domain of `a`, a child element of level `n - 1`.
//! Level 1 elements are bare labels. Composition follows
//! `(f, a)·(g, b) = (f g^a, ab)` with the left operand acting first.

mod json;
mod sample;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::base_i2::I2Element;
use crate::error::{Error, Result};

pub use sample::{sample_indexed, sample_uniform, Sampler, SamplingMode, DEFAULT_EXACT_SAMPLING_CAP};

/// Arbitrary-precision element counts and sampling weights.
pub type BigCount = BigUint;

/// Largest level [`enumerate`] accepts without an explicit override.
pub const DEFAULT_ENUMERATION_CAP: u32 = 3;

/// An element of the `level`-th partial wreath power.
///
/// Children are shared through `Arc`, so cloning is cheap and values can be
/// sent across threads freely.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    level: u32,
    top: I2Element,
    children: [Option<Arc<WreathElement>>; 2],
}

impl WreathElement {
    pub fn base(top: I2Element) -> Self {
        WreathElement { level: 1, top, children: [None, None] }
    }

    /// Builds a level `>= 2` element. `children[y - 1]` must be present exactly
    /// when `y` is in the domain of `top`, and all children must share a level.
    pub fn node(top: I2Element, children: [Option<WreathElement>; 2]) -> Result<Self> {
        let mut child_level = None;
        for (branch, child) in (1..=2u8).zip(children.iter()) {
            match (top.in_domain(branch), child) {
                (true, None) => {
                    return Err(Error::InvalidArgument(format!("missing child for branch {branch} of {top}")))
                }
                (false, Some(_)) => {
                    return Err(Error::InvalidArgument(format!("child given for branch {branch} outside domain of {top}")))
                }
                (true, Some(c)) => match child_level {
                    None => child_level = Some(c.level),
                    Some(l) if l != c.level => return Err(Error::LevelMismatch { left: l, right: c.level }),
                    _ => {}
                },
                (false, None) => {}
            }
        }
        let level = child_level.map_or(2, |l| l + 1);
        let [c1, c2] = children;
        Ok(WreathElement { level, top, children: [c1.map(Arc::new), c2.map(Arc::new)] })
    }

    /// Like [`WreathElement::node`], with the level given explicitly so that an
    /// empty top label can sit at any level.
    pub fn node_at(level: u32, top: I2Element, children: [Option<WreathElement>; 2]) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        if level == 1 {
            if children.iter().any(Option::is_some) {
                return Err(Error::InvalidArgument("level-1 elements have no children".into()));
            }
            return Ok(Self::base(top));
        }
        let mut el = Self::node(top, children)?;
        if el.top.domain_size() == 0 {
            el.level = level;
        } else if el.level != level {
            return Err(Error::LevelMismatch { left: level, right: el.level });
        }
        Ok(el)
    }

    pub(crate) fn from_parts(level: u32, top: I2Element, children: [Option<Arc<WreathElement>>; 2]) -> Self {
        debug_assert!(level >= 1);
        debug_assert!((1..=2u8).all(|y| (level > 1 && top.in_domain(y)) == children[usize::from(y) - 1].is_some()));
        WreathElement { level, top, children }
    }

    pub fn identity(n: u32) -> Self {
        assert!(n >= 1, "level must be at least 1");
        if n == 1 {
            return Self::base(I2Element::IDENTITY);
        }
        let child = Arc::new(Self::identity(n - 1));
        Self::from_parts(n, I2Element::IDENTITY, [Some(child.clone()), Some(child)])
    }

    pub fn empty(n: u32) -> Self {
        assert!(n >= 1, "level must be at least 1");
        Self::from_parts(n, I2Element::EMPTY, [None, None])
    }

    #[inline]
    pub fn level(&self) -> u32 {
        self.level
    }

    /// The label on the top node.
    #[inline]
    pub fn top(&self) -> I2Element {
        self.top
    }

    /// Child below `branch`, present iff `branch` is in the top domain and the
    /// level is at least 2.
    #[inline]
    pub fn child(&self, branch: u8) -> Option<&WreathElement> {
        self.children[usize::from(branch) - 1].as_deref()
    }

    /// Diagrammatic product `self · other` (`self` acts first).
    pub fn then(&self, other: &WreathElement) -> Result<WreathElement> {
        if self.level != other.level {
            return Err(Error::LevelMismatch { left: self.level, right: other.level });
        }
        Ok(self.then_unchecked(other))
    }

    fn then_unchecked(&self, other: &WreathElement) -> WreathElement {
        let top = self.top.then(other.top);
        if self.level == 1 {
            return Self::base(top);
        }
        let mut children: [Option<Arc<WreathElement>>; 2] = [None, None];
        for z in top.domain() {
            let moved = self.top.apply(z).expect("z lies in the domain of the product");
            let left = self.child(z).expect("child exists on the domain");
            let right = other.child(moved).expect("child exists on the domain");
            children[usize::from(z) - 1] = Some(Arc::new(left.then_unchecked(right)));
        }
        Self::from_parts(self.level, top, children)
    }

    pub fn inverse(&self) -> WreathElement {
        let top = self.top.inverse();
        let mut children: [Option<Arc<WreathElement>>; 2] = [None, None];
        if self.level > 1 {
            for z in self.top.domain() {
                let image = self.top.apply(z).unwrap();
                children[usize::from(image) - 1] = Some(Arc::new(self.child(z).unwrap().inverse()));
            }
        }
        Self::from_parts(self.level, top, children)
    }

    pub fn is_idempotent(&self) -> bool {
        self.top.is_idempotent() && self.children.iter().flatten().all(|c| c.is_idempotent())
    }

    /// True when every node label is a full permutation, i.e. the element is a
    /// unit (an automorphism of the whole tree).
    pub fn is_unit(&self) -> bool {
        self.top.domain_size() == 2 && self.children.iter().flatten().all(|c| c.is_unit())
    }

    /// Number of leaves in the domain, computed by summing over the children
    /// of the top node.
    pub fn rank_leaf(&self) -> u64 {
        if self.level == 1 {
            return self.top.domain_size() as u64;
        }
        self.children.iter().flatten().map(|c| c.rank_leaf()).sum()
    }

    /// Splits the element as `e · s` with `e` the idempotent on the domain and
    /// `s` a unit agreeing with `self` on that domain.
    ///
    /// Node labels of `s` are completed by keeping the defined images and
    /// filling the free slots in increasing order; branches outside the domain
    /// get identity subtrees.
    pub fn decompose_idempotent_permutation(&self) -> (WreathElement, WreathElement) {
        let e_top = self.top.domain_idempotent();
        let s_top = self.top.complete_to_permutation();
        if self.level == 1 {
            return (Self::base(e_top), Self::base(s_top));
        }
        let mut e_children: [Option<Arc<WreathElement>>; 2] = [None, None];
        let mut s_children: [Option<Arc<WreathElement>>; 2] = [None, None];
        for y in 1..=2u8 {
            let slot = usize::from(y) - 1;
            match self.child(y) {
                Some(child) => {
                    let (e, s) = child.decompose_idempotent_permutation();
                    e_children[slot] = Some(Arc::new(e));
                    s_children[slot] = Some(Arc::new(s));
                }
                None => s_children[slot] = Some(Arc::new(Self::identity(self.level - 1))),
            }
        }
        (
            Self::from_parts(self.level, e_top, e_children),
            Self::from_parts(self.level, s_top, s_children),
        )
    }

    /// Number of nodes carrying a label (top node included).
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().flatten().map(|c| c.node_count()).sum::<usize>()
    }
}

/// `compose(x, y)`: `x` acts first.
pub fn compose(x: &WreathElement, y: &WreathElement) -> Result<WreathElement> {
    x.then(y)
}

impl fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}{}", self.level, self.to_json_string())
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json_string())
    }
}

/// `N_n = 2^(2^(n+1) - 1) - 1`.
pub fn count_elements(n: u32) -> BigCount {
    assert!(n >= 1, "level must be at least 1");
    let exponent = (1u64 << (n + 1)) - 1;
    (BigUint::one() << exponent) - 1u32
}

/// `N_n` through `N_n = sum over a of N_{n-1}^{|dom a|}`, starting from `N_0 = 1`.
pub fn count_elements_recursive(n: u32) -> BigCount {
    count_table(n).pop().unwrap()
}

/// `[N_0, N_1, ..., N_n]` via the recursion, with `N_0 = 1` (the single empty
/// function below a leaf).
pub fn count_table(n: u32) -> Vec<BigCount> {
    let mut table = vec![BigUint::one()];
    for _ in 0..n {
        let prev = table.last().unwrap();
        let next = I2Element::ALL
            .iter()
            .map(|a| prev.pow(a.domain_size() as u32))
            .fold(BigUint::default(), |acc, w| acc + w);
        table.push(next);
    }
    table
}

/// Streams every element of level `n` once, in canonical order, refusing
/// levels above [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate(n: u32) -> Result<Enumeration> {
    enumerate_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_with_cap(n: u32, cap: u32) -> Result<Enumeration> {
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    if n > cap {
        return Err(Error::EnumerationCap { n, cap, count: count_elements(n).to_string() });
    }
    Ok(Enumeration { inner: enumeration_iter(n) })
}

/// Iterator returned by [`enumerate`].
pub struct Enumeration {
    inner: Box<dyn Iterator<Item = WreathElement> + Send>,
}

impl Iterator for Enumeration {
    type Item = WreathElement;

    fn next(&mut self) -> Option<WreathElement> {
        self.inner.next()
    }
}

fn enumeration_iter(n: u32) -> Box<dyn Iterator<Item = WreathElement> + Send> {
    if n == 1 {
        return Box::new(I2Element::ALL.into_iter().map(WreathElement::base));
    }
    // The previous level is materialized once; the product over branches streams.
    let below: Arc<Vec<Arc<WreathElement>>> = Arc::new(enumeration_iter(n - 1).map(Arc::new).collect());
    Box::new(I2Element::ALL.into_iter().flat_map(move |top| {
        let below = below.clone();
        let dom: Vec<u8> = top.domain().collect();
        let iter: Box<dyn Iterator<Item = WreathElement> + Send> = match dom.as_slice() {
            [] => Box::new(std::iter::once(WreathElement::from_parts(n, top, [None, None]))),
            &[y] => Box::new((0..below.len()).map(move |i| {
                let mut children: [Option<Arc<WreathElement>>; 2] = [None, None];
                children[usize::from(y) - 1] = Some(below[i].clone());
                WreathElement::from_parts(n, top, children)
            })),
            _ => {
                let len = below.len();
                Box::new((0..len).flat_map(move |i| {
                    let below = below.clone();
                    (0..len).map(move |j| {
                        WreathElement::from_parts(n, top, [Some(below[i].clone()), Some(below[j].clone())])
                    })
                }))
            }
        };
        iter
    }))
}
