//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..order`; index 0 is always the identity. Maps
//! between groups are stored as full image arrays.

mod aut;
mod build;
pub(crate) mod ops;

use std::fmt;
use std::sync::OnceLock;

pub use aut::{automorphisms, automorphisms_with_bound, AutGroupData};
pub use ops::{is_prime, prime_factors};

use crate::error::{Error, Result};

/// Order up to which associativity is checked on every triple; above it only
/// triples with a generator in the middle are checked.
pub const FULL_ASSOCIATIVITY_BOUND: usize = 256;

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<usize>,
    element_orders: Vec<usize>,
    exponent: usize,
    name: Option<String>,
    labels: Option<Vec<String>>,
    generators: OnceLock<Vec<usize>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("exponent", &self.exponent)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a raw multiplication table. Row `a`, column `b` holds `a*b`.
    pub fn from_table(raw: &[Vec<usize>]) -> Result<Self> {
        let order = raw.len();
        if order == 0 {
            return Err(Error::Empty);
        }
        for (row, r) in raw.iter().enumerate() {
            if r.len() != order {
                return Err(Error::NotSquare { row, len: r.len(), order });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= order {
                    return Err(Error::NotClosed { row, col, value, order });
                }
            }
        }
        for x in 0..order {
            if raw[0][x] != x || raw[x][0] != x {
                return Err(Error::NoIdentity { element: x });
            }
        }
        let mut inverses = vec![usize::MAX; order];
        for x in 0..order {
            match (0..order).find(|&y| raw[x][y] == 0 && raw[y][x] == 0) {
                Some(y) => inverses[x] = y,
                None => return Err(Error::NoInverse { element: x }),
            }
        }
        let table: Vec<u32> = raw.iter().flatten().map(|&v| v as u32).collect();
        let mul = |a: usize, b: usize| table[a * order + b] as usize;
        if order <= FULL_ASSOCIATIVITY_BOUND {
            for a in 0..order {
                for b in 0..order {
                    let ab = mul(a, b);
                    for c in 0..order {
                        if mul(ab, c) != mul(a, mul(b, c)) {
                            return Err(Error::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            // Light's test: the elements g with (ag)c = a(gc) for all a, c
            // form a submagma, so checking a generating set suffices.
            let gens = greedy_generators(order, &mul);
            for &g in &gens {
                for a in 0..order {
                    let ag = mul(a, g);
                    for c in 0..order {
                        if mul(ag, c) != mul(a, mul(g, c)) {
                            return Err(Error::NotAssociative { a, b: g, c });
                        }
                    }
                }
            }
        }
        Ok(Self::from_validated(order, table, inverses))
    }

    /// Builds a group from a table known to be a group (identity 0).
    pub(crate) fn from_validated(order: usize, table: Vec<u32>, inverses: Vec<usize>) -> Self {
        let mut element_orders = vec![1; order];
        for x in 1..order {
            let mut k = 1;
            let mut y = x;
            while y != 0 {
                y = table[y * order + x] as usize;
                k += 1;
            }
            element_orders[x] = k;
        }
        let exponent = element_orders.iter().fold(1, |acc, &k| lcm(acc, k));
        FiniteGroup {
            order,
            table,
            inverses,
            element_orders,
            exponent,
            name: None,
            labels: None,
            generators: OnceLock::new(),
        }
    }

    /// Builds a group from a closure computing the product; inverses are
    /// found by scanning.
    pub(crate) fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = mul(a, b) as u32;
            }
        }
        let inverses = (0..order)
            .map(|a| (0..order).find(|&b| table[a * order + b] == 0).expect("group has inverses"))
            .collect();
        Self::from_validated(order, table, inverses)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::Input {
                detail: format!("{} labels for a group of order {}", labels.len(), self.order),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g * x * g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let k = (k % self.element_orders[a] as u64) as usize;
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.first_noncommuting_pair().is_none()
    }

    pub(crate) fn first_noncommuting_pair(&self) -> Option<(usize, usize)> {
        for a in 0..self.order {
            for b in (a + 1)..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_cyclic(&self) -> bool {
        self.element_orders.iter().any(|&k| k == self.order)
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, order: self.order })
        }
    }

    /// A small generating set: a single generator when cyclic, a pair when
    /// 2-generated, otherwise an irredundant greedy set. Deterministic.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| self.compute_generators())
    }

    fn compute_generators(&self) -> Vec<usize> {
        if self.order == 1 {
            return Vec::new();
        }
        if let Some(g) = (0..self.order).find(|&g| self.element_orders[g] == self.order) {
            return vec![g];
        }
        // Candidates ordered by decreasing element order to find pairs fast.
        let mut cands: Vec<usize> = (1..self.order).collect();
        cands.sort_by_key(|&g| (std::cmp::Reverse(self.element_orders[g]), g));
        if self.order <= 512 {
            let mut best: Option<(usize, usize)> = None;
            for (i, &a) in cands.iter().enumerate() {
                for &b in &cands[i + 1..] {
                    if self.element_orders[a] * self.element_orders[b] < self.order {
                        continue;
                    }
                    if self.closure_size(&[a, b]) == self.order {
                        let pair = if a < b { (a, b) } else { (b, a) };
                        if best.map_or(true, |p| pair < p) {
                            best = Some(pair);
                        }
                    }
                }
                if best.is_some() {
                    break;
                }
            }
            if let Some((a, b)) = best {
                return vec![a, b];
            }
        }
        let mul = |a: usize, b: usize| self.mul(a, b);
        greedy_generators(self.order, &mul)
    }

    fn closure_size(&self, gens: &[usize]) -> usize {
        self.closure(gens).iter().filter(|&&b| b).count()
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub(crate) fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

fn greedy_generators(order: usize, mul: &impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let closure = |gens: &[usize]| {
        let mut seen = vec![false; order];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    };
    let mut gens: Vec<usize> = Vec::new();
    let mut span = closure(&gens);
    for x in 1..order {
        if !span[x] {
            gens.push(x);
            span = closure(&gens);
        }
    }
    // Drop redundant generators.
    let mut i = 0;
    while i < gens.len() {
        let mut rest = gens.clone();
        rest.remove(i);
        if closure(&rest).iter().all(|&b| b) {
            gens = rest;
        } else {
            i += 1;
        }
    }
    gens
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A subgroup of a parent group, as a sorted element list plus a mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    mask: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl Subgroup {
    pub(crate) fn from_mask(mask: Vec<bool>) -> Self {
        let elements = mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        Subgroup { elements, mask }
    }

    /// Validates that `elements` is a subgroup of `g`.
    pub fn new(g: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut mask = vec![false; g.order()];
        for &x in elements {
            g.check_index(x)?;
            mask[x] = true;
        }
        if !mask[0] {
            return Err(Error::NotSubgroup { detail: "identity missing".into() });
        }
        let sub = Subgroup::from_mask(mask);
        for &a in &sub.elements {
            if !sub.mask[g.inv(a)] {
                return Err(Error::NotSubgroup { detail: format!("inverse of {a} missing") });
            }
            for &b in &sub.elements {
                if !sub.mask[g.mul(a, b)] {
                    return Err(Error::NotSubgroup { detail: format!("{a}*{b} missing") });
                }
            }
        }
        Ok(sub)
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup::from_mask(vec![true; g.order()])
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        Subgroup::from_mask(mask)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.mask.len()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Position of `x` in the sorted element list (its index in
    /// [`Subgroup::as_group`]).
    pub fn position(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_mask(self.mask.iter().zip(&other.mask).map(|(a, b)| *a && *b).collect())
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        self.first_normality_failure(g).is_none()
    }

    fn first_normality_failure(&self, g: &FiniteGroup) -> Option<(usize, usize)> {
        for x in g.elements() {
            for &h in &self.elements {
                if !self.contains(g.conj(x, h)) {
                    return Some((x, h));
                }
            }
        }
        None
    }

    pub(crate) fn require_normal(&self, g: &FiniteGroup) -> Result<()> {
        match self.first_normality_failure(g) {
            None => Ok(()),
            Some((x, h)) => Err(Error::NotNormal {
                detail: format!("{x}*{h}*{x}^-1 = {} lies outside", g.conj(x, h)),
            }),
        }
    }

    pub fn is_abelian_in(&self, g: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// The subgroup as a group in its own right; element `i` is
    /// `self.elements()[i]`.
    pub fn as_group(&self, g: &FiniteGroup) -> FiniteGroup {
        let n = self.order();
        let mut table = vec![0u32; n * n];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                table[i * n + j] = self.position(g.mul(a, b)).expect("closed") as u32;
            }
        }
        let inverses = self.elements.iter().map(|&a| self.position(g.inv(a)).expect("closed")).collect();
        FiniteGroup::from_validated(n, table, inverses)
    }
}

/// A homomorphism stored as its full image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    images: Vec<usize>,
}

impl GroupHom {
    pub fn new(domain: &FiniteGroup, codomain: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::NotHom {
                detail: format!("{} images for a domain of order {}", images.len(), domain.order()),
            });
        }
        for &y in &images {
            codomain.check_index(y)?;
        }
        for a in domain.elements() {
            for b in domain.elements() {
                if images[domain.mul(a, b)] != codomain.mul(images[a], images[b]) {
                    return Err(Error::NotHom { detail: format!("fails on ({a}, {b})") });
                }
            }
        }
        Ok(GroupHom { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        GroupHom { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_mask(self.images.iter().map(|&y| y == 0).collect())
    }

    pub fn is_surjective(&self, codomain: &FiniteGroup) -> bool {
        let mut hit = vec![false; codomain.order()];
        for &y in &self.images {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// Least-index preimage of `y`, if any.
    pub fn least_preimage(&self, y: usize) -> Option<usize> {
        self.images.iter().position(|&z| z == y)
    }
}
