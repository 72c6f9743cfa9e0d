use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, Subgroup};

/// A finite group `Γ` acting on a finite group `G` by automorphisms.
///
/// `perms[σ][x]` is `σ(x)`.
#[derive(Clone, Debug)]
pub struct GammaAction {
    gamma: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    perms: Arc<Vec<Vec<usize>>>,
}

impl PartialEq for GammaAction {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.gamma, &other.gamma) || self.gamma == other.gamma)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
            && (Arc::ptr_eq(&self.perms, &other.perms) || self.perms == other.perms)
    }
}

impl Eq for GammaAction {}

impl GammaAction {
    pub fn new(gamma: Arc<FiniteGroup>, target: Arc<FiniteGroup>, perms: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |detail: String| Err(Error::ActionInvalid { detail });
        if perms.len() != gamma.order() {
            return bad(format!("{} permutations for |gamma| = {}", perms.len(), gamma.order()));
        }
        let n = target.order();
        for (s, p) in perms.iter().enumerate() {
            if p.len() != n {
                return bad(format!("permutation {s} has length {}", p.len()));
            }
            let mut seen = vec![false; n];
            for &y in p {
                if y >= n || seen[y] {
                    return bad(format!("entry {s} is not a permutation"));
                }
                seen[y] = true;
            }
        }
        // Automorphism law on generators of gamma suffices once the action
        // is a homomorphism; check both fully on generators and the hom law
        // on all pairs.
        for s in gamma.elements() {
            for t in gamma.elements() {
                let st = gamma.mul(s, t);
                if (0..n).any(|x| perms[st][x] != perms[s][perms[t][x]]) {
                    return bad(format!("not a homomorphism at ({s}, {t})"));
                }
            }
        }
        if (0..n).any(|x| perms[0][x] != x) {
            return bad("identity acts nontrivially".into());
        }
        for &s in gamma.generators() {
            for x in 0..n {
                for y in 0..n {
                    if perms[s][target.mul(x, y)] != target.mul(perms[s][x], perms[s][y]) {
                        return bad(format!("element {s} is not an automorphism at ({x}, {y})"));
                    }
                }
            }
        }
        Ok(GammaAction { gamma, target, perms: Arc::new(perms) })
    }

    pub(crate) fn new_unchecked(gamma: Arc<FiniteGroup>, target: Arc<FiniteGroup>, perms: Vec<Vec<usize>>) -> Self {
        GammaAction { gamma, target, perms: Arc::new(perms) }
    }

    pub fn trivial(gamma: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let id: Vec<usize> = target.elements().collect();
        let perms = vec![id; gamma.order()];
        GammaAction::new_unchecked(gamma, target, perms)
    }

    /// Action determined by automorphisms assigned to the generators of
    /// `gamma` (in the order of [`FiniteGroup::generators`]).
    pub fn from_generator_images(
        gamma: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        images: &[Vec<usize>],
    ) -> Result<Self> {
        let gens = gamma.generators().to_vec();
        if images.len() != gens.len() {
            return Err(Error::ActionInvalid {
                detail: format!("{} generator images for {} generators", images.len(), gens.len()),
            });
        }
        let n = target.order();
        let mut perms: Vec<Option<Vec<usize>>> = vec![None; gamma.order()];
        perms[0] = Some((0..n).collect());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let px = perms[x].clone().expect("set");
            for (i, &g) in gens.iter().enumerate() {
                let y = gamma.mul(x, g);
                let py: Vec<usize> = (0..n).map(|v| px[images[i][v]]).collect();
                match &perms[y] {
                    None => {
                        perms[y] = Some(py);
                        queue.push_back(y);
                    }
                    Some(prev) if *prev != py => {
                        return Err(Error::ActionInvalid { detail: "generator images violate relations".into() })
                    }
                    Some(_) => {}
                }
            }
        }
        GammaAction::new(gamma, target, perms.into_iter().map(|p| p.expect("generated")).collect())
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.gamma
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    #[inline]
    pub fn act(&self, s: usize, x: usize) -> usize {
        self.perms[s][x]
    }

    pub fn is_trivial(&self) -> bool {
        self.perms.iter().all(|p| p.iter().enumerate().all(|(i, &y)| i == y))
    }

    pub(crate) fn require_same(&self, other: &GammaAction, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch { detail: what.to_string() })
        }
    }

    /// Restriction to a subgroup `sub` of gamma; the subgroup's `i`-th
    /// element becomes element `i` of the new acting group.
    pub fn restrict(&self, sub: &Subgroup) -> Result<GammaAction> {
        if sub.parent_order() != self.gamma.order() {
            return Err(Error::NotSubgroup { detail: "not a subgroup of gamma".into() });
        }
        let group = Arc::new(sub.as_group(&self.gamma));
        let perms = sub.elements().iter().map(|&s| self.perms[s].clone()).collect();
        Ok(GammaAction::new_unchecked(group, self.target.clone(), perms))
    }

    pub(crate) fn require_stable(&self, sub: &Subgroup) -> Result<()> {
        for s in self.gamma.elements() {
            for &x in sub.elements() {
                if !sub.contains(self.act(s, x)) {
                    return Err(Error::NotCharacteristic {
                        detail: format!("gamma element {s} moves {x} outside the subgroup"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Action on a gamma-stable subgroup, as a group of its own; returns the
    /// embedding (position -> element of G).
    pub fn sub_action(&self, sub: &Subgroup) -> Result<(GammaAction, Vec<usize>)> {
        self.require_stable(sub)?;
        let group = Arc::new(sub.as_group(&self.target));
        let perms = self
            .gamma
            .elements()
            .map(|s| sub.elements().iter().map(|&x| sub.position(self.act(s, x)).expect("stable")).collect())
            .collect();
        Ok((GammaAction::new_unchecked(self.gamma.clone(), group, perms), sub.elements().to_vec()))
    }

    /// Induced action on `G/N` for a gamma-stable normal `N`.
    pub fn quotient(&self, n: &Subgroup) -> Result<(GammaAction, GroupHom)> {
        self.require_stable(n)?;
        let (q, proj) = self.target.quotient_group(n)?;
        let reps: Vec<usize> = (0..q.order()).map(|c| proj.least_preimage(c).expect("surjective")).collect();
        let perms = self
            .gamma
            .elements()
            .map(|s| reps.iter().map(|&r| proj.apply(self.act(s, r))).collect())
            .collect();
        Ok((GammaAction::new_unchecked(self.gamma.clone(), Arc::new(q), perms), proj))
    }

    /// Same target, acting group pulled back along `proj: big -> gamma`.
    pub fn pull_back(&self, big: Arc<FiniteGroup>, proj: &GroupHom) -> Result<GammaAction> {
        if proj.images().len() != big.order() || proj.images().iter().any(|&y| y >= self.gamma.order()) {
            return Err(Error::ActionMismatch { detail: "projection does not land in gamma".into() });
        }
        let perms = big.elements().map(|s| self.perms[proj.apply(s)].clone()).collect();
        Ok(GammaAction::new_unchecked(big, self.target.clone(), perms))
    }

    /// Elements of `sub` acting trivially: `true` iff every element of `sub`
    /// fixes the target pointwise.
    pub fn acts_trivially_on(&self, sub: &Subgroup) -> bool {
        sub.elements().iter().all(|&s| self.perms[s].iter().enumerate().all(|(i, &y)| i == y))
    }
}
