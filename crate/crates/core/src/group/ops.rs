use std::collections::BTreeSet;

use super::{FiniteGroup, GroupHom, Subgroup};
use crate::error::{Error, Result};

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime_power_of(mut k: usize, p: usize) -> bool {
    while k % p == 0 {
        k /= p;
    }
    k == 1
}

impl FiniteGroup {
    pub fn subgroup_generated(&self, gens: &[usize]) -> Result<Subgroup> {
        for &g in gens {
            self.check_index(g)?;
        }
        Ok(Subgroup::from_mask(self.closure(gens)))
    }

    pub fn center(&self) -> Subgroup {
        Subgroup::from_mask(
            (0..self.order()).map(|z| (0..self.order()).all(|x| self.mul(z, x) == self.mul(x, z))).collect(),
        )
    }

    /// Largest normal subgroup contained in `h`: the intersection of all
    /// conjugates of `h`.
    pub fn normal_core(&self, h: &Subgroup) -> Result<Subgroup> {
        if h.parent_order() != self.order() {
            return Err(Error::NotSubgroup { detail: "subgroup of a different group".into() });
        }
        let mask = (0..self.order())
            .map(|y| h.contains(y) && (0..self.order()).all(|x| h.contains(self.conj(self.inv(x), y))))
            .collect();
        Ok(Subgroup::from_mask(mask))
    }

    /// Normal closure of a subset.
    pub fn normal_closure(&self, gens: &[usize]) -> Result<Subgroup> {
        let mut all = BTreeSet::new();
        for &g in gens {
            self.check_index(g)?;
            for x in self.elements() {
                all.insert(self.conj(x, g));
            }
        }
        let v: Vec<usize> = all.into_iter().collect();
        self.subgroup_generated(&v)
    }

    /// `[H, K]` for subgroups `h`, `k`.
    pub fn commutator_subgroup(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut comms = BTreeSet::new();
        for &a in h.elements() {
            for &b in k.elements() {
                comms.insert(self.commutator(a, b));
            }
        }
        let v: Vec<usize> = comms.into_iter().collect();
        Subgroup::from_mask(self.closure(&v))
    }

    /// `D^0 = G`, `D^{i+1} = [D^i, D^i]`, stopping at the first repetition.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut series = vec![Subgroup::whole(self)];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.commutator_subgroup(last, last);
            if next == *last {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(|s| s.is_trivial())
    }

    /// Elements of `ell`-power order in an abelian group.
    pub fn ell_torsion(&self, ell: usize) -> Result<Subgroup> {
        if let Some((a, b)) = self.first_noncommuting_pair() {
            return Err(Error::NotAbelian { a, b });
        }
        Ok(self.ell_torsion_of(&Subgroup::whole(self), ell))
    }

    /// Elements of `ell`-power order inside an abelian subgroup.
    pub(crate) fn ell_torsion_of(&self, sub: &Subgroup, ell: usize) -> Subgroup {
        Subgroup::from_mask(
            (0..self.order())
                .map(|x| sub.contains(x) && is_prime_power_of(self.element_order(x), ell))
                .collect(),
        )
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their least
    /// member, so the identity coset is 0.
    pub fn quotient_group(&self, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
        n.require_normal(self)?;
        let mut coset = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &m in n.elements() {
                coset[self.mul(x, m)] = id;
            }
        }
        let q = reps.len();
        let mut table = vec![0u32; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q + j] = coset[self.mul(a, b)] as u32;
            }
        }
        let inverses = reps.iter().map(|&a| coset[self.inv(a)]).collect();
        Ok((FiniteGroup::from_validated(q, table, inverses), GroupHom::from_images_unchecked(coset)))
    }

    /// All subgroups, sorted by (order, elements).
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let cyclic: BTreeSet<Vec<usize>> = self
            .elements()
            .map(|x| Subgroup::from_mask(self.closure(&[x])).elements().to_vec())
            .collect();
        let mut frontier: Vec<Vec<usize>> = cyclic.iter().cloned().collect();
        found.extend(cyclic.iter().cloned());
        while let Some(s) = frontier.pop() {
            for c in &cyclic {
                if c.iter().all(|x| s.binary_search(x).is_ok()) {
                    continue;
                }
                let mut gens = s.clone();
                gens.extend_from_slice(c);
                let joined = Subgroup::from_mask(self.closure(&gens)).elements().to_vec();
                if found.insert(joined.clone()) {
                    frontier.push(joined);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found
            .into_iter()
            .map(|e| {
                let mut mask = vec![false; self.order()];
                for x in e {
                    mask[x] = true;
                }
                Subgroup::from_mask(mask)
            })
            .collect();
        subs.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
        subs
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order();
        FiniteGroup::from_fn(self.order() * m, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })
    }
}

/// Breadth-first extension of a map defined on generators along the right
/// Cayley graph of `group`: the value at `x * gens[i]` is
/// `step(x, value_at_x, i)`. Returns `None` when two paths disagree; the
/// result is `Some(values)` with `None` outside the generated subgroup.
pub(crate) fn extend_along_generators<V: Copy + Eq>(
    group: &FiniteGroup,
    gens: &[usize],
    identity_value: V,
    mut step: impl FnMut(usize, V, usize) -> V,
) -> Option<Vec<Option<V>>> {
    let mut values: Vec<Option<V>> = vec![None; group.order()];
    values[0] = Some(identity_value);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let vx = values[x].expect("queued values are set");
        for (i, &g) in gens.iter().enumerate() {
            let y = group.mul(x, g);
            let vy = step(x, vx, i);
            match values[y] {
                None => {
                    values[y] = Some(vy);
                    queue.push_back(y);
                }
                Some(prev) if prev != vy => return None,
                Some(_) => {}
            }
        }
    }
    Some(values)
}

/// Spanning tree of the right Cayley graph, rooted at the identity.
#[derive(Clone, Debug)]
pub(crate) struct CayleyTree {
    pub gens: Vec<usize>,
    /// Elements in breadth-first order, identity first.
    pub bfs: Vec<usize>,
    /// For each non-identity element `z`: `(p, i)` with `z = p * gens[i]`.
    pub parent: Vec<Option<(usize, usize)>>,
}

impl CayleyTree {
    pub fn new(group: &FiniteGroup) -> Self {
        let gens = group.generators().to_vec();
        let mut parent = vec![None; group.order()];
        let mut seen = vec![false; group.order()];
        seen[0] = true;
        let mut bfs = vec![0usize];
        let mut head = 0;
        while head < bfs.len() {
            let x = bfs[head];
            head += 1;
            for (i, &g) in gens.iter().enumerate() {
                let y = group.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, i));
                    bfs.push(y);
                }
            }
        }
        CayleyTree { gens, bfs, parent }
    }

    pub fn is_tree_edge(&self, group: &FiniteGroup, x: usize, i: usize) -> bool {
        let y = group.mul(x, self.gens[i]);
        self.parent[y] == Some((x, i))
    }

    /// Non-tree edges `(x, i)` in (bfs position, generator) order.
    pub fn non_tree_edges(&self, group: &FiniteGroup) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &x in &self.bfs {
            for i in 0..self.gens.len() {
                if !self.is_tree_edge(group, x, i) {
                    out.push((x, i));
                }
            }
        }
        out
    }
}
