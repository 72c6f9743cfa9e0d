use std::collections::HashMap;

use super::ops::extend_along_generators;
use super::{FiniteGroup, GroupHom, Subgroup};
use crate::budget;
use crate::error::Result;

/// `Aut(G)` with its inner subgroup and the projection onto `Out(G)`.
///
/// Automorphism `i` of `aut` is the permutation `perms[i]` of `G`; the
/// product in `aut` is composition, `(a*b)(x) = a(b(x))`. The identity
/// permutation is element 0.
#[derive(Clone, Debug)]
pub struct AutGroupData {
    pub aut: FiniteGroup,
    pub perms: Vec<Vec<usize>>,
    pub inn: Subgroup,
    pub out: FiniteGroup,
    pub out_projection: GroupHom,
    /// `conjugation[g]` is the index of `x -> g x g^-1`.
    pub conjugation: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl AutGroupData {
    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    #[inline]
    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.perms[a][x]
    }

    /// Least-index automorphism in the outer class `o`.
    pub fn least_lift(&self, o: usize) -> Option<usize> {
        self.out_projection.least_preimage(o)
    }

    /// Least `h` with `inn(h)` equal to automorphism `a`.
    pub fn inner_witness(&self, a: usize) -> Option<usize> {
        self.conjugation.iter().position(|&c| c == a)
    }
}

pub fn automorphisms(g: &FiniteGroup) -> Result<AutGroupData> {
    let b = budget::current();
    automorphisms_with_bound(g, b.max_order, b.max_aut)
}

/// Enumerates `Aut(G)` by backtracking over images of a small generating set,
/// pruning on partial consistency along the Cayley graph.
pub fn automorphisms_with_bound(g: &FiniteGroup, max_order: usize, max_aut: usize) -> Result<AutGroupData> {
    budget::check("|G| for automorphism enumeration", g.order(), max_order)?;
    let gens = g.generators().to_vec();
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search(g, &gens, &mut images, &mut perms, max_aut)?;
    perms.sort();
    perms.dedup();
    let aut = FiniteGroup::from_permutation_list(&perms);
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let conjugation: Vec<usize> = g
        .elements()
        .map(|h| {
            let p: Vec<usize> = g.elements().map(|x| g.conj(h, x)).collect();
            index[&p]
        })
        .collect();
    let mut mask = vec![false; aut.order()];
    for &c in &conjugation {
        mask[c] = true;
    }
    let inn = Subgroup::from_mask(mask);
    let (out, out_projection) = aut.quotient_group(&inn)?;
    Ok(AutGroupData { aut, perms, inn, out, out_projection, conjugation, index })
}

fn search(
    g: &FiniteGroup,
    gens: &[usize],
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    max_aut: usize,
) -> Result<()> {
    let depth = images.len();
    let partial = extend_along_generators(g, &gens[..depth], 0usize, |_, v, i| g.mul(v, images[i]));
    let Some(values) = partial else { return Ok(()) };
    // Injective on the generated subgroup so far.
    let mut hit = vec![false; g.order()];
    for v in values.iter().flatten() {
        if hit[*v] {
            return Ok(());
        }
        hit[*v] = true;
    }
    if depth == gens.len() {
        out.push(values.into_iter().map(|v| v.expect("generators span")).collect());
        return budget::check("|Aut(G)|", out.len(), max_aut);
    }
    let target_order = g.element_order(gens[depth]);
    for y in g.elements() {
        if g.element_order(y) == target_order {
            images.push(y);
            let r = search(g, gens, images, out, max_aut);
            images.pop();
            r?;
        }
    }
    Ok(())
}
